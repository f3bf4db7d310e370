//! Exhaustive enumeration of small graphs and grouping into isospectral
//! families.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::algebra::ProjectivePoly;
use crate::discrete_spectrum::{ln_charpoly, LnCharpoly};
use crate::error::{Error, Result};
use crate::graph::{canonical_form, degree_canonical_form, DiscreteGraph};
use crate::secular::secular_poly;

pub const MAX_SIMPLE_VERTICES: usize = 7;
pub const MAX_MULTI_VERTICES: usize = 4;
pub const MAX_MULTI_EDGES: usize = 8;

fn vertex_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    pairs
}

fn from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> DiscreteGraph {
    let mut d = DiscreteGraph::empty(n);
    for (b, &(i, j)) in pairs.iter().enumerate() {
        if mask >> b & 1 == 1 {
            d.add_edge(i, j);
        }
    }
    d
}

/// Isomorphism classes met in `range`, keyed by an internal canonical form
/// and represented by the smallest edge mask.
fn shard(n: usize, pairs: &[(usize, usize)], range: std::ops::Range<u64>) -> BTreeMap<Vec<u8>, u64> {
    let mut seen = BTreeMap::new();
    for mask in range {
        let d = from_mask(n, pairs, mask);
        if !d.is_connected() {
            continue;
        }
        seen.entry(degree_canonical_form(&d)).or_insert(mask);
    }
    seen
}

/// One graph per isomorphism class of connected simple graphs on `n`
/// vertices, processed in `shards` contiguous mask ranges. The output does
/// not depend on `shards`.
pub fn enumerate_connected_simple_sharded(n: usize, shards: usize) -> Result<Vec<DiscreteGraph>> {
    if n == 0 {
        return Err(Error::InvalidArgument("at least one vertex is required".into()));
    }
    if n > MAX_SIMPLE_VERTICES {
        return Err(Error::EnumerationBound(format!("{n} vertices exceeds {MAX_SIMPLE_VERTICES}")));
    }
    let pairs = vertex_pairs(n);
    let total = 1u64 << pairs.len();
    let shards = (shards.max(1) as u64).min(total);
    let ranges: Vec<std::ops::Range<u64>> =
        (0..shards).map(|s| (total * s / shards)..(total * (s + 1) / shards)).collect();
    let parts: Vec<BTreeMap<Vec<u8>, u64>> = ranges.into_par_iter().map(|r| shard(n, &pairs, r)).collect();
    let mut merged: BTreeMap<Vec<u8>, u64> = BTreeMap::new();
    for part in parts {
        for (k, mask) in part {
            merged.entry(k).and_modify(|m| *m = (*m).min(mask)).or_insert(mask);
        }
    }
    let mut masks: Vec<u64> = merged.into_values().collect();
    masks.sort_unstable();
    Ok(masks.into_iter().map(|m| from_mask(n, &pairs, m)).collect())
}

pub fn enumerate_connected_simple(n: usize) -> Result<Vec<DiscreteGraph>> {
    enumerate_connected_simple_sharded(n, rayon::current_num_threads() * 4)
}

/// One graph per isomorphism class of connected multigraphs (loops and
/// parallel edges allowed) on `n` vertices with `1..=m_max` edges.
pub fn enumerate_connected_multi(n: usize, m_max: usize) -> Result<Vec<DiscreteGraph>> {
    if n == 0 || m_max == 0 {
        return Err(Error::InvalidArgument("need at least one vertex and one edge".into()));
    }
    if n > MAX_MULTI_VERTICES || m_max > MAX_MULTI_EDGES {
        return Err(Error::EnumerationBound(format!(
            "multigraph bounds are {MAX_MULTI_VERTICES} vertices and {MAX_MULTI_EDGES} edges"
        )));
    }
    let mut slots: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    slots.extend(vertex_pairs(n));
    let mut seen: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
    // nondecreasing sequences of slot indices = edge multisets
    let mut stack: Vec<usize> = Vec::new();
    fn visit(
        n: usize,
        slots: &[(usize, usize)],
        m_max: usize,
        start: usize,
        stack: &mut Vec<usize>,
        seen: &mut BTreeMap<Vec<u8>, Vec<usize>>,
    ) {
        if !stack.is_empty() {
            let mut d = DiscreteGraph::empty(n);
            for &s in stack.iter() {
                d.add_edge(slots[s].0, slots[s].1);
            }
            if d.is_connected() && (0..n).all(|v| d.degree(v) > 0) {
                seen.entry(degree_canonical_form(&d)).or_insert_with(|| stack.clone());
            }
        }
        if stack.len() == m_max {
            return;
        }
        for s in start..slots.len() {
            stack.push(s);
            visit(n, slots, m_max, s, stack, seen);
            stack.pop();
        }
    }
    visit(n, &slots, m_max, 0, &mut stack, &mut seen);
    let mut reps: Vec<Vec<usize>> = seen.into_values().collect();
    reps.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(reps
        .into_iter()
        .map(|edges| {
            let mut d = DiscreteGraph::empty(n);
            for s in edges {
                d.add_edge(slots[s].0, slots[s].1);
            }
            d
        })
        .collect())
}

/// What graphs are grouped by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifyKey {
    /// Secular polynomial of the equilateral graph plus component count.
    Secular,
    /// Normalized Laplacian characteristic polynomial.
    Ln,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum FamilyKey {
    Secular { poly: ProjectivePoly, components: usize },
    Ln(LnCharpoly),
}

impl fmt::Display for FamilyKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKey::Secular { poly, components } => write!(f, "{poly}\ncomponents: {components}"),
            FamilyKey::Ln(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    pub graph: DiscreteGraph,
    /// Full canonical form (minimum over all vertex permutations).
    pub canonical: Vec<u8>,
    pub betti: usize,
    pub components: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsospectralFamily {
    pub key: FamilyKey,
    pub members: Vec<FamilyMember>,
}

pub fn family_key(d: &DiscreteGraph, key: ClassifyKey) -> Result<FamilyKey> {
    match key {
        ClassifyKey::Secular => {
            let g = d.to_metric()?;
            Ok(FamilyKey::Secular { poly: secular_poly(&g)?, components: g.components() })
        }
        ClassifyKey::Ln => Ok(FamilyKey::Ln(ln_charpoly(d)?)),
    }
}

fn member(d: &DiscreteGraph) -> Result<FamilyMember> {
    let g = d.to_metric()?;
    Ok(FamilyMember {
        graph: d.clone(),
        canonical: canonical_form(d, MAX_SIMPLE_VERTICES.max(d.n()))?,
        betti: g.betti(),
        components: g.components(),
    })
}

/// Groups graphs by exact key equality. Families are sorted by size
/// (largest first), then by key; members by canonical form.
pub fn classify(graphs: &[DiscreteGraph], key: ClassifyKey) -> Result<Vec<IsospectralFamily>> {
    let keyed: Vec<(FamilyKey, FamilyMember)> = graphs
        .par_iter()
        .map(|d| Ok((family_key(d, key)?, member(d)?)))
        .collect::<Result<_>>()?;
    let mut groups: BTreeMap<FamilyKey, Vec<FamilyMember>> = BTreeMap::new();
    for (k, m) in keyed {
        groups.entry(k).or_default().push(m);
    }
    let mut families: Vec<IsospectralFamily> = groups
        .into_iter()
        .map(|(key, mut members)| {
            members.sort_by(|a, b| a.canonical.cmp(&b.canonical));
            IsospectralFamily { key, members }
        })
        .collect();
    families.sort_by(|a, b| b.members.len().cmp(&a.members.len()).then_with(|| a.key.cmp(&b.key)));
    Ok(families)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn edge_list(d: &DiscreteGraph) -> String {
    let mut out = Vec::new();
    for u in 0..d.n() {
        for v in u..d.n() {
            let count = if u == v { d.adj(u, u) / 2 } else { d.adj(u, v) };
            for _ in 0..count {
                out.push(format!("{u}-{v}"));
            }
        }
    }
    out.join(" ")
}

/// Plain-text report: one block per family.
pub fn family_report(families: &[IsospectralFamily]) -> String {
    let mut out = String::new();
    let multi = families.iter().filter(|f| f.members.len() > 1).count();
    out.push_str(&format!("families: {}\nnon-singleton families: {multi}\n", families.len()));
    for (i, f) in families.iter().enumerate() {
        out.push_str(&format!("\nfamily {} size {}\n{}\n", i + 1, f.members.len(), f.key));
        for m in &f.members {
            out.push_str(&format!(
                "member canonical {} betti {} components {} edges {}\n",
                hex(&m.canonical),
                m.betti,
                m.components,
                edge_list(&m.graph)
            ));
        }
    }
    out
}
