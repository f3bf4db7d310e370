//! Graph surgery: chopping, gluing, subdividing, suppressing and joining.
//!
//! Every operation returns a fresh graph; endpoint ids of the result are
//! renumbered as `2e`, `2e + 1` in edge order.

use std::collections::{BTreeMap, HashSet};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::MetricGraph;
use crate::error::{Error, Result};

/// One piece of a [`compose`] call: a graph whose `i`-th contact is attached
/// to frame slot `attach[i]`.
#[derive(Debug, Clone, Copy)]
pub struct Part<'a> {
    pub graph: &'a MetricGraph,
    pub attach: &'a [usize],
}

/// Assembles graphs on a set of `slots` shared vertices.
///
/// Each part's contacts are merged into the slot vertices they attach to;
/// all other vertices stay private to their part. Slots become vertices
/// `0..slots` of the result and `contacts` selects which of them are
/// contacts of the result.
pub fn compose(slots: usize, parts: &[Part<'_>], contacts: Vec<usize>) -> Result<MetricGraph> {
    let mut triples = Vec::new();
    let mut next = slots;
    let mut used = vec![false; slots];
    for (p, part) in parts.iter().enumerate() {
        let g = part.graph;
        if part.attach.len() != g.contacts().len() {
            return Err(Error::ContactMismatch(part.attach.len(), g.contacts().len()));
        }
        let mut map = vec![usize::MAX; g.vertex_count()];
        for (&c, &s) in g.contacts().iter().zip(part.attach) {
            if s >= slots {
                return Err(Error::InvalidPairing(format!("part {p} attaches to missing slot {s}")));
            }
            map[c] = s;
            used[s] = true;
        }
        for m in map.iter_mut().filter(|m| **m == usize::MAX) {
            *m = next;
            next += 1;
        }
        for (u, v, len) in g.edge_triples() {
            triples.push((map[u], map[v], len));
        }
    }
    if let Some(s) = used.iter().position(|u| !u) {
        return Err(Error::InvalidPairing(format!("slot {s} has nothing attached")));
    }
    MetricGraph::from_edges(next, &triples, contacts)
}

fn check_injective(pairs: impl Iterator<Item = usize>, side: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for p in pairs {
        if !seen.insert(p) {
            return Err(Error::InvalidPairing(format!("repeated contact {p} on {side} side")));
        }
    }
    Ok(())
}

impl MetricGraph {
    /// Splits vertex `v` into one vertex per part of `parts` (endpoint ids).
    ///
    /// The first part keeps index `v`; the others are appended. `v` loses
    /// contact status.
    pub fn chop_vertex(&self, v: usize, parts: &[Vec<usize>]) -> Result<MetricGraph> {
        if v >= self.vertex_count() || parts.len() < 2 || parts.iter().any(|p| p.is_empty()) {
            return Err(Error::NotAPartition);
        }
        let mut all: Vec<usize> = parts.iter().flatten().copied().collect();
        all.sort_unstable();
        let before = all.len();
        all.dedup();
        if all.len() != before || all != self.vertices[v] {
            return Err(Error::NotAPartition);
        }
        let mut vertices = self.vertices.clone();
        vertices[v] = parts[0].clone();
        vertices.extend(parts[1..].iter().cloned());
        let contacts = self.contacts.iter().copied().filter(|&c| c != v).collect();
        let g = MetricGraph::from_raw(self.name.clone(), self.edges.clone(), vertices, contacts);
        MetricGraph::from_edges(g.vertex_count(), &g.edge_triples(), g.contacts.clone())
    }

    /// Glues `other` onto `self`, merging paired contacts.
    ///
    /// `pairing` holds positions in the two contact lists. Merged vertices
    /// become the first contacts of the result, in pairing order, followed by
    /// the unpaired contacts of `self` and then of `other`.
    pub fn glue(&self, other: &MetricGraph, pairing: &[(usize, usize)]) -> Result<MetricGraph> {
        check_injective(pairing.iter().map(|p| p.0), "first")?;
        check_injective(pairing.iter().map(|p| p.1), "second")?;
        for &(i, j) in pairing {
            if i >= self.contacts.len() || j >= other.contacts.len() {
                return Err(Error::InvalidPairing(format!("contact pair ({i}, {j}) out of range")));
            }
        }
        let n1 = self.vertex_count();
        let mut map = vec![usize::MAX; other.vertex_count()];
        for &(i, j) in pairing {
            map[other.contacts[j]] = self.contacts[i];
        }
        let mut next = n1;
        for m in map.iter_mut().filter(|m| **m == usize::MAX) {
            *m = next;
            next += 1;
        }
        let mut triples = self.edge_triples();
        triples.extend(other.edge_triples().into_iter().map(|(u, v, l)| (map[u], map[v], l)));
        let mut contacts: Vec<usize> = pairing.iter().map(|&(i, _)| self.contacts[i]).collect();
        let paired1: HashSet<usize> = pairing.iter().map(|p| p.0).collect();
        let paired2: HashSet<usize> = pairing.iter().map(|p| p.1).collect();
        contacts.extend(
            self.contacts.iter().enumerate().filter(|(i, _)| !paired1.contains(i)).map(|(_, &c)| c),
        );
        contacts.extend(
            other
                .contacts
                .iter()
                .enumerate()
                .filter(|(j, _)| !paired2.contains(j))
                .map(|(_, &c)| map[c]),
        );
        MetricGraph::from_edges(next, &triples, contacts)
    }

    /// Disjoint union; contacts are concatenated.
    pub fn disjoint_union(&self, other: &MetricGraph) -> Result<MetricGraph> {
        self.glue(other, &[])
    }

    /// Splits edge `e` at distance `t` from its first endpoint.
    ///
    /// Edge `e` keeps the piece of length `t`; the remainder is appended as
    /// a new edge. The new degree-2 vertex is appended and is not a contact.
    pub fn subdivide_edge(&self, e: usize, t: &BigRational) -> Result<MetricGraph> {
        let mut triples = self.edge_triples();
        let Some((u, v, len)) = triples.get(e).cloned() else {
            return Err(Error::OutOfRange(format!("edge {e} does not exist")));
        };
        if !t.is_positive() || *t >= len {
            return Err(Error::OutOfRange(format!("t = {t} not inside (0, {len})")));
        }
        let w = self.vertex_count();
        triples[e] = (u, w, t.clone());
        triples.push((w, v, len - t));
        MetricGraph::from_edges(w + 1, &triples, self.contacts.clone())
    }

    /// Removes every non-contact degree-2 vertex whose two endpoints lie on
    /// different edges, merging those edges and summing lengths.
    pub fn suppress_degree2(&self) -> MetricGraph {
        let mut triples = self.edge_triples();
        let mut alive = vec![true; self.vertex_count()];
        let contacts: HashSet<usize> = self.contacts.iter().copied().collect();
        loop {
            let mut incident: BTreeMap<usize, Vec<(usize, bool)>> = BTreeMap::new();
            for (e, (u, v, _)) in triples.iter().enumerate() {
                incident.entry(*u).or_default().push((e, true));
                incident.entry(*v).or_default().push((e, false));
            }
            let target = incident.iter().find(|(w, inc)| {
                !contacts.contains(w) && inc.len() == 2 && inc[0].0 != inc[1].0
            });
            let Some((&w, inc)) = target else { break };
            let (e1, at_a1) = inc[0];
            let (e2, at_a2) = inc[1];
            let (u1, v1, l1) = triples[e1].clone();
            let (u2, v2, l2) = triples[e2].clone();
            let x = if at_a1 { v1 } else { u1 };
            let y = if at_a2 { v2 } else { u2 };
            triples[e1] = (x, y, l1 + l2);
            triples.remove(e2);
            alive[w] = false;
        }
        let mut index = vec![usize::MAX; alive.len()];
        let mut next = 0;
        for (v, a) in alive.iter().enumerate() {
            if *a {
                index[v] = next;
                next += 1;
            }
        }
        let triples: Vec<_> = triples.into_iter().map(|(u, v, l)| (index[u], index[v], l)).collect();
        let contacts = self.contacts.iter().map(|&c| index[c]).collect();
        MetricGraph::from_edges(next, &triples, contacts)
            .expect("suppression preserves validity")
            .with_name(self.name.clone())
    }

    /// Subdivides at each `(edge, offset)` point and merges the new vertices
    /// into one non-contact vertex, returned last.
    pub fn join_points(&self, points: &[(usize, BigRational)]) -> Result<MetricGraph> {
        if points.len() < 2 {
            return Err(Error::InvalidArgument("at least two points are required".into()));
        }
        let mut by_edge: BTreeMap<usize, Vec<BigRational>> = BTreeMap::new();
        for (e, t) in points {
            let list = by_edge.entry(*e).or_default();
            if list.contains(t) {
                return Err(Error::DuplicatePoint { edge: *e, offset: t.to_string() });
            }
            list.push(t.clone());
        }
        let mut g = self.clone();
        let mut fresh = Vec::new();
        for (e, mut offsets) in by_edge {
            offsets.sort();
            for t in offsets.iter().rev() {
                g = g.subdivide_edge(e, t)?;
                fresh.push(g.vertex_count() - 1);
            }
        }
        Ok(g.merge_vertices(&fresh))
    }

    /// Merges the given vertices into one vertex placed last; contact status
    /// of the merged vertices is dropped.
    pub(crate) fn merge_vertices(&self, group: &[usize]) -> MetricGraph {
        let set: HashSet<usize> = group.iter().copied().collect();
        let mut index = vec![usize::MAX; self.vertex_count()];
        let mut next = 0;
        for (v, slot) in index.iter_mut().enumerate() {
            if !set.contains(&v) {
                *slot = next;
                next += 1;
            }
        }
        for &v in group {
            index[v] = next;
        }
        let triples: Vec<_> =
            self.edge_triples().into_iter().map(|(u, v, l)| (index[u], index[v], l)).collect();
        let contacts = self.contacts.iter().filter(|c| !set.contains(c)).map(|&c| index[c]).collect();
        MetricGraph::from_edges(next + 1, &triples, contacts).expect("merge preserves validity")
    }

    /// Replaces every edge of integer length `L` by a path of `L` unit edges.
    pub fn unit_subdivide(&self) -> Result<MetricGraph> {
        let mut triples = Vec::new();
        let mut next = self.vertex_count();
        for (e, (u, v, len)) in self.edge_triples().into_iter().enumerate() {
            if !len.is_integer() {
                return Err(Error::NotUnilateral(format!(
                    "edge {e} has non-integer length {len}; only integer lengths can be subdivided"
                )));
            }
            let pieces = len.to_integer().to_usize().filter(|&p| p > 0).ok_or_else(|| {
                Error::NotUnilateral(format!("edge {e} has unusable length {len}"))
            })?;
            let mut prev = u;
            for _ in 1..pieces {
                triples.push((prev, next, BigRational::one()));
                prev = next;
                next += 1;
            }
            triples.push((prev, v, BigRational::one()));
        }
        Ok(MetricGraph::from_edges(next, &triples, self.contacts.clone())?.with_name(self.name.clone()))
    }

    /// Relabels vertices: old vertex `v` becomes `perm[v]`.
    pub fn permute_vertices(&self, perm: &[usize]) -> Result<MetricGraph> {
        let n = self.vertex_count();
        let mut check = perm.to_vec();
        check.sort_unstable();
        if perm.len() != n || check.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(Error::InvalidArgument("not a permutation of the vertices".into()));
        }
        let triples: Vec<_> =
            self.edge_triples().into_iter().map(|(u, v, l)| (perm[u], perm[v], l)).collect();
        let contacts = self.contacts.iter().map(|&c| perm[c]).collect();
        MetricGraph::from_edges(n, &triples, contacts)
    }

    /// Scales all lengths by `factor`.
    pub fn scaled(&self, factor: &BigRational) -> Result<MetricGraph> {
        if !factor.is_positive() {
            return Err(Error::InvalidArgument("scale factor must be positive".into()));
        }
        let triples: Vec<_> =
            self.edge_triples().into_iter().map(|(u, v, l)| (u, v, l * factor)).collect();
        MetricGraph::from_edges(self.vertex_count(), &triples, self.contacts.clone())
    }

    /// Least common multiple of the length denominators; scaling by it makes
    /// all lengths integers.
    pub fn length_denominator_lcm(&self) -> num_bigint::BigInt {
        self.edges.iter().fold(num_bigint::BigInt::one(), |acc, e| acc.lcm(e.length.denom()))
    }

    /// True when every edge length is a positive integer.
    pub fn has_integer_lengths(&self) -> bool {
        self.edges.iter().all(|e| e.length.is_integer() && !e.length.is_zero())
    }
}
