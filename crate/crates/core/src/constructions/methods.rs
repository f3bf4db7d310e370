use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::graph::{compose, MetricGraph, Part};
use crate::mfunction::{steklov_equivalent, DEFAULT_SAMPLES};
use crate::secular::metric_isospectral;

/// Tolerance for the M-function comparisons that certify hypotheses.
pub const EQUIVALENCE_TOL: f64 = 1e-8;

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn require_equivalent(r1: &MetricGraph, r2: &MetricGraph, what: &str) -> Result<()> {
    let n = r1.contacts().len();
    if n != r2.contacts().len() {
        return Err(Error::ContactMismatch(n, r2.contacts().len()));
    }
    let eq = steklov_equivalent(r1, r2, &identity(n), &DEFAULT_SAMPLES, EQUIVALENCE_TOL)?;
    if !eq.equivalent {
        return Err(Error::Hypothesis(format!(
            "{what}: Steklov equivalence fails (max residual {:e})",
            eq.max_residual
        )));
    }
    Ok(())
}

/// Glues `r1` and `r2` to the same graph `k_graph`. The two pieces must be
/// Steklov-equivalent and, when they have integer lengths, isospectral.
pub fn method1_extend(
    k_graph: &MetricGraph,
    r1: &MetricGraph,
    r2: &MetricGraph,
    pairing: &[(usize, usize)],
) -> Result<(MetricGraph, MetricGraph)> {
    require_equivalent(r1, r2, "method 1")?;
    if r1.has_integer_lengths() && r2.has_integer_lengths() && !metric_isospectral(r1, r2)? {
        return Err(Error::Hypothesis(
            "method 1: isospectrality fails; the pieces are Steklov-equivalent but not isospectral".into(),
        ));
    }
    Ok((k_graph.glue(r1, pairing)?, k_graph.glue(r2, pairing)?))
}

/// A graph placed in a [`Composition`]: contact `i` goes to frame vertex
/// `attach[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slot {
    pub graph: MetricGraph,
    pub attach: Vec<usize>,
}

/// A frame graph with subgraphs attached at declared slots. Assembling
/// merges each slot's contacts into the frame vertices; the frame's
/// contacts are the contacts of the result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    pub frame: MetricGraph,
    pub slots: Vec<Slot>,
}

impl Composition {
    pub fn new(frame: MetricGraph, slots: Vec<Slot>) -> Result<Self> {
        let n = frame.vertex_count();
        for s in &slots {
            if s.attach.len() != s.graph.contacts().len() {
                return Err(Error::ContactMismatch(s.attach.len(), s.graph.contacts().len()));
            }
            if let Some(&v) = s.attach.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidPairing(format!("frame has no vertex {v}")));
            }
        }
        Ok(Composition { frame, slots })
    }

    pub fn assemble(&self) -> Result<MetricGraph> {
        let n = self.frame.vertex_count();
        let frame = self.frame.with_contacts(identity(n))?;
        let all = identity(n);
        let mut parts = vec![Part { graph: &frame, attach: &all }];
        parts.extend(self.slots.iter().map(|s| Part { graph: &s.graph, attach: &s.attach }));
        compose(n, &parts, self.frame.contacts().to_vec())
    }

    fn slot(&self, i: usize) -> Result<&Slot> {
        self.slots.get(i).ok_or(Error::UnknownSlot(i))
    }

    /// Swaps the contents of slots `i` and `j`, keeping the attachments.
    /// The two contents must be Steklov-equivalent.
    pub fn exchange(&self, i: usize, j: usize) -> Result<Composition> {
        let (a, b) = (self.slot(i)?, self.slot(j)?);
        if i != j {
            require_equivalent(&a.graph, &b.graph, "method 2")?;
        }
        let mut out = self.clone();
        out.slots[i].graph = b.graph.clone();
        out.slots[j].graph = a.graph.clone();
        Ok(out)
    }

    /// Slot `i` receives the content of slot `perm[i]`. All moved contents
    /// must be Steklov-equivalent to the content they replace.
    pub fn permute(&self, perm: &[usize]) -> Result<Composition> {
        let n = self.slots.len();
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::InvalidArgument("permutation length differs from slot count".into()));
        }
        for &p in perm {
            if p >= n {
                return Err(Error::UnknownSlot(p));
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument("not a permutation of the slots".into()));
            }
        }
        let mut out = self.clone();
        for (i, &p) in perm.iter().enumerate() {
            if p != i {
                require_equivalent(&self.slots[i].graph, &self.slots[p].graph, "method 2")?;
            }
            out.slots[i].graph = self.slots[p].graph.clone();
        }
        Ok(out)
    }
}

/// Assembles `host` with the contents of two slots exchanged.
pub fn method2_exchange(host: &Composition, slot1: usize, slot2: usize) -> Result<MetricGraph> {
    host.exchange(slot1, slot2)?.assemble()
}

/// Building blocks of the clarifying example. `a` to `d` have two
/// contacts, `e` and `f` one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClarifyingBlocks {
    pub a: MetricGraph,
    pub b: MetricGraph,
    pub c: MetricGraph,
    pub d: MetricGraph,
    pub e: MetricGraph,
    pub f: MetricGraph,
}

impl ClarifyingBlocks {
    /// Unit edges for `a`..`d`, a unit loop for `e`, a unit pendant edge
    /// for `f`.
    pub fn unit() -> Self {
        let edge = MetricGraph::unit(2, &[(0, 1)], vec![0, 1]).expect("edge");
        ClarifyingBlocks {
            a: edge.clone(),
            b: edge.clone(),
            c: edge.clone(),
            d: edge,
            e: MetricGraph::unit(1, &[(0, 0)], vec![0]).expect("loop"),
            f: MetricGraph::unit(2, &[(0, 1)], vec![0]).expect("pendant"),
        }
    }

    fn check(&self) -> Result<()> {
        for g in [&self.a, &self.b, &self.c, &self.d] {
            if g.contacts().len() != 2 {
                return Err(Error::ContactMismatch(2, g.contacts().len()));
            }
        }
        for g in [&self.e, &self.f] {
            if g.contacts().len() != 1 {
                return Err(Error::ContactMismatch(1, g.contacts().len()));
            }
        }
        if self.a != self.b {
            require_equivalent(&self.a, &self.b, "clarifying example")?;
        }
        Ok(())
    }
}

/// The graph with degenerate Steklov eigenvalues: `a`/`b` blocks on the
/// edges of a complete graph on five contacts (alternating by edge
/// index), `c` blocks from each contact to a hub, `e` at the hub.
pub fn clarifying_k(blocks: &ClarifyingBlocks) -> Result<MetricGraph> {
    let mut attaches: Vec<(usize, [usize; 2])> = Vec::new();
    let mut t = 0;
    for i in 0..5 {
        for j in i + 1..5 {
            attaches.push((t % 2, [i, j]));
            t += 1;
        }
    }
    let hub = [5usize];
    let spokes: Vec<[usize; 2]> = (0..5).map(|i| [i, 5]).collect();
    let mut parts: Vec<Part<'_>> = attaches
        .iter()
        .map(|(which, at)| Part { graph: if *which == 0 { &blocks.a } else { &blocks.b }, attach: at })
        .collect();
    parts.extend(spokes.iter().map(|at| Part { graph: &blocks.c, attach: at }));
    parts.push(Part { graph: &blocks.e, attach: &hub });
    compose(6, &parts, identity(5))
}

/// A 5-star of `d` blocks whose centre is split into two vertices taking
/// `split.0` and `split.1` leaves, each with as many `f` copies as leaves.
pub fn clarifying_q(blocks: &ClarifyingBlocks, split: (usize, usize)) -> Result<MetricGraph> {
    if split.0 == 0 || split.1 == 0 {
        return Err(Error::DegenerateSplit);
    }
    if split.0 + split.1 != 5 {
        return Err(Error::InvalidArgument(format!("split {split:?} does not partition 5")));
    }
    let spokes: Vec<[usize; 2]> = (0..5).map(|i| [i, if i < split.0 { 5 } else { 6 }]).collect();
    let (v6, v7) = ([5usize], [6usize]);
    let mut parts: Vec<Part<'_>> = spokes.iter().map(|at| Part { graph: &blocks.d, attach: at }).collect();
    parts.extend((0..split.0).map(|_| Part { graph: &blocks.f, attach: &v6 }));
    parts.extend((0..split.1).map(|_| Part { graph: &blocks.f, attach: &v7 }));
    compose(7, &parts, identity(5))
}

/// The pair obtained by gluing the degenerate graph to the two split
/// stars.
pub fn build_clarifying_example(
    blocks: &ClarifyingBlocks,
    split1: (usize, usize),
    split2: (usize, usize),
) -> Result<(MetricGraph, MetricGraph)> {
    blocks.check()?;
    let k = clarifying_k(blocks)?;
    let q1 = clarifying_q(blocks, split1)?;
    let q2 = clarifying_q(blocks, split2)?;
    let pairing: Vec<(usize, usize)> = (0..5).map(|i| (i, i)).collect();
    Ok((k.glue(&q1, &pairing)?, k.glue(&q2, &pairing)?))
}

/// Joins the given points into one vertex and certifies that the
/// M-function is unchanged.
pub fn inner_symmetry_quotient(g: &MetricGraph, orbit: &[(usize, BigRational)]) -> Result<MetricGraph> {
    let joined = g.join_points(orbit)?;
    let n = g.contacts().len();
    let eq = steklov_equivalent(g, &joined, &identity(n), &DEFAULT_SAMPLES, EQUIVALENCE_TOL)?;
    if !eq.equivalent {
        return Err(Error::OrbitRefuted(eq.max_residual));
    }
    Ok(joined)
}
