//! Comparing M-functions: Steklov equivalence and subspace swapping.

use nalgebra::{DMatrix, SymmetricEigen};

use super::{m_function, sorted_eigenvalues};
use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::secular::metric_isospectral;

/// Default sample parameters for equivalence tests.
pub const DEFAULT_SAMPLES: [f64; 9] = [-5.0, -4.0, -3.0, -2.0, -1.0, 0.3, 0.7, 1.3, 2.1];

/// Eigenvalue clustering tolerance for degenerate Steklov subspaces.
const CLUSTER_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equivalence {
    pub equivalent: bool,
    pub max_residual: f64,
}

fn check_pairing(n1: usize, n2: usize, pairing: &[usize]) -> Result<()> {
    if n1 != n2 {
        return Err(Error::ContactMismatch(n1, n2));
    }
    let mut seen = vec![false; n2];
    if pairing.len() != n1 {
        return Err(Error::InvalidPairing(format!("pairing has {} entries for {n1} contacts", pairing.len())));
    }
    for &j in pairing {
        if j >= n2 || seen[j] {
            return Err(Error::InvalidPairing("pairing is not a bijection of contacts".into()));
        }
        seen[j] = true;
    }
    Ok(())
}

/// `M` of `g` with rows and columns reordered so that entry `i` is the
/// contact `pairing[i]`.
fn paired_m(g: &MetricGraph, lambda: f64, pairing: &[usize]) -> Result<DMatrix<f64>> {
    let m = m_function(g, lambda)?;
    if !m.regular {
        return Err(Error::SingularSample(lambda));
    }
    let n = pairing.len();
    Ok(DMatrix::from_fn(n, n, |i, j| m.matrix[(pairing[i], pairing[j])]))
}

/// Compares `M_{g1}(λ)` with `M_{g2}(λ)` at each sample, contact `i` of
/// `g1` matched with contact `pairing[i]` of `g2`.
pub fn steklov_equivalent(
    g1: &MetricGraph,
    g2: &MetricGraph,
    pairing: &[usize],
    samples: &[f64],
    tol: f64,
) -> Result<Equivalence> {
    check_pairing(g1.contacts().len(), g2.contacts().len(), pairing)?;
    let identity: Vec<usize> = (0..pairing.len()).collect();
    let mut max_residual: f64 = 0.0;
    for &l in samples {
        let m1 = paired_m(g1, l, &identity)?;
        let m2 = paired_m(g2, l, pairing)?;
        let r = (m1 - m2).amax();
        max_residual = max_residual.max(r);
    }
    Ok(Equivalence { equivalent: max_residual < tol, max_residual })
}

/// Per-sample outcome of the subspace swapping conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct Method3Sample {
    pub lambda: f64,
    /// Dimension of the largest degenerate eigenspace of `M_K`.
    pub multiplicity: usize,
    /// (a) `M_K` has a repeated eigenvalue.
    pub degenerate: bool,
    /// (b) `M_{Q1}` and `M_{Q2}` have equal spectra.
    pub spectra_match: bool,
    /// (c) both leave the complement of the degenerate eigenspace invariant
    /// and agree on it.
    pub compressions_match: bool,
    pub spectra_residual: f64,
    pub compression_residual: f64,
}

impl Method3Sample {
    pub fn passed(&self) -> bool {
        self.degenerate && self.spectra_match && self.compressions_match
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Method3Report {
    pub samples: Vec<Method3Sample>,
    /// Secular comparison of the two glued graphs, when both are
    /// equilateral after subdivision.
    pub glued_isospectral: Option<bool>,
}

impl Method3Report {
    pub fn passed(&self) -> bool {
        self.samples.iter().all(Method3Sample::passed) && self.glued_isospectral != Some(false)
    }
}

/// Orthonormal basis of the largest eigenspace of dimension at least 2,
/// and of its orthogonal complement.
fn degenerate_split(m: &DMatrix<f64>) -> Option<(DMatrix<f64>, DMatrix<f64>)> {
    let eig = SymmetricEigen::new(m.clone());
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut best: Option<(usize, usize)> = None;
    let mut start = 0;
    for i in 1..=n {
        let split = i == n || {
            let (a, b) = (eig.eigenvalues[order[i - 1]], eig.eigenvalues[order[i]]);
            (b - a).abs() > CLUSTER_TOL * a.abs().max(1.0)
        };
        if split {
            let len = i - start;
            if len >= 2 && best.is_none_or(|(_, l)| len > l) {
                best = Some((start, len));
            }
            start = i;
        }
    }
    let (s, len) = best?;
    let inside: Vec<usize> = order[s..s + len].to_vec();
    let outside: Vec<usize> = order.iter().copied().filter(|i| !inside.contains(i)).collect();
    let pick = |idx: &[usize]| DMatrix::from_fn(n, idx.len(), |r, c| eig.eigenvectors[(r, idx[c])]);
    Some((pick(&inside), pick(&outside)))
}

/// Checks, at each sample, the conditions under which the Steklov
/// subspaces of `q1` and `q2` can be swapped against `k_graph`:
/// `pairing[i]` is the contact of each `q` glued to contact `i` of
/// `k_graph`.
pub fn method3_verify(
    k_graph: &MetricGraph,
    q1: &MetricGraph,
    q2: &MetricGraph,
    pairing: &[usize],
    samples: &[f64],
    tol: f64,
) -> Result<Method3Report> {
    let nk = k_graph.contacts().len();
    check_pairing(nk, q1.contacts().len(), pairing)?;
    check_pairing(nk, q2.contacts().len(), pairing)?;
    let identity: Vec<usize> = (0..nk).collect();
    let mut out = Vec::with_capacity(samples.len());
    for &l in samples {
        let mk = paired_m(k_graph, l, &identity)?;
        let m1 = paired_m(q1, l, pairing)?;
        let m2 = paired_m(q2, l, pairing)?;
        let spectra_residual = sorted_eigenvalues(&m1)
            .iter()
            .zip(sorted_eigenvalues(&m2))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let split = degenerate_split(&mk);
        let (multiplicity, compression_residual) = match &split {
            Some((v, w)) => {
                let c = (w.transpose() * &m1 * w - w.transpose() * &m2 * w).amax();
                let cross1 = (v.transpose() * &m1 * w).amax();
                let cross2 = (v.transpose() * &m2 * w).amax();
                (v.ncols(), c.max(cross1).max(cross2))
            }
            None => (1, f64::INFINITY),
        };
        out.push(Method3Sample {
            lambda: l,
            multiplicity,
            degenerate: split.is_some(),
            spectra_match: spectra_residual < tol,
            compressions_match: compression_residual < tol,
            spectra_residual,
            compression_residual,
        });
    }
    let pairs: Vec<(usize, usize)> = pairing.iter().enumerate().map(|(i, &j)| (i, j)).collect();
    let glued_isospectral = match (k_graph.glue(q1, &pairs), k_graph.glue(q2, &pairs)) {
        (Ok(g1), Ok(g2)) if g1.has_integer_lengths() && g2.has_integer_lengths() => {
            Some(metric_isospectral(&g1, &g2)?)
        }
        _ => None,
    };
    Ok(Method3Report { samples: out, glued_isospectral })
}
