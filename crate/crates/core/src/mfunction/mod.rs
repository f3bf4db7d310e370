//! The M-function (Dirichlet-to-Neumann map) on the contact set, Steklov
//! eigenvalues and everything derived from them.

mod detect;
mod equivalence;

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::numfmt::format_sig;

pub use detect::{
    detectable_spectrum, invisible_multiplicity, trace_rank, DetectableSpectrum, InvisibleCount, TraceRank,
};
pub use equivalence::{
    method3_verify, steklov_equivalent, Equivalence, Method3Report, Method3Sample, DEFAULT_SAMPLES,
};

/// Below this `|sin kℓ|` an edge block is treated as a pole.
pub const EDGE_SINGULAR_TOL: f64 = 1e-10;
/// Condition number above which the interior block counts as singular.
pub const INTERIOR_COND_LIMIT: f64 = 1e10;

/// The 2×2 M-function of an interval of length `length` at `lambda`, or
/// `None` at a Dirichlet eigenvalue of the interval.
pub fn edge_m_block(length: f64, lambda: f64) -> Option<[[f64; 2]; 2]> {
    let (diag, off) = if lambda > 0.0 {
        let k = lambda.sqrt();
        let s = (k * length).sin();
        if s.abs() < EDGE_SINGULAR_TOL {
            return None;
        }
        (-k * (k * length).cos() / s, k / s)
    } else if lambda < 0.0 {
        let kappa = (-lambda).sqrt();
        let x = kappa * length;
        (-kappa / x.tanh(), kappa / x.sinh())
    } else {
        (-1.0 / length, 1.0 / length)
    };
    Some([[diag, off], [off, diag]])
}

/// M-function value at one spectral parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct MFunEval {
    pub lambda: f64,
    /// Contact-ordered; all entries NaN when not regular.
    pub matrix: DMatrix<f64>,
    pub regular: bool,
}

/// Vertex-indexed sum of edge blocks, `None` if an edge block is singular.
pub(crate) fn vertex_matrix(g: &MetricGraph, lambda: f64) -> Option<DMatrix<f64>> {
    let n = g.vertex_count();
    let mut t = DMatrix::<f64>::zeros(n, n);
    for (u, v, len) in g.edge_triples() {
        let len = len.to_f64().expect("finite length");
        let b = edge_m_block(len, lambda)?;
        if u == v {
            t[(u, u)] += 2.0 * b[0][0] + 2.0 * b[0][1];
        } else {
            t[(u, u)] += b[0][0];
            t[(v, v)] += b[1][1];
            t[(u, v)] += b[0][1];
            t[(v, u)] += b[1][0];
        }
    }
    Some(t)
}

fn interior_vertices(g: &MetricGraph) -> Vec<usize> {
    (0..g.vertex_count()).filter(|v| !g.is_contact(*v)).collect()
}

fn submatrix(t: &DMatrix<f64>, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), cols.len(), |i, j| t[(rows[i], cols[j])])
}

/// Inverse of a symmetric matrix, `None` when its condition number, taken
/// against `scale` as well as its own largest eigenvalue, exceeds
/// [`INTERIOR_COND_LIMIT`].
fn symmetric_inverse(c: DMatrix<f64>, scale: f64) -> Option<DMatrix<f64>> {
    let eig = SymmetricEigen::new(c);
    let abs: Vec<f64> = eig.eigenvalues.iter().map(|x| x.abs()).collect();
    let max = abs.iter().cloned().fold(scale, f64::max);
    let min = abs.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(min > 0.0) || max / min > INTERIOR_COND_LIMIT {
        return None;
    }
    let inv_diag = DMatrix::from_diagonal(&eig.eigenvalues.map(|x| 1.0 / x));
    Some(&eig.eigenvectors * inv_diag * eig.eigenvectors.transpose())
}

/// Schur complement of the vertex matrix onto the contact set.
pub fn m_function(g: &MetricGraph, lambda: f64) -> Result<MFunEval> {
    let contacts = g.contacts().to_vec();
    if contacts.is_empty() {
        return Err(Error::EmptyContactSet);
    }
    let b = contacts.len();
    let singular = MFunEval { lambda, matrix: DMatrix::from_element(b, b, f64::NAN), regular: false };
    let Some(t) = vertex_matrix(g, lambda) else {
        return Ok(singular);
    };
    let interior = interior_vertices(g);
    let a = submatrix(&t, &contacts, &contacts);
    if interior.is_empty() {
        return Ok(MFunEval { lambda, matrix: a, regular: true });
    }
    let bm = submatrix(&t, &contacts, &interior);
    let scale = t.amax().max(1.0);
    let Some(c_inv) = symmetric_inverse(submatrix(&t, &interior, &interior), scale) else {
        return Ok(singular);
    };
    let mut m = a - &bm * c_inv * bm.transpose();
    let sym = (&m + m.transpose()) * 0.5;
    m.copy_from(&sym);
    Ok(MFunEval { lambda, matrix: m, regular: true })
}

fn sorted_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Steklov eigenvalues, ascending, or `None` at a singular parameter.
pub fn steklov_eigs(g: &MetricGraph, lambda: f64) -> Result<Option<Vec<f64>>> {
    let m = m_function(g, lambda)?;
    Ok(m.regular.then(|| sorted_eigenvalues(&m.matrix)))
}

/// Steklov eigenvalues over a uniform grid in `lambda`.
#[derive(Debug, Clone, PartialEq)]
pub struct SteklovCurve {
    pub grid: Vec<f64>,
    /// Sorted eigenvalues per sample; empty for singular samples.
    pub branches: Vec<Vec<f64>>,
    pub regular: Vec<bool>,
    /// `det M(λ)` per sample, NaN when singular.
    pub det: Vec<f64>,
    pub contacts: usize,
}

impl SteklovCurve {
    /// CSV with columns `lambda,regular,mu_1..mu_B,det`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda,regular");
        for i in 1..=self.contacts {
            out.push_str(&format!(",mu_{i}"));
        }
        out.push_str(",det\n");
        for (i, &l) in self.grid.iter().enumerate() {
            out.push_str(&format_sig(l, 12));
            out.push_str(if self.regular[i] { ",1" } else { ",0" });
            for j in 0..self.contacts {
                let x = self.branches[i].get(j).copied().unwrap_or(f64::NAN);
                out.push(',');
                out.push_str(&format_sig(x, 12));
            }
            out.push(',');
            out.push_str(&format_sig(self.det[i], 12));
            out.push('\n');
        }
        out
    }
}

pub fn steklov_sweep(g: &MetricGraph, lambda_min: f64, lambda_max: f64, steps: usize) -> Result<SteklovCurve> {
    if !(lambda_min < lambda_max) || steps < 2 {
        return Err(Error::InvalidArgument("sweep needs lambda_min < lambda_max and steps >= 2".into()));
    }
    if g.contacts().is_empty() {
        return Err(Error::EmptyContactSet);
    }
    let h = (lambda_max - lambda_min) / (steps - 1) as f64;
    let grid: Vec<f64> = (0..steps).map(|i| lambda_min + h * i as f64).collect();
    let evals: Vec<MFunEval> = grid.par_iter().map(|&l| m_function(g, l)).collect::<Result<_>>()?;
    let mut curve = SteklovCurve {
        grid,
        branches: Vec::with_capacity(steps),
        regular: Vec::with_capacity(steps),
        det: Vec::with_capacity(steps),
        contacts: g.contacts().len(),
    };
    for e in evals {
        curve.regular.push(e.regular);
        if e.regular {
            curve.det.push(e.matrix.determinant());
            curve.branches.push(sorted_eigenvalues(&e.matrix));
        } else {
            curve.det.push(f64::NAN);
            curve.branches.push(Vec::new());
        }
    }
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn k4() -> MetricGraph {
        MetricGraph::unit(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], vec![0, 1, 2, 3]).unwrap()
    }

    fn star(d: usize) -> MetricGraph {
        let e: Vec<(usize, usize)> = (1..=d).map(|i| (0, i)).collect();
        MetricGraph::unit(d + 1, &e, (1..=d).collect()).unwrap()
    }

    #[test]
    fn edge_block_examples() {
        let b = edge_m_block(1.0, PI * PI / 4.0).unwrap();
        assert!(b[0][0].abs() < 1e-12 && (b[0][1] - PI / 2.0).abs() < 1e-12);
        assert_eq!(edge_m_block(1.0, 0.0).unwrap(), [[-1.0, 1.0], [1.0, -1.0]]);
        assert!(edge_m_block(1.0, PI * PI).is_none());
    }

    #[test]
    fn single_edge_is_its_block() {
        let g = MetricGraph::unit(2, &[(0, 1)], vec![0, 1]).unwrap();
        let m = m_function(&g, 2.0).unwrap();
        let b = edge_m_block(1.0, 2.0).unwrap();
        assert!(m.regular);
        assert_eq!(m.matrix[(0, 0)], b[0][0]);
        assert_eq!(m.matrix[(0, 1)], b[0][1]);
    }

    #[test]
    fn k4_matrix_form() {
        let k: f64 = 1.1;
        let m = m_function(&k4(), k * k).unwrap().matrix;
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { -3.0 * k / k.tan() } else { k / k.sin() };
                assert!((m[(i, j)] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn closed_form_eigenvalues() {
        let k = PI / 2.0;
        let ev = steklov_eigs(&k4(), k * k).unwrap().unwrap();
        let want = [-k, -k, -k, 3.0 * k];
        for (a, b) in ev.iter().zip(want) {
            assert!((a - b).abs() < 1e-9, "{ev:?}");
        }
        let k = PI / 4.0;
        let ev = steklov_eigs(&star(4), k * k).unwrap().unwrap();
        let want = [-k, -k, -k, k];
        for (a, b) in ev.iter().zip(want) {
            assert!((a - b).abs() < 1e-9, "{ev:?}");
        }
    }

    #[test]
    fn very_negative_lambda_is_negative_definite() {
        let ev = steklov_eigs(&k4(), -100.0).unwrap().unwrap();
        assert!(ev.iter().all(|&x| x < 0.0));
    }

    #[test]
    fn empty_contacts() {
        let g = MetricGraph::unit(2, &[(0, 1)], vec![]).unwrap();
        assert_eq!(m_function(&g, 1.0), Err(Error::EmptyContactSet));
    }

    #[test]
    fn interior_pole_flagged() {
        // a star's center is a Dirichlet pole when cot k = 0
        let m = m_function(&star(3), PI * PI / 4.0).unwrap();
        assert!(!m.regular);
        assert!(m.matrix.iter().all(|x| x.is_nan()));
    }

    #[test]
    fn sweep_flags_only_the_pole() {
        let g = MetricGraph::unit(2, &[(0, 1)], vec![0, 1]).unwrap();
        let c = steklov_sweep(&g, PI * PI - 2.0, PI * PI + 2.0, 5).unwrap();
        assert_eq!(c.regular, vec![true, true, false, true, true]);
        assert!(c.to_csv().starts_with("lambda,regular,mu_1,mu_2,det\n"));
    }

    #[test]
    fn sweep_is_monotone_on_negative_axis() {
        let c = steklov_sweep(&k4(), -5.0, -0.1, 50).unwrap();
        assert!(c.regular.iter().all(|&r| r));
        for w in c.branches.windows(2) {
            for (a, b) in w[0].iter().zip(&w[1]) {
                assert!(b - a >= -1e-9);
            }
        }
    }
}
