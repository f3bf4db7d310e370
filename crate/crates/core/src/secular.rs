//! Secular polynomials of equilateral graphs and exact metric isospectrality.

use std::collections::HashMap;
use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{poly_roots_unit_circle, polymat_det, ProjectivePoly, RationalMatrix};
use crate::error::{Error, Result};
use crate::graph::MetricGraph;

/// The data of `E(z) - S_v`: endpoint `2e` and `2e + 1` belong to edge `e`
/// and are coupled by `z`; each vertex contributes a block `(2/d)J - I` on
/// the indices of its endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecularMatrixSpec {
    pub size: usize,
    pub pairing: Vec<(usize, usize)>,
    pub blocks: Vec<VertexBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexBlock {
    pub indices: Vec<usize>,
    pub entries: Vec<BigRational>,
}

impl VertexBlock {
    pub fn degree(&self) -> usize {
        self.indices.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.indices.len() + j]
    }
}

impl SecularMatrixSpec {
    /// `E(z) - S_v` evaluated at `z`.
    pub fn matrix_at(&self, z: &BigRational) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.size, self.size);
        for &(a, b) in &self.pairing {
            m.set(a, b, z.clone());
            m.set(b, a, z.clone());
        }
        for block in &self.blocks {
            let d = block.degree();
            for i in 0..d {
                for j in 0..d {
                    m.add_to(block.indices[i], block.indices[j], &-block.entry(i, j));
                }
            }
        }
        m
    }
}

/// Builds the secular matrix data of a graph with all lengths equal to 1.
pub fn build_secular_matrix(g: &MetricGraph) -> Result<SecularMatrixSpec> {
    if !g.is_unilateral() {
        return Err(Error::NotUnilateral(
            "graph not unilateral; subdivide integer lengths into unit edges first".into(),
        ));
    }
    let mut index = HashMap::with_capacity(2 * g.edge_count());
    let mut pairing = Vec::with_capacity(g.edge_count());
    for (e, edge) in g.edges().iter().enumerate() {
        index.insert(edge.a, 2 * e);
        index.insert(edge.b, 2 * e + 1);
        pairing.push((2 * e, 2 * e + 1));
    }
    let mut blocks = Vec::with_capacity(g.vertex_count());
    for (v, class) in g.vertices().iter().enumerate() {
        let d = class.len();
        if d == 0 {
            return Err(Error::DegreeZeroVertex(v));
        }
        let mut indices: Vec<usize> = class.iter().map(|x| index[x]).collect();
        indices.sort_unstable();
        let two_over_d = BigRational::new(BigInt::from(2), BigInt::from(d));
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let delta = if i == j { BigRational::one() } else { BigRational::zero() };
                entries.push(&two_over_d - delta);
            }
        }
        blocks.push(VertexBlock { indices, entries });
    }
    Ok(SecularMatrixSpec { size: 2 * g.edge_count(), pairing, blocks })
}

/// The graph itself when unilateral, its unit subdivision when all lengths
/// are integers, an error otherwise.
pub fn unilateral_form(g: &MetricGraph) -> Result<MetricGraph> {
    if g.is_unilateral() {
        Ok(g.clone())
    } else {
        g.unit_subdivide()
    }
}

/// `det(E(z) - S_v)` as an exact projective polynomial of degree `2N`.
///
/// Graphs with integer lengths are first subdivided into unit edges.
pub fn secular_poly(g: &MetricGraph) -> Result<ProjectivePoly> {
    let g = unilateral_form(g)?;
    let spec = build_secular_matrix(&g)?;
    polymat_det(|z| Ok(spec.matrix_at(z)), spec.size, spec.size)
}

/// Equal secular polynomials and equal component counts.
pub fn metric_isospectral(g1: &MetricGraph, g2: &MetricGraph) -> Result<bool> {
    let (p1, p2) = (secular_poly(g1)?, secular_poly(g2)?);
    Ok(p1 == p2 && g1.components() == g2.components())
}

/// Laplacian spectrum of an equilateral graph: eigenvalues are
/// `(k + 2πm)²` for `m ≥ 0` and `k` a fundamental root, plus `0` with
/// multiplicity `components`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub fundamental_roots: Vec<(f64, usize)>,
    pub components: usize,
}

impl SpectrumReport {
    /// Multiplicity of the fundamental root within `tol` of `k`.
    pub fn multiplicity_near(&self, k: f64, tol: f64) -> usize {
        self.fundamental_roots.iter().filter(|r| (r.0 - k).abs() < tol).map(|r| r.1).sum()
    }

    /// Eigenvalues up to `lambda_max` with multiplicities, ascending.
    pub fn eigenvalues(&self, lambda_max: f64) -> Vec<(f64, usize)> {
        let mut out = vec![(0.0, self.components)];
        let mut m = 0.0;
        loop {
            let base = TAU * m;
            let mut any = false;
            for &(k, mult) in &self.fundamental_roots {
                let lambda = (k + base).powi(2);
                if lambda <= lambda_max {
                    out.push((lambda, mult));
                    any = true;
                }
            }
            if !any {
                break;
            }
            m += 1.0;
        }
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        out
    }
}

pub fn spectrum_report(g: &MetricGraph, tol: f64) -> Result<SpectrumReport> {
    let p = secular_poly(g)?;
    Ok(SpectrumReport { fundamental_roots: poly_roots_unit_circle(&p, tol)?, components: g.components() })
}
