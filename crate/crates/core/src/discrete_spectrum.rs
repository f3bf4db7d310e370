//! Normalized Laplacian spectra and their link to equilateral metric graphs.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{charpoly_exact, real_roots, RationalMatrix};
use crate::error::{Error, Result};
use crate::graph::{DiscreteGraph, MetricGraph};
use crate::secular::{metric_isospectral, spectrum_report, unilateral_form};

/// Exact `det(μI - L_N)`, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LnCharpoly {
    coeffs: Vec<BigRational>,
}

impl LnCharpoly {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Eigenvalues with multiplicities, ascending.
    pub fn roots(&self, tol: f64) -> Result<Vec<(f64, usize)>> {
        real_roots(&self.coeffs, tol)
    }

    /// Multiplicity of `μ = 0`, counted exactly.
    pub fn zero_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }
}

impl std::fmt::Display for LnCharpoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let body: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "charpoly: {}", body.join(" "))
    }
}

/// Characteristic polynomial of `I - D⁻¹A`, which is similar to `L_N`.
pub fn ln_charpoly(d: &DiscreteGraph) -> Result<LnCharpoly> {
    let n = d.n();
    if n == 0 {
        return Err(Error::InvalidGraph("empty graph".into()));
    }
    let mut m = RationalMatrix::identity(n);
    for u in 0..n {
        let deg = d.degree(u);
        if deg == 0 {
            return Err(Error::DegreeZeroVertex(u));
        }
        for v in 0..n {
            let a = d.adj(u, v);
            if a != 0 {
                m.add_to(u, v, &-BigRational::new(BigInt::from(a), BigInt::from(deg)));
            }
        }
    }
    Ok(LnCharpoly { coeffs: charpoly_exact(&m) })
}

pub fn ln_isospectral(d1: &DiscreteGraph, d2: &DiscreteGraph) -> Result<bool> {
    if d1.n() != d2.n() {
        return Ok(false);
    }
    Ok(ln_charpoly(d1)? == ln_charpoly(d2)?)
}

/// Residuals of `1 - cos k` against the normalized Laplacian spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct VonBelowReport {
    /// `(k, min_μ |1 - cos k - μ|)` for every generic fundamental root.
    pub residuals: Vec<(f64, f64)>,
    pub tol: f64,
}

impl VonBelowReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.1).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|r| r.1 < self.tol)
    }
}

fn is_multiple_of_pi(k: f64) -> bool {
    let r = k / PI;
    (r - r.round()).abs() < 1e-9
}

/// Checks `1 - cos k ∈ σ(L_N)` for every fundamental root `k` that is not a
/// multiple of π. Integer lengths are unit-subdivided first.
pub fn von_below_check(g: &MetricGraph, tol: f64) -> Result<VonBelowReport> {
    let u = unilateral_form(g)?;
    if u.components() != 1 {
        return Err(Error::InvalidGraph("von Below check needs a connected graph".into()));
    }
    let report = spectrum_report(&u, tol.max(1e-8))?;
    let mu = ln_charpoly(&u.to_discrete())?.roots(1e-7)?;
    let residuals = report
        .fundamental_roots
        .iter()
        .filter(|r| !is_multiple_of_pi(r.0))
        .map(|&(k, _)| {
            let x = 1.0 - k.cos();
            (k, mu.iter().map(|m| (x - m.0).abs()).fold(f64::INFINITY, f64::min))
        })
        .collect();
    Ok(VonBelowReport { residuals, tol })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropositionVerdict {
    pub isospectral: bool,
    pub charpolys: (LnCharpoly, LnCharpoly),
    pub betti: (usize, usize),
}

/// Decides metric isospectrality from normalized Laplacian charpolys and
/// first Betti numbers alone.
pub fn proposition_check(g1: &MetricGraph, g2: &MetricGraph) -> Result<PropositionVerdict> {
    let (u1, u2) = (unilateral_form(g1)?, unilateral_form(g2)?);
    let (d1, d2) = (u1.to_discrete(), u2.to_discrete());
    let charpolys = (ln_charpoly(&d1)?, ln_charpoly(&d2)?);
    let betti = (u1.betti(), u2.betti());
    let isospectral = d1.n() == d2.n() && charpolys.0 == charpolys.1 && betti.0 == betti.1;
    Ok(PropositionVerdict { isospectral, charpolys, betti })
}

/// Runs [`proposition_check`] and the secular comparison side by side.
pub fn proposition_agrees(g1: &MetricGraph, g2: &MetricGraph) -> Result<bool> {
    Ok(proposition_check(g1, g2)?.isospectral == metric_isospectral(g1, g2)?)
}
