//! Numeric roots of exact polynomials.
//!
//! Roots at `z = ±1` are removed by exact division, the rest is split into
//! square-free factors over `Q` before any floating point is involved, so
//! every eigenvalue solve sees simple roots only.

use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, Schur};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::{div_exact_int, square_free, ProjectivePoly};
use crate::error::{Error, Result};

/// Default clustering tolerance in root space.
pub const DEFAULT_ROOT_TOL: f64 = 1e-7;

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Simple roots of a square-free rational polynomial.
fn simple_roots(p: &[BigRational]) -> Result<Vec<Complex64>> {
    let deg = p.len() - 1;
    let lead = &p[deg];
    let c: Vec<f64> = p.iter().map(|x| to_f64(&(x / lead))).collect();
    if deg == 1 {
        return Ok(vec![Complex64::new(-c[0], 0.0)]);
    }
    let mut comp = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -c[i];
    }
    let eig = eigenvalues(comp)
        .ok_or_else(|| Error::InvalidArgument(format!("eigenvalue iteration did not converge at degree {deg}")))?;
    Ok(eig.iter().map(|&z| polish(&c, z)).collect())
}

const SCHUR_MAX_ITER: usize = 10_000;

/// Eigenvalues via a capped real Schur iteration. Companion matrices of
/// cyclotomic-like factors can stall the shifted QR sweep, so on failure
/// the matrix is conjugated by a fixed orthogonal matrix and retried.
fn eigenvalues(m: DMatrix<f64>) -> Option<Vec<Complex64>> {
    let n = m.nrows();
    if let Some(s) = Schur::try_new(m.clone(), f64::EPSILON, SCHUR_MAX_ITER) {
        return Some(s.complex_eigenvalues().iter().copied().collect());
    }
    for attempt in 1..=8 {
        let seed = DMatrix::from_fn(n, n, |i, j| ((i * 7 + j * 13 + attempt * 31) as f64 * 0.618_033_988_7).sin());
        let q = seed.qr().q();
        let conj = q.transpose() * &m * &q;
        if let Some(s) = Schur::try_new(conj, f64::EPSILON, SCHUR_MAX_ITER) {
            return Some(s.complex_eigenvalues().iter().copied().collect());
        }
    }
    None
}

/// A few Newton steps on a simple root; keeps the start if they diverge.
fn polish(c: &[f64], z0: Complex64) -> Complex64 {
    let eval = |z: Complex64| {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for &a in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    };
    let mut z = z0;
    let (p0, _) = eval(z0);
    let mut best = (p0.norm(), z0);
    for _ in 0..8 {
        let (p, dp) = eval(z);
        if dp.norm() == 0.0 {
            break;
        }
        z -= p / dp;
        let r = eval(z).0.norm();
        if r < best.0 {
            best = (r, z);
        }
        if r == 0.0 {
            break;
        }
    }
    best.1
}

fn deflate(coeffs: &mut Vec<BigInt>, root: i64) -> usize {
    let lin = vec![BigInt::from(-root), BigInt::one()];
    let mut m = 0;
    while coeffs.len() > 1 {
        match div_exact_int(coeffs, &lin) {
            Some(q) => {
                *coeffs = q;
                m += 1;
            }
            None => break,
        }
    }
    m
}

/// Merges sorted `(value, multiplicity)` entries closer than `tol`.
fn cluster(mut roots: Vec<(f64, usize)>, tol: f64) -> Vec<(f64, usize)> {
    roots.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, usize, f64)> = Vec::new();
    for (x, m) in roots {
        match out.last_mut() {
            Some(last) if (x - last.0).abs() < tol => {
                last.2 += x * m as f64;
                last.1 += m;
                last.0 = last.2 / last.1 as f64;
            }
            _ => out.push((x, m, x * m as f64)),
        }
    }
    out.into_iter().map(|(x, m, _)| (x, m)).collect()
}

/// Roots of `p` as `(k, multiplicity)` with `z = e^{ik}`, `k` in `(0, 2π]`,
/// sorted by `k`.
pub fn poly_roots_unit_circle(p: &ProjectivePoly, tol: f64) -> Result<Vec<(f64, usize)>> {
    let mut coeffs = p.coeffs().to_vec();
    let at_one = deflate(&mut coeffs, 1);
    let at_minus_one = deflate(&mut coeffs, -1);
    let mut roots = Vec::new();
    if at_minus_one > 0 {
        roots.push((PI, at_minus_one));
    }
    if coeffs.len() > 1 {
        let rat: Vec<BigRational> = coeffs.into_iter().map(BigRational::from_integer).collect();
        for (factor, mult) in square_free(&rat) {
            for z in simple_roots(&factor)? {
                let modulus = z.norm();
                if (modulus - 1.0).abs() >= tol {
                    return Err(Error::RootOffUnitCircle { modulus });
                }
                let mut k = z.arg();
                if k <= 0.0 {
                    k += TAU;
                }
                roots.push((k, mult));
            }
        }
    }
    let mut out = cluster(roots, tol);
    // roots within tol of z = 1 but not exactly there would land near 0 or 2π
    if at_one > 0 {
        out.push((TAU, at_one));
        out = cluster(out, tol);
    }
    Ok(out)
}

/// Real roots of a rational polynomial with multiplicities, sorted. Roots
/// with imaginary part above `tol` are rejected.
pub fn real_roots(p: &[BigRational], tol: f64) -> Result<Vec<(f64, usize)>> {
    let mut roots = Vec::new();
    let mut rest = p.to_vec();
    while rest.last().is_some_and(|x| x.is_zero()) {
        rest.pop();
    }
    if rest.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let mut zero_mult = 0;
    while rest.len() > 1 && rest[0].is_zero() {
        rest.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((0.0, zero_mult));
    }
    if rest.len() > 1 {
        for (factor, mult) in square_free(&rest) {
            for z in simple_roots(&factor)? {
                if z.im.abs() >= tol {
                    return Err(Error::InvalidArgument(format!("non-real root {z}")));
                }
                roots.push((z.re, mult));
            }
        }
    }
    Ok(cluster(roots, tol))
}
