//! Determinants of polynomial matrices by exact evaluation and interpolation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::matrix::RationalMatrix;
use super::poly::{eval_rat, poly_normalize, ProjectivePoly};
use crate::error::{Error, Result};

/// Integer sample points `-D/2, ..., D/2 + 1`, then further outwards.
fn sample_points(degree_bound: usize) -> impl Iterator<Item = i64> {
    let lo = -((degree_bound / 2) as i64);
    let hi = lo + degree_bound as i64 + 1;
    (lo..=hi).chain((1..).flat_map(move |s| [hi + s, lo - s]))
}

/// `det(entry_eval(z))` as a projective polynomial of degree at most
/// `degree_bound`.
///
/// Evaluates exactly at `degree_bound + 1` integer points, interpolates,
/// and checks the interpolant at one more point. Points where `entry_eval`
/// fails (poles) are skipped.
pub fn polymat_det<F>(entry_eval: F, size: usize, degree_bound: usize) -> Result<ProjectivePoly>
where
    F: Fn(&BigRational) -> Result<RationalMatrix> + Sync,
{
    let needed = degree_bound + 2;
    let eval = |z: i64| -> Option<(BigRational, BigRational)> {
        let zr = BigRational::from_integer(BigInt::from(z));
        let m = entry_eval(&zr).ok()?;
        if m.rows() != size || !m.is_square() {
            return None;
        }
        let det = m.determinant();
        Some((zr, det))
    };
    let mut points: Vec<(BigRational, BigRational)> = sample_points(degree_bound)
        .take(needed)
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter_map(eval)
        .collect();
    let mut extra = sample_points(degree_bound).skip(needed);
    let mut tries = 0;
    while points.len() < needed {
        tries += 1;
        if tries > 4 * needed {
            return Err(Error::NoSamplePoints);
        }
        if let Some(p) = extra.next().and_then(eval) {
            points.push(p);
        }
    }
    let (check_x, check_y) = points.pop().expect("at least two points");
    let coeffs = interpolate(&points);
    if eval_rat(&coeffs, &check_x) != check_y {
        return Err(Error::DegreeBoundViolated(check_x.to_string()));
    }
    poly_normalize(&coeffs)
}

/// Newton divided differences, expanded to monomial coefficients.
pub(crate) fn interpolate(points: &[(BigRational, BigRational)]) -> Vec<BigRational> {
    let n = points.len();
    let xs: Vec<&BigRational> = points.iter().map(|p| &p.0).collect();
    let mut dd: Vec<BigRational> = points.iter().map(|p| p.1.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
        }
    }
    let mut poly = vec![BigRational::zero(); n];
    poly[0] = dd[n - 1].clone();
    let mut deg = 0;
    for k in (0..n - 1).rev() {
        // poly <- poly * (z - x_k) + dd[k]
        deg += 1;
        for i in (1..=deg).rev() {
            let shifted = poly[i - 1].clone();
            let t = &poly[i] * xs[k];
            poly[i] = shifted - t;
        }
        poly[0] = &dd[k] - &poly[0] * xs[k];
    }
    poly
}
