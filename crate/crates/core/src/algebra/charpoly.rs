use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::matrix::RationalMatrix;

/// Exact `det(mu I - m)` by the Faddeev-LeVerrier recurrence, constant
/// term first (monic, degree `n`).
///
/// # Panics
/// If `m` is not square.
pub fn charpoly_exact(m: &RationalMatrix) -> Vec<BigRational> {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let mut coeffs = vec![BigRational::one(); n + 1];
    // running matrix M_k with M_0 = 0
    let mut running = RationalMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = m.mul(&running);
        for i in 0..n {
            next.add_to(i, i, &coeffs[n - k + 1]);
        }
        let am = m.mul(&next);
        coeffs[n - k] = -am.trace() / BigRational::from_integer(BigInt::from(k));
        running = next;
    }
    coeffs
}
