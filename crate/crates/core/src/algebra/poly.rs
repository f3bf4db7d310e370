//! Integer polynomials up to scalar multiples, plus the rational helpers
//! (exact division, gcd, square-free decomposition) the root finder needs.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer polynomial with coprime coefficients and positive leading
/// coefficient, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoly {
    coeffs: Vec<BigInt>,
}

/// Clears denominators, removes the integer content and makes the leading
/// coefficient positive.
pub fn poly_normalize(coeffs: &[BigRational]) -> Result<ProjectivePoly> {
    let mut c: Vec<BigRational> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x * &lcm).to_integer()).collect();
    Ok(ProjectivePoly::from_ints(ints))
}

impl ProjectivePoly {
    /// Normalizes arbitrary integer coefficients.
    ///
    /// # Panics
    /// If all coefficients are zero.
    pub fn from_ints(mut ints: Vec<BigInt>) -> Self {
        while ints.last().is_some_and(|x| x.is_zero()) {
            ints.pop();
        }
        assert!(!ints.is_empty(), "zero polynomial not projective");
        let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        let coeffs = ints.into_iter().map(|x| x / &content * &sign).collect();
        ProjectivePoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_ints(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Expanded product of `factor^power` terms, each factor given constant
    /// term first.
    pub fn product(factors: &[(&[i64], usize)]) -> Self {
        let mut acc = vec![BigInt::one()];
        for (f, power) in factors {
            let f: Vec<BigInt> = f.iter().map(|&c| BigInt::from(c)).collect();
            for _ in 0..*power {
                acc = mul_int(&acc, &f);
            }
        }
        Self::from_ints(acc)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect()
    }

    pub fn eval(&self, z: &BigRational) -> BigRational {
        eval_rat(&self.to_rational(), z)
    }

    /// Coefficients reversed equal the coefficients up to a global sign.
    pub fn is_palindromic(&self) -> bool {
        let rev: Vec<BigInt> = self.coeffs.iter().rev().cloned().collect();
        rev == self.coeffs || rev.iter().zip(&self.coeffs).all(|(a, b)| *a == -b)
    }

    /// Order of vanishing at the integer point `z0`, by repeated exact
    /// division by `(z - z0)`.
    pub fn multiplicity_at(&self, z0: i64) -> usize {
        let lin = vec![BigInt::from(-z0), BigInt::one()];
        let mut cur = self.coeffs.clone();
        let mut m = 0;
        while cur.len() > 1 {
            match div_exact_int(&cur, &lin) {
                Some(q) => {
                    cur = q;
                    m += 1;
                }
                None => break,
            }
        }
        m
    }

    /// The single-line text form `poly: c0 c1 ... cD`.
    pub fn to_line(&self) -> String {
        let body: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("poly: {}", body.join(" "))
    }
}

impl fmt::Display for ProjectivePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

impl FromStr for ProjectivePoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().strip_prefix("poly:").ok_or_else(|| Error::Parse {
            line: 1,
            message: "expected `poly:` prefix".into(),
        })?;
        let coeffs = body
            .split_whitespace()
            .map(|t| {
                t.parse::<BigInt>().map_err(|_| Error::Parse { line: 1, message: format!("bad coefficient `{t}`") })
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroPolynomial);
        }
        Ok(ProjectivePoly::from_ints(coeffs))
    }
}

pub(crate) fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient `a / b` in `Z[z]`, or `None` if `b` does not divide `a`.
pub(crate) fn div_exact_int(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len().checked_sub(1)?;
    if a.len() < b.len() {
        return if a.iter().all(|x| x.is_zero()) { Some(vec![BigInt::zero()]) } else { None };
    }
    let lead = &b[db];
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let top = &rem[i + db];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    if rem.iter().all(|x| x.is_zero()) {
        Some(q)
    } else {
        None
    }
}

pub(crate) fn eval_rat(p: &[BigRational], z: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * z + c)
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|x| x.is_zero()) {
        p.pop();
    }
    p
}

fn derivative(p: &[BigRational]) -> Vec<BigRational> {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

/// Quotient and remainder over `Q`. `b` must be nonzero (trimmed).
fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), trim(rem));
    }
    let mut q = vec![BigRational::zero(); rem.len() - db];
    let inv = b[db].recip();
    for i in (0..q.len()).rev() {
        let c = &rem[i + db] * &inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    rem.truncate(db);
    (trim(q), trim(rem))
}

fn monic(p: Vec<BigRational>) -> Vec<BigRational> {
    let lead = p.last().expect("nonzero polynomial").clone();
    p.into_iter().map(|c| c / &lead).collect()
}

/// Monic gcd over `Q`.
fn gcd_rat(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { monic(r) };
    }
    monic(x)
}

/// Square-free decomposition (Yun): returns `(factor, multiplicity)` pairs
/// with monic, pairwise coprime, square-free factors of positive degree.
pub(crate) fn square_free(p: &[BigRational]) -> Vec<(Vec<BigRational>, usize)> {
    let f = trim(p.to_vec());
    if f.len() <= 1 {
        return Vec::new();
    }
    let fp = derivative(&f);
    let a0 = gcd_rat(&f, &fp);
    let (mut b, _) = divrem(&f, &a0);
    let (mut c, _) = divrem(&fp, &a0);
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while b.len() > 1 {
        let a = gcd_rat(&b, &d);
        let (nb, _) = divrem(&b, &a);
        let (nc, _) = divrem(&d, &a);
        if a.len() > 1 {
            out.push((a, i));
        }
        b = nb;
        c = nc;
        d = sub(&c, &derivative(&b));
        i += 1;
    }
    out
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalize_examples() {
        let p = poly_normalize(&[r(-2, 1), r(0, 1), r(2, 1)]).unwrap();
        assert_eq!(p, ProjectivePoly::from_i64(&[-1, 0, 1]));
        assert_eq!(p.coeffs()[2], BigInt::one());
        let q = poly_normalize(&[r(1, 2), r(1, 4)]).unwrap();
        let expect: Vec<BigInt> = vec![2.into(), 1.into()];
        assert_eq!(q.coeffs(), &expect[..]);
        assert_eq!(poly_normalize(&[r(0, 1), r(0, 1)]), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn normalize_flips_sign_of_k5_product() {
        let target = ProjectivePoly::product(&[(&[-1, 1], 7), (&[1, 1], 5), (&[2, 1, 2], 4)]);
        let negated: Vec<BigRational> =
            target.to_rational().into_iter().map(|c| -c).collect();
        assert_eq!(poly_normalize(&negated).unwrap(), target);
        assert_eq!(target.degree(), 20);
        assert_eq!(target.coeffs()[20], BigInt::from(16));
    }

    #[test]
    fn exact_division() {
        let a = vec![BigInt::from(-1), BigInt::zero(), BigInt::one()];
        let b = vec![BigInt::from(-1), BigInt::one()];
        assert_eq!(div_exact_int(&a, &b), Some(vec![BigInt::one(), BigInt::one()]));
        let c = vec![BigInt::from(2), BigInt::one()];
        assert_eq!(div_exact_int(&a, &c), None);
    }

    #[test]
    fn multiplicities() {
        let p = ProjectivePoly::product(&[(&[-1, 1], 7), (&[1, 1], 5), (&[2, 1, 2], 4)]);
        assert_eq!(p.multiplicity_at(1), 7);
        assert_eq!(p.multiplicity_at(-1), 5);
        assert_eq!(p.multiplicity_at(2), 0);
        assert!(p.is_palindromic());
    }

    #[test]
    fn yun_decomposition() {
        let p = ProjectivePoly::product(&[(&[2, 1, 2], 3), (&[0, 1], 1), (&[-3, 1], 2)]);
        let sf = square_free(&p.to_rational());
        let degrees: Vec<(usize, usize)> = sf.iter().map(|(f, m)| (f.len() - 1, *m)).collect();
        assert_eq!(degrees, vec![(1, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn line_roundtrip() {
        let p = ProjectivePoly::from_i64(&[-1, 0, 1]);
        assert_eq!(p.to_line(), "poly: -1 0 1");
        assert_eq!("poly: -1 0 1".parse::<ProjectivePoly>().unwrap(), p);
    }
}
