use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "matrix data of length {} does not fit {rows}x{cols}",
                data.len()
            )));
        }
        Ok(RationalMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigRational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &BigRational) {
        self.data[i * self.cols + j] += x;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols)).fold(BigRational::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Exact determinant: rows are scaled to integers, then fraction-free
    /// (Bareiss) elimination runs over `BigInt`.
    pub fn determinant(&self) -> BigRational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &lcm;
            a.push(row.iter().map(|x| (x * &lcm).to_integer()).collect());
        }
        BigRational::new(bareiss(&mut a), scale)
    }
}

/// Fraction-free Gaussian elimination; destroys `a`.
pub(crate) fn bareiss(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let factor = row[k].clone();
            if factor.is_zero() {
                for x in row[k + 1..].iter_mut() {
                    if !x.is_zero() {
                        *x = (&*x * pivot) / &prev;
                    }
                }
            } else {
                for j in k + 1..n {
                    let t = &row[j] * pivot - &factor * &pivot_row[j];
                    row[j] = t / &prev;
                }
            }
            row[k] = BigInt::zero();
        }
        prev = pivot.clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, vals: &[i64]) -> RationalMatrix {
        let data = vals.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        RationalMatrix::new(rows, vals.len() / rows, data).unwrap()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(m(2, &[1, 2, 3, 4]).determinant(), BigRational::from_integer((-2).into()));
        assert_eq!(m(2, &[0, 1, 1, 0]).determinant(), BigRational::from_integer((-1).into()));
        assert_eq!(m(3, &[2, 0, 0, 0, 3, 0, 0, 0, 4]).determinant(), BigRational::from_integer(24.into()));
        assert!(m(2, &[1, 2, 2, 4]).determinant().is_zero());
    }

    #[test]
    fn rational_entries() {
        let half = BigRational::new(1.into(), 2.into());
        let data = vec![half.clone(), BigRational::one(), BigRational::one(), half];
        let d = RationalMatrix::new(2, 2, data).unwrap().determinant();
        assert_eq!(d, BigRational::new((-3).into(), 4.into()));
    }

    #[test]
    fn rejects_empty() {
        assert!(RationalMatrix::new(0, 0, vec![]).is_err());
    }
}
