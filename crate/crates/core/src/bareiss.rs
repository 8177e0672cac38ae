//! Fraction-free (Bareiss) elimination over an exact integral domain.
//!
//! After step `k` every entry below and right of the pivot is a `(k+1)x(k+1)`
//! minor of the input, so the division by the previous pivot is exact.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::laurent::{LaurentPolynomial, Rational};

pub trait ExactDomain: Clone {
    fn is_zero_elem(&self) -> bool;
    /// `a*b - c*d`
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Self;
    /// Exact quotient; the caller guarantees divisibility.
    fn div_exact_elem(&self, d: &Self) -> Self;
    fn negate(&self) -> Self;
}

impl ExactDomain for BigInt {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        a * b - c * d
    }
    fn div_exact_elem(&self, d: &Self) -> Self {
        debug_assert!((self % d).is_zero());
        self / d
    }
    fn negate(&self) -> Self {
        -self
    }
}

impl ExactDomain for Rational {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        a * b - c * d
    }
    fn div_exact_elem(&self, d: &Self) -> Self {
        self / d
    }
    fn negate(&self) -> Self {
        -self
    }
}

impl ExactDomain for LaurentPolynomial {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        &(a * b) - &(c * d)
    }
    fn div_exact_elem(&self, d: &Self) -> Self {
        self.div_exact(d)
            .expect("Bareiss quotient is exact in the Laurent ring")
    }
    fn negate(&self) -> Self {
        -self
    }
}

/// Determinant of a square matrix; `one` is returned for the empty matrix.
pub fn determinant<T: ExactDomain>(mut m: Vec<Vec<T>>, one: T) -> T {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n));
    if n == 0 {
        return one;
    }
    let mut negate = false;
    let mut prev = one;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero_elem()) else {
            // whole column is zero from row k down
            return m[k][k].clone();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = T::mul_sub(&m[k][k], &m[i][j], &m[i][k], &m[k][j]);
                m[i][j] = v.div_exact_elem(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.negate()
    } else {
        d
    }
}

/// Rank by fraction-free row echelon elimination. Pivots are the first
/// nonzero entry found scanning columns left to right, rows top to bottom.
/// Entries left of the active column are never read again and are left stale.
pub fn rank<T: ExactDomain>(mut m: Vec<Vec<T>>, one: T) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev = one;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero_elem()) else {
            continue;
        };
        m.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = T::mul_sub(&m[r][c], &m[i][j], &m[i][c], &m[r][j]);
                m[i][j] = v.div_exact_elem(&prev);
            }
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

pub fn int_one() -> BigInt {
    BigInt::one()
}
