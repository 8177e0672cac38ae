//! Derivations, polar maps and Hessian matrices of Laurent polynomials.
//!
//! `theta_i = x_i * d/dx_i` is the logarithmic derivation: it fixes every
//! monomial and multiplies it by its `i`-th exponent. The logarithmic polar
//! map is `L_f = (theta_1 f, ..., theta_n f)`, and the logarithmic Hessian
//! `Af` is its Jacobian, `Af[i][j] = d/dx_j (theta_i f)`.
//!
//! `Af` is not symmetric. The matrix `Sf[i][j] = theta_j theta_i f` is, and
//! `Sf = Af * diag(x_1, ..., x_n)`, so `det Sf = x_1...x_n * det Af`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bareiss;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPolynomial, Rational};

/// A tuple of polynomials sharing one ambient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVector {
    nvars: usize,
    components: Vec<LaurentPolynomial>,
}

impl PolyVector {
    pub fn new(nvars: usize, components: Vec<LaurentPolynomial>) -> Result<Self> {
        if let Some(c) = components.iter().find(|c| c.nvars() != nvars) {
            return Err(Error::VariableCountMismatch {
                left: nvars,
                right: c.nvars(),
            });
        }
        Ok(Self { nvars, components })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn components(&self) -> &[LaurentPolynomial] {
        &self.components
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.components.iter().map(|c| c.evaluate(point)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(LaurentPolynomial::is_zero)
    }
}

/// Square matrix of polynomials over a common ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    nvars: usize,
    entries: Vec<Vec<LaurentPolynomial>>,
}

impl PolyMatrix {
    pub fn new(nvars: usize, entries: Vec<Vec<LaurentPolynomial>>) -> Result<Self> {
        let dim = entries.len();
        for row in &entries {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
            if let Some(c) = row.iter().find(|c| c.nvars() != nvars) {
                return Err(Error::VariableCountMismatch {
                    left: nvars,
                    right: c.nvars(),
                });
            }
        }
        Ok(Self { nvars, entries })
    }

    fn from_fn<F>(nvars: usize, dim: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> LaurentPolynomial,
    {
        let entries = (0..dim)
            .map(|i| (0..dim).map(|j| f(i, j)).collect())
            .collect();
        Self { nvars, entries }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPolynomial {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<LaurentPolynomial>] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.nvars, self.dim(), |i, j| self.entries[j][i].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_zero(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(LaurentPolynomial::is_zero)
    }

    /// Entrywise evaluation at a torus point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.evaluate(point)).collect())
            .collect()
    }

    /// Exact determinant by Bareiss elimination.
    ///
    /// Each row is first divided by its monomial content, a unit of `S_n`,
    /// so elimination runs on ordinary polynomials; the units are restored
    /// at the end.
    pub fn det(&self) -> LaurentPolynomial {
        let n = self.nvars;
        let mut content = vec![0i64; n];
        let mut rows = Vec::with_capacity(self.dim());
        for row in &self.entries {
            let row_min = row
                .iter()
                .filter_map(LaurentPolynomial::min_exponent)
                .reduce(|a, b| a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect());
            match row_min {
                None => return LaurentPolynomial::zero(n),
                Some(m) => {
                    let neg: Vec<i64> = m.iter().map(|a| -a).collect();
                    for (c, a) in content.iter_mut().zip(&m) {
                        *c += a;
                    }
                    rows.push(row.iter().map(|e| e.shift(&neg)).collect());
                }
            }
        }
        bareiss::determinant(rows, LaurentPolynomial::one(n)).shift(&content)
    }

    /// Rank over the fraction field of `S_n`.
    pub fn generic_rank(&self) -> usize {
        bareiss::rank(self.entries.clone(), LaurentPolynomial::one(self.nvars))
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Rank of an exact rational matrix.
pub fn rational_rank(m: Vec<Vec<Rational>>) -> usize {
    bareiss::rank(m, Rational::one())
}

pub fn integer_det(m: Vec<Vec<BigInt>>) -> BigInt {
    bareiss::determinant(m, BigInt::one())
}

fn check_index(f: &LaurentPolynomial, i: usize) -> Result<()> {
    if i == 0 || i > f.nvars() {
        return Err(Error::IndexOutOfRange {
            index: i,
            nvars: f.nvars(),
        });
    }
    Ok(())
}

/// `d f / d x_i`, with `i` 1-based.
pub fn partial_derivative(f: &LaurentPolynomial, i: usize) -> Result<LaurentPolynomial> {
    check_index(f, i)?;
    let k = i - 1;
    let mut out = LaurentPolynomial::zero(f.nvars());
    for (e, c) in f.terms() {
        if e[k] != 0 {
            let mut e2 = e.clone();
            e2[k] -= 1;
            out.add_term(e2, c * Rational::from_integer(BigInt::from(e[k])));
        }
    }
    Ok(out)
}

/// `x_i * d f / d x_i`, with `i` 1-based.
pub fn theta(f: &LaurentPolynomial, i: usize) -> Result<LaurentPolynomial> {
    check_index(f, i)?;
    let k = i - 1;
    let mut out = LaurentPolynomial::zero(f.nvars());
    for (e, c) in f.terms() {
        out.add_term(e.clone(), c * Rational::from_integer(BigInt::from(e[k])));
    }
    Ok(out)
}

fn all_indices(f: &LaurentPolynomial) -> std::ops::RangeInclusive<usize> {
    1..=f.nvars()
}

pub fn logarithmic_polar_map(f: &LaurentPolynomial) -> PolyVector {
    PolyVector {
        nvars: f.nvars(),
        components: all_indices(f).map(|i| theta(f, i).unwrap()).collect(),
    }
}

pub fn affine_polar_map(f: &LaurentPolynomial) -> PolyVector {
    PolyVector {
        nvars: f.nvars(),
        components: all_indices(f)
            .map(|i| partial_derivative(f, i).unwrap())
            .collect(),
    }
}

/// Entrywise Jacobian `J[i][j] = d v_i / d x_j` of a square polynomial map.
pub fn jacobian(v: &PolyVector) -> PolyMatrix {
    PolyMatrix::from_fn(v.nvars, v.components.len(), |i, j| {
        partial_derivative(&v.components[i], j + 1).unwrap()
    })
}

/// `Af[i][j] = d/dx_j (x_i f_{x_i})`.
pub fn log_hessian(f: &LaurentPolynomial) -> PolyMatrix {
    jacobian(&logarithmic_polar_map(f))
}

/// `Sf[i][j] = theta_j theta_i f`.
pub fn log_hessian_symmetric(f: &LaurentPolynomial) -> PolyMatrix {
    let lf = logarithmic_polar_map(f);
    PolyMatrix::from_fn(f.nvars(), f.nvars(), |i, j| {
        theta(&lf.components[i], j + 1).unwrap()
    })
}

/// `Hf[i][j] = f_{x_i x_j}`.
pub fn classical_hessian(f: &LaurentPolynomial) -> PolyMatrix {
    jacobian(&affine_polar_map(f))
}

/// Representative of `(x_1 f_{x_1}(x) : ... : x_n f_{x_n}(x))` with first nonzero entry 1.
pub fn log_gauss_point(f: &LaurentPolynomial, point: &[Rational]) -> Result<Vec<Rational>> {
    let values = logarithmic_polar_map(f).evaluate(point)?;
    let lead = values
        .iter()
        .find(|v| !v.is_zero())
        .cloned()
        .ok_or(Error::GaussUndefined)?;
    Ok(values.into_iter().map(|v| v / &lead).collect())
}

/// Product `x_1 * ... * x_n`.
pub fn coordinate_product(nvars: usize) -> LaurentPolynomial {
    LaurentPolynomial::monomial(vec![1; nvars], Rational::one())
}
