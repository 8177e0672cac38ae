//! Sparse Laurent polynomials over the rationals.
//!
//! A polynomial in `S_n = Q[x_1^{±1}, ..., x_n^{±1}]` is stored as a map from
//! exponent vectors in `Z^n` to nonzero rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient; always kept in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Exponent vector `I = (i_1, ..., i_n)`; entries may be negative.
pub type Exponent = Vec<i64>;

/// Build a rational `p/q`. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Element of the coordinate ring of the torus `(C^*)^n`.
///
/// Invariants: every key has length `nvars`, no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// `c * x^exponent`; the zero polynomial when `c == 0`.
    pub fn monomial(exponent: Exponent, c: Rational) -> Self {
        let mut p = Self::zero(exponent.len());
        if !c.is_zero() {
            p.terms.insert(exponent, c);
        }
        p
    }

    /// The variable `x_index` (1-based).
    pub fn var(nvars: usize, index: usize) -> Result<Self> {
        if index == 0 || index > nvars {
            return Err(Error::IndexOutOfRange { index, nvars });
        }
        let mut e = vec![0; nvars];
        e[index - 1] = 1;
        Ok(Self::monomial(e, Rational::one()))
    }

    /// Collect terms, summing coefficients of repeated exponents and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::VariableCountMismatch {
                    left: nvars,
                    right: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Convenience constructor with integer numerators and denominators.
    pub fn from_int_terms(nvars: usize, terms: &[(&[i64], i64, i64)]) -> Result<Self> {
        Self::from_terms(
            nvars,
            terms.iter().map(|(e, p, q)| (e.to_vec(), rat(*p, *q))),
        )
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: Rational) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&a| a == 0))
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(
        &self,
    ) -> impl DoubleEndedIterator<Item = (&Exponent, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn exponents(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    pub fn coefficient(&self, e: &[i64]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.last_key_value()
    }

    /// Componentwise minimum of the exponents (the monomial content); `None` for zero.
    pub fn min_exponent(&self) -> Option<Exponent> {
        fold_exponents(self.terms.keys(), i64::min)
    }

    /// Componentwise maximum of the exponents; `None` for zero.
    pub fn max_exponent(&self) -> Option<Exponent> {
        fold_exponents(self.terms.keys(), i64::max)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiply by the unit `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.nvars, "shift length");
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    ///
    /// Peels off leading terms under the lexicographic order, which is a total
    /// group order on `Z^n`. The quotient's exponents are confined to the box
    /// `[min(self) - min(d), max(self) - max(d)]`, which bounds the loop.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.nvars, divisor.nvars, "div_exact variable count");
        let (lead_e, lead_c) = divisor.leading_term()?;
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if divisor.len() == 1 {
            let neg: Vec<i64> = lead_e.iter().map(|a| -a).collect();
            return Some(self.shift(&neg).scale(&lead_c.recip()));
        }
        let lo: Exponent = self
            .min_exponent()?
            .iter()
            .zip(divisor.min_exponent()?)
            .map(|(a, b)| a - b)
            .collect();
        let hi: Exponent = self
            .max_exponent()?
            .iter()
            .zip(divisor.max_exponent()?)
            .map(|(a, b)| a - b)
            .collect();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((re, rc)) = rem.leading_term() {
            let qe: Exponent = re.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            if qe
                .iter()
                .zip(&lo)
                .zip(&hi)
                .any(|((q, l), h)| q < l || q > h)
            {
                return None;
            }
            let qc = rc / lead_c;
            for (de, dc) in &divisor.terms {
                let e = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                rem.add_term(e, -(dc * &qc));
            }
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Exact value at a point of the torus.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        if let Some(index) = point.iter().position(Zero::is_zero) {
            return Err(Error::ZeroCoordinate { index: index + 1 });
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (x, &a) in point.iter().zip(e) {
                v *= rational_pow(x, a);
            }
            total += v;
        }
        Ok(total)
    }

    /// Re-embed in `S_m` for `m >= n`, padding exponents with zeros.
    pub fn embed(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars, "embed can only add variables");
        Self {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(nvars, 0);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Apply `f` to every exponent vector, producing a polynomial in `nvars` variables.
    pub(crate) fn map_exponents<F>(&self, nvars: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&[i64]) -> Result<Exponent>,
    {
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let e = f(e)?;
            debug_assert_eq!(e.len(), nvars);
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    /// Canonical text form; see [`crate::parse::parse_laurent`] for the grammar.
    pub fn to_canonical_string(&self) -> String {
        format_canonical(self)
    }
}

fn fold_exponents<'a, I, F>(mut it: I, f: F) -> Option<Exponent>
where
    I: Iterator<Item = &'a Exponent>,
    F: Fn(i64, i64) -> i64,
{
    let mut acc = it.next()?.clone();
    for e in it {
        for (a, &b) in acc.iter_mut().zip(e) {
            *a = f(*a, b);
        }
    }
    Some(acc)
}

/// `x^a` for a nonzero rational and any integer `a`.
pub fn rational_pow(x: &Rational, a: i64) -> Rational {
    let base = if a < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, a.unsigned_abs() as usize)
}

/// Terms in descending lexicographic order; unit coefficients and unit exponents omitted.
pub fn format_canonical(f: &LaurentPolynomial) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in f.terms.iter().rev().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        let factors: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(j, &a)| {
                if a == 1 {
                    format!("x{}", j + 1)
                } else {
                    format!("x{}^{}", j + 1, a)
                }
            })
            .collect();
        if factors.is_empty() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_canonical(self))
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LaurentPolynomial[n={}]({})",
            self.nvars,
            format_canonical(self)
        )
    }
}

// Operator impls panic on mismatched variable counts; use the `checked_*`
// methods when the operands come from untrusted input.
impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: Self) -> LaurentPolynomial {
        self.checked_add(rhs).expect("add")
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: Self) -> LaurentPolynomial {
        self.checked_sub(rhs).expect("sub")
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: Self) -> LaurentPolynomial {
        self.checked_mul(rhs).expect("mul")
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(&-Rational::one())
    }
}
