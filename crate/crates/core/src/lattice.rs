//! Integer linear algebra: Hermite and Smith normal forms, saturated kernels,
//! primitive lattice bases and unimodular completion.
//!
//! A sublattice `L` of `Z^n` is *primitive* when `Z^n / L` is torsion-free,
//! equivalently when `L` equals `span_Q(L) ∩ Z^n`. A basis of a primitive
//! lattice can always be extended to a basis of `Z^n`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::calculus::{integer_det, rational_rank};
use crate::error::{Error, Result};
use crate::laurent::Rational;

/// Dense rectangular matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    /// Build from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                r.len()
            )));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Build from `i64` rows. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("ragged matrix")
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        let t = Self::from_rows(rows, columns.to_vec())?;
        Ok(t.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[Vec<BigInt>] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let data = (0..self.cols).map(|j| self.column(j)).collect();
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += a * &other.data[k][j];
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length");
        self.data
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }

    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(integer_det(self.data.clone()))
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        rational_rank(
            self.data
                .iter()
                .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
                .collect(),
        )
    }

    /// Inverse of a unimodular matrix, by Gauss-Jordan over the rationals.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        if !is_unimodular(self)? {
            return Err(Error::NotUnimodular);
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .cloned()
                    .map(Rational::from_integer)
                    .chain((0..n).map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    }))
                    .collect()
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&i| !a[i][c].is_zero()).expect("nonsingular");
            a.swap(p, c);
            let piv = a[c][c].clone();
            for x in a[c].iter_mut() {
                *x /= &piv;
            }
            let pivot_row = a[c].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == c || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        let data = a
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .skip(n)
                    .map(|x| {
                        debug_assert!(x.is_integer());
                        x.to_integer()
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            rows: n,
            cols: n,
            data,
        })
    }

    /// Entries as `i64`, failing if any entry does not fit.
    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>> {
        self.data
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_i64().ok_or(Error::Overflow))
                    .collect()
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.data {
            r.swap(a, b);
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let s = self.data[src].clone();
        for (x, y) in self.data[dst].iter_mut().zip(&s) {
            *x -= q * y;
        }
    }

    /// col[dst] -= q * col[src]
    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in &mut self.data {
            let y = r[src].clone();
            r[dst] -= q * y;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i] {
            *x = -&*x;
        }
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerMatrix{:?}", self.data)
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.data {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn is_unimodular(a: &IntegerMatrix) -> Result<bool> {
    Ok(a.det()?.abs().is_one())
}

/// Row-style Hermite normal form: returns `(H, U)` with `U` unimodular and `U*M = H`.
///
/// `H` is in row echelon form with positive pivots, entries above each pivot
/// reduced into `[0, pivot)`, and zero rows last.
pub fn hnf(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let mut h = m.clone();
    let mut u = IntegerMatrix::identity(m.rows);
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        // Euclid on column c among rows r..
        loop {
            let pivot = (r..m.rows)
                .filter(|&i| !h.data[i][c].is_zero())
                .min_by(|&a, &b| h.data[a][c].abs().cmp(&h.data[b][c].abs()));
            let Some(p) = pivot else { break };
            h.swap_rows(p, r);
            u.swap_rows(p, r);
            let mut done = true;
            for i in r + 1..m.rows {
                if h.data[i][c].is_zero() {
                    continue;
                }
                let q = h.data[i][c].div_floor(&h.data[r][c]);
                h.sub_row(i, r, &q);
                u.sub_row(i, r, &q);
                if !h.data[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.data[r][c].is_zero() {
            continue;
        }
        if h.data[r][c].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h.data[i][c].div_floor(&h.data[r][c]);
            h.sub_row(i, r, &q);
            u.sub_row(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form: returns `(S, U, V)` with `U`, `V` unimodular and
/// `U*M*V = S = diag(d_1, ..., d_r, 0, ...)`, `d_1 | d_2 | ... | d_r`, all `d_i >= 1`.
pub fn snf(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix, IntegerMatrix) {
    let (rows, cols) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if s.data[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| s.data[i][j].abs() < s.data[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (s, u, v);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = s.data[i][t].div_floor(&s.data[t][t]);
                s.sub_row(i, t, &q);
                u.sub_row(i, t, &q);
                clean &= s.data[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = s.data[t][j].div_floor(&s.data[t][t]);
                s.sub_col(j, t, &q);
                v.sub_col(j, t, &q);
                clean &= s.data[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold a row with a non-multiple into row t
            let d = s.data[t][t].clone();
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s.data[i][j].is_multiple_of(&d)));
            match bad {
                Some(i) => {
                    s.sub_row(t, i, &-BigInt::one());
                    u.sub_row(t, i, &-BigInt::one());
                }
                None => break,
            }
        }
        if s.data[t][t].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    (s, u, v)
}

/// Nonzero diagonal of a Smith normal form.
pub fn invariant_factors(s: &IntegerMatrix) -> Vec<BigInt> {
    (0..s.rows.min(s.cols))
        .map(|i| s.data[i][i].clone())
        .take_while(|d| !d.is_zero())
        .collect()
}

/// Linearly independent integer vectors spanning a sublattice of `Z^n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    ambient_dim: usize,
    vectors: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    /// Checks linear independence over the rationals.
    pub fn new(ambient_dim: usize, vectors: Vec<Vec<BigInt>>) -> Result<Self> {
        let m = IntegerMatrix::from_rows(ambient_dim, vectors)?;
        if m.rank() != m.rows {
            return Err(Error::NotIndependent);
        }
        Ok(Self {
            ambient_dim,
            vectors: m.data,
        })
    }

    pub fn from_i64(ambient_dim: usize, vectors: &[&[i64]]) -> Result<Self> {
        Self::new(
            ambient_dim,
            vectors
                .iter()
                .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    pub fn standard(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            vectors: IntegerMatrix::identity(ambient_dim).data,
        }
    }

    /// Basis of the lattice generated by arbitrary (possibly dependent) vectors.
    pub fn from_generators(ambient_dim: usize, generators: Vec<Vec<BigInt>>) -> Result<Self> {
        let m = IntegerMatrix::from_rows(ambient_dim, generators)?;
        let (h, _) = hnf(&m);
        Ok(Self {
            ambient_dim,
            vectors: h
                .data
                .into_iter()
                .filter(|r| r.iter().any(|x| !x.is_zero()))
                .collect(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vectors
    }

    /// Vectors as the rows of an `r x n` matrix.
    pub fn to_matrix(&self) -> IntegerMatrix {
        IntegerMatrix {
            rows: self.vectors.len(),
            cols: self.ambient_dim,
            data: self.vectors.clone(),
        }
    }

    /// The same lattice with its HNF basis.
    pub fn canonical(&self) -> Self {
        Self::from_generators(self.ambient_dim, self.vectors.clone()).expect("shape preserved")
    }

    /// True when all invariant factors are 1.
    pub fn is_primitive(&self) -> bool {
        let (s, _, _) = snf(&self.to_matrix());
        invariant_factors(&s).iter().all(One::is_one)
    }

    /// Integer vector `v` lies in the lattice.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut gens = self.vectors.clone();
        gens.push(v.to_vec());
        Self::from_generators(self.ambient_dim, gens).expect("shape") == self.canonical()
    }

    /// Every vector of `self` is orthogonal to every vector of `other`.
    pub fn is_orthogonal_to(&self, other: &Self) -> bool {
        self.vectors.iter().all(|a| {
            other.vectors.iter().all(|b| {
                a.iter()
                    .zip(b)
                    .map(|(x, y)| x * y)
                    .sum::<BigInt>()
                    .is_zero()
            })
        })
    }
}

impl fmt::Debug for LatticeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticeBasis[n={}]{:?}", self.ambient_dim, self.vectors)
    }
}

/// Primitive basis (in HNF) of `{v in Z^n : M v = 0}`.
///
/// With `U M V = S` and `rank M = r`, the kernel is spanned by the last
/// `n - r` columns of `V`; those columns are part of a unimodular matrix, so
/// the kernel lattice they span is saturated.
pub fn saturated_kernel(m: &IntegerMatrix) -> LatticeBasis {
    let (s, _, v) = snf(m);
    let r = invariant_factors(&s).len();
    let vectors = (r..m.cols).map(|j| v.column(j)).collect();
    LatticeBasis {
        ambient_dim: m.cols,
        vectors,
    }
    .canonical()
}

/// `span_Q(B) ∩ Z^n`, as `(B^⊥)^⊥` computed with two saturated kernels.
pub fn saturate(b: &LatticeBasis) -> LatticeBasis {
    let perp = saturated_kernel(&b.to_matrix());
    saturated_kernel(&perp.to_matrix())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    Leading,
    Trailing,
}

/// Extend a primitive basis to a unimodular `n x n` matrix whose first
/// (`Leading`) or last (`Trailing`) `r` columns are the basis vectors.
///
/// Writing the basis as columns `C` (`n x r`), the row HNF gives `U C = [T; 0]`.
/// Primitivity forces `T = I`, so `C` is the first `r` columns of `U^{-1}`.
pub fn unimodular_completion(b: &LatticeBasis, placement: Placement) -> Result<IntegerMatrix> {
    let n = b.ambient_dim;
    let r = b.rank();
    let c = b.to_matrix().transpose();
    let (h, u) = hnf(&c);
    if (0..r).any(|i| (0..r).any(|j| h.data[i][j] != BigInt::from((i == j) as i32))) {
        return Err(Error::NotPrimitive);
    }
    let w = u.inverse_unimodular()?;
    let mut order: Vec<usize> = (0..n).collect();
    if placement == Placement::Trailing {
        order.rotate_left(r);
    }
    let cols: Vec<Vec<BigInt>> = order.iter().map(|&j| w.column(j)).collect();
    IntegerMatrix::from_columns(n, &cols)
}
