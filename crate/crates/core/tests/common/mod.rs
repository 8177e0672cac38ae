//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use logtorus::corpus::{generate_corpus_sample, CorpusSpec};
use logtorus::{IntegerMatrix, LaurentPolynomial, PolyMatrix};

/// Laplace expansion along the first row.
pub fn cofactor_det(rows: &[Vec<LaurentPolynomial>], nvars: usize) -> LaurentPolynomial {
    let n = rows.len();
    if n == 0 {
        return LaurentPolynomial::one(nvars);
    }
    let mut acc = LaurentPolynomial::zero(nvars);
    for j in 0..n {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<LaurentPolynomial>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = &rows[0][j] * &cofactor_det(&minor, nvars);
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

pub fn cofactor_det_matrix(m: &PolyMatrix) -> LaurentPolynomial {
    cofactor_det(m.rows(), m.nvars())
}

/// Integer determinant by Laplace expansion.
pub fn int_cofactor_det(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vec<BigInt>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = &rows[0][j] * int_cofactor_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// gcd of all `k x k` minors (the `k`-th determinantal divisor).
pub fn minor_gcd(m: &IntegerMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rs in combinations(m.rows(), k) {
        for cs in combinations(m.cols(), k) {
            let sub: Vec<Vec<BigInt>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| m.get(i, j).clone()).collect())
                .collect();
            g = g.gcd(&int_cofactor_det(&sub));
        }
    }
    g
}

/// Express `v` as an integer combination of the rows of the echelon matrix `h`.
pub fn in_echelon_row_lattice(h: &IntegerMatrix, v: &[BigInt]) -> bool {
    let mut v = v.to_vec();
    for i in 0..h.rows() {
        let Some(p) = (0..h.cols()).find(|&j| !h.get(i, j).is_zero()) else {
            break;
        };
        let (q, r) = v[p].div_rem(h.get(i, p));
        if !r.is_zero() {
            return false;
        }
        for (j, x) in v.iter_mut().enumerate() {
            *x -= &q * h.get(i, j);
        }
    }
    v.iter().all(Zero::is_zero)
}

pub fn is_row_echelon_hnf(h: &IntegerMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero = false;
    for i in 0..h.rows() {
        match (0..h.cols()).find(|&j| !h.get(i, j).is_zero()) {
            None => seen_zero = true,
            Some(p) => {
                if seen_zero || last_pivot.is_some_and(|lp| p <= lp) {
                    return false;
                }
                let piv = h.get(i, p);
                if !piv.is_positive() {
                    return false;
                }
                if (0..i).any(|a| h.get(a, p).is_negative() || h.get(a, p) >= piv) {
                    return false;
                }
                last_pivot = Some(p);
            }
        }
    }
    true
}

pub fn is_diagonal(s: &IntegerMatrix) -> bool {
    (0..s.rows()).all(|i| (0..s.cols()).all(|j| i == j || s.get(i, j).is_zero()))
}

/// The acceptance corpus: every `(n, r)` with `1 <= n <= 5`, `0 <= r <= n`.
pub fn acceptance_corpus(per_cell: usize) -> Vec<(CorpusSpec, usize, LaurentPolynomial)> {
    let mut out = Vec::new();
    for n in 1..=5 {
        for r in 0..=n {
            let spec = CorpusSpec::new(n, r, 8, 1000 + (10 * n + r) as u64, per_cell);
            for i in 0..per_cell {
                let f = generate_corpus_sample(&spec, i).expect("feasible spec");
                out.push((spec.clone(), i, f));
            }
        }
    }
    out
}
