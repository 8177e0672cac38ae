//! Monoidal changes of variables that eliminate torus coordinates.
//!
//! An integer matrix `A` acts on the torus by
//! `xi_A(x)_i = x_1^{a_i1} ... x_n^{a_in}`, and on `S_n` by pullback,
//! `x^I ∘ xi_A = x^{A^T I}`. When `det A = ±1` this is an automorphism.
//!
//! If the exponents of `f` span a lattice of rank `r < n`, let `Λ` be its
//! saturation and `M = Λ^⊥` (rank `k = n - r`). Any unimodular `A` whose last
//! `k` columns are a basis of `M` sends every exponent `I` of `f` to `A^T I`,
//! whose last `k` entries are `m · I = 0`. So `xi_A^* f` only involves
//! `x_1, ..., x_r`. The logarithmic Hessian of `f` has generic rank exactly
//! `r`; this is checked, not assumed.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculus::{log_hessian, logarithmic_polar_map, rational_rank};
use crate::error::{Error, Result};
use crate::lattice::{
    is_unimodular, saturate, saturated_kernel, unimodular_completion, IntegerMatrix, LatticeBasis,
    Placement,
};
use crate::laurent::{rational_pow, Exponent, LaurentPolynomial, Rational};

/// Random torus points for rank certification have coordinates in this range.
pub const SAMPLE_RANGE: std::ops::RangeInclusive<i64> = 2..=101;
/// Random evaluations tried before falling back to symbolic elimination.
pub const RETRY_BUDGET: usize = 5;
const DEFAULT_SEED: u64 = 0x1f3d_5b79_a2c4_e687;

/// The monoidal transformation `xi_A` together with `A^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusAutomorphism {
    matrix: IntegerMatrix,
    inverse: IntegerMatrix,
}

impl TorusAutomorphism {
    pub fn new(matrix: IntegerMatrix) -> Result<Self> {
        let inverse = matrix.inverse_unimodular()?;
        Ok(Self { matrix, inverse })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: IntegerMatrix::identity(n),
            inverse: IntegerMatrix::identity(n),
        }
    }

    /// Unchecked constructor for certificates read back from elsewhere;
    /// [`verify_reduction`] re-checks both matrices.
    pub fn from_parts(matrix: IntegerMatrix, inverse: IntegerMatrix) -> Self {
        Self { matrix, inverse }
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &IntegerMatrix {
        &self.inverse
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn inverse(&self) -> Self {
        Self {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    /// `xi_A` followed by `xi_B` is `xi_{B A}`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        Ok(Self {
            matrix: next.matrix.mul(&self.matrix)?,
            inverse: self.inverse.mul(&next.inverse)?,
        })
    }

    /// Check `det A = ±1` and `A * A^{-1} = I`.
    pub fn check(&self) -> std::result::Result<(), String> {
        if !self.matrix.is_square() || !self.inverse.is_square() {
            return Err("matrix is not square".into());
        }
        match is_unimodular(&self.matrix) {
            Ok(true) => {}
            _ => {
                let det = self.matrix.det().map(|d| d.to_string()).unwrap_or_default();
                return Err(format!("det(A) = {det}, expected ±1"));
            }
        }
        match self.matrix.mul(&self.inverse) {
            Ok(p) if p == IntegerMatrix::identity(self.dim()) => Ok(()),
            _ => Err("A * A_inverse is not the identity".into()),
        }
    }

    /// The point map `xi_A(x)_i = prod_j x_j^{a_ij}`.
    pub fn map_point(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        let rows = self.matrix.to_i64_rows()?;
        Ok(rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(Rational::from_integer(1.into()), |acc, (&a, xj)| {
                        acc * rational_pow(xj, a)
                    })
            })
            .collect())
    }
}

/// Pullback `f ∘ xi_A`: each term `a_I x^I` becomes `a_I x^{A^T I}`.
pub fn monomial_substitute(
    f: &LaurentPolynomial,
    phi: &TorusAutomorphism,
) -> Result<LaurentPolynomial> {
    let n = f.nvars();
    if phi.dim() != n || !phi.matrix.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "automorphism of dimension {} applied to a polynomial in {n} variables",
            phi.dim()
        )));
    }
    let cols = phi.matrix.transpose().to_i64_rows()?;
    f.map_exponents(n, |e| transform_exponent(&cols, e))
}

fn transform_exponent(at: &[Vec<i64>], e: &[i64]) -> Result<Exponent> {
    at.iter()
        .map(|row| {
            row.iter().zip(e).try_fold(0i64, |acc, (&a, &b)| {
                a.checked_mul(b)
                    .and_then(|p| acc.checked_add(p))
                    .ok_or(Error::Overflow)
            })
        })
        .collect()
}

/// Saturation of the lattice generated by the exponents of `f`.
pub fn support_lattice(f: &LaurentPolynomial) -> LatticeBasis {
    let gens: Vec<Vec<BigInt>> = f
        .exponents()
        .map(|e| e.iter().map(|&a| BigInt::from(a)).collect())
        .collect();
    let lattice = LatticeBasis::from_generators(f.nvars(), gens).expect("exponents have length n");
    saturate(&lattice)
}

/// How the generic rank of `Af` was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    pub upper_bound: usize,
    /// Torus point where `Af` attains `upper_bound`, if one was found.
    pub witness: Option<Vec<i64>>,
    pub evaluations: usize,
}

/// Generic rank of the logarithmic Hessian, using the sandwich
/// `rank Af(p) <= rank Af <= rank Λ`.
pub fn certify_hessian_rank<R: Rng>(f: &LaurentPolynomial, rng: &mut R) -> RankCertificate {
    let n = f.nvars();
    let upper_bound = support_lattice(f).rank();
    let af = log_hessian(f);
    let mut evaluations = 0;
    if upper_bound == 0 {
        return RankCertificate {
            rank: 0,
            upper_bound,
            witness: None,
            evaluations,
        };
    }
    for _ in 0..RETRY_BUDGET {
        let p: Vec<i64> = (0..n).map(|_| rng.gen_range(SAMPLE_RANGE)).collect();
        let point: Vec<Rational> = p
            .iter()
            .map(|&a| Rational::from_integer(a.into()))
            .collect();
        evaluations += 1;
        let at = af.evaluate(&point).expect("sample points avoid zero");
        if rational_rank(at) == upper_bound {
            return RankCertificate {
                rank: upper_bound,
                upper_bound,
                witness: Some(p),
                evaluations,
            };
        }
    }
    RankCertificate {
        rank: af.generic_rank(),
        upper_bound,
        witness: None,
        evaluations,
    }
}

/// Generic rank of `Af` with a fixed sampling seed.
pub fn hessian_rank_certified(f: &LaurentPolynomial) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    certify_hessian_rank(f, &mut rng).rank
}

/// Unimodular `A` whose last `rank(M)` columns are the basis of `M`.
pub fn build_automorphism(lambda: &LatticeBasis, m: &LatticeBasis) -> Result<TorusAutomorphism> {
    let n = lambda.ambient_dim();
    if m.ambient_dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "lattices in Z^{n} and Z^{}",
            m.ambient_dim()
        )));
    }
    if lambda.rank() + m.rank() != n {
        return Err(Error::RankMismatch {
            lambda: lambda.rank(),
            m: m.rank(),
            n,
        });
    }
    if !lambda.is_orthogonal_to(m) {
        return Err(Error::NotOrthogonal);
    }
    if !lambda.is_primitive() || !m.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    TorusAutomorphism::new(unimodular_completion(m, Placement::Trailing)?)
}

/// Certificate that `xi_A^* f` lies in `S_{n-k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult {
    pub n: usize,
    /// Rank of the support lattice.
    pub r: usize,
    /// Number of eliminated (trailing) variables.
    pub k: usize,
    pub lambda_basis: LatticeBasis,
    pub m_basis: LatticeBasis,
    pub automorphism: TorusAutomorphism,
    pub reduced: LaurentPolynomial,
    pub hessian_rank: usize,
    pub verified: bool,
}

pub fn reduce_variables(f: &LaurentPolynomial) -> Result<ReductionResult> {
    let n = f.nvars();
    let lambda_basis = support_lattice(f);
    let r = lambda_basis.rank();
    let m_basis = saturated_kernel(&lambda_basis.to_matrix());
    let automorphism = build_automorphism(&lambda_basis, &m_basis)?;
    let reduced = monomial_substitute(f, &automorphism)?;
    let mut result = ReductionResult {
        n,
        r,
        k: n - r,
        lambda_basis,
        m_basis,
        automorphism,
        reduced,
        hessian_rank: hessian_rank_certified(f),
        verified: false,
    };
    result.verified = verify_reduction(f, &result).passed();
    Ok(result)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerificationFailure {
    /// (a) `A` is not unimodular or `A_inverse` is wrong.
    Automorphism(String),
    /// (b) Some exponent of the reduced polynomial uses an eliminated variable.
    NotEliminated { exponent: Exponent },
    /// (c) Substituting back through `A^{-1}` does not recover `f`.
    RoundTrip,
    /// (d) The Hessian rank disagrees with `n - k`.
    HessianRank {
        hessian_rank: usize,
        expected: usize,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verification {
    pub failures: Vec<VerificationFailure>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_reduction(f: &LaurentPolynomial, result: &ReductionResult) -> Verification {
    let mut failures = Vec::new();
    let n = f.nvars();
    let phi = &result.automorphism;
    let phi_ok = match phi.check() {
        Ok(()) if phi.dim() == n => true,
        Ok(()) => {
            failures.push(VerificationFailure::Automorphism(format!(
                "dimension {} for {n} variables",
                phi.dim()
            )));
            false
        }
        Err(why) => {
            failures.push(VerificationFailure::Automorphism(why));
            false
        }
    };
    let k = result.k.min(n);
    if let Some(e) = result
        .reduced
        .exponents()
        .find(|e| e[n - k..].iter().any(|&a| a != 0))
    {
        failures.push(VerificationFailure::NotEliminated {
            exponent: e.clone(),
        });
    }
    let round_trip =
        phi_ok && matches!(monomial_substitute(&result.reduced, &phi.inverse()), Ok(g) if g == *f);
    if !round_trip {
        failures.push(VerificationFailure::RoundTrip);
    }
    if result.k > n || result.hessian_rank != n - k {
        failures.push(VerificationFailure::HessianRank {
            hessian_rank: result.hessian_rank,
            expected: n.saturating_sub(result.k),
        });
    }
    Verification { failures }
}

/// The one-parameter orbit `f(x_1 t^{m_1}, ..., x_n t^{m_n})` in `S_{n+1}`,
/// with `t` the last variable.
pub fn orbit_substitute(f: &LaurentPolynomial, m: &[i64]) -> Result<LaurentPolynomial> {
    let n = f.nvars();
    if m.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: m.len(),
        });
    }
    f.map_exponents(n + 1, |e| {
        let t = e.iter().zip(m).try_fold(0i64, |acc, (&a, &b)| {
            a.checked_mul(b)
                .and_then(|p| acc.checked_add(p))
                .ok_or(Error::Overflow)
        })?;
        let mut out = e.to_vec();
        out.push(t);
        Ok(out)
    })
}

/// Every component of `L_f` is invariant along each direction of `M`,
/// i.e. the fibers of `L_f` are unions of cosets of the subtorus `exp(M ⊗ C)`.
pub fn coset_invariance_check(f: &LaurentPolynomial, m_basis: &LatticeBasis) -> Result<bool> {
    let n = f.nvars();
    if m_basis.ambient_dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "lattice in Z^{} for {n} variables",
            m_basis.ambient_dim()
        )));
    }
    let lf = logarithmic_polar_map(f);
    for m in m_basis.vectors() {
        let m: Vec<i64> = m
            .iter()
            .map(|x| x.to_i64().ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        for c in lf.components() {
            let orbit = orbit_substitute(c, &m)?;
            if orbit.exponents().any(|e| !e[n].is_zero()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
