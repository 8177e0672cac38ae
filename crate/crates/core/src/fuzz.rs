//! Randomized property harness over a generated corpus.
//!
//! Instances run in parallel; outcomes are aggregated in index order so the
//! summary does not depend on scheduling.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::calculus::{coordinate_product, log_hessian, log_hessian_symmetric};
use crate::corpus::{generate_corpus_sample, instance_rng, CorpusSpec};
use crate::error::Result;
use crate::lattice::IntegerMatrix;
use crate::laurent::{LaurentPolynomial, Rational};
use crate::reduce::{
    coset_invariance_check, hessian_rank_certified, monomial_substitute, reduce_variables,
    support_lattice, verify_reduction, TorusAutomorphism,
};

/// A named property of one instance. The generator is private to the instance.
pub type Check = fn(&LaurentPolynomial, &mut ChaCha8Rng) -> std::result::Result<(), String>;

/// Largest dimension where the symbolic determinant identities are checked.
pub const SYMBOLIC_DET_MAX_VARS: usize = 4;

pub fn default_checks() -> Vec<(&'static str, Check)> {
    vec![
        ("rank_equality", check_rank_equality),
        ("reduction", check_reduction),
        ("coset_invariance", check_coset_invariance),
        ("determinant_identities", check_determinants),
        ("functor_law", check_functor_law),
    ]
}

fn check_rank_equality(
    f: &LaurentPolynomial,
    _: &mut ChaCha8Rng,
) -> std::result::Result<(), String> {
    let h = hessian_rank_certified(f);
    let r = support_lattice(f).rank();
    if h == r {
        Ok(())
    } else {
        Err(format!("hessian rank {h} != support rank {r}"))
    }
}

fn check_reduction(f: &LaurentPolynomial, _: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let res = reduce_variables(f).map_err(|e| e.to_string())?;
    let v = verify_reduction(f, &res);
    if res.verified && v.passed() {
        Ok(())
    } else {
        Err(format!("verification failed: {:?}", v.failures))
    }
}

fn check_coset_invariance(
    f: &LaurentPolynomial,
    _: &mut ChaCha8Rng,
) -> std::result::Result<(), String> {
    let res = reduce_variables(f).map_err(|e| e.to_string())?;
    match coset_invariance_check(f, &res.m_basis) {
        Ok(true) => Ok(()),
        Ok(false) => Err("L_f varies along M".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn check_determinants(
    f: &LaurentPolynomial,
    _: &mut ChaCha8Rng,
) -> std::result::Result<(), String> {
    let n = f.nvars();
    if n > SYMBOLIC_DET_MAX_VARS {
        return Ok(());
    }
    let det_a = log_hessian(f).det();
    let det_s = log_hessian_symmetric(f).det();
    if det_s != &coordinate_product(n) * &det_a {
        return Err("det Sf != x1...xn * det Af".into());
    }
    let r = support_lattice(f).rank();
    if det_a.is_zero() != (r < n) {
        return Err(format!(
            "det Af zero = {}, support rank {r}",
            det_a.is_zero()
        ));
    }
    Ok(())
}

/// Random unimodular matrix with small entries, as a product of elementary moves.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> TorusAutomorphism {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 1;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let c = [-1i64, 1][rng.gen_range(0..2)];
                let src = a[j].clone();
                for (x, y) in a[i].iter_mut().zip(src) {
                    *x += c * y;
                }
            }
            1 => a.swap(i, j),
            _ => a[i].iter_mut().for_each(|x| *x = -*x),
        }
    }
    let rows: Vec<&[i64]> = a.iter().map(Vec::as_slice).collect();
    TorusAutomorphism::new(IntegerMatrix::from_i64(&rows))
        .expect("elementary product is unimodular")
}

/// `f ∘ xi_B ∘ xi_A` three ways: nested substitution, substitution along the
/// composed matrix `B A`, and evaluation of `f` through the point maps.
pub fn functor_law_holds<R: Rng>(
    f: &LaurentPolynomial,
    a: &TorusAutomorphism,
    b: &TorusAutomorphism,
    rng: &mut R,
) -> Result<bool> {
    let nested = monomial_substitute(&monomial_substitute(f, b)?, a)?;
    let composed = monomial_substitute(f, &a.then(b)?)?;
    if nested != composed {
        return Ok(false);
    }
    let x: Vec<Rational> = (0..f.nvars())
        .map(|_| {
            let mut p = rng.gen_range(1i64..=9);
            if rng.gen_bool(0.5) {
                p = -p;
            }
            Rational::new(p.into(), rng.gen_range(1i64..=9).into())
        })
        .collect();
    let through_points = f.evaluate(&b.map_point(&a.map_point(&x)?)?)?;
    Ok(nested.evaluate(&x)? == through_points)
}

fn check_functor_law(
    f: &LaurentPolynomial,
    rng: &mut ChaCha8Rng,
) -> std::result::Result<(), String> {
    let a = random_unimodular(rng, f.nvars());
    let b = random_unimodular(rng, f.nvars());
    match functor_law_holds(f, &a, &b, rng) {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!(
            "functor law fails for A={:?} B={:?}",
            a.matrix(),
            b.matrix()
        )),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzFailure {
    pub seed: u64,
    pub index: usize,
    pub check: String,
    pub detail: String,
    pub polynomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzSummary {
    pub spec: CorpusSpec,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<FuzzFailure>,
}

impl FuzzSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

pub fn cmd_fuzz(spec: &CorpusSpec) -> Result<FuzzSummary> {
    fuzz_with(spec, &default_checks())
}

pub fn fuzz_with(spec: &CorpusSpec, checks: &[(&'static str, Check)]) -> Result<FuzzSummary> {
    spec.validate()?;
    let polys: Vec<LaurentPolynomial> = (0..spec.instance_count)
        .map(|i| generate_corpus_sample(spec, i))
        .collect::<Result<_>>()?;
    let outcomes: Vec<Option<FuzzFailure>> = polys
        .par_iter()
        .enumerate()
        .map(|(index, f)| {
            checks.iter().enumerate().find_map(|(ci, (name, check))| {
                let mut rng = instance_rng(spec.seed, index, 1 + ci as u64);
                check(f, &mut rng).err().map(|detail| FuzzFailure {
                    seed: spec.seed,
                    index,
                    check: name.to_string(),
                    detail,
                    polynomial: f.to_string(),
                })
            })
        })
        .collect();
    let failed = outcomes.iter().filter(|o| o.is_some()).count();
    Ok(FuzzSummary {
        spec: spec.clone(),
        total: outcomes.len(),
        passed: outcomes.len() - failed,
        failed,
        first_failure: outcomes.into_iter().flatten().next(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus_passes() {
        let s = cmd_fuzz(&CorpusSpec::new(3, 2, 5, 1, 0)).unwrap();
        assert_eq!((s.total, s.passed, s.failed), (0, 0, 0));
        assert!(s.all_passed());
    }

    #[test]
    fn small_corpus_passes() {
        let s = cmd_fuzz(&CorpusSpec::new(3, 2, 6, 42, 30)).unwrap();
        assert!(s.all_passed(), "{:?}", s.first_failure);
        assert_eq!(s.passed, 30);
    }

    #[test]
    fn corrupted_checker_reports_seed() {
        fn always_fails(
            _: &LaurentPolynomial,
            _: &mut ChaCha8Rng,
        ) -> std::result::Result<(), String> {
            Err("injected".into())
        }
        let spec = CorpusSpec::new(2, 1, 4, 7, 5);
        let s = fuzz_with(&spec, &[("injected", always_fails)]).unwrap();
        assert_eq!(s.failed, 5);
        let first = s.first_failure.unwrap();
        assert_eq!((first.seed, first.index), (7, 0));
    }

    #[test]
    fn random_unimodular_is_unimodular() {
        let mut rng = instance_rng(3, 0, 0);
        for n in 1..=5 {
            assert!(random_unimodular(&mut rng, n).check().is_ok());
        }
    }
}
