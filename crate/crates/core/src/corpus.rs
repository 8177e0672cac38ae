//! Deterministic random instances whose support lies in a lattice of given rank.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{saturate, IntegerMatrix, LatticeBasis};
use crate::laurent::{Exponent, LaurentPolynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSpec {
    pub nvars: usize,
    /// Rank of the lattice the support is drawn from.
    pub rank: usize,
    pub max_terms: usize,
    /// Exponent entries lie in `[-exponent_bound, exponent_bound]`.
    pub exponent_bound: i64,
    /// Numerators in `[-b, b] \ {0}`, denominators in `[1, b]`.
    pub coefficient_bound: i64,
    pub seed: u64,
    pub instance_count: usize,
}

impl CorpusSpec {
    pub fn new(
        nvars: usize,
        rank: usize,
        max_terms: usize,
        seed: u64,
        instance_count: usize,
    ) -> Self {
        Self {
            nvars,
            rank,
            max_terms,
            exponent_bound: 4,
            coefficient_bound: 9,
            seed,
            instance_count,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::InfeasibleCorpus(m.to_string()));
        if self.nvars == 0 {
            return fail("at least one variable is required");
        }
        if self.rank > self.nvars {
            return fail("lattice rank exceeds the number of variables");
        }
        if self.max_terms == 0 || self.exponent_bound <= 0 || self.coefficient_bound <= 0 {
            return fail("bounds must be positive");
        }
        Ok(())
    }
}

/// Independent generator stream for instance `index` under `seed`.
pub fn instance_rng(seed: u64, index: usize, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((index as u64) << 8) | stream);
    rng
}

const LATTICE_ATTEMPTS: usize = 64;

fn random_lattice<R: Rng>(rng: &mut R, n: usize, r: usize, bound: i64) -> LatticeBasis {
    if r == 0 {
        return LatticeBasis::empty(n);
    }
    let mut last = None;
    for _ in 0..LATTICE_ATTEMPTS {
        let rows: Vec<Vec<BigInt>> = (0..r)
            .map(|_| {
                (0..n)
                    .map(|_| BigInt::from(rng.gen_range(-2i64..=2)))
                    .collect()
            })
            .collect();
        let m = IntegerMatrix::from_rows(n, rows.clone()).expect("shape");
        if m.rank() < r {
            continue;
        }
        let b = saturate(&LatticeBasis::new(n, rows).expect("independent"));
        let small = b
            .vectors()
            .iter()
            .flatten()
            .all(|x| x.to_i64().is_some_and(|v| v.abs() <= bound));
        if small {
            return b;
        }
        last = Some(b);
    }
    last.unwrap_or_else(|| LatticeBasis::standard(n))
}

/// Instance `index` of the corpus: nonzero, distinct exponents, support inside a
/// primitive lattice of rank `spec.rank`.
pub fn generate_corpus_sample(spec: &CorpusSpec, index: usize) -> Result<LaurentPolynomial> {
    spec.validate()?;
    if index >= spec.instance_count {
        return Err(Error::InfeasibleCorpus(format!(
            "index {index} out of range for {} instances",
            spec.instance_count
        )));
    }
    let n = spec.nvars;
    let mut rng = instance_rng(spec.seed, index, 0);
    let lattice = random_lattice(&mut rng, n, spec.rank, spec.exponent_bound);
    let basis: Vec<Vec<i64>> = lattice
        .vectors()
        .iter()
        .map(|v| v.iter().map(|x| x.to_i64().expect("small basis")).collect())
        .collect();

    let target = rng.gen_range(1..=spec.max_terms);
    let mut exponents: BTreeSet<Exponent> = BTreeSet::new();
    for _ in 0..20 * target {
        if exponents.len() == target {
            break;
        }
        let mut e = vec![0i64; n];
        for b in &basis {
            let c = rng.gen_range(-2i64..=2);
            for (x, y) in e.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        if e.iter().all(|x| x.abs() <= spec.exponent_bound) {
            exponents.insert(e);
        }
    }
    if exponents.is_empty() {
        exponents.insert(vec![0; n]);
    }
    let cb = spec.coefficient_bound;
    let terms = exponents.into_iter().map(|e| {
        let mut num = rng.gen_range(1..=cb);
        if rng.gen_bool(0.5) {
            num = -num;
        }
        let den = rng.gen_range(1..=cb);
        (e, Rational::new(num.into(), den.into()))
    });
    LaurentPolynomial::from_terms(n, terms)
}
