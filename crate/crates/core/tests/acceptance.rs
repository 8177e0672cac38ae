//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use logtorus::calculus::coordinate_product;
use logtorus::fuzz::{functor_law_holds, random_unimodular};
use logtorus::lattice::invariant_factors;
use logtorus::*;

const CORPUS_PER_CELL: usize = 12;
const MIN_CORPUS: usize = 200;
const MAX_TERMS: usize = 8;
const EXPONENT_BOUND: i64 = 4;
const SYMBOLIC_MAX_VARS: usize = 4;
const FUNCTOR_TRIPLES: usize = 100;
const LATTICE_MATRICES: usize = 500;
const LATTICE_ENTRY_BOUND: i64 = 9;
const LATTICE_MAX_DIM: usize = 4;
const RANK_BUDGET: Duration = Duration::from_secs(60);
const PERAZZO_BUDGET: Duration = Duration::from_secs(10);
const LATTICE_BUDGET: Duration = Duration::from_secs(30);

type Corpus = Vec<(logtorus::corpus::CorpusSpec, usize, LaurentPolynomial)>;
type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn where_(spec: &logtorus::corpus::CorpusSpec, i: usize, f: &LaurentPolynomial) -> String {
    format!("seed {} index {} f = {}", spec.seed, i, f)
}

fn corpus_shape(corpus: &Corpus) -> Result<(), String> {
    ensure(corpus.len() >= MIN_CORPUS, || {
        format!("corpus has {} instances", corpus.len())
    })?;
    for (spec, i, f) in corpus {
        ensure(
            f.len() <= MAX_TERMS && f.exponents().flatten().all(|a| a.abs() <= EXPONENT_BOUND),
            || format!("out-of-bounds instance: {}", where_(spec, *i, f)),
        )?;
    }
    Ok(())
}

fn criterion_1(corpus: &Corpus) -> Outcome {
    corpus_shape(corpus)?;
    let start = Instant::now();
    let mut by_rank = [0usize; 6];
    for (spec, i, f) in corpus {
        let h = hessian_rank_certified(f);
        let r = support_lattice(f).rank();
        ensure(h == r, || {
            format!("rank {h} != {r} at {}", where_(spec, *i, f))
        })?;
        by_rank[r] += 1;
    }
    let t = start.elapsed();
    ensure(t < RANK_BUDGET, || format!("took {t:?}"))?;
    Ok(format!(
        "{} instances, support ranks 0..5 seen {:?}, {:?}",
        corpus.len(),
        by_rank,
        t
    ))
}

fn criterion_2(corpus: &Corpus) -> Outcome {
    for (spec, i, f) in corpus {
        let res = reduce_variables(f).map_err(|e| e.to_string())?;
        let det = res.automorphism.matrix().det().unwrap();
        ensure(det.abs().is_one(), || {
            format!("det {det} at {}", where_(spec, *i, f))
        })?;
        let n = res.n;
        ensure(
            res.reduced
                .exponents()
                .all(|e| e[n - res.k..].iter().all(|&a| a == 0)),
            || format!("trailing exponents nonzero at {}", where_(spec, *i, f)),
        )?;
        let back = monomial_substitute(&res.reduced, &res.automorphism.inverse())
            .map_err(|e| e.to_string())?;
        ensure(back == *f, || {
            format!("round trip differs at {}", where_(spec, *i, f))
        })?;
        ensure(res.verified, || {
            format!("not verified at {}", where_(spec, *i, f))
        })?;
    }
    Ok(format!("{} reductions round-trip exactly", corpus.len()))
}

fn criterion_3(corpus: &Corpus) -> Outcome {
    let mut checked = 0;
    let mut vanishing = 0;
    for (spec, i, f) in corpus.iter().filter(|c| c.2.nvars() <= SYMBOLIC_MAX_VARS) {
        let zero = log_hessian(f).det().is_zero();
        let r = support_lattice(f).rank();
        ensure(zero == (r < f.nvars()), || {
            format!("det zero = {zero}, rank {r} at {}", where_(spec, *i, f))
        })?;
        checked += 1;
        vanishing += zero as usize;
    }
    Ok(format!("{checked} instances, {vanishing} with det Af = 0"))
}

fn criterion_4(corpus: &Corpus) -> Outcome {
    let mut checked = 0;
    for (spec, i, f) in corpus.iter().filter(|c| c.2.nvars() <= SYMBOLIC_MAX_VARS) {
        let a = log_hessian(f);
        let s = log_hessian_symmetric(f);
        ensure(s.det() == &coordinate_product(f.nvars()) * &a.det(), || {
            format!("det Sf != x1..xn det Af at {}", where_(spec, *i, f))
        })?;
        for m in [a, s, classical_hessian(f)] {
            ensure(m.det() == cofactor_det_matrix(&m), || {
                format!("Bareiss != cofactor at {}", where_(spec, *i, f))
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} matrices agree with cofactor expansion"))
}

fn criterion_5(corpus: &Corpus) -> Outcome {
    let mut checked = 0;
    for (spec, i, f) in corpus {
        let res = reduce_variables(f).map_err(|e| e.to_string())?;
        if res.k == 0 {
            continue;
        }
        let ok = coset_invariance_check(f, &res.m_basis).map_err(|e| e.to_string())?;
        ensure(ok, || {
            format!("L_f not invariant along M at {}", where_(spec, *i, f))
        })?;
        checked += 1;
    }
    Ok(format!("{checked} instances with k >= 1 invariant along M"))
}

fn criterion_6(corpus: &Corpus) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for t in 0..FUNCTOR_TRIPLES {
        let (_, _, f) = &corpus[rng.gen_range(0..corpus.len())];
        let a = random_unimodular(&mut rng, f.nvars());
        let b = random_unimodular(&mut rng, f.nvars());
        let ok = functor_law_holds(f, &a, &b, &mut rng).map_err(|e| e.to_string())?;
        ensure(ok, || {
            format!(
                "triple {t}: f = {f}, A = {:?}, B = {:?}",
                a.matrix(),
                b.matrix()
            )
        })?;
    }
    Ok(format!(
        "{FUNCTOR_TRIPLES} triples: (f∘xi_B)∘xi_A = f∘xi_(BA) = f(xi_B(xi_A(x)))"
    ))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let f = parse_laurent("x1^2*x3 + x1*x2*x4 + x2^2*x5", 5).unwrap();
    let h = classical_hessian(&f);
    let classical_vanishes = !h.is_zero() && h.det().is_zero() && cofactor_det_matrix(&h).is_zero();
    let r = support_lattice(&f).rank();
    let res = reduce_variables(&f).map_err(|e| e.to_string())?;
    let hr = hessian_rank_certified(&f);
    let t = start.elapsed();
    let detail = format!(
        "det Hf = 0: {classical_vanishes}, support rank {r}, log Hessian rank {hr}, k = {}, \
         verified {}, {t:?}",
        res.k, res.verified
    );
    // three monomials span a lattice of rank at most 3
    ensure(
        classical_vanishes && r == 5 && hr == 5 && res.k == 0 && t < PERAZZO_BUDGET,
        || format!("expected support rank 5 and k = 0; got {detail}"),
    )?;
    Ok(detail)
}

fn criterion_8() -> Outcome {
    let p = |s: &str| parse_laurent(s, 2).unwrap();

    let f = p("x1*x2");
    let a = log_hessian(&f);
    ensure(
        a == PolyMatrix::new(2, vec![vec![p("x2"), p("x1")], vec![p("x2"), p("x1")]]).unwrap(),
        || format!("Af(x1x2) = {a}"),
    )?;
    ensure(a.det().is_zero() && a.generic_rank() == 1, || {
        "x1x2: det/rank".into()
    })?;
    ensure(hessian_rank_certified(&f) == 1, || {
        "x1x2: certified rank".into()
    })?;
    let res = reduce_variables(&f).map_err(|e| e.to_string())?;
    ensure(res.k == 1 && res.verified, || "x1x2: reduction".into())?;
    ensure(res.reduced == p("x1") || res.reduced == p("x1^-1"), || {
        format!("x1x2 reduced to {}", res.reduced)
    })?;

    let f = p("x1*x2^-1 + x2*x1^-1");
    let res = reduce_variables(&f).map_err(|e| e.to_string())?;
    ensure(res.k == 1 && res.hessian_rank == 1 && res.verified, || {
        "x1/x2 + x2/x1: k".into()
    })?;
    ensure(res.reduced == p("x1 + x1^-1"), || {
        format!("x1/x2 + x2/x1 reduced to {}", res.reduced)
    })?;
    ensure(log_hessian(&f).det().is_zero(), || {
        "x1/x2 + x2/x1: det".into()
    })?;
    ensure(
        res.m_basis == LatticeBasis::from_i64(2, &[&[1, 1]]).unwrap()
            && res.lambda_basis == LatticeBasis::from_i64(2, &[&[1, -1]]).unwrap(),
        || "x1/x2 + x2/x1: lattices".into(),
    )?;

    let f = p("x1 + x2 + x1*x2");
    let a = log_hessian(&f);
    ensure(a.det() == p("1 + x1 + x2"), || format!("det = {}", a.det()))?;
    ensure(hessian_rank_certified(&f) == 2, || {
        "x1 + x2 + x1x2: rank".into()
    })?;
    let res = reduce_variables(&f).map_err(|e| e.to_string())?;
    ensure(res.k == 0 && res.reduced == f, || {
        "x1 + x2 + x1x2: reduction".into()
    })?;
    Ok("x1x2, x1/x2 + x2/x1, x1 + x2 + x1x2 match hand derivations".into())
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntegerMatrix {
    let r = rng.gen_range(1..=LATTICE_MAX_DIM);
    let c = rng.gen_range(1..=LATTICE_MAX_DIM);
    let rows = (0..r)
        .map(|_| {
            (0..c)
                .map(|_| BigInt::from(rng.gen_range(-LATTICE_ENTRY_BOUND..=LATTICE_ENTRY_BOUND)))
                .collect()
        })
        .collect();
    IntegerMatrix::from_rows(c, rows).unwrap()
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for t in 0..LATTICE_MATRICES {
        let m = random_matrix(&mut rng);
        let (h, u) = hnf(&m);
        ensure(
            is_unimodular(&u).unwrap() && u.mul(&m).unwrap() == h,
            || format!("#{t} HNF transform for {m:?}"),
        )?;
        ensure(is_row_echelon_hnf(&h), || format!("#{t} HNF shape {h:?}"))?;
        ensure(
            (0..m.rows()).all(|i| in_echelon_row_lattice(&h, m.row(i))),
            || format!("#{t} HNF row lattice for {m:?}"),
        )?;

        let (s, u, v) = snf(&m);
        ensure(
            is_unimodular(&u).unwrap()
                && is_unimodular(&v).unwrap()
                && u.mul(&m).unwrap().mul(&v).unwrap() == s
                && is_diagonal(&s),
            || format!("#{t} SNF transform for {m:?}"),
        )?;
        let d = invariant_factors(&s);
        ensure(d.len() == m.rank(), || format!("#{t} SNF rank"))?;
        let mut prod = BigInt::one();
        for (i, di) in d.iter().enumerate() {
            ensure(
                di.is_positive() && (i == 0 || (di % &d[i - 1]).is_zero()),
                || format!("#{t} divisibility chain {d:?}"),
            )?;
            prod *= di;
            ensure(prod == minor_gcd(&m, i + 1), || {
                format!("#{t} minor gcd at {}", i + 1)
            })?;
        }
        for i in d.len()..m.rows().min(m.cols()) {
            ensure(s.get(i, i).is_zero(), || format!("#{t} trailing diagonal"))?;
        }
    }
    let t = start.elapsed();
    ensure(t < LATTICE_BUDGET, || format!("took {t:?}"))?;
    Ok(format!("{LATTICE_MATRICES} matrices, {t:?}"))
}

fn strip_elapsed(s: &str) -> String {
    s.lines()
        .filter(|l| !l.trim_start().starts_with("\"elapsed_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn run_bin(args: &[&str]) -> Result<(Option<i32>, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_logtorus"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((
        out.status.code(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    ))
}

fn criterion_10() -> Outcome {
    let analyze = [
        "analyze",
        "--vars",
        "4",
        "--format",
        "json",
        "3/2*x1*x2^-1*x4^2 - x2*x1^-1*x4^-2 + 7*x1^2*x2^-2*x4^4 + x3^0",
    ];
    let (c1, a) = run_bin(&analyze)?;
    let (c2, b) = run_bin(&analyze)?;
    ensure(c1 == Some(0) && c2 == Some(0), || {
        format!("analyze exit {c1:?}/{c2:?}")
    })?;
    ensure(a.contains("\"elapsed_ms\""), || {
        "report lacks elapsed_ms".into()
    })?;
    ensure(strip_elapsed(&a) == strip_elapsed(&b), || {
        "analyze JSON differs".into()
    })?;

    let fuzz = [
        "fuzz", "--vars", "4", "--rank", "2", "--terms", "8", "--seed", "2024", "--count", "40",
        "--format", "json",
    ];
    let (c1, a) = run_bin(&fuzz)?;
    let (c2, b) = run_bin(&fuzz)?;
    ensure(c1 == Some(0) && c2 == Some(0), || {
        format!("fuzz exit {c1:?}/{c2:?}")
    })?;
    ensure(a == b, || "fuzz output differs between runs".into())?;
    Ok("analyze JSON stable modulo elapsed_ms; fuzz output identical".into())
}

fn main() {
    let corpus = acceptance_corpus(CORPUS_PER_CELL);
    let criteria: Vec<Criterion> = vec![
        ("1 rank equality", Box::new(|| criterion_1(&corpus))),
        ("2 reduction soundness", Box::new(|| criterion_2(&corpus))),
        ("3 vanishing criterion", Box::new(|| criterion_3(&corpus))),
        (
            "4 determinant identities",
            Box::new(|| criterion_4(&corpus)),
        ),
        ("5 coset structure", Box::new(|| criterion_5(&corpus))),
        ("6 functor law", Box::new(|| criterion_6(&corpus))),
        ("7 classical contrast", Box::new(criterion_7)),
        ("8 worked examples", Box::new(criterion_8)),
        ("9 lattice layer", Box::new(criterion_9)),
        ("10 CLI reproducibility", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
