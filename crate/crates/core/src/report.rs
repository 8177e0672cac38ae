//! The analysis report produced by `analyze` / `reduce`.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::LatticeBasis;
use crate::laurent::LaurentPolynomial;
use crate::reduce::{reduce_variables, verify_reduction, ReductionResult, VerificationFailure};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub support_size: usize,
    pub exponent_rank: usize,
    pub hessian_rank: usize,
    pub k: usize,
    pub det_af_is_zero: bool,
    pub lambda_basis: Vec<Vec<i64>>,
    pub m_basis: Vec<Vec<i64>>,
    pub automorphism_rows: Vec<Vec<i64>>,
    pub reduced_polynomial: String,
    pub verified: bool,
    pub elapsed_ms: u64,
}

fn small_rows(rows: &[Vec<BigInt>]) -> Result<Vec<Vec<i64>>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().ok_or(Error::Overflow))
                .collect()
        })
        .collect()
}

fn basis_rows(b: &LatticeBasis) -> Result<Vec<Vec<i64>>> {
    small_rows(b.vectors())
}

/// Full analysis of `f`, with the reduction certificate and any verification failures.
pub fn analyze(
    f: &LaurentPolynomial,
) -> Result<(AnalysisReport, ReductionResult, Vec<VerificationFailure>)> {
    let start = Instant::now();
    let res = reduce_variables(f)?;
    let failures = verify_reduction(f, &res).failures;
    let report = AnalysisReport {
        n: res.n,
        support_size: f.len(),
        exponent_rank: res.r,
        hessian_rank: res.hessian_rank,
        k: res.k,
        det_af_is_zero: res.hessian_rank < res.n,
        lambda_basis: basis_rows(&res.lambda_basis)?,
        m_basis: basis_rows(&res.m_basis)?,
        automorphism_rows: res.automorphism.matrix().to_i64_rows()?,
        reduced_polynomial: res.reduced.to_string(),
        verified: res.verified,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    Ok((report, res, failures))
}

fn rows_to_string(rows: &[Vec<i64>]) -> String {
    let inner: Vec<String> = rows
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", inner.join(", "))
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "variables n:        {}", self.n)?;
        writeln!(f, "support size:       {}", self.support_size)?;
        writeln!(f, "exponent rank r:    {}", self.exponent_rank)?;
        writeln!(f, "log-Hessian rank:   {}", self.hessian_rank)?;
        writeln!(f, "eliminated k:       {}", self.k)?;
        writeln!(f, "det Af vanishes:    {}", self.det_af_is_zero)?;
        writeln!(
            f,
            "lambda basis:       {}",
            rows_to_string(&self.lambda_basis)
        )?;
        writeln!(f, "M basis:            {}", rows_to_string(&self.m_basis))?;
        writeln!(
            f,
            "automorphism A:     {}",
            rows_to_string(&self.automorphism_rows)
        )?;
        writeln!(f, "reduced:            {}", self.reduced_polynomial)?;
        writeln!(f, "verified:           {}", self.verified)?;
        write!(f, "elapsed:            {} ms", self.elapsed_ms)
    }
}
