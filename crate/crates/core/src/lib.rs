//! Exact analysis of logarithmic Hessians of Laurent polynomials on the
//! algebraic torus `(C^*)^n`, and construction of the monoidal change of
//! variables that rewrites a polynomial with vanishing logarithmic Hessian
//! in fewer variables.
//!
//! ```
//! use logtorus::{parse_laurent, reduce_variables};
//!
//! let f = parse_laurent("x1*x2^-1 + x2*x1^-1", 2).unwrap();
//! let res = reduce_variables(&f).unwrap();
//! assert_eq!(res.k, 1);
//! assert!(res.verified);
//! assert_eq!(res.reduced.to_string(), "x1 + x1^-1");
//! ```

pub mod bareiss;
pub mod calculus;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod fuzz;
pub mod lattice;
pub mod laurent;
pub mod parse;
pub mod reduce;
pub mod report;

pub use calculus::{
    affine_polar_map, classical_hessian, log_gauss_point, log_hessian, log_hessian_symmetric,
    logarithmic_polar_map, partial_derivative, theta, PolyMatrix, PolyVector,
};
pub use error::{Error, Result};
pub use lattice::{
    hnf, is_unimodular, saturate, saturated_kernel, snf, unimodular_completion, IntegerMatrix,
    LatticeBasis, Placement,
};
pub use laurent::{format_canonical, LaurentPolynomial, Rational};
pub use parse::{parse_laurent, ParseError};
pub use reduce::{
    build_automorphism, coset_invariance_check, hessian_rank_certified, monomial_substitute,
    reduce_variables, support_lattice, verify_reduction, ReductionResult, TorusAutomorphism,
};
