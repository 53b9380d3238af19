//! Exact arithmetic: rationals, sparse multivariate polynomials, rational
//! functions whose denominators are products of variable differences,
//! univariate specializations with residues, and determinants.

mod det;
mod domain;
mod poly;
mod ratfunc;
mod univariate;

use std::collections::BTreeMap;

use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

pub use det::{det, det_rational_functions, ExactRing};
pub use domain::{Domain, Numeric, Symbolic};
pub use poly::{Monomial, Polynomial};
pub use ratfunc::{DifferenceFactor, RationalFunction};
pub use univariate::{contour_sum, residue, ContourReport, UPoly, UnivariateRational};

/// Index of a commuting variable `x_i` in the global variable order.
pub type VarIndex = usize;

/// Numeric values for (some of) the variables.
pub type Assignment = BTreeMap<VarIndex, Rational>;

/// `n` as an exact rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` as an exact rational, reduced.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Default variable naming used by `Display` impls.
pub fn default_var_name(v: VarIndex) -> String {
    format!("x{v}")
}
