//! Exact truncated Laurent series in `q` and the q-Pochhammer constructors
//! every other module computes with.

mod monomial;
mod series;
pub mod sums;
mod term;

pub use monomial::Monomial;
pub use series::{Mismatch, QLaurent};
pub use sums::{bilateral_sum_series, double_sum_series, sum_series};
pub use term::{pochhammer_finite, pochhammer_infinite, Term};

use num_rational::BigRational;

/// `BigRational` from a machine integer.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}
