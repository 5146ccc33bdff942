//! Exact arithmetic for the toroidal workspace: integer Laurent polynomials
//! in a fixed variable registry, canonical rational functions over Q, and
//! truncated series in `u^-1`.

pub mod error;
pub mod gcd;
pub mod modp;
pub mod parse;
pub mod poly;
pub mod ratfun;
pub mod series;
pub mod var;

pub use error::ExactError;
pub use gcd::{gcd, gcd_cofactors};
pub use poly::Poly;
pub use ratfun::RatFun;
pub use series::{rf_series, rf_series_at_zero, Direction, USeries};
pub use var::{Mon, Var, NVARS};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Parse a canonical (or any well-formed) rational-function string.
pub fn rf_parse(s: &str) -> Result<RatFun, ExactError> {
    parse::parse(s)
}

pub fn rf_to_string(f: &RatFun) -> String {
    f.to_string()
}
