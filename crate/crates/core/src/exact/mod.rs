//! Exact arithmetic substrate: rationals, Laurent polynomials, truncated
//! series, bidegrees and dense linear algebra over `Q` and `Z`.

mod bidegree;
pub mod linalg;
mod parse;
mod poly;
mod rational;
mod series;

pub use bidegree::BiDegree;
pub use parse::{poly_parse, poly_print};
pub use poly::{grlex, poly_arith, ArithOp, Exponents, LaurentPoly, Ring, VarSpec};
pub use rational::Rational;
pub use series::{series_log_derivative, TruncatedSeries};
