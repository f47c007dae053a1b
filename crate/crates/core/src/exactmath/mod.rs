//! Exact arithmetic substrate.
//!
//! Everything here is immutable value arithmetic over arbitrary-precision
//! rationals. Nothing in this module touches floating point.

mod laurent;
mod rational;
mod serial;
mod series;
mod univariate;

pub use laurent::EvenLaurentPoly;
pub use rational::{
    double_factorial_odd, factorial, format_fraction, int, is_dyadic, parse_rational, pow2, rat,
    Rational,
};
pub use serial::{PolyDocument, TermDocument};
pub use series::{laurent_to_series, SeriesCache, TruncatedSeries};
pub use univariate::{Dual, Laurent1, RatFunc, UniPoly};
