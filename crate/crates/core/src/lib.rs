//! Exact computation of integral ribbon graph counts `N_{g,n}(p)`, their
//! Laplace-transformed Laurent polynomials, and the Euclidean and symplectic
//! volume polynomials of the moduli space of pointed curves.
//!
//! Every quantity is an exact rational. The crate is organised as:
//!
//! - [`exactmath`]: rationals, sparse even Laurent polynomials, truncated
//!   power series and univariate rational functions.
//! - [`surface`]: surface types `(g, n)` and stable splittings.
//! - [`lattice`]: the edge-removal recursion for `N_{g,n}(p)`.
//! - [`transform`]: one differential recursion engine, three configurations
//!   (`L`, `V^E`, `V^S`), plus ratio and intersection-number extraction.
//! - [`eo`]: residue-calculus form of the recursions on three spectral curves.
//! - [`crosscheck`]: identities tying the modules together.
//! - [`verify`]: the verification suites exposed by the CLI.

pub mod crosscheck;
pub mod emit;
pub mod eo;
mod error;
pub mod exactmath;
pub mod golden;
pub mod lattice;
pub mod surface;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
pub use exactmath::{EvenLaurentPoly, Rational, TruncatedSeries};
pub use surface::SurfaceType;
pub use transform::{Engine, Family};
