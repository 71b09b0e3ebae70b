//! Truncated q-series for the eta-quotient hauptmoduln `j`, `j_N`, `j_N^+`
//! (N = 2, 3, 4, 5, 7, 13) and exhaustive checks of the parity behaviour of
//! their Fourier coefficients.
//!
//! Layers, bottom-up:
//! - [`series`]: truncated Laurent series over the integers or GF(2)
//! - [`eta`]: Dedekind eta quotients and `E_4`
//! - [`hauptmodul`]: the named functions and a shared expansion cache
//! - [`parity`]: quadratic-form predicates, shifted-sum identities and
//!   interval/witness claims
//! - [`suite`]: the full verification sweep

pub mod error;
pub mod eta;
pub mod gf2;
pub mod hauptmodul;
pub mod parity;
pub mod series;
pub mod suite;

pub use error::{Error, Result};
pub use series::{Coefficient, LaurentSeries, Ring};
