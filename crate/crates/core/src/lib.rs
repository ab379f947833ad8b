//! Explicit least-prime bounds for opposite-sign Frobenius traces and for
//! Sato–Tate angles in an interval, with the constants behind them and an
//! empirical harness on real curves.

pub mod bounds;
pub mod chebyshev;
pub mod constants;
pub mod curves;
pub mod error;
pub mod lemmas;
pub mod minorant;
pub mod search;
pub mod specfun;
pub mod sums;

pub use error::{Error, Result};
