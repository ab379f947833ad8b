//! Elliptic curve data, point counts, traces of Frobenius and Sato–Tate
//! angles.

mod count;
mod model;
mod sieve;
mod traces;

pub use count::{count_points, Method};
pub use model::{
    load_ap_table, load_curves, within_hasse, write_ap_table, AngleSample, ApTable, CurveModel,
    PrimeTrace,
};
pub use sieve::{factor, is_prime, prime_power, primes_up_to, PrimeIter};
pub use traces::{angle, trace, TraceTable};
