//! Minimal denominators of real intervals and the sum
//! `S(N) = Σ_j q(](j-1)/N, j/N])`.
//!
//! The crate is split along the lines of the computation:
//!
//! * [`farey`]: modular inverses, the next-denominator recurrence and
//!   enumeration of Farey sequences and their adjacent denominator pairs.
//! * [`minden`]: the minimal denominator `q(E)` of an interval, with a
//!   brute-force scan and a logarithmic continued-fraction descent.
//! * [`sums`]: exact evaluation of `S(N)`, its boundary variants, the
//!   distribution functions `θ_N`, `ν_N`, the remainder `R(N)` and the
//!   decomposition `T = T1 + T2 = T11 + T12 + T2`.
//! * [`expsums`]: discrete Fourier transform modulo `q`, Kloosterman and
//!   Ramanujan sums, `B1` and the twisted-sum inequalities.
//! * [`checks`]: the verification suites driven by the CLI and the
//!   acceptance tests.
//!
//! All exact quantities are [`ExactScalar`]s (arbitrary-precision rationals).

pub mod accum;
pub mod arith;
pub mod checks;
pub mod error;
pub mod expsums;
pub mod farey;
pub mod minden;
pub mod sums;

pub use error::{Error, Result};
pub use farey::{AdjacentPair, Fraction};
pub use minden::{Algorithm, Interval, Variant};
pub use sums::SumReport;

/// Arbitrary-precision rational used for every identity-checked quantity.
pub type ExactScalar = num_rational::BigRational;

/// `16/π²`, the leading constant of `S(N) / N^{3/2}`.
pub const KM_CONSTANT: f64 = 16.0 / (std::f64::consts::PI * std::f64::consts::PI);
