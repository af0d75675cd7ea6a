//! Arbitrary-precision arithmetic and small-degree polynomial root finding.
//!
//! Reals are fixed-point: a value is `mantissa / 2^frac_bits` where
//! `frac_bits = precision + 64` guard bits. Every operation truncates at most
//! one ulp at that resolution, which sits far below the verification
//! tolerance `tau = 2^(-bits/2)`, so tolerance reasoning never has to account
//! for representation error.

mod complex;
mod poly;
mod real;

pub use complex::BigComplex;
pub use poly::{Poly, RootError};
pub use real::{BigReal, Precision};

/// Guard bits kept beyond the nominal precision of every value.
pub(crate) const GUARD_BITS: u32 = 64;
