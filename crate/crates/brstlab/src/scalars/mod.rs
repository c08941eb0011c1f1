//! Exact coefficient arithmetic: Gaussian rationals and truncated formal
//! power series in the deformation parameter.
//!
//! Every value in the crate bottoms out in [`Scalar`] (a complex number with
//! arbitrary-precision rational real and imaginary parts) or in a
//! [`Series`] over some payload. Equality is exact coefficient equality
//! throughout; there are no tolerances anywhere.

mod scalar;
mod series;

pub use scalar::{Rat, Scalar};
pub use series::{Payload, Series};

pub(crate) use scalar::parse_rat as parse_rat_str;
