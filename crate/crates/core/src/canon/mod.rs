//! The canonical ring: fractions of polynomials in `x^q * ln(x)^k` with
//! Gaussian-rational coefficients and rational `q`.
//!
//! Equality is decided by cross-multiplication, so no polynomial GCD is
//! needed. Functions are compared at a generic point: isolated poles and
//! zeros are not tracked.

mod function;
mod polynomial;

pub use function::{to_canonical, CanonicalFunction, Monomial};
pub use polynomial::{MonomialKey, Polynomial};
