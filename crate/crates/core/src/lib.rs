//! Exact symbolic engine for the dual logarithmic derivative
//! `A[f] = x f'(x) / f(x)`.
//!
//! Expressions in `x` and `ln(x)` are parsed ([`expr`]), lowered into an exact
//! ring of fractions of `x^q ln(x)^k` polynomials ([`canon`]), iterated and
//! classified under `A` ([`dynamics`]), and cross-checked numerically with
//! finite differences ([`numeric`]).

pub mod canon;
pub mod dynamics;
pub mod error;
pub mod expr;
pub mod number;
pub mod numeric;
pub mod random;

pub use canon::{to_canonical, CanonicalFunction, Monomial, MonomialKey, Polynomial};
pub use error::{Error, NumericError, ParseError, Result};
pub use expr::{format, parse, Expression};
pub use number::{GaussianRational, Rational};
