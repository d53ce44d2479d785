//! Surface syntax: the expression tree, its parser and its printer.
//!
//! The language has one variable `x`, the nullary symbol `ln(x)`, exact
//! constants built from integers, `p/q` literals and `i`, the four field
//! operations, unary minus, and powers with literal rational exponents.

mod format;
mod parse;

pub use format::format;
pub use parse::parse;

use num_traits::ToPrimitive;

use crate::number::{GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expression {
    Const(GaussianRational),
    VarX,
    /// The natural logarithm of `x`; never of a compound argument.
    LnX,
    Neg(Box<Expression>),
    Add(Box<Expression>, Box<Expression>),
    Sub(Box<Expression>, Box<Expression>),
    Mul(Box<Expression>, Box<Expression>),
    Div(Box<Expression>, Box<Expression>),
    Pow(Box<Expression>, Rational),
}

#[allow(clippy::should_implement_trait)]
impl Expression {
    pub fn int(n: i64) -> Self {
        Expression::Const(GaussianRational::from_int(n))
    }

    pub fn neg(e: Expression) -> Self {
        Expression::Neg(Box::new(e))
    }

    pub fn add(l: Expression, r: Expression) -> Self {
        Expression::Add(Box::new(l), Box::new(r))
    }

    pub fn sub(l: Expression, r: Expression) -> Self {
        Expression::Sub(Box::new(l), Box::new(r))
    }

    pub fn mul(l: Expression, r: Expression) -> Self {
        Expression::Mul(Box::new(l), Box::new(r))
    }

    pub fn div(l: Expression, r: Expression) -> Self {
        Expression::Div(Box::new(l), Box::new(r))
    }

    pub fn pow(base: Expression, exp: Rational) -> Self {
        Expression::Pow(Box::new(base), exp)
    }

    pub fn as_const(&self) -> Option<&GaussianRational> {
        match self {
            Expression::Const(c) => Some(c),
            _ => None,
        }
    }

    /// Folds every subtree built only from constants into a single `Const`,
    /// bottom-up. Division by zero and non-integer powers are left alone.
    pub fn fold_constants(&self) -> Expression {
        use Expression::*;
        let bin = |l: &Expression,
                   r: &Expression,
                   op: fn(&GaussianRational, &GaussianRational) -> Option<GaussianRational>,
                   mk: fn(Box<Expression>, Box<Expression>) -> Expression| {
            let (l, r) = (l.fold_constants(), r.fold_constants());
            match (&l, &r) {
                (Const(a), Const(b)) => op(a, b).map(Const).unwrap_or_else(|| mk(Box::new(l), Box::new(r))),
                _ => mk(Box::new(l), Box::new(r)),
            }
        };
        match self {
            Const(_) | VarX | LnX => self.clone(),
            Neg(c) => match c.fold_constants() {
                Const(k) => Const(-k),
                other => Expression::neg(other),
            },
            Add(l, r) => bin(l, r, |a, b| Some(a + b), Add),
            Sub(l, r) => bin(l, r, |a, b| Some(a - b), Sub),
            Mul(l, r) => bin(l, r, |a, b| Some(a * b), Mul),
            Div(l, r) => bin(l, r, |a, b| b.recip().map(|inv| a * &inv), Div),
            Pow(b, q) => {
                let b = b.fold_constants();
                let folded = match (&b, q.is_integer()) {
                    (Const(k), true) => q.numer().to_i64().and_then(|n| k.powi(n)),
                    _ => None,
                };
                folded.map(Const).unwrap_or_else(|| Expression::pow(b, q.clone()))
            }
        }
    }
}

impl std::fmt::Display for Expression {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format(self))
    }
}

impl std::str::FromStr for Expression {
    type Err = crate::error::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
