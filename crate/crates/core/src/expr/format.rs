//! Printer with minimal parentheses.

use num_traits::{Signed, Zero};

use super::Expression;
use crate::number::{fmt_rational, GaussianRational, Rational};

const ADD: u8 = 1;
const MUL: u8 = 2;
const NEG: u8 = 3;
const POW: u8 = 4;
const ATOM: u8 = 5;

struct Rendered {
    text: String,
    prec: u8,
    /// The text ends in a bare number literal that a following `/integer`
    /// would extend into a `p/q` literal.
    tail_number: bool,
}

impl Rendered {
    fn at_least(self, prec: u8) -> Rendered {
        if self.prec >= prec {
            self
        } else {
            Rendered { text: format!("({})", self.text), prec: ATOM, tail_number: false }
        }
    }
}

fn const_prec(c: &GaussianRational) -> u8 {
    match (c.re.is_zero(), c.im.is_zero()) {
        (false, false) => ADD,
        (_, true) if c.re.is_integer() => {
            if c.re.is_negative() {
                NEG
            } else {
                ATOM
            }
        }
        (_, true) => MUL,
        (true, false) if c.im.abs() == Rational::from_integer(1.into()) => {
            if c.im.is_negative() {
                NEG
            } else {
                ATOM
            }
        }
        (true, false) => MUL,
    }
}

fn is_nonzero_natural(e: &Expression) -> bool {
    matches!(e, Expression::Const(c) if c.im.is_zero() && c.re.is_integer() && c.re.is_positive())
}

fn render(e: &Expression) -> Rendered {
    use Expression::*;
    match e {
        Const(c) => Rendered { text: c.to_string(), prec: const_prec(c), tail_number: c.im.is_zero() },
        VarX => Rendered { text: "x".into(), prec: ATOM, tail_number: false },
        LnX => Rendered { text: "ln(x)".into(), prec: ATOM, tail_number: false },
        Neg(c) => {
            let inner = render(c).at_least(NEG);
            Rendered { text: format!("-{}", inner.text), prec: NEG, tail_number: inner.tail_number }
        }
        Add(l, r) | Sub(l, r) => {
            let op = if matches!(e, Add(..)) { "+" } else { "-" };
            let (l, r) = (render(l).at_least(ADD), render(r).at_least(ADD + 1));
            Rendered { text: format!("{} {op} {}", l.text, r.text), prec: ADD, tail_number: r.tail_number }
        }
        Mul(l, r) | Div(l, r) => {
            let is_div = matches!(e, Div(..));
            let lhs = render(l).at_least(MUL);
            let mut rhs = render(r).at_least(MUL + 1);
            if is_div && lhs.tail_number && rhs.text.starts_with(|ch: char| ch.is_ascii_digit()) {
                // `a/b` between two plain literals is itself the literal a/b,
                // which denotes the same value.
                let fuses_harmlessly = matches!(**l, Const(_)) && is_nonzero_natural(r);
                if !fuses_harmlessly {
                    rhs = Rendered { text: format!("({})", rhs.text), prec: ATOM, tail_number: false };
                }
            }
            let op = if is_div { "/" } else { "*" };
            Rendered { text: format!("{}{op}{}", lhs.text, rhs.text), prec: MUL, tail_number: rhs.tail_number }
        }
        Pow(b, q) => {
            let base = render(b).at_least(ATOM);
            let exp =
                if q.is_integer() && !q.is_negative() { fmt_rational(q) } else { format!("({})", fmt_rational(q)) };
            Rendered { text: format!("{}^{exp}", base.text), prec: POW, tail_number: false }
        }
    }
}

/// Prints `e` so that [`parse`](super::parse) reads it back to the same tree,
/// up to folding of constant subtrees.
pub fn format(e: &Expression) -> String {
    render(e).text
}
