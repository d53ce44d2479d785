use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::polynomial::{MonomialKey, Polynomial};
use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::number::{exact_rational_power, GaussianRational, Rational};

/// A fraction `num/den` of polynomials in `x^q * ln(x)^k`.
///
/// Values are compared semantically: `==` is [`CanonicalFunction::equals`],
/// the cross-multiplication test, not structural equality of the parts.
#[derive(Clone, Debug)]
pub struct CanonicalFunction {
    num: Polynomial,
    den: Polynomial,
}

/// The monomial `coeff * x^xexp * ln(x)^lexp` that a function reduces to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: GaussianRational,
    pub xexp: Rational,
    pub lexp: u32,
}

impl CanonicalFunction {
    /// Builds `num/den` as given, without normalization.
    pub fn from_parts(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(Self { num, den })
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        Self { num: p, den: Polynomial::one() }
    }

    pub fn zero() -> Self {
        Self::from_polynomial(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_polynomial(Polynomial::constant(c))
    }

    pub fn x() -> Self {
        Self::from_polynomial(Polynomial::x())
    }

    pub fn ln_x() -> Self {
        Self::from_polynomial(Polynomial::ln_x())
    }

    pub fn monomial(coeff: GaussianRational, xexp: Rational, lexp: u32) -> Self {
        Self::from_polynomial(Polynomial::monomial(MonomialKey::new(xexp, lexp), coeff))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Total number of stored terms in numerator and denominator.
    pub fn size(&self) -> usize {
        self.num.len() + self.den.len()
    }

    /// Display normal form. Removes the common monomial content
    /// `x^min(q) * ln(x)^min(k)`, divides by the denominator's least
    /// coefficient, then rescales by a positive rational so the denominator's
    /// real and imaginary parts are coprime integers. The zero function
    /// normalizes to `0/1`.
    pub fn normalize_display(&self) -> CanonicalFunction {
        if self.num.is_zero() {
            return CanonicalFunction::zero();
        }
        let (nx, nl) = self.num.min_exponents().expect("nonzero");
        let (dx, dl) = self.den.min_exponents().expect("nonzero");
        let content = MonomialKey::new(nx.min(dx), nl.min(dl));
        let num = self.num.unshift(&content).expect("content divides");
        let den = self.den.unshift(&content).expect("content divides");
        let lead = den.least_term().expect("nonzero").1.recip().expect("nonzero coefficient");
        let (num, den) = (num.scale(&lead), den.scale(&lead));
        let clear = GaussianRational::real(integer_clearing_factor(&den));
        CanonicalFunction { num: num.scale(&clear), den: den.scale(&clear) }
    }

    /// Exact equality as functions: `f.num*g.den - g.num*f.den == 0`.
    ///
    /// Complete because distinct monomials x^q ln(x)^k are linearly
    /// independent on (0, inf).
    pub fn equals(&self, other: &CanonicalFunction) -> bool {
        // Cheap structural check first.
        if self.num == other.num && self.den == other.den {
            return true;
        }
        (&self.num * &other.den) == (&other.num * &self.den)
    }

    /// `Some(k)` iff the function is the constant `k`.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        let m = self.as_monomial_or_zero()?;
        (m.xexp.is_zero() && m.lexp == 0).then_some(m.coeff)
    }

    /// `Some((a, q, k))` iff the function is `a * x^q * ln(x)^k` with `a != 0`.
    pub fn as_monomial(&self) -> Option<Monomial> {
        self.as_monomial_or_zero().filter(|m| !m.coeff.is_zero())
    }

    fn as_monomial_or_zero(&self) -> Option<Monomial> {
        let Some((kn, cn)) = self.num.least_term() else {
            return Some(Monomial { coeff: GaussianRational::zero(), xexp: Rational::zero(), lexp: 0 });
        };
        // num = m * den forces least(num) = m * least(den).
        let (kd, cd) = self.den.least_term().expect("denominator is nonzero");
        let key = kn.checked_div(kd)?;
        let coeff = cn / cd;
        if self.num.len() != self.den.len() || self.num != self.den.shift(&key).scale(&coeff) {
            return None;
        }
        Some(Monomial { coeff, xexp: key.xexp, lexp: key.lexp })
    }

    /// `(num'*den - num*den') / den^2`.
    pub fn derivative(&self) -> CanonicalFunction {
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        CanonicalFunction { num: top, den: &self.den * &self.den }.normalize_display()
    }

    /// The dual logarithmic derivative `x * f' / f`.
    ///
    /// With the Euler operator θ = x d/dx this is
    /// `(θnum*den - num*θden) / (num*den)`, which stays in the ring.
    pub fn apply_a(&self) -> Result<CanonicalFunction> {
        if self.num.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let top = &(&self.num.euler() * &self.den) - &(&self.num * &self.den.euler());
        Ok(CanonicalFunction { num: top, den: &self.num * &self.den }.normalize_display())
    }

    pub fn recip(&self) -> Result<CanonicalFunction> {
        if self.num.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(CanonicalFunction { num: self.den.clone(), den: self.num.clone() }.normalize_display())
    }

    pub fn div(&self, rhs: &CanonicalFunction) -> Result<CanonicalFunction> {
        if rhs.num.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(CanonicalFunction { num: &self.num * &rhs.den, den: &self.den * &rhs.num }.normalize_display())
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn powi(&self, exp: i64) -> Result<CanonicalFunction> {
        let mut base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = CanonicalFunction::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Rational power. Integer exponents use repeated multiplication; a
    /// fractional exponent requires the base to be a monomial `a*x^q` with an
    /// exact power of `a` (a positive rational perfect power).
    pub fn pow(&self, exp: &Rational) -> Result<CanonicalFunction> {
        const MAX_INTEGER_POWER: u64 = 256;
        if let Some(m) = self.as_monomial() {
            if exp.is_integer() || m.lexp == 0 {
                return monomial_pow(&m, exp);
            }
        }
        if !exp.is_integer() {
            return Err(Error::NotRepresentable(format!("fractional power {exp} of a non-monomial base")));
        }
        match exp.numer().to_i64() {
            Some(n) if n.unsigned_abs() <= MAX_INTEGER_POWER => self.powi(n),
            _ => Err(Error::NotRepresentable(format!("exponent {exp} is too large"))),
        }
    }

    pub fn to_expression(&self) -> Expression {
        let num = self.num.to_expression();
        if self.den.len() == 1 && self.den.least_term().is_some_and(|(k, c)| k.is_one() && c.is_one()) {
            num
        } else {
            Expression::div(num, self.den.to_expression())
        }
    }
}

/// The positive rational `lcm(denominators) / gcd(numerators)` over every
/// real and imaginary part of the coefficients of `p`.
fn integer_clearing_factor(p: &Polynomial) -> Rational {
    let parts = || p.terms().flat_map(|(_, c)| [&c.re, &c.im]).filter(|r| !r.is_zero());
    let lcm = parts().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let gcd = parts().fold(BigInt::zero(), |acc, r| acc.gcd(&(r * Rational::from_integer(lcm.clone())).to_integer()));
    Rational::new(lcm, gcd)
}

fn monomial_pow(m: &Monomial, exp: &Rational) -> Result<CanonicalFunction> {
    const MAX_COEFF_POWER: i64 = 4096;
    let xexp = &m.xexp * exp;
    let lexp = if m.lexp == 0 {
        0
    } else {
        // exp is an integer here
        let l = exp.numer().to_i64().and_then(|n| n.checked_mul(m.lexp as i64));
        match l {
            Some(l) if l >= 0 => u32::try_from(l).map_err(|_| Error::NotRepresentable("log power too large".into()))?,
            _ => return Err(Error::NotRepresentable(format!("negative power of ln(x) in ({}) ^ {exp}", mono_text(m)))),
        }
    };
    let coeff = if m.coeff.is_one() {
        GaussianRational::one()
    } else if exp.is_integer() {
        let n = exp.numer().to_i64().filter(|n| n.abs() <= MAX_COEFF_POWER);
        let n = n.ok_or_else(|| Error::NotRepresentable(format!("exponent {exp} is too large")))?;
        m.coeff.powi(n).ok_or(Error::ZeroFunction)?
    } else {
        let exact = m
            .coeff
            .as_real()
            .filter(|r| r.is_positive())
            .and_then(|r| exact_rational_power(r, exp))
            .ok_or_else(|| Error::NotRepresentable(format!("({}) ^ {exp} is not exact", m.coeff)))?;
        GaussianRational::real(exact)
    };
    Ok(CanonicalFunction::monomial(coeff, xexp, lexp))
}

fn mono_text(m: &Monomial) -> String {
    CanonicalFunction::monomial(m.coeff.clone(), m.xexp.clone(), m.lexp).to_string()
}

/// Lowers a parsed expression into the canonical ring, folding arithmetic
/// exactly.
pub fn to_canonical(e: &Expression) -> Result<CanonicalFunction> {
    Ok(match e {
        Expression::Const(c) => CanonicalFunction::constant(c.clone()),
        Expression::VarX => CanonicalFunction::x(),
        Expression::LnX => CanonicalFunction::ln_x(),
        Expression::Neg(a) => -&to_canonical(a)?,
        Expression::Add(a, b) => &to_canonical(a)? + &to_canonical(b)?,
        Expression::Sub(a, b) => &to_canonical(a)? - &to_canonical(b)?,
        Expression::Mul(a, b) => &to_canonical(a)? * &to_canonical(b)?,
        Expression::Div(a, b) => to_canonical(a)?.div(&to_canonical(b)?)?,
        Expression::Pow(b, q) => {
            let base = to_canonical(b)?;
            if q.is_zero() {
                CanonicalFunction::one()
            } else if base.is_zero() {
                if q.is_positive() {
                    CanonicalFunction::zero()
                } else {
                    return Err(Error::ZeroFunction);
                }
            } else if q.is_one() {
                base
            } else {
                base.pow(q)?
            }
        }
    }
    .normalize_display())
}

impl PartialEq for CanonicalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Eq for CanonicalFunction {}

impl fmt::Display for CanonicalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::format(&self.to_expression()))
    }
}

impl Add for &CanonicalFunction {
    type Output = CanonicalFunction;
    fn add(self, rhs: &CanonicalFunction) -> CanonicalFunction {
        if self.den == rhs.den {
            return CanonicalFunction { num: &self.num + &rhs.num, den: self.den.clone() }.normalize_display();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        CanonicalFunction { num, den: &self.den * &rhs.den }.normalize_display()
    }
}

impl Sub for &CanonicalFunction {
    type Output = CanonicalFunction;
    fn sub(self, rhs: &CanonicalFunction) -> CanonicalFunction {
        self + &(-rhs)
    }
}

impl Mul for &CanonicalFunction {
    type Output = CanonicalFunction;
    fn mul(self, rhs: &CanonicalFunction) -> CanonicalFunction {
        CanonicalFunction { num: &self.num * &rhs.num, den: &self.den * &rhs.den }.normalize_display()
    }
}

impl Neg for &CanonicalFunction {
    type Output = CanonicalFunction;
    fn neg(self) -> CanonicalFunction {
        CanonicalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl From<GaussianRational> for CanonicalFunction {
    fn from(c: GaussianRational) -> Self {
        CanonicalFunction::constant(c)
    }
}

impl From<Rational> for CanonicalFunction {
    fn from(r: Rational) -> Self {
        CanonicalFunction::constant(GaussianRational::real(r))
    }
}

impl std::str::FromStr for CanonicalFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        to_canonical(&crate::expr::parse(s)?)
    }
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<CanonicalFunction>();
}
