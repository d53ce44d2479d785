use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::expr::Expression;
use crate::number::{GaussianRational, Rational};

/// The monomial `x^xexp * ln(x)^lexp`.
///
/// Ordered by `xexp`, then `lexp`. The order is compatible with
/// multiplication, so the least key of a product is the product of the
/// least keys.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonomialKey {
    pub xexp: Rational,
    pub lexp: u32,
}

impl MonomialKey {
    pub fn new(xexp: Rational, lexp: u32) -> Self {
        Self { xexp, lexp }
    }

    pub fn one() -> Self {
        Self { xexp: Rational::zero(), lexp: 0 }
    }

    pub fn is_one(&self) -> bool {
        self.xexp.is_zero() && self.lexp == 0
    }

    pub fn mul(&self, other: &MonomialKey) -> MonomialKey {
        MonomialKey { xexp: &self.xexp + &other.xexp, lexp: self.lexp + other.lexp }
    }

    /// `self / other`, if the result has a non-negative log power.
    pub fn checked_div(&self, other: &MonomialKey) -> Option<MonomialKey> {
        Some(MonomialKey { xexp: &self.xexp - &other.xexp, lexp: self.lexp.checked_sub(other.lexp)? })
    }
}

/// Finite sum of Gaussian-rational multiples of distinct monomials.
/// No stored coefficient is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<MonomialKey, GaussianRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(MonomialKey::one(), c)
    }

    pub fn monomial(key: MonomialKey, coeff: GaussianRational) -> Self {
        let mut p = Self::zero();
        p.add_term(key, coeff);
        p
    }

    pub fn x() -> Self {
        Self::monomial(MonomialKey::new(Rational::one(), 0), GaussianRational::one())
    }

    pub fn ln_x() -> Self {
        Self::monomial(MonomialKey::new(Rational::zero(), 1), GaussianRational::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (MonomialKey, GaussianRational)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonomialKey, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &MonomialKey) -> Option<&GaussianRational> {
        self.terms.get(key)
    }

    pub fn least_term(&self) -> Option<(&MonomialKey, &GaussianRational)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, key: MonomialKey, coeff: GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// Multiplies every term by the monomial `key`.
    pub fn shift(&self, key: &MonomialKey) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(k, v)| (k.mul(key), v.clone())).collect() }
    }

    /// Divides every term by the monomial `key`; `None` if some log power
    /// would go negative.
    pub fn unshift(&self, key: &MonomialKey) -> Option<Polynomial> {
        let terms = self.terms.iter().map(|(k, v)| Some((k.checked_div(key)?, v.clone()))).collect::<Option<_>>()?;
        Some(Polynomial { terms })
    }

    /// `d/dx`, using d(x^q L^k) = q x^(q-1) L^k + k x^(q-1) L^(k-1) with L = ln x.
    pub fn derivative(&self) -> Polynomial {
        let down = MonomialKey::new(-Rational::one(), 0);
        self.euler().shift(&down)
    }

    /// The Euler operator `x * d/dx`, which keeps x-exponents in place:
    /// x^q L^k maps to q x^q L^k + k x^q L^(k-1).
    pub fn euler(&self) -> Polynomial {
        let mut out = Polynomial::zero();
        for (k, c) in &self.terms {
            if !k.xexp.is_zero() {
                out.add_term(k.clone(), c * &k.xexp);
            }
            if k.lexp > 0 {
                let lowered = MonomialKey::new(k.xexp.clone(), k.lexp - 1);
                out.add_term(lowered, c * &Rational::from_integer(k.lexp.into()));
            }
        }
        out
    }

    /// Smallest x-exponent and smallest log power across the terms.
    pub(crate) fn min_exponents(&self) -> Option<(Rational, u32)> {
        let xmin = self.terms.keys().map(|k| &k.xexp).min()?.clone();
        let lmin = self.terms.keys().map(|k| k.lexp).min()?;
        Some((xmin, lmin))
    }

    /// Sum of terms in increasing key order; negative real or imaginary coefficients
    /// after the first term print as subtraction.
    pub fn to_expression(&self) -> Expression {
        let mut out: Option<Expression> = None;
        for (key, coeff) in &self.terms {
            let negative = coeff.is_negative_unit_like();
            match out.take() {
                None => out = Some(term_expression(key, coeff)),
                Some(acc) if negative => out = Some(Expression::sub(acc, term_expression(key, &-coeff))),
                Some(acc) => out = Some(Expression::add(acc, term_expression(key, coeff))),
            }
        }
        out.unwrap_or_else(|| Expression::int(0))
    }
}

fn term_expression(key: &MonomialKey, coeff: &GaussianRational) -> Expression {
    let mut factors = Vec::new();
    if !key.xexp.is_zero() {
        factors.push(if key.xexp.is_one() {
            Expression::VarX
        } else {
            Expression::pow(Expression::VarX, key.xexp.clone())
        });
    }
    if key.lexp > 0 {
        factors.push(if key.lexp == 1 {
            Expression::LnX
        } else {
            Expression::pow(Expression::LnX, Rational::from_integer(key.lexp.into()))
        });
    }
    if factors.is_empty() {
        return Expression::Const(coeff.clone());
    }
    if coeff.is_real() && coeff.re == -Rational::one() {
        factors[0] = Expression::neg(factors[0].clone());
    } else if !coeff.is_one() {
        factors.insert(0, Expression::Const(coeff.clone()));
    }
    factors.into_iter().reduce(Expression::mul).expect("nonempty")
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(ka.mul(kb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }
}
