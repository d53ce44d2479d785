//! Seeded random elements of the canonical ring, for property checks and
//! benchmarks.

use rand::Rng;

use crate::canon::{CanonicalFunction, MonomialKey, Polynomial};
use crate::number::{rational, GaussianRational};

#[derive(Clone, Debug)]
pub struct RingBounds {
    /// Terms per numerator and per denominator (at least 1).
    pub max_terms: usize,
    /// `|xexp| <= max_abs_xexp`.
    pub max_abs_xexp: i64,
    /// x-exponents are `p/q` with `1 <= q <= max_xexp_denom`.
    pub max_xexp_denom: i64,
    pub max_lexp: u32,
    /// Bound on coefficient numerators and denominators.
    pub max_coeff: i64,
    /// Allow nonzero imaginary parts.
    pub complex: bool,
}

impl Default for RingBounds {
    fn default() -> Self {
        Self { max_terms: 6, max_abs_xexp: 5, max_xexp_denom: 3, max_lexp: 3, max_coeff: 9, complex: false }
    }
}

fn random_rational_part<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> crate::Rational {
    let mut n = 0;
    while n == 0 {
        n = rng.random_range(-bound..=bound);
    }
    rational(n, rng.random_range(1..=bound))
}

pub fn random_coefficient<R: Rng + ?Sized>(rng: &mut R, bounds: &RingBounds) -> GaussianRational {
    let re = random_rational_part(rng, bounds.max_coeff);
    if bounds.complex && rng.random_bool(0.5) {
        GaussianRational::new(re, random_rational_part(rng, bounds.max_coeff))
    } else {
        GaussianRational::real(re)
    }
}

pub fn random_key<R: Rng + ?Sized>(rng: &mut R, bounds: &RingBounds) -> MonomialKey {
    let q = rng.random_range(1..=bounds.max_xexp_denom);
    let p = rng.random_range(-bounds.max_abs_xexp * q..=bounds.max_abs_xexp * q);
    MonomialKey::new(rational(p, q), rng.random_range(0..=bounds.max_lexp))
}

/// A nonzero polynomial with between 1 and `max_terms` terms.
pub fn random_polynomial<R: Rng + ?Sized>(rng: &mut R, bounds: &RingBounds) -> Polynomial {
    let n = rng.random_range(1..=bounds.max_terms.max(1));
    let mut p = Polynomial::zero();
    while p.len() < n {
        let key = random_key(rng, bounds);
        if p.coeff(&key).is_none() {
            p.add_term(key, random_coefficient(rng, bounds));
        }
    }
    p
}

/// A nonzero function `num/den` in display-normal form.
pub fn random_function<R: Rng + ?Sized>(rng: &mut R, bounds: &RingBounds) -> CanonicalFunction {
    let num = random_polynomial(rng, bounds);
    let den = random_polynomial(rng, bounds);
    CanonicalFunction::from_parts(num, den).expect("nonzero denominator").normalize_display()
}
