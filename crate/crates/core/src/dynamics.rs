//! Orbits of `A` and the closed-form period-1 and period-2 families.
//!
//! Every nondegenerate 2-cycle has the form
//!
//! ```text
//! f1 = c*a*x^c / (1 - a*x^c),   f2 = c / (1 - a*x^c),   a*c != 0
//! ```
//!
//! and every fixed point has the form `f = 1/(a - ln x)`. The classifier
//! recovers `a` and `c` from an arbitrary input through the identities
//! `f2 - f1 = c`, `f1/(f1 + c) = a*x^c` and `1/f + ln x = a`.

use num_traits::Zero;

use crate::canon::{CanonicalFunction, MonomialKey, Polynomial};
use crate::error::{Error, Result};
use crate::number::{GaussianRational, Rational};

pub const DEFAULT_MAX_STEPS: usize = 16;

/// Iterates larger than this (numerator plus denominator terms) stop the
/// orbit. Without a polynomial GCD sizes can double at every step while the
/// cost of a step grows roughly eightfold.
pub const DEFAULT_MAX_TERMS: usize = 256;

/// An ordered 2-cycle: `A[first] = second` and `A[second] = first`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclePair {
    pub first: CanonicalFunction,
    pub second: CanonicalFunction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// `f = 1/(a - ln x)`.
    Fixed {
        a: GaussianRational,
    },
    /// `f = c*a*x^c/(1 - a*x^c)` with `partner = A[f] = c/(1 - a*x^c)`.
    Period2 {
        a: GaussianRational,
        c: Rational,
        partner: CanonicalFunction,
    },
    /// A nonzero constant; `A` maps it to zero, so it is never fixed.
    Constant {
        k: GaussianRational,
    },
    None,
}

/// Builds the 2-cycle with parameters `a` and `c`, checking both swap
/// identities before returning.
pub fn construct_period2(a: &GaussianRational, c: &Rational) -> Result<CyclePair> {
    if a.is_zero() || c.is_zero() {
        return Err(Error::InvalidParameter(format!("period-2 family needs a*c != 0 (a = {a}, c = {c})")));
    }
    let x_c = MonomialKey::new(c.clone(), 0);
    let den = Polynomial::from_terms([(MonomialKey::one(), GaussianRational::one()), (x_c.clone(), -a)]);
    let c_scalar = GaussianRational::real(c.clone());
    let first =
        CanonicalFunction::from_parts(Polynomial::monomial(x_c, &c_scalar * a), den.clone())?.normalize_display();
    let second = CanonicalFunction::from_parts(Polynomial::constant(c_scalar), den)?.normalize_display();

    if first.apply_a()? != second || second.apply_a()? != first {
        return Err(Error::InternalInconsistency(format!("constructed pair for a = {a}, c = {c} is not a 2-cycle")));
    }
    Ok(CyclePair { first, second })
}

/// Builds `1/(a - ln x)`, checking `A[f] = f` before returning.
pub fn construct_fixed(a: &GaussianRational) -> Result<CanonicalFunction> {
    let den = &Polynomial::constant(a.clone()) - &Polynomial::ln_x();
    let f = CanonicalFunction::from_parts(Polynomial::one(), den)?.normalize_display();
    if f.apply_a()? != f {
        return Err(Error::InternalInconsistency(format!("1/({a} - ln(x)) is not fixed by A")));
    }
    Ok(f)
}

/// Decides membership in the fixed-point and period-2 families and
/// recovers their parameters.
///
/// Roles follow orientation: the input plays `f1` and `A[input]` plays `f2`,
/// so the same unordered cycle read from its other element yields
/// `(1/a, -c)`.
pub fn classify(f: &CanonicalFunction) -> Result<Classification> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if let Some(k) = f.as_constant() {
        return Ok(Classification::Constant { k });
    }

    let g = f.apply_a()?;
    if g == *f {
        // -1/f = ln x + C, a = -C
        let a = (&f.recip()? + &CanonicalFunction::ln_x()).as_constant().ok_or_else(|| {
            Error::InternalInconsistency(format!("A[f] = f but 1/f + ln(x) is not constant for f = {f}"))
        })?;
        return Ok(Classification::Fixed { a });
    }

    if g.apply_a()? != *f {
        return Ok(Classification::None);
    }

    let inconsistent = |what: &str| Error::InternalInconsistency(format!("{what} for the 2-cycle ({f}, {g})"));
    let c = (&g - f).as_constant().ok_or_else(|| inconsistent("A[f] - f is not constant"))?;
    let c = match c.as_real() {
        Some(c) if !c.is_zero() => c.clone(),
        _ => return Err(inconsistent(&format!("difference {c} is not a nonzero rational"))),
    };
    let shifted = f + &CanonicalFunction::from(c.clone());
    let ratio = f.div(&shifted)?;
    let m = ratio.as_monomial().ok_or_else(|| inconsistent("f/(f + c) is not a monomial"))?;
    if m.lexp != 0 || m.xexp != c {
        return Err(inconsistent(&format!("f/(f + c) = {ratio} is not a*x^{c}")));
    }
    Ok(Classification::Period2 { a: m.coeff, c, partner: g })
}

/// `Some(c)` when `(f, A[f])` is a 2-cycle, where `A[f] - f = c`.
pub fn check_constant_difference(f: &CanonicalFunction) -> Result<Option<Rational>> {
    let g = f.apply_a()?;
    if g.is_zero() || g.apply_a()? != *f || g == *f {
        return Ok(None);
    }
    let diff = (&g - f).as_constant();
    match diff.as_ref().and_then(|c| c.as_real()) {
        Some(c) => Ok(Some(c.clone())),
        None => {
            Err(Error::InternalInconsistency(format!("A[f] - f is not a rational constant for the 2-cycle ({f}, {g})")))
        }
    }
}

/// Why an orbit computation stopped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitEnd {
    /// `iterates[preperiod] == iterates[preperiod + period]`.
    Repeat,
    /// No repeat within `max_steps` applications of `A`.
    StepCap,
    /// The iterate at `step` is the zero function, where `A` is undefined.
    ZeroIterate { step: usize },
    /// The iterate at `step` exceeded the term budget.
    SizeLimit { step: usize },
}

#[derive(Clone, Debug)]
pub struct OrbitReport {
    /// `iterates[0]` is the input; `iterates[n] = A^n[input]`.
    pub iterates: Vec<CanonicalFunction>,
    pub preperiod: Option<usize>,
    pub period: Option<usize>,
    /// No repeat was found before the orbit was cut off.
    pub truncated: bool,
    pub end: OrbitEnd,
}

#[derive(Clone, Copy, Debug)]
pub struct OrbitOptions {
    pub max_steps: usize,
    pub max_terms: usize,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        Self { max_steps: DEFAULT_MAX_STEPS, max_terms: DEFAULT_MAX_TERMS }
    }
}

pub fn orbit(f: &CanonicalFunction, max_steps: usize) -> Result<OrbitReport> {
    orbit_with(f, OrbitOptions { max_steps, ..OrbitOptions::default() })
}

/// Iterates `A`, comparing each new iterate against every earlier one. The
/// first match `(k, k + p)` gives the minimal pre-period `k` and period `p`.
pub fn orbit_with(f: &CanonicalFunction, opts: OrbitOptions) -> Result<OrbitReport> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if opts.max_steps == 0 {
        return Err(Error::InvalidParameter("max_steps must be at least 1".into()));
    }
    let mut iterates = vec![f.clone()];
    let finish = |iterates, end: OrbitEnd| {
        let truncated = matches!(end, OrbitEnd::StepCap | OrbitEnd::SizeLimit { .. });
        Ok(OrbitReport { iterates, preperiod: None, period: None, truncated, end })
    };
    for step in 1..=opts.max_steps {
        let next = iterates.last().expect("nonempty").apply_a()?;
        if next.is_zero() {
            iterates.push(next);
            return finish(iterates, OrbitEnd::ZeroIterate { step });
        }
        let repeat = iterates.iter().position(|prev| *prev == next);
        let size = next.size();
        iterates.push(next);
        if let Some(k) = repeat {
            return Ok(OrbitReport {
                iterates,
                preperiod: Some(k),
                period: Some(step - k),
                truncated: false,
                end: OrbitEnd::Repeat,
            });
        }
        if size > opts.max_terms && step < opts.max_steps {
            return finish(iterates, OrbitEnd::SizeLimit { step });
        }
    }
    finish(iterates, OrbitEnd::StepCap)
}
