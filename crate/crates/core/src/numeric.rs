//! Floating-point evaluation and finite-difference cross-checks on the
//! positive real axis, with the principal branch of the logarithm.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canon::{CanonicalFunction, Polynomial};
use crate::error::{NumericError, Result};
use crate::number::rational_to_f64;

/// Default relative step for [`numeric_a`] and [`numeric_derivative`].
pub const DEFAULT_H_REL: f64 = 1e-5;

#[derive(Clone, Debug, PartialEq)]
pub struct SamplePlan {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    /// Points where a denominator (or, for [`numeric_a`], the function
    /// value) has magnitude below this are skipped.
    pub pole_guard: f64,
    pub seed: u64,
    pub tol: f64,
}

impl Default for SamplePlan {
    fn default() -> Self {
        Self { lo: 0.1, hi: 10.0, count: 64, pole_guard: 1e-8, seed: 42, tol: 1e-6 }
    }
}

impl SamplePlan {
    pub fn validate(&self) -> Result<(), NumericError> {
        let bad = |m: &str| Err(NumericError::InvalidPlan(m.to_string()));
        if !(self.lo > 0.0 && self.lo.is_finite()) {
            return bad("lo must be positive");
        }
        if !(self.hi > self.lo && self.hi.is_finite()) {
            return bad("hi must exceed lo");
        }
        if self.count == 0 {
            return bad("count must be at least 1");
        }
        if self.pole_guard.is_nan() || self.pole_guard <= 0.0 {
            return bad("pole_guard must be positive");
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return bad("tol must be positive");
        }
        Ok(())
    }

    /// `count` points drawn log-uniformly from `[lo, hi]`; the same seed
    /// always yields the same points.
    pub fn points(&self) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let (a, b) = (self.lo.ln(), self.hi.ln());
        (0..self.count).map(|_| (a + rng.random::<f64>() * (b - a)).exp()).collect()
    }

    fn required_points(&self) -> usize {
        8.max(self.count / 4)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivReport {
    pub max_rel_err: f64,
    pub worst_point: f64,
    pub points_used: usize,
    pub points_skipped: usize,
    pub pass: bool,
}

/// `|a - b| / max(|a|, |b|, 1)`; NaN maps to infinity.
pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    let e = (a - b).norm() / a.norm().max(b.norm()).max(1.0);
    if e.is_nan() {
        f64::INFINITY
    } else {
        e
    }
}

/// Sum of `coeff * x^q * ln(x)^k`, with `x^q = exp(q ln x)`.
pub fn eval_polynomial(p: &Polynomial, ln_x: Complex64) -> Complex64 {
    p.terms()
        .map(|(k, c)| {
            let mut t = c.to_complex64();
            if !num_traits::Zero::is_zero(&k.xexp) {
                t *= (ln_x * rational_to_f64(&k.xexp)).exp();
            }
            if k.lexp > 0 {
                t *= ln_x.powi(k.lexp as i32);
            }
            t
        })
        .sum()
}

/// `f(x)`, refusing points where `|den(x)| < pole_guard`.
pub fn eval(f: &CanonicalFunction, x: Complex64, pole_guard: f64) -> Result<Complex64, NumericError> {
    if x == Complex64::new(0.0, 0.0) {
        return Err(NumericError::ZeroArgument);
    }
    let ln_x = x.ln();
    let den = eval_polynomial(f.den(), ln_x);
    let mag = den.norm();
    if mag.is_nan() || mag < pole_guard || mag == 0.0 {
        return Err(NumericError::PoleAt(x.re));
    }
    Ok(eval_polynomial(f.num(), ln_x) / den)
}

fn eval_real(f: &CanonicalFunction, x: f64, pole_guard: f64) -> Result<Complex64, NumericError> {
    eval(f, Complex64::new(x, 0.0), pole_guard)
}

/// Largest admissible disagreement between the two central differences,
/// measured in units of `A[f]` (relative, floor 1). Beyond it the stencil
/// cannot resolve `f` at scale `h`, typically next to a pole.
pub const STENCIL_RTOL: f64 = 1e-4;

/// `f'(x)` by central differences at `h = h_rel*max(|x|, 1)` and `h/2`,
/// combined by one Richardson step: `(4 D(h/2) - D(h)) / 3`.
pub fn numeric_derivative(
    f: &CanonicalFunction,
    x: f64,
    h_rel: f64,
    pole_guard: f64,
) -> Result<Complex64, NumericError> {
    richardson(f, x, h_rel, pole_guard).map(|(d, _)| d)
}

/// The extrapolated derivative and `|D(h) - D(h/2)|`.
fn richardson(f: &CanonicalFunction, x: f64, h_rel: f64, pole_guard: f64) -> Result<(Complex64, f64), NumericError> {
    let h = h_rel * x.abs().max(1.0);
    if x - h <= 0.0 {
        return Err(NumericError::ZeroArgument);
    }
    let central = |h: f64| -> Result<Complex64, NumericError> {
        Ok((eval_real(f, x + h, pole_guard)? - eval_real(f, x - h, pole_guard)?) / (2.0 * h))
    };
    let coarse = central(h)?;
    let fine = central(h / 2.0)?;
    Ok(((fine * 4.0 - coarse) / 3.0, (fine - coarse).norm()))
}

/// `x f'(x) / f(x)` with `f'` from [`numeric_derivative`].
///
/// Fails with `IllConditionedStencil` when the two central differences
/// disagree by more than [`STENCIL_RTOL`].
pub fn numeric_a(f: &CanonicalFunction, x: f64, h_rel: f64, pole_guard: f64) -> Result<Complex64, NumericError> {
    let fx = eval_real(f, x, pole_guard)?;
    if fx.norm() < pole_guard {
        return Err(NumericError::NearZeroFunctionValue(x));
    }
    let (d, spread) = richardson(f, x, h_rel, pole_guard)?;
    let a = d * x / fx;
    if spread * x / fx.norm() > STENCIL_RTOL * a.norm().max(1.0) {
        return Err(NumericError::IllConditionedStencil(x));
    }
    Ok(a)
}

/// Compares two evaluators over the plan's points. A point is skipped when
/// either side fails.
fn compare<F, G>(plan: &SamplePlan, mut lhs: F, mut rhs: G) -> Result<EquivReport, NumericError>
where
    F: FnMut(f64) -> Result<Complex64, NumericError>,
    G: FnMut(f64) -> Result<Complex64, NumericError>,
{
    plan.validate()?;
    let mut report =
        EquivReport { max_rel_err: 0.0, worst_point: f64::NAN, points_used: 0, points_skipped: 0, pass: false };
    for x in plan.points() {
        let (Ok(a), Ok(b)) = (lhs(x), rhs(x)) else {
            report.points_skipped += 1;
            continue;
        };
        report.points_used += 1;
        let e = rel_err(a, b);
        if e > report.max_rel_err || report.worst_point.is_nan() {
            report.max_rel_err = e;
            report.worst_point = x;
        }
    }
    if report.points_used < plan.required_points() {
        return Err(NumericError::InsufficientPoints {
            survived: report.points_used,
            attempted: plan.count,
            required: plan.required_points(),
        });
    }
    report.pass = report.max_rel_err <= plan.tol;
    Ok(report)
}

/// Samples `f` and `g` and reports their largest relative disagreement.
pub fn check_equiv(
    f: &CanonicalFunction,
    g: &CanonicalFunction,
    plan: &SamplePlan,
) -> Result<EquivReport, NumericError> {
    compare(plan, |x| eval_real(f, x, plan.pole_guard), |x| eval_real(g, x, plan.pole_guard))
}

/// Checks the symbolic `A[f]` against `x f'/f` computed by finite
/// differences at every sample point.
pub fn cross_validate(f: &CanonicalFunction, plan: &SamplePlan) -> Result<EquivReport> {
    let af = f.apply_a()?;
    Ok(compare(plan, |x| eval_real(&af, x, plan.pole_guard), |x| numeric_a(f, x, DEFAULT_H_REL, plan.pole_guard))?)
}
