//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
//!
//! Each criterion carries a runtime budget; exceeding it is a failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use dld_core::dynamics::{classify, construct_fixed, construct_period2, orbit, Classification};
use dld_core::number::{integer, rational};
use dld_core::numeric::{cross_validate, SamplePlan};
use dld_core::random::{random_coefficient, random_function, random_polynomial, RingBounds};
use dld_core::{CanonicalFunction, GaussianRational, Polynomial, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<String, String>;

struct Criterion {
    name: &'static str,
    budget: Duration,
    check: fn() -> Check,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn func(s: &str) -> CanonicalFunction {
    s.parse().expect("valid expression")
}

fn g(re: Rational, im: Rational) -> GaussianRational {
    GaussianRational::new(re, im)
}

fn grid_a() -> Vec<GaussianRational> {
    vec![
        GaussianRational::from_int(1),
        GaussianRational::from_int(-1),
        GaussianRational::from_int(2),
        GaussianRational::from_int(-2),
        GaussianRational::real(rational(1, 2)),
        GaussianRational::real(rational(3, 5)),
        g(integer(1), integer(1)),
        g(rational(-2, 3), rational(1, 7)),
    ]
}

fn grid_c() -> Vec<Rational> {
    vec![
        integer(1),
        integer(-1),
        integer(2),
        integer(-2),
        rational(1, 2),
        rational(-1, 2),
        rational(3, 4),
        rational(-5, 3),
    ]
}

fn grid() -> Vec<(GaussianRational, Rational)> {
    grid_a().into_iter().flat_map(|a| grid_c().into_iter().map(move |c| (a.clone(), c))).collect()
}

fn canonical_two_cycle() -> Check {
    let values = [
        ("1", GaussianRational::from_int(1)),
        ("-1", GaussianRational::from_int(-1)),
        ("2", GaussianRational::from_int(2)),
        ("1/3", GaussianRational::real(rational(1, 3))),
        ("1+i", g(integer(1), integer(1))),
    ];
    for (text, a) in &values {
        let pair = construct_period2(a, &integer(1)).map_err(|e| e.to_string())?;
        let f1 = func(&format!("({text})*x/(1 - ({text})*x)"));
        let f2 = func(&format!("1/(1 - ({text})*x)"));
        ensure(pair.first == f1 && pair.second == f2, || format!("a = {a}: got ({}, {})", pair.first, pair.second))?;
        ensure(f1.apply_a().unwrap() == f2 && f2.apply_a().unwrap() == f1, || format!("a = {a}: swap fails"))?;
    }
    Ok(format!("{} values of a", values.len()))
}

fn sufficiency_grid() -> Check {
    let cells = grid();
    for (a, c) in &cells {
        let pair = construct_period2(a, c).map_err(|e| e.to_string())?;
        ensure(pair.first.apply_a().unwrap() == pair.second, || format!("A[f1] != f2 at a = {a}, c = {c}"))?;
        ensure(pair.second.apply_a().unwrap() == pair.first, || format!("A[f2] != f1 at a = {a}, c = {c}"))?;
        ensure(pair.first != pair.second, || format!("degenerate pair at a = {a}, c = {c}"))?;
        let diff = (&pair.second - &pair.first).as_constant();
        ensure(diff == Some(GaussianRational::real(c.clone())), || format!("f2 - f1 = {diff:?} at a = {a}, c = {c}"))?;
    }
    Ok(format!("{}x{} grid", grid_a().len(), grid_c().len()))
}

fn classifier_round_trip() -> Check {
    for (a, c) in grid() {
        let pair = construct_period2(&a, &c).map_err(|e| e.to_string())?;
        match classify(&pair.first).map_err(|e| e.to_string())? {
            Classification::Period2 { a: ga, c: gc, .. } if ga == a && gc == c => {}
            other => return Err(format!("first at a = {a}, c = {c}: {other:?}")),
        }
        let (ia, nc) = (a.recip().unwrap(), -c.clone());
        match classify(&pair.second).map_err(|e| e.to_string())? {
            Classification::Period2 { a: ga, c: gc, .. } if ga == ia && gc == nc => {}
            other => return Err(format!("second at a = {a}, c = {c}: {other:?}")),
        }
    }
    Ok("both orientations exact".into())
}

fn fixed_family() -> Check {
    let plan = SamplePlan::default();
    let mut worst: f64 = 0.0;
    let values = [
        GaussianRational::from_int(0),
        GaussianRational::from_int(1),
        GaussianRational::from_int(5),
        GaussianRational::real(rational(-3, 2)),
        g(rational(1, 2), integer(1)),
    ];
    for a in values {
        let f = construct_fixed(&a).map_err(|e| e.to_string())?;
        ensure(f.apply_a().unwrap() == f, || format!("A[f] != f at a = {a}"))?;
        match classify(&f).map_err(|e| e.to_string())? {
            Classification::Fixed { a: got } if got == a => {}
            other => return Err(format!("a = {a}: {other:?}")),
        }
        let r = cross_validate(&f, &plan).map_err(|e| format!("a = {a}: {e}"))?;
        ensure(r.pass, || format!("a = {a}: {r:?}"))?;
        worst = worst.max(r.max_rel_err);
    }
    Ok(format!("max rel err {worst:.2e}"))
}

fn constants() -> Check {
    let ks = [
        GaussianRational::from_int(1),
        GaussianRational::from_int(-3),
        GaussianRational::real(rational(2, 7)),
        GaussianRational::i(),
    ];
    for k in ks {
        let f = CanonicalFunction::constant(k.clone());
        ensure(f.apply_a().unwrap().is_zero(), || format!("A[{k}] != 0"))?;
        match classify(&f).map_err(|e| e.to_string())? {
            Classification::Constant { k: got } if got == k => {}
            other => return Err(format!("k = {k}: {other:?}")),
        }
    }
    Ok("4 constants".into())
}

fn logistic_orbit() -> Check {
    let r = orbit(&func("x/(1+x)"), 8).map_err(|e| e.to_string())?;
    ensure(r.preperiod == Some(1) && r.period == Some(2), || {
        format!("preperiod {:?}, period {:?}", r.preperiod, r.period)
    })?;
    let expect = [func("1/(1+x)"), func("-x/(1+x)"), func("1/(1+x)")];
    for (i, e) in expect.iter().enumerate() {
        ensure(r.iterates[i + 1] == *e, || format!("iterate {} is {}", i + 1, r.iterates[i + 1]))?;
    }
    Ok("preperiod 1, period 2".into())
}

fn definition_oracle() -> Check {
    let plan = SamplePlan { lo: 0.1, hi: 10.0, count: 64, seed: 42, ..SamplePlan::default() };
    let bounds = RingBounds::default();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let (mut worst, mut skipped) = (0.0f64, 0);
    let n = 200;
    for i in 0..n {
        let f = random_function(&mut rng, &bounds);
        let r = cross_validate(&f, &plan).map_err(|e| format!("element {i} ({f}): {e}"))?;
        ensure(r.pass, || format!("element {i} ({f}): {r:?}"))?;
        worst = worst.max(r.max_rel_err);
        skipped += r.points_skipped;
    }
    Ok(format!("{n} elements, max rel err {worst:.2e}, {skipped} of {} points skipped", n * plan.count))
}

fn perturb(p: &Polynomial, rng: &mut ChaCha8Rng, bounds: &RingBounds) -> Polynomial {
    let keys: Vec<_> = p.terms().map(|(k, _)| k.clone()).collect();
    let key = keys[rng.random_range(0..keys.len())].clone();
    let mut out = p.clone();
    out.add_term(key, random_coefficient(rng, bounds));
    out
}

fn equality_soundness() -> Check {
    let bounds = RingBounds::default();
    let disguise_bounds = RingBounds { max_terms: 3, ..RingBounds::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..500 {
        let f = random_function(&mut rng, &bounds);
        let m = random_polynomial(&mut rng, &disguise_bounds);
        let g = CanonicalFunction::from_parts(f.num() * &m, f.den() * &m).unwrap();
        ensure(f.equals(&g), || format!("disguised pair {i} reported unequal: {f} vs {g}"))?;
    }
    let mut checked = 0;
    while checked < 500 {
        let f = random_function(&mut rng, &bounds);
        let (num, den) = if rng.random_bool(0.5) {
            (perturb(f.num(), &mut rng, &bounds), f.den().clone())
        } else {
            (f.num().clone(), perturb(f.den(), &mut rng, &bounds))
        };
        // A perturbation that empties the denominator is not a function; draw again.
        let Ok(g) = CanonicalFunction::from_parts(num, den) else { continue };
        ensure(!f.equals(&g), || format!("perturbed pair {checked} reported equal: {f} vs {g}"))?;
        checked += 1;
    }
    Ok("500 disguised, 500 perturbed".into())
}

struct CliCase {
    args: &'static [&'static str],
    exit: i32,
    shape: &'static [&'static str],
}

fn run_dld(args: &[&str]) -> Result<(Option<i32>, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_dld")).args(args).output().map_err(|e| e.to_string())?;
    Ok((out.status.code(), out.stdout))
}

fn cli_determinism() -> Check {
    const APPLY: &[&str] = &["input", "output"];
    const ORBIT: &[&str] = &["iterates", "preperiod", "period", "truncated"];
    const CLASSIFY: &[&str] = &["kind", "a", "c", "partner"];
    const PAIR: &[&str] = &["first", "second"];
    const FIXED: &[&str] = &["f"];
    const VERIFY: &[&str] = &["max_rel_err", "worst_point", "points_used", "points_skipped", "pass"];
    const ERROR: &[&str] = &["status", "error"];
    let cases = [
        CliCase { args: &["apply", "x/(1-x)"], exit: 0, shape: APPLY },
        CliCase { args: &["apply", "x/(1+x)"], exit: 0, shape: APPLY },
        CliCase { args: &["apply", "0"], exit: 2, shape: ERROR },
        CliCase { args: &["orbit", "x/(1+x)"], exit: 0, shape: ORBIT },
        CliCase { args: &["orbit", "1/(5-ln(x))"], exit: 0, shape: ORBIT },
        CliCase { args: &["orbit", "x^2"], exit: 0, shape: ORBIT },
        CliCase { args: &["classify", "1/(1-x)"], exit: 0, shape: CLASSIFY },
        CliCase { args: &["classify", "1/(5-ln(x))"], exit: 0, shape: CLASSIFY },
        CliCase { args: &["classify", "x/(1+x)"], exit: 0, shape: CLASSIFY },
        CliCase { args: &["make", "period2", "--a", "1", "--c", "1"], exit: 0, shape: PAIR },
        CliCase { args: &["make", "fixed", "--a", "0"], exit: 0, shape: FIXED },
        CliCase { args: &["make", "period2", "--a", "0", "--c", "1"], exit: 2, shape: ERROR },
        CliCase { args: &["verify", "x/(1+x)", "--tol", "1e-6"], exit: 0, shape: VERIFY },
        CliCase { args: &["verify", "1/(5-ln(x))", "--tol", "1e-6"], exit: 0, shape: VERIFY },
        CliCase { args: &["verify", "x/(1-x)", "--lo", "0.9", "--hi", "1.1", "--samples", "4"], exit: 3, shape: ERROR },
    ];
    for case in &cases {
        let line = case.args.join(" ");
        let text = run_dld(case.args)?;
        ensure(text == run_dld(case.args)?, || format!("`{line}`: text output differs between runs"))?;
        ensure(text.0 == Some(case.exit), || format!("`{line}`: exit {:?}, expected {}", text.0, case.exit))?;

        let mut args = vec!["--json"];
        args.extend_from_slice(case.args);
        let first = run_dld(&args)?;
        ensure(first == run_dld(&args)?, || format!("`{line}`: JSON output differs between runs"))?;
        let v: Value = serde_json::from_slice(&first.1).map_err(|e| format!("`{line}`: {e}"))?;
        let obj = v.as_object().ok_or_else(|| format!("`{line}`: not an object"))?;
        for key in case.shape {
            ensure(obj.contains_key(*key), || format!("`{line}`: missing key {key}"))?;
        }
        for (key, value) in obj {
            ensure(key.chars().all(|c| c.is_ascii_lowercase() || c == '_'), || format!("`{line}`: key {key}"))?;
            let strings: Vec<&str> = match value {
                Value::String(s) if !matches!(key.as_str(), "kind" | "error" | "status" | "end") => vec![s],
                Value::Array(items) => items.iter().filter_map(Value::as_str).collect(),
                _ => vec![],
            };
            for s in strings {
                dld_core::parse(s).map_err(|e| format!("`{line}`: emitted `{s}` does not parse: {e}"))?;
            }
        }
    }
    Ok(format!("{} commands, text and JSON", cases.len()))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            name: "canonical 2-cycle a*x/(1 - a*x)",
            budget: Duration::from_secs(1),
            check: canonical_two_cycle,
        },
        Criterion {
            name: "period-2 family swaps and constant difference",
            budget: Duration::from_secs(2),
            check: sufficiency_grid,
        },
        Criterion {
            name: "classifier recovers (a, c) and (1/a, -c)",
            budget: Duration::from_secs(2),
            check: classifier_round_trip,
        },
        Criterion { name: "fixed family 1/(a - ln(x))", budget: Duration::from_secs(2), check: fixed_family },
        Criterion {
            name: "constants map to zero and classify as constant",
            budget: Duration::from_secs(1),
            check: constants,
        },
        Criterion { name: "logistic orbit x/(1 + x)", budget: Duration::from_secs(1), check: logistic_orbit },
        Criterion {
            name: "finite-difference oracle on random elements",
            budget: Duration::from_secs(10),
            check: definition_oracle,
        },
        Criterion { name: "equality soundness", budget: Duration::from_secs(5), check: equality_soundness },
        Criterion { name: "CLI determinism and JSON shapes", budget: Duration::from_secs(2), check: cli_determinism },
    ];
    let mut failed = 0;
    for (i, Criterion { name, budget, check }) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *budget => Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
