//! The `dld` command line: `apply`, `orbit`, `classify`, `make` and `verify`,
//! each with a text and a `--json` rendering.

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use dld_core::dynamics::{self, Classification, OrbitEnd, OrbitOptions, DEFAULT_MAX_STEPS, DEFAULT_MAX_TERMS};
use dld_core::numeric::{cross_validate, EquivReport, SamplePlan};
use dld_core::{parse, to_canonical, CanonicalFunction, Error, GaussianRational, NumericError, Rational};

#[derive(Debug, Parser)]
#[command(name = "dld", version, about = "Exact dual logarithmic derivative A[f] = x f'(x)/f(x)")]
pub struct Cli {
    /// Print machine-readable JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print A[f]
    Apply {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Iterate A and report the pre-period and period of the orbit
    Orbit {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Decide whether f is a fixed point, half of a 2-cycle, or a constant
    Classify {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Build members of the fixed-point and 2-cycle families
    Make {
        #[command(subcommand)]
        family: Family,
    },
    /// Compare A[f] against finite differences on sampled points
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// f1 = c a x^c/(1 - a x^c) and f2 = A[f1]
    Period2 {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// f = 1/(a - ln(x))
    Fixed {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(allow_hyphen_values = true)]
    pub expr: String,
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, default_value_t = 0.1)]
    pub lo: f64,
    #[arg(long, default_value_t = 10.0)]
    pub hi: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub pole_guard: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    ParseError,
    DomainError,
    VerificationFailure,
    InternalInconsistency,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::ParseError => 1,
            Status::DomainError => 2,
            Status::VerificationFailure => 3,
            Status::InternalInconsistency => 4,
        }
    }

    /// Statuses whose text output is a result rather than an error message.
    pub fn is_reportable(self) -> bool {
        matches!(self, Status::Ok | Status::VerificationFailure)
    }
}

impl From<&Error> for Status {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => Status::ParseError,
            Error::InternalInconsistency(_) => Status::InternalInconsistency,
            Error::Numeric(NumericError::InsufficientPoints { .. }) => Status::VerificationFailure,
            _ => Status::DomainError,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub text: String,
}

impl CommandResult {
    fn ok(payload: impl Serialize, text: String) -> Self {
        Self::with_status(Status::Ok, payload, text)
    }

    fn with_status(status: Status, payload: impl Serialize, text: String) -> Self {
        let payload = serde_json::to_value(payload).expect("payloads are plain data");
        Self { status, payload, text }
    }

    fn error(e: &Error) -> Self {
        let status = Status::from(e);
        let mut payload = json!({ "status": status, "error": e.to_string() });
        if let Error::Parse(p) = e {
            payload["offset"] = json!(p.offset);
        }
        let text = if status.is_reportable() { format!("fail: {e}\n") } else { format!("error: {e}\n") };
        Self { status, payload, text }
    }

    pub fn exit_code(&self) -> u8 {
        self.status.exit_code()
    }

    /// Text ends with a newline; JSON is pretty-printed with one trailing newline.
    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.payload).expect("serializable");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

pub fn execute(cli: &Cli) -> CommandResult {
    let result = match &cli.command {
        Command::Apply { expr } => apply(expr),
        Command::Orbit { expr, max_steps } => orbit(expr, *max_steps),
        Command::Classify { expr } => classify(expr),
        Command::Make { family: Family::Period2 { a, c } } => make_period2(a, c),
        Command::Make { family: Family::Fixed { a } } => make_fixed(a),
        Command::Verify(args) => verify(args),
    };
    result.unwrap_or_else(|e| CommandResult::error(&e))
}

fn load(text: &str) -> Result<CanonicalFunction, Error> {
    to_canonical(&parse(text)?)
}

fn show(f: &CanonicalFunction) -> String {
    f.normalize_display().to_string()
}

fn constant(name: &str, text: &str) -> Result<GaussianRational, Error> {
    load(text)?
        .as_constant()
        .ok_or_else(|| Error::InvalidParameter(format!("--{name} must be a constant, got `{text}`")))
}

fn rational_constant(name: &str, text: &str) -> Result<Rational, Error> {
    constant(name, text)?
        .as_real()
        .cloned()
        .ok_or_else(|| Error::InvalidParameter(format!("--{name} must be a real rational, got `{text}`")))
}

#[derive(Serialize)]
struct ApplyOut {
    input: String,
    output: String,
}

fn apply(text: &str) -> Result<CommandResult, Error> {
    let f = load(text)?;
    let out = ApplyOut { input: show(&f), output: show(&f.apply_a()?) };
    let line = format!("{}\n", out.output);
    Ok(CommandResult::ok(out, line))
}

#[derive(Serialize)]
struct OrbitOut {
    iterates: Vec<String>,
    preperiod: Option<usize>,
    period: Option<usize>,
    truncated: bool,
    end: &'static str,
}

fn orbit(text: &str, max_steps: usize) -> Result<CommandResult, Error> {
    let f = load(text)?;
    let report = dynamics::orbit_with(&f, OrbitOptions { max_steps, max_terms: DEFAULT_MAX_TERMS })?;
    let iterates: Vec<String> = report.iterates.iter().map(show).collect();
    let mut lines: String = iterates.iter().enumerate().map(|(i, s)| format!("{i}: {s}\n")).collect();
    let (end, summary) = match (report.end, report.preperiod, report.period) {
        (OrbitEnd::Repeat, Some(k), Some(p)) => ("repeat", format!("preperiod {k}, period {p}")),
        (OrbitEnd::ZeroIterate { step }, ..) => {
            ("zero_iterate", format!("iterate {step} is the zero function, where A is undefined; orbit ends"))
        }
        (OrbitEnd::SizeLimit { step }, ..) => {
            ("size_limit", format!("iterate {step} exceeds {DEFAULT_MAX_TERMS} terms; stopped with no repeat"))
        }
        _ => ("step_cap", format!("no repeat within {max_steps} steps")),
    };
    lines.push_str(&summary);
    lines.push('\n');
    let out =
        OrbitOut { iterates, preperiod: report.preperiod, period: report.period, truncated: report.truncated, end };
    Ok(CommandResult::ok(out, lines))
}

#[derive(Serialize)]
struct ClassifyOut {
    kind: &'static str,
    a: Option<String>,
    c: Option<String>,
    partner: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<String>,
}

fn classify(text: &str) -> Result<CommandResult, Error> {
    let f = load(text)?;
    let empty = |kind| ClassifyOut { kind, a: None, c: None, partner: None, k: None };
    let out = match dynamics::classify(&f)? {
        Classification::Fixed { a } => ClassifyOut { a: Some(a.to_string()), ..empty("fixed") },
        Classification::Period2 { a, c, partner } => ClassifyOut {
            a: Some(a.to_string()),
            c: Some(dld_core::number::fmt_rational(&c)),
            partner: Some(show(&partner)),
            ..empty("period2")
        },
        Classification::Constant { k } => ClassifyOut { k: Some(k.to_string()), ..empty("constant") },
        Classification::None => empty("none"),
    };
    let line = match &out {
        ClassifyOut { kind: "fixed", a: Some(a), .. } => format!("fixed, a = {a}\n"),
        ClassifyOut { kind: "period2", a: Some(a), c: Some(c), partner: Some(g), .. } => {
            format!("period2, a = {a}, c = {c}, partner {g}\n")
        }
        ClassifyOut { kind: "constant", k: Some(k), .. } => format!("constant, k = {k}\n"),
        _ => "none\n".to_string(),
    };
    Ok(CommandResult::ok(out, line))
}

#[derive(Serialize)]
struct PairOut {
    first: String,
    second: String,
}

fn make_period2(a: &str, c: &str) -> Result<CommandResult, Error> {
    let pair = dynamics::construct_period2(&constant("a", a)?, &rational_constant("c", c)?)?;
    let out = PairOut { first: show(&pair.first), second: show(&pair.second) };
    let lines = format!("{}\n{}\n", out.first, out.second);
    Ok(CommandResult::ok(out, lines))
}

#[derive(Serialize)]
struct FixedOut {
    f: String,
}

fn make_fixed(a: &str) -> Result<CommandResult, Error> {
    let f = show(&dynamics::construct_fixed(&constant("a", a)?)?);
    let line = format!("{f}\n");
    Ok(CommandResult::ok(FixedOut { f }, line))
}

#[derive(Serialize)]
struct VerifyOut {
    max_rel_err: f64,
    worst_point: f64,
    points_used: usize,
    points_skipped: usize,
    pass: bool,
}

impl From<&EquivReport> for VerifyOut {
    fn from(r: &EquivReport) -> Self {
        Self {
            max_rel_err: r.max_rel_err,
            worst_point: r.worst_point,
            points_used: r.points_used,
            points_skipped: r.points_skipped,
            pass: r.pass,
        }
    }
}

fn verify(args: &VerifyArgs) -> Result<CommandResult, Error> {
    let f = load(&args.expr)?;
    let plan = SamplePlan {
        lo: args.lo,
        hi: args.hi,
        count: args.samples,
        pole_guard: args.pole_guard,
        seed: args.seed,
        tol: args.tol,
    };
    let report = cross_validate(&f, &plan)?;
    let line = format!(
        "{}: max relative error {:e} at x = {} ({} points used, {} skipped, tol {:e})\n",
        if report.pass { "pass" } else { "fail" },
        report.max_rel_err,
        report.worst_point,
        report.points_used,
        report.points_skipped,
        plan.tol,
    );
    let status = if report.pass { Status::Ok } else { Status::VerificationFailure };
    Ok(CommandResult::with_status(status, VerifyOut::from(&report), line))
}
