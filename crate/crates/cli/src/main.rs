//! Command-line front end: every subcommand parses its arguments, calls one library
//! function and prints the resulting report.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use skewtorsion::catalog::{self, parse_params, Params as EntryParams};
use skewtorsion::commands::{self, Holonomy};
use skewtorsion::orbits::classify_form;
use skewtorsion::tables;
use skewtorsion::{Error, Form, Rational, Real, Scalar, Surd};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "skewtorsion", version, about = "Parallel skew torsion on six-dimensional almost hermitian models")]
struct Cli {
    /// Scalar backend.
    #[arg(long, global = true, value_enum, env = "SKEWTORSION_BACKEND", default_value = "rational")]
    backend: BackendArg,
    /// Absolute tolerance of the float backend.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Print a JSON report instead of aligned text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Rational,
    Surd,
    Float,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Strict type, isotropy, matching table row and realizability criteria of a 3-form.
    Classify(TorsionArgs),
    /// Normal form of a table row.
    Family(FamilyArgs),
    /// The quadratic expression σ_T and the derivative of a parallel torsion form.
    Sigma(TorsionArgs),
    /// Clifford square criterion next to the norm criterion.
    Clifford(TorsionArgs),
    /// Parallel spinors and the spectrum of the torsion on them.
    Spinors(SpinorArgs),
    /// Isotropy algebra of a 3-form.
    Isotropy(TorsionArgs),
    /// Builds a catalog example and diffs it against its stored records.
    Example(ExampleArgs),
    /// Evaluates a catalog example on a parameter grid.
    Sweep(SweepArgs),
    /// Betti numbers of a Lie algebra given by structure equations.
    Betti(BettiArgs),
    /// Regenerates the classification tables and diffs them against stored rows.
    Tables(TablesArgs),
    /// Dimensions of invariant polynomials on the W1 and W3 modules.
    Invariants(InvariantArgs),
}

#[derive(Args, Debug, Clone)]
#[command(next_help_heading = "Row parameters")]
struct RowParams {
    #[arg(long, allow_negative_numbers = true)]
    alpha1: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    alpha2: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    alpha3: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    alpha4: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    alpha5: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    beta1: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    beta2: Option<String>,
}

impl RowParams {
    fn to_text(&self) -> String {
        let named = [
            ("alpha1", &self.alpha1),
            ("alpha2", &self.alpha2),
            ("alpha3", &self.alpha3),
            ("alpha4", &self.alpha4),
            ("alpha5", &self.alpha5),
            ("beta1", &self.beta1),
            ("beta2", &self.beta2),
        ];
        named
            .iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| format!("{k}={v}")))
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[derive(Args, Debug, Clone)]
struct TorsionArgs {
    /// Form literal such as `e125+e345`.
    #[arg(long, conflicts_with = "case", required_unless_present = "case")]
    form: Option<String>,
    /// Table row I–XI, built from the parameter flags.
    #[arg(long)]
    case: Option<String>,
    #[command(flatten)]
    params: RowParams,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long)]
    case: String,
    #[command(flatten)]
    params: RowParams,
}

#[derive(Args, Debug)]
struct SpinorArgs {
    #[command(flatten)]
    torsion: TorsionArgs,
    /// `iso`, `trivial`, `su2`, `so3`, or two-forms separated by `;`.
    #[arg(long, default_value = "iso")]
    hol: String,
}

#[derive(Args, Debug)]
struct ExampleArgs {
    /// Catalog entry; omit to list the catalog.
    name: Option<String>,
    /// Parameter overrides such as `b=-2,d=0`.
    #[arg(long, default_value = "")]
    params: String,
}

#[derive(Args, Debug)]
struct SweepArgs {
    name: String,
    /// Axis such as `s=1,2,3`; repeat for more axes, the last varies fastest.
    #[arg(long = "axis")]
    axes: Vec<String>,
}

#[derive(Args, Debug)]
struct BettiArgs {
    /// Structure equations, short `(0,0,0,0,12,34)` or long form.
    #[arg(long)]
    equations: String,
    /// Values of symbols used in the long form.
    #[arg(long, default_value = "")]
    params: String,
}

#[derive(Args, Debug)]
struct TablesArgs {
    /// Tables to regenerate: any of 1,2,3,4,5,5-local,5-nil,6.
    #[arg(value_delimiter = ',')]
    which: Vec<String>,
    /// Regenerate every table.
    #[arg(long)]
    all: bool,
}

#[derive(Args, Debug)]
struct InvariantArgs {
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    /// Permit degrees above the built-in bound.
    #[arg(long)]
    allow_large: bool,
}

/// Backend-specific plumbing: float values carry the requested tolerance.
trait Backend: Scalar {
    fn with_tol(self, tol: f64) -> Self;
}

impl Backend for Rational {
    fn with_tol(self, _: f64) -> Self {
        self
    }
}

impl Backend for Surd {
    fn with_tol(self, _: f64) -> Self {
        self
    }
}

impl Backend for Real {
    fn with_tol(self, tol: f64) -> Self {
        Real::with_tol(self.value, tol)
    }
}

/// Outcome of a subcommand: the report and whether it is internally consistent.
struct Outcome {
    result: Value,
    text: Option<String>,
    consistent: bool,
}

impl Outcome {
    fn of(result: impl serde::Serialize) -> Result<Self, Error> {
        let result = serde_json::to_value(result).map_err(|e| Error::Inconsistent(e.to_string()))?;
        Ok(Outcome { result, text: None, consistent: true })
    }
}

fn torsion<S: Backend>(args: &TorsionArgs, tol: f64) -> Result<Form<S>, Error> {
    let t = match (&args.form, &args.case) {
        (Some(text), _) => commands::parse_three_form::<S>(text)?,
        (None, Some(case)) => commands::family::<S>(case, &args.params.to_text(), tol)?.0,
        (None, None) => return Err(Error::Invalid("pass --form or --case".into())),
    };
    Ok(t.map_coeffs(|c| c.clone().with_tol(tol)))
}

fn entry_params<S: Backend>(text: &str, tol: f64) -> Result<EntryParams<S>, Error> {
    Ok(parse_params::<S>(text)?.into_iter().map(|(k, v)| (k, v.with_tol(tol))).collect())
}

fn axis<S: Backend>(text: &str, tol: f64) -> Result<(String, Vec<S>), Error> {
    let (name, values) =
        text.split_once('=').ok_or_else(|| Error::Parse(format!("expected name=v1,v2,..., found `{text}`")))?;
    let values = values
        .split(',')
        .map(|v| {
            let q = skewtorsion::scalar::parse_rational(v)
                .ok_or_else(|| Error::Parse(format!("not a number: `{}`", v.trim())))?;
            Ok(S::from_rational(&q).with_tol(tol))
        })
        .collect::<Result<Vec<S>, Error>>()?;
    Ok((name.trim().to_string(), values))
}

fn run<S: Backend>(command: &Command, tol: f64) -> Result<Outcome, Error> {
    match command {
        Command::Classify(args) => Outcome::of(classify_form(&torsion::<S>(args, tol)?)?),
        Command::Family(args) => {
            Outcome::of(commands::family::<S>(&args.case, &args.params.to_text(), tol)?.1)
        }
        Command::Sigma(args) => Outcome::of(commands::sigma_report(&torsion::<S>(args, tol)?)?),
        Command::Clifford(args) => Outcome::of(commands::clifford(&torsion::<S>(args, tol)?, tol)?),
        Command::Spinors(args) => {
            let t = torsion::<S>(&args.torsion, tol)?;
            Outcome::of(commands::spinors(&t, &Holonomy::<S>::parse(&args.hol)?)?)
        }
        Command::Isotropy(args) => Outcome::of(commands::isotropy(&torsion::<S>(args, tol)?)?),
        Command::Example(args) => match &args.name {
            None => Outcome::of(catalog::entries()),
            Some(name) => {
                let report = catalog::report::<S>(name, &entry_params(&args.params, tol)?)?;
                let consistent = report.consistent;
                Ok(Outcome { consistent, ..Outcome::of(report)? })
            }
        },
        Command::Sweep(args) => {
            let axes = args.axes.iter().map(|a| axis::<S>(a, tol)).collect::<Result<Vec<_>, _>>()?;
            let rows = catalog::sweep::<S>(&args.name, &catalog::grid(&axes))?;
            let consistent = rows.iter().all(|r| r.report.as_ref().map_or(true, |r| r.consistent));
            Ok(Outcome { consistent, ..Outcome::of(rows)? })
        }
        Command::Betti(args) => Outcome::of(commands::betti::<S>(&args.equations, &args.params)?),
        Command::Tables(args) => {
            let which = if args.all {
                tables::TableId::ALL.to_vec()
            } else {
                tables::parse_selection(&args.which.join(","))?
            };
            let reports = tables::reproduce(&which)?;
            let consistent = reports.iter().all(|r| r.passed);
            let text = Some(tables::render_text(&reports));
            Ok(Outcome { consistent, text, ..Outcome::of(reports)? })
        }
        Command::Invariants(args) => Outcome::of(commands::invariants(args.max_degree, args.allow_large)?),
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Classify(_) => "classify",
        Command::Family(_) => "family",
        Command::Sigma(_) => "sigma",
        Command::Clifford(_) => "clifford",
        Command::Spinors(_) => "spinors",
        Command::Isotropy(_) => "isotropy",
        Command::Example(_) => "example",
        Command::Sweep(_) => "sweep",
        Command::Betti(_) => "betti",
        Command::Tables(_) => "tables",
        Command::Invariants(_) => "invariants",
    }
}

/// Aligned `key  value` lines for an object, compact JSON otherwise.
fn render_text(value: &Value) -> String {
    match value {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            map.iter().map(|(k, v)| format!("{k:<width$}  {}\n", scalar_text(v))).collect()
        }
        Value::Array(items) => items.iter().map(|v| format!("{}\n", scalar_text(v))).collect(),
        other => format!("{}\n", scalar_text(other)),
    }
}

fn scalar_text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn dispatch(backend: BackendArg, command: &Command, tol: f64) -> Result<Outcome, Error> {
    match backend {
        BackendArg::Rational => run::<Rational>(command, tol),
        BackendArg::Surd => run::<Surd>(command, tol),
        BackendArg::Float => run::<Real>(command, tol),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let name = command_name(&cli.command);
    let mut backend = cli.backend;
    let mut outcome = dispatch(backend, &cli.command, cli.tol);
    // exact inputs whose model needs a square root stay exact in the surd backend
    if backend == BackendArg::Rational && matches!(outcome, Err(Error::Irrational(_))) {
        backend = BackendArg::Surd;
        outcome = dispatch(backend, &cli.command, cli.tol);
    }
    let backend = format!("{backend:?}").to_lowercase();
    match outcome {
        Ok(outcome) => {
            let status: u8 = if outcome.consistent { 0 } else { 1 };
            if cli.json {
                let report = json!({
                    "command": name,
                    "backend": backend,
                    "tol": cli.tol,
                    "result": outcome.result,
                    "status": status,
                });
                emit(&format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable report")));
            } else {
                emit(&outcome.text.unwrap_or_else(|| render_text(&outcome.result)));
            }
            ExitCode::from(status)
        }
        Err(e) => {
            let status: u8 = if e.is_validation() { 2 } else { 1 };
            if cli.json {
                let report = json!({
                    "command": name,
                    "backend": backend,
                    "tol": cli.tol,
                    "error": e.to_string(),
                    "status": status,
                });
                emit(&format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable report")));
            }
            eprintln!("error: {e}");
            ExitCode::from(status)
        }
    }
}
