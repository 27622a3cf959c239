//! `torsionlab`: validate, classify and check G2- and SU(3)-structures
//! given by fundamental forms on invariant frames or pointwise data.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use torsionlab::catalog;
use torsionlab::io::Document;
use torsionlab::report::{self, Check, Command, Outcome, Settings, EXIT_SCHEMA};
use torsionlab::Backend;

#[derive(Parser, Debug)]
#[command(name = "torsionlab", version, about = "Intrinsic torsion of G2- and SU(3)-structures")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Scalar arithmetic: exact rationals or double precision.
    #[arg(long, global = true, default_value = "rational")]
    backend: Backend,

    /// Tolerance for the real backend and for loop data.
    #[arg(long, global = true, value_parser = parse_tol)]
    tol: Option<f64>,

    /// Write reports as JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,

    /// Write reports as `path: value` lines.
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the Jacobi identity and the algebraic conditions on the forms.
    Validate {
        /// Input file, or `catalog:NAME`.
        input: String,
    },
    /// Extract the torsion and report its class.
    Classify { input: String },
    /// Run one of the identity checks.
    Verify {
        input: String,
        /// eq18, eq23, lemma2, w1w4, eq22 or lemma1.
        #[arg(long)]
        check: Check,
    },
    /// List catalog entries, or print one as an input document.
    Catalog { name: Option<String> },
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a decimal number"))?;
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err("tolerance must be finite and non-negative".into())
    }
}

fn emit(value: &Value, text: bool) {
    let body = if text {
        report::render_text(value)
    } else {
        let mut s = serde_json::to_string_pretty(value).expect("report serializes");
        s.push('\n');
        s
    };
    // A closed pipe is not worth a panic.
    let _ = std::io::stdout().write_all(body.as_bytes());
}

fn run_on(input: &str, command: Command, settings: &Settings) -> Outcome {
    match catalog::resolve(input) {
        Ok(doc) => report::run(&doc, command, settings),
        Err(e) => report::schema_failure(command, settings, &e),
    }
}

fn listing(entries: &[Document]) -> Value {
    let rows: Vec<Value> = entries
        .iter()
        .map(|d| {
            json!({
                "name": d.name,
                "kind": d.kind.as_str(),
                "expected_class": d.expected_class,
                "notes": d.notes,
            })
        })
        .collect();
    json!({"format": torsionlab::io::FORMAT_VERSION, "entries": rows})
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_SCHEMA as u8 } else { 0 });
        }
    };
    let settings = Settings {
        backend: cli.opts.backend,
        tol: cli.opts.tol,
    };
    let text = cli.opts.text;
    let outcome = match cli.command {
        Cmd::Validate { input } => run_on(&input, Command::Validate, &settings),
        Cmd::Classify { input } => run_on(&input, Command::Classify, &settings),
        Cmd::Verify { input, check } => run_on(&input, Command::Verify(check), &settings),
        Cmd::Catalog { name: None } => match catalog::all() {
            Ok(entries) => Outcome {
                report: listing(&entries),
                exit_code: 0,
            },
            Err(e) => report::schema_failure(Command::Validate, &settings, &e),
        },
        Cmd::Catalog { name: Some(name) } => match catalog::find(&name) {
            Ok(doc) => Outcome {
                report: serde_json::to_value(&doc).expect("document serializes"),
                exit_code: 0,
            },
            Err(e) => report::schema_failure(Command::Validate, &settings, &e),
        },
    };
    emit(&outcome.report, text);
    ExitCode::from(outcome.exit_code as u8)
}
