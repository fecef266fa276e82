//! `besant`: classify quadrilaterals, construct Besant and inscribed ellipses,
//! and draw them.
//!
//! Exit codes: 0 success, 2 geometry error (not convex, `r` out of range, ...),
//! 3 parse or usage error, 4 I/O error.

mod input;
mod report;
mod svg;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use besant::{Error, Tolerance};
use clap::{ArgAction, Args, Parser, Subcommand};
use rayon::prelude::*;

use input::{batch_lines, parse_line, parse_vertices, QuadInput};
use report::{run, Command};

const TOLERANCE_ENV: &str = "BESANT_TOLERANCE";

#[derive(Parser)]
#[command(name = "besant", version, about = "Inscribed ellipses of convex quadrilaterals")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normal form, predicates, EP/IP and the Besant ellipse if there is one.
    Classify(Common),
    /// Besant ellipse in the input's pose; optionally draw it.
    Besant(Common),
    /// Member `r` of the inscribed family with foci by both routes.
    Inscribe {
        #[command(flatten)]
        common: Common,
        /// Family parameter in (0, 1), relative to the reported normal form.
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
    },
    /// Inscribed ellipse of maximal area.
    Maxarea(Common),
}

#[derive(Args)]
struct Common {
    /// Four vertices, e.g. "0,0 0,1 2,4 6.8,-2.4"; either orientation.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "input_file", required_unless_present = "input_file")]
    vertices: Option<String>,
    /// Batch file, one quadrilateral per line (`label: x,y x,y x,y x,y`).
    #[arg(long)]
    input_file: Option<PathBuf>,
    /// Label echoed in the report.
    #[arg(long)]
    label: Option<String>,
    /// Write an SVG figure (single input only).
    #[arg(long, conflicts_with = "input_file")]
    svg: Option<PathBuf>,
    /// Relative tolerance for the geometric predicates (overrides BESANT_TOLERANCE).
    #[arg(long)]
    tolerance: Option<f64>,
    /// JSON output; `--json false` prints `key: value` lines instead.
    #[arg(long, action = ArgAction::Set, default_value_t = true, num_args = 0..=1, default_missing_value = "true")]
    json: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

fn geometry_failure(e: Error) -> Failure {
    Failure::new(2, e.to_string())
}

fn tolerance(flag: Option<f64>) -> Result<Tolerance, Failure> {
    let rel = match flag {
        Some(t) => Some(t),
        None => match std::env::var(TOLERANCE_ENV) {
            Ok(s) => Some(
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Failure::new(3, format!("{TOLERANCE_ENV}: invalid number `{s}`")))?,
            ),
            Err(_) => None,
        },
    };
    match rel {
        None => Ok(Tolerance::default()),
        Some(t) if t.is_finite() && t > 0.0 && t < 1.0 => Ok(Tolerance::with_rel(t)),
        Some(t) => Err(Failure::new(3, format!("tolerance must be in (0, 1), got {t}"))),
    }
}

fn render(report: &report::RunReport, json: bool, pretty: bool) -> String {
    let value = serde_json::to_value(report).expect("report serializes");
    if json {
        return if pretty { serde_json::to_string_pretty(&value) } else { serde_json::to_string(&value) }
            .expect("report serializes");
    }
    let mut out = String::new();
    if let serde_json::Value::Object(map) = value {
        for (k, v) in map {
            out.push_str(&format!("{k}: {v}\n"));
        }
    }
    out.trim_end().to_string()
}

/// Prints a line to stdout; a closed pipe is not an error worth reporting.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn single(cmd: Command, common: &Common, r: Option<f64>, tol: Tolerance) -> Result<(), Failure> {
    let text = common.vertices.as_deref().unwrap_or_default();
    let vertices = parse_vertices(text).map_err(|e| Failure::new(3, e.0))?;
    let input = QuadInput { label: common.label.clone(), vertices };
    let outcome = run(cmd, &input, r, tol).map_err(geometry_failure)?;
    if let Some(path) = &common.svg {
        std::fs::write(path, svg::render(&outcome.figure))
            .map_err(|e| Failure::new(4, format!("{}: {e}", path.display())))?;
    }
    emit(&render(&outcome.report, common.json, true));
    Ok(())
}

/// Runs every line in parallel and prints one report per line in input order.
/// Failed lines print an error object; the exit code is the largest one seen.
fn batch(cmd: Command, common: &Common, path: &PathBuf, r: Option<f64>, tol: Tolerance) -> Result<(), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::new(4, format!("{}: {e}", path.display())))?;
    let lines = batch_lines(&text);
    let results: Vec<Result<String, Failure>> = lines
        .par_iter()
        .map(|&(_, line)| {
            let input = parse_line(line).map_err(|e| Failure::new(3, e.0))?;
            let outcome = run(cmd, &input, r, tol).map_err(geometry_failure)?;
            Ok(render(&outcome.report, common.json, false))
        })
        .collect();
    let mut worst = 0u8;
    for ((number, _), result) in lines.iter().zip(results) {
        match result {
            Ok(text) => emit(&text),
            Err(f) => {
                let obj = serde_json::json!({ "line": number, "error": f.message });
                emit(&obj.to_string());
                eprintln!("error: line {number}: {}", f.message);
                worst = worst.max(f.code);
            }
        }
    }
    if worst == 0 {
        Ok(())
    } else {
        Err(Failure::new(worst, String::new()))
    }
}

fn execute(cli: Cli) -> Result<(), Failure> {
    let (cmd, common, r) = match &cli.command {
        Cmd::Classify(c) => (Command::Classify, c, None),
        Cmd::Besant(c) => (Command::Besant, c, None),
        Cmd::Inscribe { common, r } => (Command::Inscribe, common, Some(*r)),
        Cmd::Maxarea(c) => (Command::MaxArea, c, None),
    };
    let tol = tolerance(common.tolerance)?;
    match &common.input_file {
        Some(path) => batch(cmd, common, path, r, tol),
        None => single(cmd, common, r, tol),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!("{}", first.trim());
            return ExitCode::from(3);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
