use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use newton_forge::oracle::DEFAULT_BUDGET;
use newton_forge::{analyze, scan, verify, Error, ExponentMatrix, ProblemInstance};
use serde::Deserialize;

mod emit;
mod text;

const BUDGET_VAR: &str = "NEWTON_FORGE_BUDGET";

#[derive(Parser)]
#[command(name = "newton-forge", version, about = "Newton and Hodge polygons of diagonal exponential sums")]
struct Cli {
    /// Print the structured report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fundamental domain, p-action, Hodge and Newton polygons.
    Analyze {
        /// Instance file, or `-` for stdin.
        file: PathBuf,
    },
    /// Analyze, then check the Newton polygon against exact character sums.
    Verify {
        file: PathBuf,
        /// Largest torus to enumerate; defaults to the instance budget,
        /// then NEWTON_FORGE_BUDGET, then 10^7.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Stability and polygon gap for each prime in a range.
    Scan {
        file: PathBuf,
        #[arg(long)]
        pmin: u64,
        #[arg(long)]
        pmax: u64,
    },
    /// Write polygon vertices as TSV or an SVG plot.
    Emit {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Which::Both)]
        what: Which,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Hp,
    Np,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Svg,
}

enum Failure {
    Invalid(String),
    Io(String),
    Mismatch,
    Budget,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Mismatch => 3,
            Failure::Budget => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

/// Scan input: only the matrix is needed, so `p` may be absent.
#[derive(Deserialize)]
struct MatrixFile {
    matrix: Vec<Vec<i64>>,
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut buf = String::new();
    let res = if path == Path::new("-") {
        io::stdin().read_to_string(&mut buf).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|s| buf = s)
    };
    res.map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    Ok(buf)
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let src = read_input(path)?;
    serde_json::from_str(&src).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn default_budget() -> Result<u64, Failure> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Invalid(format!("{BUDGET_VAR}={v:?} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_BUDGET as u64),
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(value).expect("reports serialise");
    write_stdout(&format!("{s}\n"))
}

fn write_stdout(s: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(s.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure::Io(format!("stdout: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { file } => {
            let instance: ProblemInstance = parse(&file)?;
            let analysis = analyze(&instance)?;
            if cli.json {
                print_json(&analysis.report)
            } else {
                write_stdout(&text::report(&analysis.report))
            }
        }
        Command::Verify { file, budget } => {
            let instance: ProblemInstance = parse(&file)?;
            let budget = match budget.or(instance.budget) {
                Some(b) => b,
                None => default_budget()?,
            };
            let verification = verify(&instance, u128::from(budget))?;
            let report = &verification.analysis.report;
            if cli.json {
                print_json(report)?;
            } else {
                write_stdout(&text::report(report))?;
            }
            match verification.matches() {
                Some(true) => Ok(()),
                Some(false) => Err(Failure::Mismatch),
                None => Err(Failure::Budget),
            }
        }
        Command::Scan { file, pmin, pmax } => {
            let input: MatrixFile = parse(&file)?;
            let matrix = ExponentMatrix::from_rows(input.matrix)?;
            let rows = scan(&matrix, pmin, pmax)?;
            if cli.json {
                print_json(&rows)
            } else {
                let body: String = rows
                    .iter()
                    .map(|r| format!("{}\t{}\t{}\n", r.p, r.stable, r.max_gap.0))
                    .collect();
                write_stdout(&body)
            }
        }
        Command::Emit { file, what, format, out } => {
            let instance: ProblemInstance = parse(&file)?;
            let analysis = analyze(&instance)?;
            let hp = (what != Which::Np).then_some(&analysis.hodge_polygon);
            let np = (what != Which::Hp).then_some(&analysis.newton_polygon);
            let body = match format {
                Format::Tsv => emit::tsv(hp, np),
                Format::Svg => emit::svg(hp, np),
            };
            std::fs::write(&out, body).map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
            if cli.json {
                print_json(&serde_json::json!({ "written": out.display().to_string() }))?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(cli);
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Invalid(msg) => eprintln!("error: {msg}"),
                Failure::Io(msg) => eprintln!("error: {msg}"),
                Failure::Mismatch => eprintln!("error: empirical Newton polygon differs from the predicted one"),
                Failure::Budget => eprintln!("error: verification skipped, torus exceeds the budget"),
            }
            ExitCode::from(failure.code())
        }
    }
}
