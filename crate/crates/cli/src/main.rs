use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qls_core::algebraic::set_trial_division_bound;
use qls_core::claims::{all_passed, report_json, report_text, run_all_claims};
use qls_core::square::{count_cardinality, from_json, to_json, to_json_pretty, CountMethod};
use qls_core::synthesis::{synth, valid_cardinalities};
use qls_core::{ClaimsConfig, Error, GeneratorId, QlsGrid};

const BOUND_ENV: &str = "QLS_TRIAL_DIVISION_BOUND";

#[derive(Parser, Debug)]
#[command(name = "qls", version, about = "Exact quantum Latin squares with prescribed cardinality")]
struct Cli {
    /// Worker threads for verification and counting (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Output style: compact JSON or indented JSON.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a named order-4 square, e.g. "H(5)", "W(5,6)", "Wk(3)", "Hprime(8)", "W0".
    Gen { id: String },
    /// Build a verified QLS(4m) with cardinality exactly c.
    Synth {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        c: usize,
        /// Write the plan here instead of stderr.
        #[arg(long)]
        plan_out: Option<PathBuf>,
    },
    /// Exit 0 iff the grid in FILE ("-" for stdin) is a quantum Latin square.
    Verify { file: String },
    /// Print the exact cardinality of the grid in FILE ("-" for stdin).
    Cardinality {
        file: String,
        /// Also count with the pairwise-overlap oracle and require agreement.
        #[arg(long)]
        cross_check: bool,
    },
    /// Re-derive every registered claim and report pass/fail.
    Claims {
        /// Witness parameters p/q use |p| <= B and 1 <= q <= B.
        #[arg(long, default_value_t = 4)]
        witness_bound: i64,
        /// Values of m to sweep over their full cardinality range (repeatable).
        #[arg(long = "m")]
        sweep_m: Vec<usize>,
        /// Check W(2k-1,2k) pairwise distinctness for k up to this value.
        #[arg(long, default_value_t = 10)]
        family_k: usize,
    },
    /// Describe the valid cardinalities for order 4m.
    Range {
        #[arg(long)]
        m: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    fn check(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Unverified(_) | Error::Internal(_) => 1,
            _ => 2,
        };
        Self { code, message: err.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        Failure::usage(err.to_string())
    }
}

fn read_input(file: &str) -> Result<String, Failure> {
    if file == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(file).map_err(|e| Failure::usage(format!("{file}: {e}")))
    }
}

fn read_grid(file: &str) -> Result<QlsGrid, Failure> {
    Ok(from_json(&read_input(file)?)?)
}

fn render_grid(grid: &QlsGrid, format: Format) -> String {
    match format {
        Format::Json => to_json(grid),
        Format::Pretty => to_json_pretty(grid),
    }
}

fn emit(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    writeln!(out, "{text}")?;
    out.flush()?;
    Ok(())
}

fn configure(cli: &Cli) -> Result<(), Failure> {
    if let Ok(value) = std::env::var(BOUND_ENV) {
        let bound = value
            .trim()
            .parse::<u64>()
            .map_err(|_| Failure::usage(format!("{BOUND_ENV} must be a positive integer, got `{value}`")))?;
        if bound < 2 {
            return Err(Failure::usage(format!("{BOUND_ENV} must be at least 2")));
        }
        set_trial_division_bound(bound);
    }
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Failure::usage("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure(&cli)?;
    let format = cli.format.unwrap_or(Format::Json);
    match cli.command {
        Command::Gen { id } => {
            let id: GeneratorId = id.parse()?;
            emit(&render_grid(&id.build()?, format))
        }
        Command::Synth { m, c, plan_out } => {
            let (plan, grid) = synth(m, c)?;
            let plan_text = match format {
                Format::Json => plan.to_json(),
                Format::Pretty => plan.to_json_pretty(),
            };
            match plan_out {
                Some(path) => write_file(&path, &plan_text)?,
                None => eprintln!("{plan_text}"),
            }
            emit(&render_grid(&grid, format))
        }
        Command::Verify { file } => {
            let grid = read_grid(&file)?;
            let report = grid.verify();
            match &report.violation {
                None => emit(&format!("ok: quantum Latin square of order {}", grid.order())),
                Some(v) => Err(Failure::check(format!("not a quantum Latin square: {v}"))),
            }
        }
        Command::Cardinality { file, cross_check } => {
            let grid = read_grid(&file)?;
            let method = if cross_check { CountMethod::CrossChecked } else { CountMethod::Canonical };
            emit(&count_cardinality(&grid, method)?.to_string())
        }
        Command::Claims {
            witness_bound,
            sweep_m,
            family_k,
        } => {
            if witness_bound < 1 {
                return Err(Failure::usage("--witness-bound must be at least 1"));
            }
            if let Some(m) = sweep_m.iter().find(|&&m| m < 2) {
                return Err(Error::MTooSmall { m: *m, min: 2 }.into());
            }
            let mut config = ClaimsConfig {
                witness_bound,
                family_k,
                ..ClaimsConfig::default()
            };
            if !sweep_m.is_empty() {
                config.sweep_m = sweep_m;
            }
            let results = run_all_claims(&config);
            let text = match cli.format {
                None => report_text(&results).trim_end().to_string(),
                Some(f) => report_json(&results, f == Format::Pretty),
            };
            emit(&text)?;
            if all_passed(&results) {
                Ok(())
            } else {
                Err(Failure::check("one or more claims failed"))
            }
        }
        Command::Range { m } => emit(&valid_cardinalities(m)?.describe()),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, format!("{text}\n")).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
