use clap::{Parser, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use stringor_core::numeric::{format_matrix, TolerancePolicy};
use stringor_core::report::{emit_report, run, write_dumps, ConfigError, ReportFormat, RunConfig};
use stringor_core::string_model::StringModel;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

/// Runs the numerical verification suites and writes a report.
#[derive(Debug, Parser)]
#[command(name = "stringor", version)]
struct Cli {
    /// Number of lattice points on the circle (2n, even).
    #[arg(long)]
    points: Option<usize>,
    /// Dimension d of the target space.
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Suite to run; repeatable. One of clifford, bogoliubov, tomita,
    /// two-group, string, stringor, all.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Sample count for every sampled check.
    #[arg(long)]
    samples: Option<usize>,
    /// Tolerance for every gated residual check.
    #[arg(long)]
    tol: Option<f64>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Directory for matrix dumps.
    #[arg(long)]
    dump: Option<PathBuf>,
    /// Flat key=value file with the same keys; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Print the lift of a loop given as a JSON array of per-point bivector
    /// coordinates (B_ab for a < b), then exit without running suites.
    #[arg(long = "loop", value_name = "JSON")]
    loop_literal: Option<String>,
}

enum Failure {
    Config(String),
    Checks,
}

fn configure(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut config = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
        config.apply_file(&text).map_err(config_error)?;
    }
    if let Some(points) = cli.points {
        config.set("points", &points.to_string()).map_err(config_error)?;
    }
    if let Some(d) = cli.dim {
        config.d = d;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if !cli.suites.is_empty() {
        config.suites = cli.suites.clone();
    }
    if cli.samples.is_some() {
        config.samples = cli.samples;
    }
    if cli.tol.is_some() {
        config.tol = cli.tol;
    }
    if cli.report.is_some() {
        config.report = cli.report.clone();
    }
    if let Some(format) = cli.format {
        config.format = match format {
            Format::Json => ReportFormat::Json,
            Format::Md => ReportFormat::Markdown,
        };
    }
    if cli.dump.is_some() {
        config.dump = cli.dump.clone();
    }
    config.validate().map_err(config_error)?;
    Ok(config)
}

fn config_error(e: ConfigError) -> Failure {
    Failure::Config(e.to_string())
}

fn print_lift(config: &RunConfig, literal: &str) -> Result<(), Failure> {
    let coords: Vec<Vec<f64>> = serde_json::from_str(literal).map_err(|e| Failure::Config(format!("loop literal: {e}")))?;
    let model = StringModel::new(config.n, config.d, TolerancePolicy::default()).map_err(|e| Failure::Config(e.to_string()))?;
    let lift = model
        .loop_from_bivectors(&coords)
        .and_then(|l| model.lift(&l))
        .map_err(|e| Failure::Config(e.to_string()))?;
    print!("{}", format_matrix(lift.unitary()));
    Ok(())
}

fn execute(cli: &Cli) -> Result<(), Failure> {
    let config = configure(cli)?;
    if let Some(literal) = &cli.loop_literal {
        return print_lift(&config, literal);
    }
    let report = run(&config).map_err(config_error)?;
    let text = emit_report(&report, config.format);
    match &config.report {
        Some(path) => std::fs::write(path, &text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    if let Some(dir) = &config.dump {
        write_dumps(&config, dir).map_err(|e| Failure::Config(format!("{}: {e}", dir.display())))?;
    }
    let s = report.summary;
    eprintln!("{} checks: {} passed, {} failed, {} exploratory", s.total, s.passed, s.failed, s.exploratory);
    if report.all_passed() {
        Ok(())
    } else {
        for r in report.records.iter().filter(|r| !r.pass) {
            eprintln!("FAIL {}.{}: residual {:e} > {:e}", r.suite, r.check, r.residual, r.tolerance);
        }
        Err(Failure::Checks)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
