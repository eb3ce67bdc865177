//! `entdist`: entanglement distance, entanglement metric and figure data for
//! pure multi-qubit states.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 I/O or parse error, 3 invalid
//! state.

mod source;
mod sweep;

use std::f64::consts::PI;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use entdist::metric::DEFAULT_RANK_TOL;
use entdist::verify::{self, DEFAULT_RESTARTS, DEFAULT_TOL};
use entdist::{entanglement_metric, w_vectors, MetricReport};
use serde::Serialize;

use source::{Family, FamilyArgs, SourceArgs};
use sweep::{fmt as fmt_f64, Parameter, SurfaceSpec, SweepSpec};

const INVARIANCE_TOL: f64 = 1e-9;
const OPTIMIZER_TOL: f64 = 1e-6;
const BLOCH_TOL: f64 = 1e-12;
/// How far the numeric optimizer may undercut the analytic minimum before the
/// analytic minimizer is considered wrong.
const UNDERCUT_TOL: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(name = "entdist", version, about = "Entanglement distance of pure multi-qubit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// Emit CSV.
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// E, E/M, optimal directions, the entanglement metric and its eigenvalues.
    Measure(SourceArgs),
    /// Eigenvalues of the entanglement metric only.
    Eigs {
        #[command(flatten)]
        source: SourceArgs,
        /// Eigenvalues above this count as non-null.
        #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
        rank_tol: f64,
    },
    /// Sweep one family parameter and tabulate E, E/M and the spectrum.
    Sweep(SweepArgs),
    /// E/3 of the three-qubit family over a (γ, τ) grid.
    Surface(SurfaceArgs),
    /// Cross-check the analytic results against the numeric oracles.
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        /// Random local-unitary dressings for the invariance check.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Optimizer restarts.
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: usize,
    },
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[command(flatten)]
    params: FamilyArgs,
    /// Swept parameter; defaults to φ, θ or γ by family.
    #[arg(long, value_enum)]
    param: Option<Parameter>,
    #[arg(long, allow_hyphen_values = true)]
    start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    stop: Option<f64>,
    #[arg(long, default_value_t = 201)]
    points: usize,
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    gamma_start: f64,
    #[arg(long, default_value_t = PI, allow_hyphen_values = true)]
    gamma_stop: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    tau_start: f64,
    #[arg(long, default_value_t = PI, allow_hyphen_values = true)]
    tau_stop: f64,
    /// Grid points per axis.
    #[arg(long, default_value_t = 101)]
    points: usize,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    InvalidState(String),
    Verification(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::InvalidState(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Io(msg) | CliError::InvalidState(msg) => f.write_str(msg),
            CliError::Verification(msg) => write!(f, "verification failed: {msg}"),
        }
    }
}

impl From<entdist::Error> for CliError {
    fn from(e: entdist::Error) -> Self {
        if e.is_invalid_state() {
            CliError::InvalidState(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

impl Cli {
    fn format(&self, default: Format) -> Format {
        match (self.json, self.csv) {
            (true, _) => Format::Json,
            (_, true) => Format::Csv,
            _ => default,
        }
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
            None => io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
        }
    }
}

#[derive(Serialize)]
struct MeasureOutput {
    #[serde(flatten)]
    report: MetricReport,
    measure_over_m: f64,
}

#[derive(Serialize)]
struct EigsOutput {
    m: usize,
    eigenvalues: Vec<f64>,
    rank_tol: f64,
    rank: usize,
}

#[derive(Serialize)]
struct VerifyOutput {
    m: usize,
    measure: f64,
    invariance_deviation: f64,
    optimizer_value: f64,
    optimizer_gap: f64,
    optimizer_converged: bool,
    bloch_gap: f64,
    pass: bool,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("output serializes");
    text.push('\n');
    text
}

fn eigen_header(m: usize) -> String {
    (1..=m).map(|i| format!("eig_{i}")).collect::<Vec<_>>().join(",")
}

fn join(values: &[f64]) -> String {
    values.iter().map(|&v| fmt_f64(v)).collect::<Vec<_>>().join(",")
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Measure(source) => {
            let state = source.state()?;
            let report = entanglement_metric(&state).report()?;
            let m = report.m;
            let measure_over_m = report.measure / m as f64;
            let text = match cli.format(Format::Json) {
                Format::Json => to_json(&MeasureOutput { report, measure_over_m }),
                Format::Csv => format!(
                    "E,E_over_M,{}\n{},{},{}\n",
                    eigen_header(m),
                    fmt_f64(report.measure),
                    fmt_f64(measure_over_m),
                    join(&report.eigenvalues)
                ),
            };
            cli.emit(&text)
        }
        Command::Eigs { source, rank_tol } => {
            let state = source.state()?;
            let spectrum = entanglement_metric(&state).spectrum(*rank_tol)?;
            let m = state.num_qubits();
            let text = match cli.format(Format::Json) {
                Format::Json => to_json(&EigsOutput {
                    m,
                    rank: spectrum.rank(),
                    rank_tol: spectrum.rank_tol,
                    eigenvalues: spectrum.eigenvalues,
                }),
                Format::Csv => format!("{}\n{}\n", eigen_header(m), join(&spectrum.eigenvalues)),
            };
            cli.emit(&text)
        }
        Command::Sweep(args) => {
            let parameter = args.param.unwrap_or(match args.family {
                Family::Brs => Parameter::Phi,
                Family::Ghzl => Parameter::Theta,
                Family::Threeq => Parameter::Gamma,
            });
            let template = args.params.spec_with_defaults(args.family, Some(parameter.name()))?;
            let (default_start, default_stop) = parameter.default_range();
            let spec = SweepSpec {
                family: template,
                parameter,
                start: args.start.unwrap_or(default_start),
                stop: args.stop.unwrap_or(default_stop),
                points: args.points,
            };
            let rows = spec.rows()?;
            let text = match cli.format(Format::Csv) {
                Format::Csv => sweep::sweep_csv(spec.family.num_qubits(), &rows),
                Format::Json => to_json(&rows),
            };
            cli.emit(&text)
        }
        Command::Surface(args) => {
            let spec = SurfaceSpec {
                gamma: (args.gamma_start, args.gamma_stop),
                tau: (args.tau_start, args.tau_stop),
                points: args.points,
            };
            let points = spec.points()?;
            let text = match cli.format(Format::Csv) {
                Format::Csv => sweep::surface_csv(&points),
                Format::Json => to_json(&points),
            };
            cli.emit(&text)
        }
        Command::Verify { source, trials, restarts } => {
            let state = source.state()?;
            let em = entanglement_metric(&state);
            let invariance_deviation = verify::invariance_check(&state, (*trials).max(1), cli.seed)?;
            let optimizer = verify::minimize_trace_numeric(&state, (*restarts).max(1), DEFAULT_TOL, cli.seed)?;
            let mut bloch_gap = 0.0f64;
            for (qubit, w) in w_vectors(&state).iter().enumerate() {
                let oracle = verify::bloch_vector_oracle(&state, qubit)?;
                for (a, b) in oracle.iter().zip(w.bloch()) {
                    bloch_gap = bloch_gap.max((a - b).abs());
                }
            }
            let optimizer_gap = (optimizer.value - em.measure).abs();
            let undercut = optimizer.value < em.measure - UNDERCUT_TOL;
            let pass = invariance_deviation < INVARIANCE_TOL
                && optimizer_gap < OPTIMIZER_TOL
                && bloch_gap < BLOCH_TOL
                && !undercut;
            let output = VerifyOutput {
                m: state.num_qubits(),
                measure: em.measure,
                invariance_deviation,
                optimizer_value: optimizer.value,
                optimizer_gap,
                optimizer_converged: optimizer.converged,
                bloch_gap,
                pass,
            };
            let text = match cli.format(Format::Json) {
                Format::Json => to_json(&output),
                Format::Csv => format!(
                    "measure,invariance_deviation,optimizer_gap,bloch_gap,pass\n{},{},{},{},{}\n",
                    fmt_f64(output.measure),
                    fmt_f64(invariance_deviation),
                    fmt_f64(optimizer_gap),
                    fmt_f64(bloch_gap),
                    pass
                ),
            };
            cli.emit(&text)?;
            if undercut {
                return Err(CliError::Verification(format!(
                    "numeric optimizer found {} below the analytic minimum {}",
                    optimizer.value, em.measure
                )));
            }
            if !pass {
                return Err(CliError::Verification("a gap exceeds its tolerance".into()));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("entdist: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
