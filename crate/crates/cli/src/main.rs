use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use chargeq_cli::config::{
    parse_amplitudes, parse_json, read_file, Origins, RawScenario, RawSweep, ScenarioConfig,
    SweepConfig,
};
use chargeq_cli::error::{CliError, EXIT_CONFIG, EXIT_OK, EXIT_WARNINGS};
use chargeq_cli::figures::run_figures;
use chargeq_cli::plot::plot_file;
use chargeq_cli::run::{run_scenario, write_file};
use chargeq_cli::sweep::{run_sweep, Manifest};
use chargeq_cli::verify::verify;

/// Two charge qubits in a common resonator: correlation dynamics, sweeps and checks.
#[derive(Parser)]
#[command(name = "chargeq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write its correlation CSV.
    Simulate(ScenarioArgs),
    /// Compare the manifold engine with the dense oracle.
    Verify {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Report file (default: stdout).
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, hide = true)]
        debug_misorder_basis: bool,
    },
    /// Run a cartesian product of scenarios.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `out_dir` from the file.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Render CSV columns as an SVG line chart.
    Plot {
        csv: PathBuf,
        /// Comma-separated column names.
        #[arg(long, value_delimiter = ',')]
        columns: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        title: Option<String>,
    },
    /// Regenerate CSVs and SVGs for all eight figure regimes.
    Figures {
        #[arg(long)]
        out_dir: PathBuf,
    },
}

/// Scenario fields; each overrides the same key in `--config`.
#[derive(Args)]
struct ScenarioArgs {
    /// JSON scenario file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Detuning in units of the coupling.
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    /// Coherent field with this mean photon number.
    #[arg(long)]
    nbar: Option<f64>,
    /// Fock field |n⟩.
    #[arg(long)]
    fock: Option<usize>,
    /// ee, gg or custom.
    #[arg(long)]
    initial: Option<String>,
    /// a1,b1,a2,b2 for a custom initial state, e.g. 0.6,0.8i,1,0.
    #[arg(long, allow_hyphen_values = true)]
    amplitudes: Option<String>,
    #[arg(long)]
    tau_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Probability mass allowed outside the Fock cutoff.
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    opt_grid: Option<usize>,
    #[arg(long)]
    opt_grid_starts: Option<usize>,
    #[arg(long)]
    opt_random_starts: Option<usize>,
    #[arg(long)]
    opt_tolerance: Option<f64>,
    #[arg(long)]
    opt_max_evals: Option<usize>,
    #[arg(long)]
    opt_seed: Option<u64>,
    /// Comma-separated measure groups: correlations, deficits.
    #[arg(long)]
    measures: Option<String>,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ScenarioArgs {
    fn resolve(&self) -> Result<ScenarioConfig, CliError> {
        let (mut raw, mut origins) = match &self.config {
            Some(path) => {
                let text = read_file(path)?;
                let raw: RawScenario = parse_json(path, &text)?;
                (raw, Origins::from_file(path, &text))
            }
            None => (RawScenario::default(), Origins::default()),
        };
        let amplitudes = self
            .amplitudes
            .as_deref()
            .map(parse_amplitudes)
            .transpose()
            .map_err(|e| CliError::Config(format!("--amplitudes: {e}")))?;
        let flags = RawScenario {
            delta: self.delta,
            nbar: self.nbar,
            fock: self.fock,
            initial: self.initial.clone(),
            amplitudes,
            tau_max: self.tau_max,
            steps: self.steps,
            epsilon: self.epsilon,
            opt_grid: self.opt_grid,
            opt_grid_starts: self.opt_grid_starts,
            opt_random_starts: self.opt_random_starts,
            opt_tolerance: self.opt_tolerance,
            opt_max_evals: self.opt_max_evals,
            opt_seed: self.opt_seed,
            measures: self
                .measures
                .as_ref()
                .map(|m| m.split(',').map(|s| s.trim().to_string()).collect()),
            out: self.out.clone(),
        };
        if self.nbar.is_some() && self.fock.is_some() {
            return Err(CliError::Config(
                "--fock: give either --nbar or --fock, not both".into(),
            ));
        }
        raw.overlay(&flags);
        origins.flags_from(&flags);
        ScenarioConfig::resolve(&raw, &origins)
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("CHARGEQ_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            CliError::Config(format!(
                "CHARGEQ_THREADS: expected a positive integer, got `{value}`"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("CHARGEQ_THREADS: {e}")))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report_manifest(m: &Manifest, out_dir: &Path) -> i32 {
    for e in &m.entries {
        if e.status != "ok" {
            eprintln!("{}: {}", e.file, e.status);
            for msg in &e.messages {
                eprintln!("  {msg}");
            }
        }
    }
    eprintln!(
        "wrote {} scenario(s) to {}",
        m.entries.len(),
        out_dir.display()
    );
    m.exit_code
}

fn run(cli: Cli) -> Result<i32, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Simulate(args) => {
            let config = args.resolve()?;
            let traj = run_scenario(&config)?;
            write_or_print(config.out.as_deref(), &traj.to_csv())?;
            let warnings = traj.warnings();
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            Ok(if warnings.is_empty() {
                EXIT_OK
            } else {
                EXIT_WARNINGS
            })
        }
        Command::Verify {
            scenario,
            report,
            debug_misorder_basis,
        } => {
            let config = scenario.resolve()?;
            let outcome = verify(&config, debug_misorder_basis)?;
            let target = report.as_deref().or(config.out.as_deref());
            write_or_print(target, &outcome.text)?;
            if target.is_some() {
                eprintln!(
                    "max deviation {:.3e}: {}",
                    outcome.report.max_deviation,
                    if outcome.passed() { "PASS" } else { "FAIL" }
                );
            }
            Ok(outcome.exit_code())
        }
        Command::Sweep { config, out_dir } => {
            let text = read_file(&config)?;
            let mut raw: RawSweep = parse_json(&config, &text)?;
            let mut origins = Origins::from_file(&config, &text);
            if out_dir.is_some() {
                raw.out_dir = out_dir;
                origins.flag("out_dir");
            }
            let sweep = SweepConfig::resolve(&raw, &origins)?;
            let manifest = run_sweep(&sweep, &origins)?;
            Ok(report_manifest(&manifest, &sweep.out_dir))
        }
        Command::Plot {
            csv,
            columns,
            out,
            title,
        } => {
            let columns: Vec<String> = columns
                .into_iter()
                .map(|c| c.trim().to_string())
                .filter(|c| !c.is_empty())
                .collect();
            plot_file(&csv, &columns, &out, title.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Figures { out_dir } => {
            let manifest = run_figures(&out_dir)?;
            Ok(report_manifest(&manifest, &out_dir))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG as u8 } else { 0 });
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
