use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ringgauge::analytic::Figure;
use ringgauge::scenario::{self, ScenarioReport, Suite};
use ringgauge::{FluxRatio, GaugeKind, Result, ScenarioConfig};

/// Gauge-transformation checks for a flux-threaded ring and a ramped-field orbit.
#[derive(Parser)]
#[command(name = "ringgauge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario configuration (JSON); defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a tolerance, e.g. `--tol spectrum=1e-7`. Repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    tolerances: Vec<String>,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct Quantum {
    #[arg(long, allow_hyphen_values = true)]
    flux: Option<f64>,
    #[arg(long)]
    lmax: Option<usize>,
    #[arg(long)]
    n_grid: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalue tables per gauge and their cross-gauge agreement.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        quantum: Quantum,
        #[arg(long, value_delimiter = ',', default_value = "cylindrical,landau,singular")]
        gauges: Vec<GaugeKind>,
        /// Compare levels with |l| ≤ this (default depends on flux and l_max).
        #[arg(long)]
        interior: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Real part of the l = 2 wave function for f = −2.5 and 1/3.
    Figure {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        which: Figure,
        #[arg(long, default_value_t = scenario::DEFAULT_FIGURE_SAMPLES)]
        samples: usize,
    },
    /// The quantum and/or classical verification suites.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        quantum: Quantum,
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = scenario::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Ramped-field orbit: trajectory ledger and conservation audits.
    Classical {
        #[command(flatten)]
        common: Common,
    },
}

fn load(common: &Common, quantum: Option<&Quantum>) -> Result<ScenarioConfig> {
    let mut cfg = match &common.config {
        Some(path) => ScenarioConfig::load(path)?,
        None => ScenarioConfig::default(),
    };
    for spec in &common.tolerances {
        cfg.tolerances.apply_override(spec)?;
    }
    if let Some(q) = quantum {
        if let Some(f) = q.flux {
            cfg.flux = FluxRatio::try_new(f).ok_or_else(|| ringgauge::Error::InvalidArgument(format!("flux {f}")))?;
        }
        if let Some(l) = q.lmax {
            cfg.l_max = l;
        }
        // keep the sampling margin when only l_max is given
        cfg.n_grid = q.n_grid.unwrap_or(if q.lmax.is_some() { cfg.n_grid.max(8 * cfg.l_max) } else { cfg.n_grid });
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(ScenarioReport, PathBuf)> {
    match cli.command {
        Command::Spectrum { common, quantum, gauges, interior, jobs } => {
            let cfg = load(&common, Some(&quantum))?;
            Ok((scenario::cmd_spectrum(&cfg, &gauges, interior, &common.out, jobs)?, common.out))
        }
        Command::Figure { common, which, samples } => {
            let cfg = load(&common, None)?;
            Ok((scenario::cmd_figure(&cfg, which, samples, &common.out)?, common.out))
        }
        Command::Verify { common, quantum, suite, seed, jobs } => {
            let cfg = load(&common, Some(&quantum))?;
            Ok((scenario::cmd_verify(&cfg, suite, seed, &common.out, jobs)?, common.out))
        }
        Command::Classical { common } => {
            let cfg = load(&common, None)?;
            Ok((scenario::cmd_classical(&cfg, &common.out)?, common.out))
        }
    }
}

fn summarize(report: &ScenarioReport, out: &Path) {
    for check in &report.checks {
        println!("{check}");
    }
    let failed = report.failed().count();
    println!(
        "{}: {} checks, {} failed; report {}",
        report.scenario,
        report.checks.len(),
        failed,
        out.join(report.report_file()).display()
    );
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((report, out)) => {
            summarize(&report, &out);
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
