use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use subperc::experiments::{self, Experiment, ExperimentConfig};
use subperc::Error;

/// Runs one experiment and writes its tables, figures and manifest.
#[derive(Parser, Debug)]
#[command(name = "subperc", version)]
struct Cli {
    /// fig1_patterns, fig2_gilbert_scan, sinr_gamma_scan, diagnostics_suite or bounds_table
    experiment: Experiment,
    #[arg(long)]
    config: PathBuf,
    /// Overrides the master seed of the config file.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory; defaults to the config's `output`, then `runs/<experiment>`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    jobs: Option<usize>,
}

fn run(cli: Cli) -> Result<(), Error> {
    let text = std::fs::read_to_string(&cli.config)?;
    let mut config = ExperimentConfig::parse(&text)?;
    if let Some(named) = config.experiment {
        if named != cli.experiment {
            let line = text
                .lines()
                .position(|l| l.trim_start().starts_with("experiment"))
                .map_or(0, |i| i + 1);
            return Err(Error::Config {
                line,
                message: format!("config is for {named}, but {} was requested", cli.experiment),
            });
        }
    }
    if let Some(seed) = cli.seed {
        config = config.with_seed(seed);
    }
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Error::Parameter("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Error::Parameter(e.to_string()))?;
    }
    let out = cli
        .out
        .or_else(|| config.output.clone())
        .unwrap_or_else(|| PathBuf::from("runs").join(cli.experiment.name()));
    let report = experiments::run(cli.experiment, config, &out)?;
    for line in &report.summary {
        println!("{line}");
    }
    println!("wrote {} files to {}", report.outputs.len(), report.dir.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
