use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use twotone_cli::config::Config;
use twotone_cli::{experiments, exit_code};

/// Bichromatic-gate experiment runner: deterministic CSV datasets for the
/// shipped figure, table and sweep configurations.
#[derive(Parser)]
#[command(name = "twotone", version)]
struct Cli {
    /// One of: fig3, fig4, fig5, table1, sweep, calibrate
    experiment: String,
    /// Flat key=value configuration file
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path (default: the config's `out` key, else <experiment>.csv)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the integrator's steps per trap cycle (fig4/fig5 only)
    #[arg(long)]
    steps_per_cycle: Option<usize>,
    /// Override the Fock-space cutoff n_max (fig4/fig5 only)
    #[arg(long)]
    fock_cutoff: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<(), twotone_core::Error> {
    let mut config = Config::from_file(&cli.config)?;
    let out_path = cli
        .out
        .clone()
        .or_else(|| config.get_str("out").ok().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(format!("{}.csv", cli.experiment)));
    let result = experiments::run(
        &cli.experiment,
        &mut config,
        cli.steps_per_cycle,
        cli.fock_cutoff,
    )?;
    result.dataset.write(&out_path)?;
    println!("{} -> {}", result.summary, out_path.display());
    Ok(())
}
