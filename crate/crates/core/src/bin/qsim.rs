use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use qsim::cli::{self, Preset};
use qsim::Result;

#[derive(Parser)]
#[command(
    name = "qsim",
    version,
    about = "Cascaded two-node atom-cavity simulator"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the simulation described by a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's `output` directory.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write the CSV files for a figure preset.
    Preset {
        name: Preset,
        #[arg(long, default_value = "output")]
        output: PathBuf,
    },
    /// Monte Carlo run with the trajectory count and seed given here.
    Trajectories {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        ntraj: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn run_config(config: &Path, overrides: &[(&str, String)]) -> Result<Vec<PathBuf>> {
    let mut raw = cli::load_config(config)?;
    for (key, value) in overrides {
        raw.set(key, value.clone());
    }
    cli::run(&raw.validate()?)
}

fn dispatch(command: Command) -> Result<Vec<PathBuf>> {
    match command {
        Command::Run { config, output } => {
            let overrides: Vec<_> = output
                .map(|o| ("output", o.display().to_string()))
                .into_iter()
                .collect();
            run_config(&config, &overrides)
        }
        Command::Preset { name, output } => cli::run_preset(name, &output),
        Command::Trajectories {
            config,
            ntraj,
            seed,
            output,
        } => {
            let mut overrides = vec![
                ("mode", "trajectories".to_string()),
                ("n_traj", ntraj.to_string()),
                ("seed", seed.to_string()),
            ];
            if let Some(o) = output {
                overrides.push(("output", o.display().to_string()));
            }
            run_config(&config, &overrides)
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match dispatch(args.command) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
