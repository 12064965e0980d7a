//! Command-line runner for the screened Floquet scenarios.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use floquet_exciton::config::{apply_config, Config};
use floquet_exciton::scenario::{run_scenario, SCENARIOS};
use floquet_exciton::Error;

#[derive(Debug, Parser)]
#[command(name = "floquet-exciton", version, about = "Screened Floquet theory of a driven two-band Hubbard model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a scenario and write <name>.csv, <name>.json and <name>.meta.json.
    Run {
        /// One of: fig1a fig1b fig2 fig3a fig3b fig3c fig4 resonance absorbance oracle
        scenario: String,
        /// Flat `key = value` configuration file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override a configuration key; may be repeated.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Grid size l (the mesh is l×l).
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads; results do not depend on it.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// List the available scenarios.
    List,
}

fn exit_code(e: &Error) -> u8 {
    if e.is_config() {
        2
    } else if e.is_solver() {
        3
    } else {
        1
    }
}

fn build_config(config: Option<PathBuf>, set: &[String], grid: Option<usize>, seed: Option<u64>) -> Result<Config, Error> {
    let mut cfg = Config::default();
    if let Some(path) = config {
        let text = fs::read_to_string(&path).map_err(|e| Error::Config {
            line: 0,
            key: path.display().to_string(),
            message: e.to_string(),
        })?;
        apply_config(&mut cfg, &text)?;
    }
    if let Some(l) = grid {
        cfg.set("grid", &l.to_string(), 0)?;
    }
    if let Some(s) = seed {
        cfg.options.seed = s;
    }
    for s in set {
        cfg.set_assignment(s)?;
    }
    Ok(cfg)
}

#[cfg(feature = "parallel")]
fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(e) => {
                eprintln!("warning: could not build a {n}-thread pool ({e}); using the global pool");
                f()
            }
        },
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_threads<T: Send>(_threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    f()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for s in SCENARIOS {
                println!("{s}");
            }
            ExitCode::SUCCESS
        }
        Command::Run {
            scenario,
            config,
            set,
            out,
            grid,
            seed,
            threads,
        } => {
            if threads == Some(0) {
                eprintln!("error: --threads must be positive");
                return ExitCode::from(2);
            }
            let result = build_config(config, &set, grid, seed)
                .and_then(|cfg| with_threads(threads, || run_scenario(&scenario, &cfg, &out)));
            match result {
                Ok(files) => {
                    for f in files {
                        println!("{}", f.display());
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(exit_code(&e))
                }
            }
        }
    }
}
