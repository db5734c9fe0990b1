use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wmofss_cli::published::{self, Local, Triple};
use wmofss_cli::{compare, experiment, HarnessError, Result, RunConfig};

#[derive(Parser)]
#[command(name = "wmofss", version, about = "Run and compare wmoFSS experiments on DTLZ1-4")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment and write its results.
    Run(Box<RunArgs>),
    /// Compare the IGD samples of two or more result directories.
    Compare {
        #[arg(required = true, num_args = 2..)]
        dirs: Vec<PathBuf>,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
    },
    /// Print the published IGD tables, optionally next to local results.
    Table {
        /// Result directories to show alongside the published values.
        dirs: Vec<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// `key = value` configuration file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    objectives: Option<String>,
    #[arg(long)]
    variant: Option<String>,
    #[arg(long)]
    theta: Option<String>,
    #[arg(long)]
    runs: Option<String>,
    #[arg(long)]
    iterations: Option<String>,
    #[arg(long)]
    school_size: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    jobs: Option<String>,
    /// Any other configuration key, as `key=value`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

impl RunArgs {
    fn into_config(self) -> Result<RunConfig> {
        let mut config = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        for pair in &self.set {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| HarnessError::config("set", format!("expected KEY=VALUE, got '{pair}'")))?;
            config.set(key, value)?;
        }
        let flags = [
            ("problem", self.problem),
            ("objectives", self.objectives),
            ("variant", self.variant),
            ("theta", self.theta),
            ("runs", self.runs),
            ("iterations", self.iterations),
            ("school_size", self.school_size),
            ("seed", self.seed),
            ("output_dir", self.out),
            ("jobs", self.jobs),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                config.set(key, &v)?;
            }
        }
        Ok(config)
    }
}

fn table(dirs: &[PathBuf]) -> Result<String> {
    let mut local = Vec::new();
    for dir in dirs {
        let r = experiment::read_result(&dir.join("result.json"))?;
        let label = if r.config.variant.is_sbx() { "sbx" } else { "wmofss" };
        local.push(Local {
            family: r.config.problem,
            m: r.config.objectives,
            label,
            values: Triple {
                median: r.summary.median,
                maximum: r.summary.maximum,
                minimum: r.summary.minimum,
            },
        });
    }
    Ok(published::render(&local))
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(args) => {
            let config = args.into_config()?;
            let result = experiment::run_experiment(&config)?;
            let s = &result.summary;
            println!(
                "{} m={} {}: {} runs, IGD median {:.3e} min {:.3e} max {:.3e} mean {:.3e}",
                config.problem,
                config.objectives,
                config.variant,
                s.n_runs,
                s.median,
                s.minimum,
                s.maximum,
                s.mean
            );
            println!("results written to {}", config.output_dir.display());
        }
        Command::Compare { dirs, alpha } => print!("{}", compare::compare(&dirs, alpha)?),
        Command::Table { dirs } => print!("{}", table(&dirs)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
