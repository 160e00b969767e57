use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use oblab_cli::error::EXIT_CONFIG;
use oblab_cli::{execute, parse_config, CliError, Mode};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Command {
    LinearDecay,
    VerifyBounds,
    Simulate,
    Identities,
    Fit,
}

impl From<Command> for Mode {
    fn from(c: Command) -> Self {
        match c {
            Command::LinearDecay => Mode::LinearDecay,
            Command::VerifyBounds => Mode::VerifyBounds,
            Command::Simulate => Mode::Simulate,
            Command::Identities => Mode::Identities,
            Command::Fit => Mode::Fit,
        }
    }
}

/// Spectral laboratory for the diffusive Oldroyd-B system.
///
/// Exit codes: 0 pass, 2 config error, 3 numerical check failure, 4 blow-up.
#[derive(Debug, Parser)]
#[command(name = "oblab", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// INI experiment configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides `[output] dir`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Pass/fail tolerance of the command's check.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Seed for random fixtures.
    #[arg(long)]
    seed: Option<u64>,
}

fn run(args: Args) -> Result<String, CliError> {
    let mode = Mode::from(args.command);
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| CliError::io(format!("cannot read {}", args.config.display()), e))?;
    let mut config = parse_config(&text)?;
    if let Some(m) = config.mode {
        if m != mode {
            return Err(CliError::Config(format!("config is for `{m}`, not `{mode}`")));
        }
    }
    if let Some(out) = args.out {
        config.out_dir = out;
    }
    if let Some(t) = args.tolerance {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(CliError::Config(format!("--tolerance must be >= 0, got {t}")));
        }
        config.tolerance = Some(t);
    }
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if mode == Mode::Fit {
        config.require_fit_inputs()?;
    }
    execute(mode, &config)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG as u8 } else { 0 });
        }
    };
    match run(args) {
        Ok(summary) => {
            print!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
