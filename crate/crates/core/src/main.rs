use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use jetcalc::error::Error;
use jetcalc::invariants::Coefficients;
use jetcalc::job::{run, Command, Job, Mode};

/// Exit status when a comparison (verify suite, theorem against
/// measurement, route agreement) fails.
const EXIT_MISMATCH: u8 = 4;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "jetcalc", version, about = "Invariants, cuspidal numbers and solution degrees of algebraic differential equations")]
struct Cli {
    /// TOML job file; optional for `--command verify`.
    #[arg(long)]
    job: Option<PathBuf>,
    #[arg(long, value_parser = parse_command)]
    command: Option<Command>,
    #[arg(long, value_parser = parse_mode)]
    mode: Option<Mode>,
    #[arg(long, env = "JETCALC_SEED")]
    seed: Option<u64>,
    #[arg(long, value_parser = parse_field)]
    field: Option<Coefficients>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn parse_enum<T: serde::de::DeserializeOwned>(s: &str) -> Result<T, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|e| e.to_string())
}

fn parse_command(s: &str) -> Result<Command, String> {
    parse_enum(s)
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    parse_enum(s)
}

fn parse_field(s: &str) -> Result<Coefficients, String> {
    parse_enum(s)
}

fn load(cli: &Cli) -> Result<Job, Error> {
    let mut job = match &cli.job {
        Some(path) => {
            let src = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Job::from_toml(&src)?
        }
        None if cli.command == Some(Command::Verify) => Job::from_toml("n = 2\nk = 1\nr = 2\ncommand = \"verify\"\n")?,
        None => return Err(Error::Job("--job is required unless the command is verify".into())),
    };
    if let Some(c) = cli.command {
        job.command = c;
    }
    if let Some(m) = cli.mode {
        job.mode = m;
    }
    if let Some(s) = cli.seed {
        job.seed = s;
    }
    if let Some(f) = cli.field {
        job.field = f;
    }
    Ok(job)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = load(&cli).and_then(|job| run(&job));
    match outcome {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            if report.consistent() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MISMATCH)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error [{}]: {e}", e.code()),
                Format::Json => println!("{}", serde_json::json!({ "error": { "code": e.code(), "message": e.to_string() } })),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
