use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use isoelastic_cli::output::{write_csv, write_json_lines};
use isoelastic_cli::{catalog, load_job, run, InputError, Mode, OutputFormat, Status, SEED_ENV};

#[derive(Parser)]
#[command(
    name = "isoelastic",
    version,
    about = "Evaluate and verify isotropic elastic models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every input of a job, then run its checks.
    Eval(JobArgs),
    /// Run only the checks of a job.
    Check(JobArgs),
    /// List the built-in models.
    Catalog {
        #[arg(long, value_enum, default_value_t = CatalogFormat::Text)]
        format: CatalogFormat,
    },
}

#[derive(clap::Args)]
struct JobArgs {
    /// Job file (JSON).
    #[arg(long)]
    job: PathBuf,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the job's `output` field.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Overrides every seed in the job.
    #[arg(long, env = SEED_ENV)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CatalogFormat {
    Text,
    Json,
}

fn open_out(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run_job(args: &JobArgs, mode: Mode) -> Result<Status, String> {
    let job = load_job(&args.job).map_err(|e| match e {
        InputError::Io { .. } => e.to_string(),
        _ => format!("{}: {e}", args.job.display()),
    })?;
    let format = match args.format {
        Some(Format::Json) => OutputFormat::Json,
        Some(Format::Csv) => OutputFormat::Csv,
        None => job.output,
    };
    let result = run(&job, mode, args.seed);
    let mut out = open_out(args.out.as_ref()).map_err(|e| format!("cannot open output: {e}"))?;
    let written = match format {
        OutputFormat::Json => write_json_lines(&mut out, &result.records, &result.checks),
        OutputFormat::Csv => {
            write_csv(&mut out, &result.records, &result.checks).map_err(io::Error::from)
        }
    };
    written
        .and_then(|_| out.flush())
        .map_err(|e| format!("cannot write output: {e}"))?;
    Ok(result.status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match &cli.command {
        Command::Catalog { format } => {
            let text = match format {
                CatalogFormat::Text => catalog::render_text(),
                CatalogFormat::Json => catalog::render_json(),
            };
            print!("{text}");
            return ExitCode::SUCCESS;
        }
        Command::Eval(args) => run_job(args, Mode::Full),
        Command::Check(args) => run_job(args, Mode::ChecksOnly),
    };
    match status {
        Ok(s) => ExitCode::from(s as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(Status::InputError as u8)
        }
    }
}
