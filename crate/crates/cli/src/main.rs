use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use urnkit_cli::{commands, CliError, Overrides, ProblemSpec, Report, SpecError};

/// Exact distances, draws and limit-law sweeps for urns.
#[derive(Debug, Parser)]
#[command(name = "urnkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Problem file (TOML).
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    /// Write CSV here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    samples: Option<u64>,
    #[arg(long, global = true)]
    threshold_div: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Kantorovich distance between `params.left` and `params.right`.
    Distance,
    /// Draw distribution of `params.draw` with `params.k` draws from `params.left`.
    Draw,
    /// Compare the input distance with the distance between draw distributions.
    Isometry,
    /// Large-urn sweep for the multiset `params.left`.
    SweepUrn,
    /// Large-draw sweep for the distribution `params.left`.
    SweepDraw,
    /// Monte Carlo Dirichlet estimate against the exact Pólya validity.
    PolyaDirichlet,
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let path = cli
        .spec
        .as_ref()
        .ok_or_else(|| SpecError::Field { field: "--spec".into(), message: "required".into() })?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| SpecError::Parse(format!("{}: {e}", path.display())))?;
    let problem = ProblemSpec::from_toml(&text)?.validate()?;
    let o = Overrides {
        out: cli.out.clone(),
        seed: cli.seed,
        samples: cli.samples,
        threshold_div: cli.threshold_div,
    };
    match cli.command {
        Command::Distance => commands::distance(&problem),
        Command::Draw => commands::draw(&problem),
        Command::Isometry => commands::isometry(&problem),
        Command::SweepUrn => commands::sweep_urn(&problem, &o),
        Command::SweepDraw => commands::sweep_draw(&problem, &o),
        Command::PolyaDirichlet => commands::polya_dirichlet(&problem, &o),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.stdout);
            match report.failure {
                None => ExitCode::SUCCESS,
                Some(f) => {
                    eprintln!("{}", CliError::Assertion(f));
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
