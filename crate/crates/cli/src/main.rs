use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use paralift::commands::{self, LiftKind, Settings};
use paralift::selftest::{self, Caps};
use paralift::{CliError, Report};
use paralift_core::structure::LiftMode;

#[derive(Parser)]
#[command(name = "paralift", version, about = "Lifts of tensor fields and paracontact structures to the tangent bundle")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Random seed for sample points and generated instances.
    #[arg(long, global = true, env = "PARALIFT_SEED")]
    seed: Option<u64>,

    /// Number of random sample points for pointwise checks.
    #[arg(long, global = true)]
    points: Option<usize>,

    /// Lift used to build the structure on TM (overrides the file profile).
    #[arg(long, global = true)]
    mode: Option<LiftMode>,

    /// Use the floating-point directional derivative check in selftest.
    #[arg(long, global = true)]
    floating: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the vertical, complete or horizontal lift of a named object.
    Lift {
        file: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value = "c")]
        kind: LiftKind,
    },
    /// Check the structure axioms, their consistency, rank and metric.
    Verify { file: String },
    /// Build J on TM for the file's profile and analyse J^2 - I.
    BuildTm { file: String },
    /// Interaction identities and the defect for all four sign profiles.
    Defect { file: String },
    /// Run the seeded invariant suites.
    Selftest {
        file: Option<String>,
        #[arg(long, default_value_t = Caps::default().instances)]
        instances: usize,
        #[arg(long, default_value_t = Caps::default().max_k)]
        max_k: usize,
        #[arg(long, default_value_t = Caps::default().max_r)]
        max_r: usize,
    },
}

fn run(cli: Cli) -> Result<Option<Report>, CliError> {
    let settings = Settings { seed: cli.seed, points: cli.points, mode: cli.mode, floating: cli.floating };
    let report = match cli.command {
        Command::Lift { file, target, kind } => {
            let text = commands::lift(&commands::load(&file)?, &target, kind)?;
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            return Ok(None);
        }
        Command::Verify { file } => commands::verify(&commands::load(&file)?, &settings)?,
        Command::BuildTm { file } => commands::build_tm(&commands::load(&file)?, &settings)?,
        Command::Defect { file } => commands::defect(&commands::load(&file)?, &settings)?,
        Command::Selftest { file, instances, max_k, max_r } => {
            let model = file.as_deref().map(commands::load).transpose()?;
            let caps = Caps { instances, max_k, max_r, ..Caps::default() };
            selftest::run(model.as_ref(), &settings, &caps)?
        }
    };
    Ok(Some(report))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(report)) => {
            let _ = write!(std::io::stdout().lock(), "{report}");
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
