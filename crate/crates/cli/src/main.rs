use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lindblad2::commands::{self, DEFAULT_DT};
use lindblad2::{load_model, settings_from_env, CliError, EvolveArgs, Outcome, Target};
use lindblad2_core::dynamics::Method;

#[derive(Parser)]
#[command(name = "lindblad2", version, about = "Qubit dissipators: CP checks, conversions, evolution, asymptotics")]
struct Cli {
    /// JSON model file.
    #[arg(long, global = true)]
    model: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide complete positivity and print a projector certificate.
    Check,
    /// Print the dissipator in another representation.
    Convert {
        #[arg(long, value_enum)]
        to: TargetArg,
    },
    /// Rewrite with the minimal number of Lindblad terms.
    Reduce,
    /// Integrate the Bloch equation and write a CSV trajectory.
    Evolve {
        #[arg(long, allow_negative_numbers = true)]
        t_max: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = DEFAULT_DT)]
        dt: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Rk4)]
        method: MethodArg,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify and verify the t → ∞ limit.
    Asymptote,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "E", alias = "e")]
    E,
    #[value(name = "GKS", alias = "gks")]
    Gks,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Rk4,
    Expm,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let settings = settings_from_env()?;
    let path = cli.model.ok_or_else(|| CliError::Usage("--model PATH is required".into()))?;
    let model = load_model(&path)?;
    match cli.command {
        Command::Check => commands::check(&model, &settings),
        Command::Convert { to } => {
            let target = match to {
                TargetArg::A => Target::A,
                TargetArg::B => Target::B,
                TargetArg::E => Target::E,
                TargetArg::Gks => Target::Gks,
            };
            commands::convert(&model, target, &settings)
        }
        Command::Reduce => commands::reduce(&model, &settings),
        Command::Evolve { t_max, dt, method, out } => {
            let method = match method {
                MethodArg::Rk4 => Method::Rk4,
                MethodArg::Expm => Method::Expm,
            };
            let (traj, limit) = commands::trajectory(&model, &EvolveArgs { t_max, dt, method }, &settings)?;
            match out {
                Some(p) => {
                    let f = File::create(&p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                    commands::write_csv(BufWriter::new(f), &traj, limit)?;
                    Ok(Outcome { report: commands::evolve_summary(&traj, limit), code: 0 })
                }
                None => {
                    commands::write_csv(io::stdout().lock(), &traj, limit)?;
                    Ok(Outcome { report: String::new(), code: 0 })
                }
            }
        }
        Command::Asymptote => commands::asymptote(&model, &settings),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(outcome.report.as_bytes());
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
