use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use lightlike_cli::analyze::{self, Settings};
use lightlike_cli::input::{read_model, Mode};
use lightlike_cli::report::{analyze_text, self_test_text, to_json};
use lightlike_cli::selftest::{self, Config, Mutation};
use lightlike_cli::CliError;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "lightlike", version, about = "Curvature and Osserman checks for degenerate metrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze a model file (gfh, hypersurface or raw-metric).
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run the acceptance suite with a fixed seed.
    SelfTest {
        #[command(flatten)]
        common: Common,
        /// Inject a fault to check that the suite notices it.
        #[arg(long, value_enum, hide = true)]
        mutate: Option<Mutation>,
    },
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Directions sampled per causal sign.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze { file, common } => {
            let start = Instant::now();
            let model = read_model(&file)?;
            let settings = Settings::resolve(&model, common.samples, common.seed, common.mode);
            let report = analyze::run(&model, settings)?;
            let text = match common.format {
                Format::Json => to_json(&report),
                Format::Text => analyze_text(&report),
            };
            emit(&text, common.out.as_deref())?;
            eprintln!("analyze: {} in {:.2?}", model.model.kind(), start.elapsed());
            Ok(())
        }
        Command::SelfTest { common, mutate } => {
            let cfg = Config {
                seed: common.seed.unwrap_or(selftest::DEFAULT_SEED),
                samples: common.samples.unwrap_or(selftest::DEFAULT_SAMPLES),
                mode: common.mode.unwrap_or(Mode::Exact),
                mutation: mutate,
            };
            if cfg.samples == 0 {
                return Err(CliError::Input("samples must be at least 1".into()));
            }
            let start = Instant::now();
            let (report, timings) = selftest::run(&cfg);
            let text = match common.format {
                Format::Json => to_json(&report),
                Format::Text => self_test_text(&report),
            };
            emit(&text, common.out.as_deref())?;
            for (id, t) in &timings {
                eprintln!("criterion {id}: {:.2?}", t);
            }
            eprintln!("self-test: {:.2?} total", start.elapsed());
            if report.passed {
                Ok(())
            } else {
                let failed: Vec<String> =
                    report.criteria.iter().filter(|c| !c.passed).map(|c| c.id.to_string()).collect();
                Err(CliError::Acceptance(format!("criteria {} failed", failed.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lightlike: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
