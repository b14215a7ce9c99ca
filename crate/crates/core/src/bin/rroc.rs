use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rroc::report::{self, OutputKind, RunConfig};
use rroc::shift::DEFAULT_ALPHA_POINTS;
use rroc::synth::{self, Distribution, SynthSpec};
use rroc::Result;

#[derive(Parser)]
#[command(name = "rroc", version, about = "RROC analysis of regression models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse the models in a prediction CSV and emit a JSON report.
    Analyze {
        /// CSV with an `actual` column and `predicted` or `predicted:<id>` columns.
        #[arg(long)]
        input: PathBuf,
        /// Training predictions (same layout and model ids) for trained-constant cost curves.
        #[arg(long)]
        train: Option<PathBuf>,
        /// Comma-separated asymmetries to query.
        #[arg(long, default_value = "0.5")]
        alpha: String,
        /// Divide RROC coordinates by the number of examples.
        #[arg(long)]
        normalize: bool,
        /// Comma-separated subset of points,curves,hull,dominance,cost,density.
        #[arg(long, default_value = "points,curves,hull,dominance,cost,density")]
        outputs: String,
        /// Cost-curve resolution.
        #[arg(long, default_value_t = DEFAULT_ALPHA_POINTS)]
        alpha_points: usize,
        /// Write the RROC chart here; density and cost charts go next to it.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the report here instead of standard output.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Leave out the timestamp so reruns are byte-identical.
        #[arg(long)]
        reproducible: bool,
    },
    /// Generate a seeded synthetic prediction CSV.
    Synth {
        /// Distribution of the actual values, e.g. normal:0,0.01.
        #[arg(long, default_value = "normal:0,0.01")]
        dist: Distribution,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        /// Comma-separated model kinds (random, actual-plus-noise, constant-mean) or `all`.
        #[arg(long, default_value = "all")]
        model: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output CSV; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rroc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Analyze {
            input,
            train,
            alpha,
            normalize,
            outputs,
            alpha_points,
            svg,
            json,
            reproducible,
        } => {
            let outputs: BTreeSet<OutputKind> = report::parse_outputs(&outputs)?;
            let config = RunConfig {
                input,
                train,
                alphas: report::parse_alphas(&alpha)?,
                normalize,
                outputs,
                alpha_points,
                svg,
                json: json.clone(),
                reproducible,
            };
            let r = report::run(&config)?;
            if json.is_none() {
                std::io::stdout().write_all(r.to_json()?.as_bytes())?;
            }
            Ok(())
        }
        Command::Synth {
            dist,
            n,
            model,
            seed,
            out,
        } => {
            let spec = SynthSpec {
                dist,
                n,
                kinds: synth::parse_model_kinds(&model)?,
                seed,
            };
            let csv = synth::generate_synthetic(&spec)?.to_csv_string()?;
            match out {
                Some(path) => std::fs::write(path, csv)?,
                None => std::io::stdout().write_all(csv.as_bytes())?,
            }
            Ok(())
        }
    }
}
