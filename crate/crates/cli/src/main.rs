use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fdea_core::io::{load_dataset, load_external_ranks, write_fuzzy_csv, write_fuzzy_json, DatasetFormat};
use fdea_core::pipeline::{self, OrientationChoice, OutputFormat, RunConfig};
use fdea_core::{DmuDataset, Error, Mode};

const EXIT_USAGE: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;

/// Fuzzy optimistic/pessimistic DEA: evaluate and rank decision-making units.
#[derive(Parser)]
#[command(name = "fdea", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimistic and/or pessimistic efficiency of every DMU.
    Evaluate(EvaluateArgs),
    /// Geometric-mean ranking with classification and recommendations.
    Rank(RankArgs),
    /// Convert raw per-period observations into a fuzzy dataset.
    Fuzzify(FuzzifyArgs),
    /// Spearman comparison of our ranking against an external one.
    Compare(CompareArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    FuzzyCsv,
    FuzzyJson,
    RawCsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Literal,
    PerBound,
    LeastSquares,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    Optimistic,
    Pessimistic,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Table,
}

#[derive(Args)]
struct DataArgs {
    /// Dataset file.
    dataset: PathBuf,
    /// Dataset format; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
}

#[derive(Args)]
struct ModelArgs {
    /// Lower bound on every multiplier.
    #[arg(long, default_value_t = fdea_core::DEFAULT_EPSILON)]
    epsilon: f64,
    /// Seed of the weight population.
    #[arg(long, env = "FDEA_SEED", default_value_t = pipeline::DEFAULT_SEED)]
    seed: u64,
    /// Weight vectors per decision variable.
    #[arg(long = "pop-mult", default_value_t = fdea_core::scalarize::DEFAULT_POPULATION_MULTIPLIER)]
    pop_mult: usize,
    /// How the three bound normalizations are combined.
    #[arg(long, value_enum, default_value = "least-squares")]
    mode: ModeArg,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "table")]
    format: FormatArg,
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_enum, default_value = "both")]
    orientation: OrientationArg,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    model: ModelArgs,
    /// CSV with `id,rank` columns to compare against.
    #[arg(long)]
    external_ranks: Option<PathBuf>,
    /// Published rho to print next to ours.
    #[arg(long, requires = "external_ranks")]
    reference_rho: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    external_ranks: PathBuf,
    #[arg(long)]
    reference_rho: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct FuzzifyArgs {
    /// Raw observations: `id,label,period` then `in:<name>` / `out:<name>` columns.
    raw: PathBuf,
    /// csv or json.
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn config(model: &ModelArgs, orientation: OrientationArg, format: FormatArg) -> RunConfig {
    RunConfig {
        epsilon: model.epsilon,
        seed: model.seed,
        population_multiplier: model.pop_mult,
        mode: match model.mode {
            ModeArg::Literal => Mode::Literal,
            ModeArg::PerBound => Mode::PerBound,
            ModeArg::LeastSquares => Mode::LeastSquares,
        },
        orientation: match orientation {
            OrientationArg::Optimistic => OrientationChoice::Optimistic,
            OrientationArg::Pessimistic => OrientationChoice::Pessimistic,
            OrientationArg::Both => OrientationChoice::Both,
        },
        format: match format {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Table => OutputFormat::Table,
        },
        ..RunConfig::default()
    }
}

fn load(data: &DataArgs) -> fdea_core::Result<DmuDataset> {
    let format = match data.input_format {
        Some(InputFormat::FuzzyCsv) => DatasetFormat::FuzzyCsv,
        Some(InputFormat::FuzzyJson) => DatasetFormat::FuzzyJson,
        Some(InputFormat::RawCsv) => DatasetFormat::RawCsv,
        None => DatasetFormat::from_path(&data.dataset),
    };
    load_dataset(&data.dataset, format)
}

fn emit(text: &str, output: Option<&Path>) -> fdea_core::Result<()> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn rank_report(
    data: &DataArgs,
    model: &ModelArgs,
    format: FormatArg,
    external: Option<&Path>,
    reference_rho: Option<f64>,
) -> fdea_core::Result<(RunConfig, fdea_core::RankReport, Vec<fdea_core::ScalarizedResult>)> {
    let dataset = load(data)?;
    let external = external.map(load_external_ranks).transpose()?;
    let cfg = config(model, OrientationArg::Both, format);
    let results = pipeline::evaluate(&dataset, &cfg)?;
    let report = pipeline::rank_and_report(&results, &dataset, &cfg, external.as_deref(), reference_rho)?;
    Ok((cfg, report, results))
}

fn run(cli: Cli) -> fdea_core::Result<()> {
    match cli.command {
        Command::Evaluate(args) => {
            let dataset = load(&args.data)?;
            let cfg = config(&args.model, args.orientation, args.out.format);
            let results = pipeline::evaluate(&dataset, &cfg)?;
            emit(
                &pipeline::render_evaluation(&results, &dataset, &cfg)?,
                args.out.output.as_deref(),
            )
        }
        Command::Rank(args) => {
            let (cfg, report, results) = rank_report(
                &args.data,
                &args.model,
                args.out.format,
                args.external_ranks.as_deref(),
                args.reference_rho,
            )?;
            emit(
                &pipeline::render_rank_report(&report, &results, &cfg)?,
                args.out.output.as_deref(),
            )
        }
        Command::Compare(args) => {
            let (cfg, report, _) = rank_report(
                &args.data,
                &args.model,
                args.out.format,
                Some(&args.external_ranks),
                args.reference_rho,
            )?;
            emit(&pipeline::render_comparison(&report, &cfg)?, args.out.output.as_deref())
        }
        Command::Fuzzify(args) => {
            let dataset = load_dataset(&args.raw, DatasetFormat::RawCsv)?;
            let mut buf = Vec::new();
            match args.format {
                FormatArg::Csv => write_fuzzy_csv(&dataset, &mut buf)?,
                FormatArg::Json => write_fuzzy_json(&dataset, &mut buf)?,
                FormatArg::Table => return Err(Error::Config("fuzzify writes csv or json".into())),
            }
            emit(&String::from_utf8_lossy(&buf), args.output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Error::Infeasible(reports) = &e {
                eprintln!("error: model infeasible ({} run(s))", reports.len());
                for r in reports {
                    eprintln!("  {r}");
                }
                ExitCode::from(EXIT_INFEASIBLE)
            } else {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_USAGE)
            }
        }
    }
}
