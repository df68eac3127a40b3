use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gmpa_core::benchfuncs::default_suite;
use gmpa_core::experiment::{run_experiment, ExperimentConfig, ExperimentError};
use gmpa_core::mga::{default_cassini1, load_mga_problem, mga_breakdown, MgaBreakdown, MgaError, MgaProblem};
use gmpa_core::stats::{table_to_csv, table_to_json};
use gmpa_core::{Algorithm, ObjectiveProblem};

#[derive(Parser)]
#[command(name = "gmpa", version, about = "Hybrid GWO/MPA optimizer experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment grid.
    Run {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        /// Results directory; overrides `output_dir` in the config.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long, value_name = "N")]
        workers: Option<usize>,
        /// Base seed; overrides `base_seed` in the config.
        #[arg(long, value_name = "S")]
        seed: Option<u64>,
        /// Format of the comparison table printed to stdout.
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Evaluate one decision vector on a trajectory problem.
    EvalTraj {
        /// Problem file, or `default` for the shipped Cassini-1 problem.
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Launch epoch (days past J2000) followed by leg durations (days).
        #[arg(required = true, allow_negative_numbers = true, value_name = "X")]
        x: Vec<f64>,
    },
    /// List registered algorithms and shipped problems.
    List {
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Internal(String),
    ClosedPipe,
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        if e.is_validation() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::ClosedPipe;
        }
        Failure::Internal(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, out, workers, seed, format } => run(&config, out, workers, seed, format),
        Command::EvalTraj { config, format, x } => eval_traj(&config, &x, format),
        Command::List { format } => list(format),
    };
    match result {
        Ok(()) | Err(Failure::ClosedPipe) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(config: &Path, out: Option<PathBuf>, workers: Option<usize>, seed: Option<u64>, format: Format) -> Result<(), Failure> {
    let mut cfg = ExperimentConfig::load(config)?;
    if let Some(s) = seed {
        cfg.base_seed = s;
    }
    let out = out.or_else(|| cfg.output_dir.clone()).unwrap_or_else(|| PathBuf::from("results"));
    cfg.output_dir = Some(out.clone());
    let workers = workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let outcome = run_experiment(&cfg, &out, workers)?;
    let mut stdout = std::io::stdout().lock();
    match format {
        Format::Csv => write!(stdout, "{}", table_to_csv(&outcome.table))?,
        Format::Json => writeln!(stdout, "{}", table_to_json(&outcome.table))?,
    }
    eprintln!("{} runs written to {}", outcome.runs, out.display());
    Ok(())
}

fn load_problem(config: &Path) -> Result<MgaProblem, Failure> {
    if config == Path::new("default") {
        return Ok(default_cassini1());
    }
    load_mga_problem(config).map_err(|e| Failure::Usage(e.to_string()))
}

fn eval_traj(config: &Path, x: &[f64], format: Format) -> Result<(), Failure> {
    let problem = load_problem(config)?;
    let breakdown = mga_breakdown(&problem, x).map_err(|e| match e {
        MgaError::OutOfBounds { .. } | MgaError::DimensionMismatch { .. } | MgaError::InvalidInput(_) => Failure::Usage(e.to_string()),
        other => Failure::Internal(other.to_string()),
    })?;
    let mut stdout = std::io::stdout().lock();
    match format {
        Format::Json => writeln!(stdout, "{}", serde_json::to_string_pretty(&breakdown).expect("breakdown serializes"))?,
        Format::Csv => stdout.write_all(&breakdown_csv(&breakdown))?,
    }
    if let Some(reason) = &breakdown.failure {
        eprintln!("warning: {reason}; total is the penalty value");
    }
    Ok(())
}

fn breakdown_csv(b: &MgaBreakdown) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    let vec = |v: [f64; 3]| v.map(|c| c.to_string());
    w.write_record(["item", "body", "departure_days", "duration_days", "v1_x", "v1_y", "v1_z", "v2_x", "v2_y", "v2_z"]).unwrap();
    for leg in &b.legs {
        let mut row = vec!["leg".to_string(), format!("{}->{}", leg.from, leg.to), leg.departure.to_string(), leg.duration_days.to_string()];
        row.extend(vec(leg.v1));
        row.extend(vec(leg.v2));
        w.write_record(&row).unwrap();
    }
    w.write_record(["item", "body", "dv_km_s", "rp_km", "penalty_km_s"]).unwrap();
    let first = b.legs.first().map(|l| l.from.as_str()).unwrap_or("");
    w.write_record(["launch", first, &b.launch_dv.to_string(), "", ""]).unwrap();
    for f in &b.flybys {
        w.write_record(["flyby", &f.body, &f.dv.to_string(), &f.rp.to_string(), &f.penalty.to_string()]).unwrap();
    }
    let last = b.legs.last().map(|l| l.to.as_str()).unwrap_or("");
    w.write_record(["insertion", last, &b.insertion_dv.to_string(), "", ""]).unwrap();
    w.write_record(["total", "", &b.total.to_string(), "", ""]).unwrap();
    w.into_inner().unwrap()
}

#[derive(Serialize)]
struct Listing {
    kind: &'static str,
    name: String,
    dim: Option<usize>,
}

fn list(format: Format) -> Result<(), Failure> {
    let mut items: Vec<Listing> = Algorithm::NAMES.iter().map(|n| Listing { kind: "algorithm", name: n.to_string(), dim: None }).collect();
    for spec in default_suite() {
        items.push(Listing { kind: "bench", name: spec.id.clone(), dim: Some(spec.dim()) });
    }
    let cassini = default_cassini1();
    items.push(Listing { kind: "mga", name: cassini.name().to_string(), dim: Some(cassini.dim()) });
    let mut stdout = std::io::stdout().lock();
    match format {
        Format::Json => writeln!(stdout, "{}", serde_json::to_string_pretty(&items).expect("listing serializes"))?,
        Format::Csv => {
            writeln!(stdout, "kind,name,dim")?;
            for i in &items {
                writeln!(stdout, "{},{},{}", i.kind, i.name, i.dim.map(|d| d.to_string()).unwrap_or_default())?;
            }
        }
    }
    Ok(())
}
