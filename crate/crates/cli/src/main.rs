//! `benqo`: generate problem instances, run benchmark campaigns, sample
//! loss landscapes, and regenerate reports from stored records.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use benqo_core::harness::{
    landscape_file_name, mix_seed, read_records_jsonl, read_timings_csv, run_campaign,
    sample_landscape, timing_rows, write_campaign_outputs, write_report, CampaignConfig,
    LandscapeAlg, Problem,
};
use benqo_core::problems::{maxcut_ising, random_complete_graph, GraphJson};

#[derive(Parser)]
#[command(
    name = "benqo",
    version,
    about = "Benchmark harness for a block-encoding optimizer against QAOA and VQE baselines"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate random complete-graph instances as JSON files.
    Gen {
        /// Problem family: maxcut or tsp.
        #[arg(long)]
        problem: String,
        /// Number of graph nodes.
        #[arg(long)]
        n: usize,
        /// How many instances to emit.
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Smallest edge weight (defaults to the problem's range).
        #[arg(long)]
        wmin: Option<f64>,
        /// Largest edge weight (defaults to the problem's range).
        #[arg(long)]
        wmax: Option<f64>,
    },
    /// Run a benchmark campaign from a JSON config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        /// Overrides the config's base_seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Sample a loss landscape on a random plane through parameter space.
    Landscape {
        /// Ansatz family: benqo, qaoa, or vqe.
        #[arg(long)]
        algorithm: String,
        /// MaxCut instance size.
        #[arg(long)]
        n: usize,
        /// Grid points per side.
        #[arg(long, default_value_t = 101)]
        resolution: usize,
        /// Seeds both the instance and the plane orientation.
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Rebuild report CSV tables from stored records.
    Report {
        /// Directory holding records.jsonl (and optionally timings.csv).
        #[arg(long)]
        in_dir: PathBuf,
        /// Where to write the report (defaults to in_dir).
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn parse_problem(s: &str) -> Result<Problem> {
    match s {
        "maxcut" => Ok(Problem::MaxCut),
        "tsp" => Ok(Problem::Tsp),
        other => bail!("unknown problem {other:?}, expected maxcut or tsp"),
    }
}

fn parse_landscape_alg(s: &str) -> Result<LandscapeAlg> {
    match s {
        "benqo" => Ok(LandscapeAlg::Benqo),
        "qaoa" => Ok(LandscapeAlg::Qaoa),
        "vqe" => Ok(LandscapeAlg::Vqe),
        other => bail!("unknown algorithm {other:?}, expected benqo, qaoa, or vqe"),
    }
}

fn cmd_gen(
    problem: &str,
    n: usize,
    count: usize,
    seed: u64,
    out_dir: &PathBuf,
    wmin: Option<f64>,
    wmax: Option<f64>,
) -> Result<()> {
    let problem = parse_problem(problem)?;
    let (dmin, dmax) = problem.default_weight_range();
    let (wmin, wmax) = (wmin.unwrap_or(dmin), wmax.unwrap_or(dmax));
    fs::create_dir_all(out_dir)?;
    for k in 0..count {
        let instance_seed = mix_seed(&[seed, n as u64, k as u64]);
        let graph = random_complete_graph(n, wmin, wmax, instance_seed)?;
        let name = format!("instance_{}_n{}_{}.json", problem.name(), n, k);
        let path = out_dir.join(&name);
        let file = BufWriter::new(File::create(&path)?);
        serde_json::to_writer_pretty(file, &GraphJson::from_graph(&graph))?;
        println!("{}", path.display());
    }
    Ok(())
}

fn cmd_run(config: &PathBuf, out_dir: &PathBuf, seed: Option<u64>) -> Result<()> {
    let text = fs::read_to_string(config)
        .with_context(|| format!("reading config {}", config.display()))?;
    let mut cfg: CampaignConfig =
        serde_json::from_str(&text).context("parsing campaign config")?;
    if let Some(seed) = seed {
        cfg.base_seed = seed;
    }
    let result = run_campaign(&cfg)?;
    for err in &result.errors {
        match &err.algorithm {
            Some(alg) => eprintln!("skipped {} [{}]: {}", err.instance_id, alg, err.message),
            None => eprintln!("skipped {}: {}", err.instance_id, err.message),
        }
    }
    let written = write_campaign_outputs(&result, out_dir)?;
    println!(
        "{} records ({} skipped) -> {}",
        result.records.len(),
        result.errors.len(),
        out_dir.display()
    );
    for name in written {
        println!("  {name}");
    }
    Ok(())
}

fn cmd_landscape(
    algorithm: &str,
    n: usize,
    resolution: usize,
    seed: u64,
    out_dir: &PathBuf,
) -> Result<()> {
    let alg = parse_landscape_alg(algorithm)?;
    let instance_seed = mix_seed(&[seed, n as u64]);
    let graph = random_complete_graph(n, 0.0, 10.0, instance_seed)?;
    let model = maxcut_ising(&graph);
    let instance_id = format!("maxcut-n{n}-s{seed}");
    let grid = sample_landscape(alg, &model, &instance_id, seed, resolution)?;
    fs::create_dir_all(out_dir)?;
    let path = out_dir.join(landscape_file_name(alg, seed));
    let mut file = BufWriter::new(File::create(&path)?);
    grid.write_csv(&mut file)?;
    let (lo, hi) = grid.value_range();
    println!("{}", path.display());
    println!("loss range [{lo}, {hi}]");
    Ok(())
}

fn cmd_report(in_dir: &PathBuf, out_dir: Option<&PathBuf>) -> Result<()> {
    let records_path = in_dir.join("records.jsonl");
    let records = read_records_jsonl(&records_path)
        .with_context(|| format!("reading {}", records_path.display()))?;
    let timings_path = in_dir.join("timings.csv");
    let timings = if timings_path.exists() {
        read_timings_csv(&timings_path)?
    } else {
        timing_rows(&records)
    };
    let out_dir = out_dir.unwrap_or(in_dir);
    let written = write_report(&records, &timings, out_dir)?;
    println!("{} records -> {}", records.len(), out_dir.display());
    for name in written {
        println!("  {name}");
    }
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Gen { problem, n, count, seed, out_dir, wmin, wmax } => {
            cmd_gen(problem, *n, *count, *seed, out_dir, *wmin, *wmax)
        }
        Command::Run { config, out_dir, seed } => cmd_run(config, out_dir, *seed),
        Command::Landscape { algorithm, n, resolution, seed, out_dir } => {
            cmd_landscape(algorithm, *n, *resolution, *seed, out_dir)
        }
        Command::Report { in_dir, out_dir } => cmd_report(in_dir, out_dir.as_ref()),
    }
}
