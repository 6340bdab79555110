//! `hypertree`: command-line access to the hypertree toolkit.
//!
//! Exit codes: 0 on success, 1 on invalid input or a usage error, 2 when an internal
//! consistency check fails.

mod commands;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use hypertree::Error;
use serde::Serialize;

use report::{Format, RunManifest, VERSION};

#[derive(Debug, Parser)]
#[command(name = "hypertree", version, about = "Exact and random computations on d-dimensional hypertrees")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; `cx` writes a complex file and is only valid for subcommands that
    /// produce a complex.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Output file (default: stdout). The run manifest goes to `<out>.manifest.json`,
    /// or to stderr without `--out`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for trial-parallel subcommands (default: all cores). Results do not
    /// depend on this.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct InputArgs {
    /// Complex file: header `dim=<d> n=<n>`, then one face per line.
    #[arg(long = "in")]
    pub input: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct RankArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Also report the rank modulo this prime.
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct CollapseArgs {
    /// Peel this complex. Without it, peels `--trials` samples of Y(n, p) under `--steps`
    /// random orders each and reports whether the cores agree.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 200)]
    pub trials: u64,
    #[arg(long, default_value_t = 20)]
    pub steps: u64,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct NdArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct ConeArgs {
    /// Give twice: a hypertree T on n vertices, then a (d-1)-hypertree S on n vertices.
    /// Without inputs, builds the cone hypertree for `--n` and `--d`.
    #[arg(long = "in")]
    pub inputs: Vec<PathBuf>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub d: Option<u32>,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundsArgs {
    /// Vertex count for the logarithmic bounds; per-face constants do not depend on it.
    #[arg(long, default_value_t = 100)]
    pub n: u32,
    #[arg(long)]
    pub d: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct DimArgs {
    #[arg(long)]
    pub d: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct CurveArgs {
    #[arg(long)]
    pub d: u32,
    /// Densities, comma separated (default: 0.25, 0.5, ..., 10).
    #[arg(long, value_delimiter = ',')]
    pub c: Vec<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct GrowArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub seed: u64,
    /// Instead of one trace, check the co-shadow lower bound on this many random prefixes.
    #[arg(long)]
    pub trials: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct SampleLmArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: u32,
    /// Face probability (exactly one of `--p`, `--m`, `--c`; `--c` means p = c/n).
    #[arg(long, group = "density")]
    pub p: Option<f64>,
    /// Face count.
    #[arg(long, group = "density")]
    pub m: Option<u64>,
    #[arg(long, group = "density")]
    pub c: Option<f64>,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct OneOutArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: u32,
    /// Each ridge makes no selection with this probability.
    #[arg(long, default_value_t = 0.0)]
    pub eps: f64,
    #[arg(long)]
    pub seed: u64,
    /// Instead of one sample, report top Betti numbers and simplex-boundary counts over
    /// this many samples.
    #[arg(long)]
    pub trials: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct ChainArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub steps: u64,
    /// Record the state every this many steps.
    #[arg(long, default_value_t = 20)]
    pub thin: u64,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct SeededNdArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct TrialsArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct CurveExperimentArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: u32,
    /// Densities c, with p = c/n, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub c: Vec<f64>,
    #[arg(long)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct CensusArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: u32,
    /// Facet generations around each root, at most 2.
    #[arg(long, default_value_t = 1)]
    pub depth: u32,
    #[arg(long)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct PopulationArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long, default_value_t = 100_000)]
    pub pool: usize,
    /// Sweeps over the pools.
    #[arg(long, default_value_t = 200)]
    pub steps: u32,
    /// Initial value of every pool entry.
    #[arg(long, default_value_t = 1.0)]
    pub init: f64,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a complex is a hypertree.
    Certify(InputArgs),
    /// Rank of the top boundary matrix over the rationals.
    Rank(RankArgs),
    /// Invariant factors and torsion of the top boundary matrix.
    Snf(InputArgs),
    /// Co-shadow of an acyclic complex.
    Coshadow(InputArgs),
    /// Greedy peeling of exposed faces.
    Collapse(CollapseArgs),
    /// Count all hypertrees by exhaustive search.
    Enumerate(NdArgs),
    /// Torsion-weighted hypertree count against n^C(n-2, d).
    KalaiSum(NdArgs),
    /// Cone construction of a hypertree.
    Cone(ConeArgs),
    /// Lower and upper bounds on the number of hypertrees.
    Bounds(BoundsArgs),
    /// Threshold root, critical density and entropy constant.
    Constants(DimArgs),
    /// Entropy constant by two integral forms.
    Alpha(DimArgs),
    /// Limiting co-shadow density and normalized rank as functions of c.
    Curve(CurveArgs),
    /// Grow a random hypertree by adding uniform co-shadow faces.
    Grow(GrowArgs),
    /// Sample Y(n, p) or Y(n, m).
    SampleLm(SampleLmArgs),
    /// Sample the 1-out model.
    #[command(name = "sample-1out")]
    Sample1out(OneOutArgs),
    /// Base-exchange random walk against the uniform law.
    Chain(ChainArgs),
    /// Random greedy collapsible complex.
    GreedyCollapsible(SeededNdArgs),
    /// Probability that a uniform hypertree-sized face set is a hypertree.
    HypertreeProb(TrialsArgs),
    /// Empirical rank and co-shadow density of Y(n, c/n).
    CurveExperiment(CurveExperimentArgs),
    /// Rooted neighbourhood types in 1-out samples against the limiting tree.
    Census(CensusArgs),
    /// Population dynamics for the spectral atom of the limiting tree.
    Population(PopulationArgs),
    /// Simplex boundaries and top Betti number of a complex.
    BoundaryCount(InputArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Certify(_) => "certify",
            Command::Rank(_) => "rank",
            Command::Snf(_) => "snf",
            Command::Coshadow(_) => "coshadow",
            Command::Collapse(_) => "collapse",
            Command::Enumerate(_) => "enumerate",
            Command::KalaiSum(_) => "kalai-sum",
            Command::Cone(_) => "cone",
            Command::Bounds(_) => "bounds",
            Command::Constants(_) => "constants",
            Command::Alpha(_) => "alpha",
            Command::Curve(_) => "curve",
            Command::Grow(_) => "grow",
            Command::SampleLm(_) => "sample-lm",
            Command::Sample1out(_) => "sample-1out",
            Command::Chain(_) => "chain",
            Command::GreedyCollapsible(_) => "greedy-collapsible",
            Command::HypertreeProb(_) => "hypertree-prob",
            Command::CurveExperiment(_) => "curve-experiment",
            Command::Census(_) => "census",
            Command::Population(_) => "population",
            Command::BoundaryCount(_) => "boundary-count",
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Invariant(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let name = cli.command.name();
    let start = Instant::now();
    let report = match commands::run(cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let bytes = match report.render(name, cli.format) {
        Ok(b) => b,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &bytes),
        None => std::io::Write::write_all(&mut std::io::stdout(), &bytes),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    let manifest = RunManifest {
        subcommand: name,
        argv: argv[1..].to_vec(),
        params: &report.params,
        seed: report.seed,
        version: VERSION,
        format: cli.format,
        duration_seconds: start.elapsed().as_secs_f64(),
    };
    if let Err(e) = manifest.emit(cli.out.as_deref()) {
        eprintln!("error: cannot write manifest: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
