use clap::{Args, Parser, Subcommand, ValueEnum};
use ctrlgraph::control::{is_controllable, pbh_screen, simple_spectrum, PBH_TOL};
use ctrlgraph::exactlin::RankPolicy;
use ctrlgraph::harness::{enumerate_small, run_experiment, Experiment, ExperimentConfig};
use ctrlgraph::matgen::{sample_gnpq, sample_wigner, AtomDistribution};
use ctrlgraph::{Error, IntSymMatrix, RationalVector, SeedSpec};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_CONFIG: u8 = 2;
const EXIT_RUNTIME: u8 = 3;

#[derive(Parser)]
#[command(name = "ctrlgraph", version, about = "Controllability of random graphs and Wigner matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a matrix and print it.
    Gen(GenArgs),
    /// Decide controllability of (A, b) for a matrix file.
    Check(CheckArgs),
    /// Run a controllability, spectrum or eigenvector sweep.
    Sweep(RunArgs),
    /// Run the eigenvector structure experiment.
    Eig(RunArgs),
    /// Compare empirical concentration with the LCD bound.
    Smallball(RunArgs),
    /// Count controllable labeled graphs on at most five vertices.
    Enumerate(EnumerateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Gnp,
    Gnpq,
    Wigner,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Bitstring,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "gnp")]
    model: Model,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0.0)]
    q: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Config supplying the Wigner atoms `xi` and `zeta`.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Matrix in text form, or a graph bitstring `n:bits`.
    #[arg(long)]
    matrix: PathBuf,
    /// Input vector, one rational per line; defaults to the all-ones vector.
    #[arg(long)]
    vector: Option<PathBuf>,
    /// Use Bareiss elimination throughout instead of the modular fast path.
    #[arg(long)]
    exact: bool,
    /// Also run the floating-point PBH screen.
    #[arg(long)]
    pbh: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Experiment to run when no config is given.
    #[arg(long)]
    experiment: Option<String>,
    /// Dimensions, comma separated.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
    /// CSV destination; overrides the config's output_path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { EXIT_CONFIG } else { EXIT_RUNTIME })
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Check(a) => check(a),
        Command::Sweep(a) => experiment(
            a,
            &[
                Experiment::GodsilSweep,
                Experiment::LoopsSweep,
                Experiment::SimpleSpectrum,
                Experiment::DotProfile,
                Experiment::Symmetrization,
            ],
        ),
        Command::Eig(a) => experiment(a, &[Experiment::EigStructure]),
        Command::Smallball(a) => experiment(a, &[Experiment::SmallballFamily]),
        Command::Enumerate(a) => {
            let c = enumerate_small(a.n).map_err(|e| Error::Config(e.to_string()))?;
            if c.fast_path_mismatches > 0 {
                return Err(Error::Unresolved(format!(
                    "{} graphs where the fast path disagrees with exact rank",
                    c.fast_path_mismatches
                )));
            }
            emit(a.out.as_deref(), &c.to_csv())
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(p, text)?;
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))
}

fn gen(a: GenArgs) -> Result<(), Error> {
    let seed = SeedSpec::new(a.seed);
    let m = match a.model {
        Model::Gnp => sample_gnpq(a.n, a.p, 0.0, &seed),
        Model::Gnpq => sample_gnpq(a.n, a.p, a.q, &seed),
        Model::Wigner => {
            let (xi, zeta) = match &a.config {
                Some(p) => {
                    let v: serde_json::Value = serde_json::from_str(&read(p)?)?;
                    let atom = |k: &str| -> Result<AtomDistribution, Error> {
                        match v.get(k) {
                            Some(x) => Ok(serde_json::from_value(x.clone())?),
                            None => Ok(AtomDistribution::Rademacher),
                        }
                    };
                    (atom("xi")?, atom("zeta")?)
                }
                None => (AtomDistribution::Rademacher, AtomDistribution::Rademacher),
            };
            sample_wigner(a.n, &xi, &zeta, &seed)
        }
    }
    .map_err(|e| Error::Config(e.to_string()))?;
    let text = match a.format {
        Format::Text => m.to_text(),
        Format::Bitstring => format!("{}\n", m.to_bitstring().map_err(|e| Error::Config(e.to_string()))?),
    };
    emit(a.out.as_deref(), &text)
}

fn check(a: CheckArgs) -> Result<(), Error> {
    let text = read(&a.matrix)?;
    let as_config = |e: Error| Error::Config(e.to_string());
    let m = if text.trim().contains(':') {
        IntSymMatrix::from_bitstring(&text)
    } else {
        IntSymMatrix::from_text(&text)
    }
    .map_err(as_config)?;
    let b = match &a.vector {
        Some(p) => RationalVector::parse_lines(&read(p)?).map_err(as_config)?,
        None => RationalVector::ones(m.n()),
    };
    let policy = if a.exact { RankPolicy::Exact } else { RankPolicy::default() };
    let verdict = is_controllable(&m, &b, policy).map_err(|e| match e {
        Error::DimensionMismatch { .. } => Error::Config(e.to_string()),
        other => other,
    })?;
    let mut report = serde_json::json!({
        "n": m.n(),
        "verdict": verdict,
        "simple_spectrum": simple_spectrum(&m),
    });
    if a.pbh {
        report["pbh"] = serde_json::to_value(pbh_screen(&m, &b, PBH_TOL)?)?;
    }
    emit(a.out.as_deref(), &format!("{}\n", serde_json::to_string_pretty(&report)?))
}

fn parse_experiment(s: &str) -> Result<Experiment, Error> {
    serde_json::from_value(serde_json::Value::String(s.into()))
        .map_err(|_| Error::Config(format!("unknown experiment {s:?}")))
}

fn experiment(a: RunArgs, allowed: &[Experiment]) -> Result<(), Error> {
    let mut cfg = match &a.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => {
            let e = match &a.experiment {
                Some(s) => parse_experiment(s)?,
                None => allowed[0],
            };
            let trials = if e == Experiment::SmallballFamily { 100_000 } else { 100 };
            ExperimentConfig::new(e, vec![10, 20, 30], trials, 0)
        }
    };
    if !allowed.contains(&cfg.experiment) {
        return Err(Error::Config(format!(
            "experiment {} is not handled by this subcommand",
            cfg.experiment.id()
        )));
    }
    if let Some(n) = a.n {
        cfg.n_list = n;
    }
    if let Some(t) = a.trials {
        cfg.trials = t;
    }
    if let Some(s) = a.seed {
        cfg.master_seed = s;
    }
    if a.threads.is_some() {
        cfg.threads = a.threads;
    }
    if a.out.is_some() {
        cfg.output_path = a.out;
    }
    cfg.validate()?;
    let out = run_experiment(&cfg)?;
    eprintln!("{}", serde_json::to_string_pretty(&out.summary_json())?);
    emit(cfg.output_path.as_deref(), &out.to_csv())
}
