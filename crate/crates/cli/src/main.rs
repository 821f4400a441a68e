//! `ratsemi`: experiments on semigroups of polynomials and rational maps.
//!
//! Exit status: 0 definite result, 1 inconclusive, 2 usage or parse error,
//! 3 resource cap, numerical or I/O failure.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{split_list, ExperimentConfig};
use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "ratsemi", version, about = "Growth, relations, ping-pong certificates and invariant measures for map semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Exceptional type of `--map` (linear, power, Chebyshev or none).
    Classify,
    /// Deck group order and primitivity of `--map`.
    Deck,
    /// Right factors `T` with `--map = G ∘ T`.
    Decompose,
    /// Distinct maps per word length over `--gens` up to `--depth` (CSV).
    Growth,
    /// Relations among words over `--gens` up to `--depth`.
    Relations,
    /// Levin relations between `--map1` and `--map2`, exponents up to `--max`.
    Levin,
    /// `R^n ∘ Q^m` commuting with `R^k` for `--map1`, `--map2`.
    ZieveZhan,
    /// Ping-pong certificate for `--map1`, `--map2` (`--disk` with `--n1`, `--n2`, or `--auto`; `--replay FILE`).
    CertifyFree,
    /// Backward-orbit samples of the maximal-entropy measure of `--map` (CSV).
    Brolin,
    /// Compare sampled measures of `--map1` and `--map2`.
    CompareMeasures,
    /// Cycles of `--map` with period dividing `--k`; with `--map2`, cycles shared up to period `--k`.
    Cycles,
    /// Combined status for `--gens` under `--budget`.
    Verdict,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Deck => "deck",
            Command::Decompose => "decompose",
            Command::Growth => "growth",
            Command::Relations => "relations",
            Command::Levin => "levin",
            Command::ZieveZhan => "zieve-zhan",
            Command::CertifyFree => "certify-free",
            Command::Brolin => "brolin",
            Command::CompareMeasures => "compare-measures",
            Command::Cycles => "cycles",
            Command::Verdict => "verdict",
        }
    }
}

#[derive(Args, Debug, Default)]
struct Opts {
    /// Single map, e.g. "z^2-1".
    #[arg(long, global = true, allow_hyphen_values = true)]
    map: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    map1: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    map2: Option<String>,
    /// Comma-separated generators.
    #[arg(long, global = true, allow_hyphen_values = true)]
    gens: Option<String>,
    #[arg(long, global = true)]
    depth: Option<usize>,
    #[arg(long, global = true)]
    max: Option<u32>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true)]
    burn_in: Option<usize>,
    /// Start point of the backward orbit.
    #[arg(long, global = true, allow_hyphen_values = true)]
    start: Option<String>,
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads (also `RATSEMI_THREADS`).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// quick, default or thorough.
    #[arg(long, global = true)]
    budget: Option<String>,
    /// Let `verdict` search for a ping-pong certificate.
    #[arg(long, global = true)]
    certify: bool,
    /// Disk `re,im,r` or `re,r`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    disk: Option<String>,
    /// Boxes `x0,x1,y0,y1;...` for the first map.
    #[arg(long, global = true, allow_hyphen_values = true)]
    n1: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    n2: Option<String>,
    #[arg(long, global = true)]
    auto: bool,
    /// Certificate file to verify without searching.
    #[arg(long, global = true)]
    replay: Option<PathBuf>,
    #[arg(long, global = true)]
    coeff_bits: Option<u64>,
    #[arg(long, global = true)]
    max_degree: Option<u64>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// TOML file; its keys override flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the effective configuration as TOML and exit.
    #[arg(long, global = true)]
    write_config: Option<PathBuf>,
}

fn effective_config(cmd: Command, o: &Opts) -> Result<ExperimentConfig, CliError> {
    let mut c = ExperimentConfig::default();
    if cmd == Command::Verdict {
        c.apply_budget(o.budget.as_deref().unwrap_or("default"))?;
    }
    c.inputs.map = o.map.clone();
    c.inputs.map1 = o.map1.clone();
    c.inputs.map2 = o.map2.clone();
    if let Some(g) = &o.gens {
        c.inputs.gens = split_list(g);
    }
    macro_rules! set {
        ($($flag:ident => $($path:ident).+),* $(,)?) => {
            $(if let Some(v) = o.$flag.clone() { c.$($path).+ = v; })*
        };
    }
    set!(depth => run.depth, max => run.max, seed => run.seed, samples => run.samples, burn_in => run.burn_in,
        start => run.start, k => run.k, tol => run.tol, coeff_bits => policy.caps.coeff_bits, max_degree => policy.caps.degree);
    if o.depth.is_some() {
        c.certify.depth = o.depth.map(|d| d as u32);
    }
    c.run.threads = o.threads.or(c.run.threads);
    c.run.certify |= o.certify;
    c.certify.disk = o.disk.clone();
    c.certify.n1 = o.n1.clone();
    c.certify.n2 = o.n2.clone();
    c.certify.auto |= o.auto;
    c.certify.replay = o.replay.clone();
    c.output.out = o.out.clone();
    c.output.csv = o.csv.clone();
    if let Some(path) = &o.config {
        c = c.load_over(path)?;
    }
    Ok(c)
}

fn init_threads(cfg: &ExperimentConfig) -> Result<(), CliError> {
    let n = match cfg.run.threads {
        Some(n) => Some(n),
        None => match std::env::var("RATSEMI_THREADS") {
            Ok(v) => Some(v.trim().parse().map_err(|_| CliError::Usage(format!("RATSEMI_THREADS must be a positive integer, got `{v}`")))?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        if n == 0 {
            return Err(CliError::Usage("thread count must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let cfg = effective_config(cli.command, &cli.opts)?;
    if let Some(path) = &cli.opts.write_config {
        std::fs::write(path, cfg.to_toml()?).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        return Ok(0);
    }
    init_threads(&cfg)?;
    commands::dispatch(cli.command, &cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("ratsemi: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
