//! `fundpoly`: analyze parity-check matrices, sweep decision regions, decode,
//! realize graph covers and tabulate canonical-completion bounds.

mod analyze;
mod bounds;
mod cover;
mod decode;
mod output;
mod sweep;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fundpoly::code_model::ParityCheckMatrix;
use fundpoly::decoders::MpOptions;
use fundpoly::regions::DecoderSpec;
use fundpoly::{catalog, Limits};
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "fundpoly", version, about = "Fundamental polytopes, pseudo-codewords and decoders for binary LDPC codes")]
struct Cli {
    /// Parity-check matrix: an alist or dense 0/1 file, or a built-in name
    /// (trivial3, code_4_2, dumbbell, two_check, hamming7).
    #[arg(long, global = true)]
    code: Option<String>,
    /// JSON file overriding enumeration limits (keys as in the library's Limits).
    #[arg(long, global = true)]
    limits: Option<PathBuf>,
    /// Output directory, created if missing.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Seed for channel noise and random plane offsets.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertices, extreme rays, pseudo-weights and graph statistics.
    Analyze(analyze::Args),
    /// Decision regions on a two-dimensional slice of LLR space (PGM + CSV).
    Sweep(sweep::Args),
    /// Decode one LLR vector or a Monte-Carlo batch over a channel.
    Decode(decode::Args),
    /// Realize a rational point of the fundamental polytope as a cover codeword.
    Cover(cover::Args),
    /// Canonical-completion weights per root and the sub-linear upper bound.
    Bounds(bounds::Args),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DecoderKind {
    Mld,
    Lpd,
    Spa,
    Msa,
}

/// Decoder selection shared by `sweep` and `decode`.
#[derive(clap::Args, Debug, Clone)]
pub struct DecoderArgs {
    #[arg(long, value_enum, default_value = "spa")]
    decoder: DecoderKind,
    /// Message-passing iterations.
    #[arg(long, default_value_t = 60)]
    max_iter: usize,
    /// Damping weight of the fresh variable message (1 = undamped).
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Consecutive identical codeword decisions required for convergence.
    #[arg(long, default_value_t = 5)]
    window: usize,
}

impl DecoderArgs {
    pub fn spec(&self) -> DecoderSpec {
        let opts = MpOptions { max_iter: self.max_iter, alpha: self.alpha, window: self.window, ..MpOptions::default() };
        match self.decoder {
            DecoderKind::Mld => DecoderSpec::Mld,
            DecoderKind::Lpd => DecoderSpec::Lpd,
            DecoderKind::Spa => DecoderSpec::Spa(opts),
            DecoderKind::Msa => DecoderSpec::Msa(opts),
        }
    }
}

/// Everything a subcommand needs besides its own arguments.
pub struct Env {
    pub h: ParityCheckMatrix,
    pub code_name: String,
    pub limits: Limits,
    pub out: PathBuf,
    pub seed: u64,
}

fn load_code(spec: &str) -> Result<ParityCheckMatrix> {
    let path = Path::new(spec);
    if path.exists() {
        return ParityCheckMatrix::load(path).with_context(|| format!("reading {}", path.display()));
    }
    match catalog::by_name(spec) {
        Some(h) => Ok(h),
        None => bail!("--code {spec:?} is neither a file nor one of {}", catalog::NAMES.join(", ")),
    }
}

fn load_limits(path: Option<&Path>) -> Result<Limits> {
    match path {
        None => Ok(Limits::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing limits in {}", p.display()))
        }
    }
}

/// Adds a pointer to `--limits` when the library refused for size reasons.
pub fn explain(e: fundpoly::Error) -> anyhow::Error {
    match e {
        fundpoly::Error::LimitExceeded(msg) => anyhow::anyhow!(
            "size limit exceeded: {msg}\nhint: pass --limits <file.json> with larger values, e.g. {{\"max_vertex_n\": 24, \"max_dd_rays\": 1000000}}"
        ),
        other => other.into(),
    }
}

fn run(cli: Cli) -> Result<()> {
    if let Some(k) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global().context("configuring the thread pool")?;
    }
    let Some(code) = cli.code.as_deref() else { bail!("--code is required") };
    let env = Env {
        h: load_code(code)?,
        code_name: code.to_string(),
        limits: load_limits(cli.limits.as_deref())?,
        out: cli.out,
        seed: cli.seed,
    };
    std::fs::create_dir_all(&env.out).with_context(|| format!("creating {}", env.out.display()))?;
    match cli.command {
        Command::Analyze(a) => analyze::run(&env, a),
        Command::Sweep(a) => sweep::run(&env, a),
        Command::Decode(a) => decode::run(&env, a),
        Command::Cover(a) => cover::run(&env, a),
        Command::Bounds(a) => bounds::run(&env, a),
    }
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
