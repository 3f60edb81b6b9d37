use crate::{explain, output, DecoderArgs, Env};
use anyhow::{bail, Context, Result};
use fundpoly::rational_geometry::{fmt_vec, parse_rat, RatVec};
use fundpoly::regions::{sweep, DecoderSpec, Grid, Plane};
use serde::Serialize;
use std::path::Path;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// `axes:A,B` spans the LLR axes of bits A and B (1-based);
    /// `boundary:<file>` aligns the first axis with a pseudo-codeword read from <file>.
    #[arg(long)]
    plane: String,
    /// Fixed LLR for an axis plane, as BIT=VALUE (1-based, repeatable). Other bits are 0.
    #[arg(long = "fix", value_name = "BIT=VALUE", allow_hyphen_values = true)]
    fixed: Vec<String>,
    /// Distance of a boundary plane from the origin along a random direction drawn from --seed.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    offset: f64,
    #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
    min: f64,
    #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
    max: f64,
    /// Grid points per axis.
    #[arg(long, default_value_t = 201)]
    res: usize,
    #[command(flatten)]
    decoder: DecoderArgs,
    /// Base name of the .pgm, .csv and .json outputs.
    #[arg(long, default_value = "sweep")]
    name: String,
}

/// A pseudo-codeword file: a JSON array of numbers or "p/q" strings, or plain
/// text with entries separated by commas or whitespace.
pub fn read_vector(path: &Path) -> Result<RatVec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let entries: Vec<String> = match serde_json::from_str::<Vec<serde_json::Value>>(&text) {
        Ok(values) => values
            .into_iter()
            .map(|v| match v {
                serde_json::Value::String(s) => s,
                other => other.to_string(),
            })
            .collect(),
        Err(_) => text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(String::from).collect(),
    };
    entries.iter().map(|s| parse_rat(s).map_err(anyhow::Error::from)).collect()
}

fn parse_fix(s: &str, n: usize) -> Result<(usize, f64)> {
    let (bit, value) = s.split_once('=').with_context(|| format!("--fix expects BIT=VALUE, got {s:?}"))?;
    let bit: usize = bit.trim().parse().with_context(|| format!("bad bit in {s:?}"))?;
    if bit == 0 || bit > n {
        bail!("--fix bit {bit} is outside 1..={n}");
    }
    Ok((bit - 1, value.trim().parse().with_context(|| format!("bad value in {s:?}"))?))
}

fn build_plane(env: &Env, args: &Args) -> Result<(Plane, Option<RatVec>)> {
    let n = env.h.n();
    if let Some(axes) = args.plane.strip_prefix("axes:") {
        let (a, b) = axes.split_once(',').with_context(|| format!("expected axes:A,B, got {:?}", args.plane))?;
        let a: usize = a.trim().parse().context("bad first axis")?;
        let b: usize = b.trim().parse().context("bad second axis")?;
        if a == 0 || b == 0 || a > n || b > n {
            bail!("plane axes must lie in 1..={n}");
        }
        let fixed = args.fixed.iter().map(|s| parse_fix(s, n)).collect::<Result<Vec<_>>>()?;
        if fixed.iter().any(|&(i, _)| i == a - 1 || i == b - 1) {
            bail!("--fix may not pin a plane axis");
        }
        return Ok((Plane::axes(n, a - 1, b - 1, &fixed)?, None));
    }
    if let Some(file) = args.plane.strip_prefix("boundary:") {
        let omega = read_vector(Path::new(file))?;
        if omega.len() != n {
            bail!("{file} has {} entries but the code has n = {n}", omega.len());
        }
        let seed = (args.offset != 0.0).then_some(env.seed);
        return Ok((Plane::boundary(&omega, seed, args.offset)?, Some(omega)));
    }
    bail!("unknown plane {:?}; use axes:A,B or boundary:<file>", args.plane)
}

#[derive(Serialize)]
struct Summary<'a> {
    code: &'a str,
    plane: &'a Plane,
    #[serde(skip_serializing_if = "Option::is_none")]
    pseudocodeword: Option<Vec<String>>,
    grid: Grid,
    decoder: DecoderSpec,
    seed: u64,
    pixels: usize,
    converged: usize,
    ties: usize,
    decisions: &'a [fundpoly::decoders::Decision],
    pixels_per_decision: Vec<usize>,
}

pub fn run(env: &Env, args: Args) -> Result<()> {
    let (plane, omega) = build_plane(env, &args)?;
    if args.res < 2 {
        bail!("--res must be at least 2");
    }
    let grid = Grid::new(args.min, args.max, args.res)?;
    let spec = args.decoder.spec();
    let result = sweep(&env.h, &plane, grid, spec, &env.limits).map_err(explain)?;
    let mut per_decision = vec![0; result.decisions.len()];
    for p in &result.pixels {
        per_decision[p.decision] += 1;
    }
    let summary = Summary {
        code: &env.code_name,
        plane: &plane,
        pseudocodeword: omega.as_deref().map(fmt_vec),
        grid,
        decoder: spec,
        seed: env.seed,
        pixels: result.pixels.len(),
        converged: result.pixels.iter().filter(|p| p.converged).count(),
        ties: result.pixels.iter().filter(|p| p.tie).count(),
        decisions: &result.decisions,
        pixels_per_decision: per_decision,
    };
    println!(
        "{} pixels, {} converged, {} distinct decisions",
        summary.pixels,
        summary.converged,
        result.decisions.len()
    );
    output::bytes(&env.out, &format!("{}.pgm", args.name), &result.to_pgm())?;
    output::text(&env.out, &format!("{}.csv", args.name), &result.to_csv())?;
    output::json(&env.out, &format!("{}.json", args.name), &summary)?;
    Ok(())
}
