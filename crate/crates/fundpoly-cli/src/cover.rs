use crate::sweep::read_vector;
use crate::{explain, output, Env};
use anyhow::{bail, Context, Result};
use fundpoly::graph_covers::{format_decomposition, realize_cover, scaled_pseudocodeword, CoverFile, MCover};
use fundpoly::rational_geometry::{fmt_vec, parse_vec, RatVec};
use std::path::Path;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Point of the fundamental polytope, e.g. "2/3,2/3,2/3,0", or @file to read it from a file.
    #[arg(long)]
    nu: String,
    #[arg(long, default_value = "cover.json")]
    name: String,
}

fn read_nu(s: &str) -> Result<RatVec> {
    match s.strip_prefix('@') {
        Some(file) => read_vector(Path::new(file)),
        None => parse_vec(s).with_context(|| format!("parsing --nu {s:?}")),
    }
}

pub fn run(env: &Env, args: Args) -> Result<()> {
    let nu = read_nu(&args.nu)?;
    if nu.len() != env.h.n() {
        bail!("--nu has {} entries but n = {}", nu.len(), env.h.n());
    }
    let real = realize_cover(&env.h, &nu, &env.limits).map_err(|e| match e {
        fundpoly::Error::OutsidePolytope => anyhow::anyhow!("--nu is not in the fundamental polytope of this code"),
        other => explain(other),
    })?;
    let mut file: CoverFile = real.cover.to_file();
    file.codeword = Some(real.codeword.bits().to_vec());
    file.nu = Some(fmt_vec(&nu));

    // Read the file back and check that it really encodes nu.
    let path = output::json(&env.out, &args.name, &file)?;
    let reread: CoverFile = serde_json::from_str(&std::fs::read_to_string(&path)?)?;
    let cover = MCover::from_file(&env.h, &reread)?;
    let bits = reread.codeword.clone().unwrap_or_default();
    let word = fundpoly::graph_covers::CoverCodeword::new(&cover, bits)?;
    if scaled_pseudocodeword(&word).coords != nu {
        bail!("internal error: the written cover does not reproduce nu");
    }

    println!("M = {}", real.degree());
    for (j, d) in real.decompositions.iter().enumerate() {
        println!("check {}: {}", j + 1, format_decomposition(d));
    }
    Ok(())
}
