use crate::{explain, output, Env};
use anyhow::Result;
use fundpoly::fundamental_polytope::{build_cone, build_polytope, PseudoCodeword, PseudoKind};
use fundpoly::pseudoweights::{minimum_weights, MinimumWeights, WeightReport};
use fundpoly::rational_geometry::{to_f64, RatVec};
use fundpoly::Error;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Output file name inside --out.
    #[arg(long, default_value = "analysis.json")]
    name: String,
}

#[derive(Serialize)]
struct CodeSummary {
    n: usize,
    m: usize,
    rank: usize,
    rate: f64,
    girth: Option<usize>,
    diameter: Option<usize>,
    uniform_row_weight: Option<usize>,
    uniform_col_weight: Option<usize>,
}

#[derive(Serialize)]
struct VertexEntry {
    #[serde(flatten)]
    weights: WeightReport,
    integral: bool,
    /// Whether the support of the vertex is a stopping set (always true for points of the polytope).
    support_is_stopping_set: bool,
}

#[derive(Serialize)]
struct Analysis {
    code: String,
    summary: CodeSummary,
    vertices: Option<Vec<VertexEntry>>,
    minimal_pseudocodewords: Option<Vec<PseudoCodeword>>,
    ray_weights: Option<Vec<WeightReport>>,
    minima: Option<MinimumWeights>,
    notes: Vec<String>,
}

/// Runs `f`, turning a size-limit refusal into a note instead of an error.
fn optional<T>(notes: &mut Vec<String>, what: &str, f: impl FnOnce() -> fundpoly::Result<T>) -> Result<Option<T>> {
    match f() {
        Ok(v) => Ok(Some(v)),
        Err(Error::LimitExceeded(msg)) => {
            let note = format!("{what} skipped: {msg} (raise the limits with --limits)");
            eprintln!("warning: {note}");
            notes.push(note);
            Ok(None)
        }
        Err(e) => Err(explain(e)),
    }
}

fn vertex_entry(h: &fundpoly::code_model::ParityCheckMatrix, v: &RatVec) -> fundpoly::Result<VertexEntry> {
    let support: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    Ok(VertexEntry {
        weights: WeightReport::new(v)?,
        integral: v.iter().all(|x| x.is_zero() || x.is_one()),
        support_is_stopping_set: h.is_stopping_set(&support)?,
    })
}

pub fn run(env: &Env, args: Args) -> Result<()> {
    let h = &env.h;
    let l = &env.limits;
    let g = h.tanner_graph();
    let summary = CodeSummary {
        n: h.n(),
        m: h.m(),
        rank: h.rank(),
        rate: h.rate(),
        girth: g.girth(),
        diameter: g.diameter(),
        uniform_row_weight: h.uniform_row_weight(),
        uniform_col_weight: h.uniform_col_weight(),
    };
    let mut notes = Vec::new();
    let vertices: Option<Vec<VertexEntry>> = optional(&mut notes, "vertex enumeration", || {
        build_polytope(h, l)?.vertices(l)?.iter().map(|v| vertex_entry(h, v)).collect()
    })?;
    let rays = optional(&mut notes, "extreme-ray enumeration", || build_cone(h, l)?.extreme_rays(l))?;
    let ray_weights = match &rays {
        Some(r) => Some(r.iter().map(|w| WeightReport::new(w)).collect::<fundpoly::Result<Vec<_>>>()?),
        None => None,
    };
    let minima = if vertices.is_some() { optional(&mut notes, "minimum weights", || minimum_weights(h, l))?.flatten() } else { None };
    if let Some(m) = &minima {
        if !m.cone_checked {
            notes.push("minima not cross-checked on the cone rays".into());
        }
    }

    println!("code {}: n={} m={} rank={} girth={:?}", env.code_name, summary.n, summary.m, summary.rank, summary.girth);
    if let Some(v) = &vertices {
        let fractional = v.iter().filter(|e| !e.integral).count();
        println!("{} vertices ({fractional} fractional)", v.len());
    }
    if let Some(r) = &rays {
        println!("{} extreme rays", r.len());
    }
    if let Some(m) = &minima {
        println!(
            "minimum pseudo-weights: awgnc {:.4}  bsc {:.4}  bec {}  frac {:.4}  maxfrac {:.4}",
            to_f64(&m.w_awgnc.value),
            to_f64(&m.w_bsc.value),
            m.w_bec.value,
            to_f64(&m.w_frac.value),
            to_f64(&m.w_maxfrac.value)
        );
    }
    let analysis = Analysis {
        code: env.code_name.clone(),
        summary,
        vertices,
        minimal_pseudocodewords: rays.map(|r| r.into_iter().map(|coords| PseudoCodeword { coords, kind: PseudoKind::Ray }).collect()),
        ray_weights,
        minima,
        notes,
    };
    output::json(&env.out, &args.name, &analysis)?;
    Ok(())
}
