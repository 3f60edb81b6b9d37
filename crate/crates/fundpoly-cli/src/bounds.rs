use crate::{explain, output, Env};
use anyhow::Result;
use fundpoly::canonical_completion::{all_roots, upper_bound, UpperBound};
use fundpoly::rational_geometry::{fmt_rat, to_f64};
use serde::Serialize;
use std::fmt::Write;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Base name of the .csv and .json outputs.
    #[arg(long, default_value = "bounds")]
    name: String,
}

#[derive(Serialize)]
struct Bounds<'a> {
    code: &'a str,
    n: usize,
    w_col: Option<usize>,
    w_row: Option<usize>,
    /// Smallest AWGNC pseudo-weight over all roots, exact and as a float.
    min_w_awgnc: String,
    min_w_awgnc_f64: f64,
    argmin_root: usize,
    upper_bound: Option<UpperBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

pub fn run(env: &Env, args: Args) -> Result<()> {
    let h = &env.h;
    let weights = all_roots(h).map_err(explain)?;
    let mut csv = String::from("root,w_awgnc,w_awgnc_f64,l1,l2_squared,tier_profile\n");
    for w in &weights {
        let tiers = w.tier_profile.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ");
        writeln!(
            csv,
            "{},{},{},{},{},{}",
            w.root + 1,
            fmt_rat(&w.w_awgnc),
            w.w_awgnc_f64(),
            fmt_rat(&w.l1),
            fmt_rat(&w.l2_squared),
            tiers
        )?;
    }
    let best = weights.iter().min_by(|a, b| a.w_awgnc.cmp(&b.w_awgnc)).expect("a code has at least one bit");
    let (w_col, w_row) = (h.uniform_col_weight(), h.uniform_row_weight());
    let (bound, note) = match (w_col, w_row) {
        (Some(c), Some(r)) => match upper_bound(c, r, h.n()) {
            Ok(b) => (Some(b), None),
            Err(e) => (None, Some(e.to_string())),
        },
        _ => (None, Some("the bound needs uniform column and row weights".to_string())),
    };
    let out = Bounds {
        code: &env.code_name,
        n: h.n(),
        w_col,
        w_row,
        min_w_awgnc: fmt_rat(&best.w_awgnc),
        min_w_awgnc_f64: to_f64(&best.w_awgnc),
        argmin_root: best.root + 1,
        upper_bound: bound,
        note,
    };
    match &out.upper_bound {
        Some(b) => println!(
            "min w_AWGNC = {} ({:.4}) at root {}; bound {:.4} * n^{:.4} = {:.4}",
            out.min_w_awgnc, out.min_w_awgnc_f64, out.argmin_root, b.beta_prime, b.beta, b.value
        ),
        None => println!("min w_AWGNC = {} ({:.4}) at root {}", out.min_w_awgnc, out.min_w_awgnc_f64, out.argmin_root),
    }
    output::text(&env.out, &format!("{}.csv", args.name), &csv)?;
    output::json(&env.out, &format!("{}.json", args.name), &out)?;
    Ok(())
}
