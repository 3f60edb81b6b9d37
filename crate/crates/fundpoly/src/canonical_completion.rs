//! Canonical completion: a cone point built from breadth-first tiers around
//! one root bit, and the resulting sub-linear bound on the minimum AWGNC
//! pseudo-weight of regular codes.

use crate::code_model::{ParityCheckMatrix, TannerGraph};
use crate::fundamental_polytope::{PseudoCodeword, PseudoKind};
use crate::pseudoweights::wp_awgnc_exact;
use crate::rational_geometry::{rat_serde, ratvec_serde, to_f64, Rat, RatVec};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

/// Graph distances from a root variable node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TierDecomposition {
    /// Root node id (a variable node).
    pub root: usize,
    /// Tier of every node by id (variables first, then checks); `None` if unreachable.
    pub tier: Vec<Option<usize>>,
    /// counts[t] = number of nodes at distance t.
    pub counts: Vec<usize>,
    /// Variable nodes in other components.
    pub unreachable_variables: Vec<usize>,
}

impl TierDecomposition {
    pub fn depth(&self) -> usize {
        self.counts.len() - 1
    }

    /// Variable nodes at tier 2t, in index order.
    pub fn variables_at(&self, t: usize, n: usize) -> Vec<usize> {
        (0..n).filter(|&i| self.tier[i] == Some(2 * t)).collect()
    }

    /// N_{V,2t} for t = 0, 1, ...
    pub fn variable_profile(&self) -> Vec<usize> {
        self.counts.iter().step_by(2).copied().collect()
    }
}

pub fn bfs_tiers(graph: &TannerGraph, root: usize) -> Result<TierDecomposition> {
    if root >= graph.num_nodes() {
        return Err(Error::IndexOutOfRange(format!("node {root}")));
    }
    if !graph.is_variable(root) {
        return Err(Error::Precondition(format!("root {root} is a check node")));
    }
    let tier = graph.distances(root);
    let depth = tier.iter().flatten().max().copied().unwrap_or(0);
    let mut counts = vec![0; depth + 1];
    for t in tier.iter().flatten() {
        counts[*t] += 1;
    }
    let unreachable_variables = (0..graph.num_variables()).filter(|&i| tier[i].is_none()).collect();
    Ok(TierDecomposition { root, tier, counts, unreachable_variables })
}

fn row_weight(h: &ParityCheckMatrix) -> Result<usize> {
    match h.uniform_row_weight() {
        Some(w) if w >= 2 => Ok(w),
        _ => Err(Error::Precondition("canonical completion needs a uniform row weight of at least 2".into())),
    }
}

/// omega_i = 1/(w_row - 1)^t for bit i at tier 2t; zero outside the root's component.
pub fn canonical_completion(h: &ParityCheckMatrix, root: usize) -> Result<PseudoCodeword> {
    let w_row = row_weight(h)?;
    if root >= h.n() {
        return Err(Error::IndexOutOfRange(format!("bit {}", root + 1)));
    }
    let tiers = bfs_tiers(&h.tanner_graph(), root)?;
    let base = Rat::from_integer(BigInt::from(w_row - 1));
    let coords = (0..h.n())
        .map(|i| match tiers.tier[i] {
            Some(d) => Pow::pow(&base, d / 2).recip(),
            None => Rat::zero(),
        })
        .collect();
    Ok(PseudoCodeword { coords, kind: PseudoKind::Ray })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompletionWeight {
    pub root: usize,
    #[serde(with = "ratvec_serde")]
    pub omega: RatVec,
    #[serde(with = "rat_serde")]
    pub w_awgnc: Rat,
    #[serde(with = "rat_serde")]
    pub l1: Rat,
    #[serde(with = "rat_serde")]
    pub l2_squared: Rat,
    /// sum_t N_{V,2t} / (w_row-1)^t
    #[serde(with = "rat_serde")]
    pub l1_from_tiers: Rat,
    /// sum_t N_{V,2t} / (w_row-1)^(2t)
    #[serde(with = "rat_serde")]
    pub l2_squared_from_tiers: Rat,
    /// N_{V,2t} for t = 0, 1, ...
    pub tier_profile: Vec<usize>,
}

impl CompletionWeight {
    pub fn w_awgnc_f64(&self) -> f64 {
        to_f64(&self.w_awgnc)
    }
}

pub fn completion_weight(h: &ParityCheckMatrix, root: usize) -> Result<CompletionWeight> {
    let omega = canonical_completion(h, root)?.coords;
    let w_row = row_weight(h)?;
    let tier_profile = bfs_tiers(&h.tanner_graph(), root)?.variable_profile();
    let base = Rat::from_integer(BigInt::from(w_row - 1));
    let (mut l1_t, mut l2_t) = (Rat::zero(), Rat::zero());
    let mut scale = Rat::one();
    for &count in &tier_profile {
        let c = Rat::from_integer(BigInt::from(count));
        l1_t += &c / &scale;
        l2_t += &c / (&scale * &scale);
        scale *= &base;
    }
    Ok(CompletionWeight {
        root,
        w_awgnc: wp_awgnc_exact(&omega)?,
        l1: omega.iter().sum(),
        l2_squared: omega.iter().map(|x| x * x).sum(),
        omega,
        l1_from_tiers: l1_t,
        l2_squared_from_tiers: l2_t,
        tier_profile,
    })
}

/// completion_weight for every root.
pub fn all_roots(h: &ParityCheckMatrix) -> Result<Vec<CompletionWeight>> {
    row_weight(h)?;
    let roots: Vec<usize> = (0..h.n()).collect();
    crate::par::map(&roots, |&r| completion_weight(h, r)).into_iter().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UpperBound {
    pub beta_prime: f64,
    pub beta: f64,
    pub value: f64,
}

/// beta' * n^beta with beta' = (w_col (w_col-1)/(w_col-2))^2 and
/// beta = ln((w_col-1)^2) / ln((w_col-1)(w_row-1)); needs 3 <= w_col < w_row.
pub fn upper_bound(w_col: usize, w_row: usize, n: usize) -> Result<UpperBound> {
    if !(3 <= w_col && w_col < w_row) {
        return Err(Error::Precondition(format!("need 3 <= w_col < w_row, got ({w_col}, {w_row})")));
    }
    let (c, r) = (w_col as f64, w_row as f64);
    let beta_prime = (c * (c - 1.0) / (c - 2.0)).powi(2);
    let beta = ((c - 1.0) * (c - 1.0)).ln() / ((c - 1.0) * (r - 1.0)).ln();
    debug_assert!(beta < 1.0);
    Ok(UpperBound { beta_prime, beta, value: beta_prime * (n as f64).powf(beta) })
}
