//! Pseudo-weights of nonnegative vectors and their minima over P(H).
//!
//! Every measure has an exact rational version (suffix `_exact`) and a
//! floating-point version for random property checks and sweeps. All of
//! them are 0 on the zero vector.

use crate::code_model::ParityCheckMatrix;
use crate::fundamental_polytope::{build_cone, build_polytope};
use crate::rational_geometry::{rat_serde, ratvec_serde, to_f64, Rat, RatVec};
use crate::{Error, Limits, Result};
use num_traits::{Signed, Zero};
use serde::Serialize;

fn check_nonneg_exact(w: &[Rat]) -> Result<()> {
    match w.iter().position(Signed::is_negative) {
        Some(i) => Err(Error::InvalidArgument(format!("entry {} is negative", i + 1))),
        None => Ok(()),
    }
}

fn check_nonneg(w: &[f64]) -> Result<()> {
    match w.iter().position(|x| !(*x >= 0.0) || !x.is_finite()) {
        Some(i) => Err(Error::InvalidArgument(format!("entry {} is negative or not finite", i + 1))),
        None => Ok(()),
    }
}

/// ||w||_1^2 / ||w||_2^2.
pub fn wp_awgnc_exact(w: &[Rat]) -> Result<Rat> {
    check_nonneg_exact(w)?;
    let l1: Rat = w.iter().sum();
    let l2: Rat = w.iter().map(|x| x * x).sum();
    Ok(if l2.is_zero() { Rat::zero() } else { &l1 * &l1 / l2 })
}

pub fn wp_awgnc(w: &[f64]) -> Result<f64> {
    check_nonneg(w)?;
    let l1: f64 = w.iter().sum();
    let l2: f64 = w.iter().map(|x| x * x).sum();
    Ok(if l2 == 0.0 { 0.0 } else { l1 * l1 / l2 })
}

/// Twice the point e where the cumulative profile of the sorted entries
/// reaches half of its total.
///
/// With w' sorted in non-increasing order and F(k) = w'_1 + ... + w'_k, the
/// profile is linear on [k, k+1], so e = k + (F(n)/2 - F(k)) / w'_{k+1} for
/// the last k with F(k) <= F(n)/2.
pub fn wp_bsc_exact(w: &[Rat]) -> Result<Rat> {
    check_nonneg_exact(w)?;
    let mut s = w.to_vec();
    s.sort_by(|a, b| b.cmp(a));
    let half: Rat = s.iter().sum::<Rat>() / Rat::from_integer(2.into());
    if half.is_zero() {
        return Ok(Rat::zero());
    }
    let mut f = Rat::zero();
    for (k, x) in s.iter().enumerate() {
        if &f + x > half {
            let e = Rat::from_integer(k.into()) + (&half - &f) / x;
            return Ok(e * Rat::from_integer(2.into()));
        }
        f += x;
    }
    // F(k) == half with all later entries zero can only happen for k = n
    // when half = 0, handled above; the last positive entry always crosses.
    Err(Error::Internal("profile never crossed its midpoint".into()))
}

pub fn wp_bsc(w: &[f64]) -> Result<f64> {
    check_nonneg(w)?;
    let mut s = w.to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    let half = s.iter().sum::<f64>() / 2.0;
    if half == 0.0 {
        return Ok(0.0);
    }
    let mut f = 0.0;
    for (k, &x) in s.iter().enumerate() {
        if f + x > half || k + 1 == s.len() {
            return Ok(2.0 * (k as f64 + (half - f) / x));
        }
        f += x;
    }
    unreachable!()
}

/// Size of the support.
pub fn wp_bec_exact(w: &[Rat]) -> Result<usize> {
    check_nonneg_exact(w)?;
    Ok(w.iter().filter(|x| !x.is_zero()).count())
}

pub fn wp_bec(w: &[f64]) -> Result<usize> {
    check_nonneg(w)?;
    Ok(w.iter().filter(|x| **x != 0.0).count())
}

/// ||w||_1.
pub fn w_frac_exact(w: &[Rat]) -> Result<Rat> {
    check_nonneg_exact(w)?;
    Ok(w.iter().sum())
}

pub fn w_frac(w: &[f64]) -> Result<f64> {
    check_nonneg(w)?;
    Ok(w.iter().sum())
}

/// ||w||_1 / ||w||_inf.
pub fn w_maxfrac_exact(w: &[Rat]) -> Result<Rat> {
    check_nonneg_exact(w)?;
    let max = w.iter().max().cloned().unwrap_or_else(Rat::zero);
    Ok(if max.is_zero() { Rat::zero() } else { w.iter().sum::<Rat>() / max })
}

pub fn w_maxfrac(w: &[f64]) -> Result<f64> {
    check_nonneg(w)?;
    let max = w.iter().fold(0.0f64, |m, x| m.max(*x));
    Ok(if max == 0.0 { 0.0 } else { w.iter().sum::<f64>() / max })
}

/// All five measures of one vector, exactly.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightReport {
    #[serde(with = "ratvec_serde")]
    pub omega: RatVec,
    #[serde(with = "rat_serde")]
    pub w_awgnc: Rat,
    #[serde(with = "rat_serde")]
    pub w_bsc: Rat,
    pub w_bec: usize,
    #[serde(with = "rat_serde")]
    pub w_frac: Rat,
    #[serde(with = "rat_serde")]
    pub w_maxfrac: Rat,
}

impl WeightReport {
    pub fn new(omega: &[Rat]) -> Result<Self> {
        Ok(WeightReport {
            omega: omega.to_vec(),
            w_awgnc: wp_awgnc_exact(omega)?,
            w_bsc: wp_bsc_exact(omega)?,
            w_bec: wp_bec_exact(omega)?,
            w_frac: w_frac_exact(omega)?,
            w_maxfrac: w_maxfrac_exact(omega)?,
        })
    }

    /// (awgnc, bsc, bec, frac, maxfrac) as floats.
    pub fn as_f64(&self) -> [f64; 5] {
        [to_f64(&self.w_awgnc), to_f64(&self.w_bsc), self.w_bec as f64, to_f64(&self.w_frac), to_f64(&self.w_maxfrac)]
    }
}

/// One minimum together with the vertex attaining it first in sorted order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Minimum {
    #[serde(with = "rat_serde")]
    pub value: Rat,
    #[serde(with = "ratvec_serde")]
    pub attained_by: RatVec,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimumWeights {
    pub w_awgnc: Minimum,
    pub w_bsc: Minimum,
    pub w_bec: Minimum,
    pub w_frac: Minimum,
    pub w_maxfrac: Minimum,
    /// Number of nonzero vertices the minima range over.
    pub nonzero_vertices: usize,
    /// Whether the scale-invariant minima were confirmed on the cone's extreme rays.
    pub cone_checked: bool,
}

fn minimum_over(reports: &[WeightReport], key: impl Fn(&WeightReport) -> Rat) -> Minimum {
    let best = reports.iter().min_by(|a, b| key(a).cmp(&key(b))).expect("nonempty");
    Minimum { value: key(best), attained_by: best.omega.clone() }
}

/// Minima of all five measures over the nonzero vertices of P(H).
///
/// Returns `None` when P(H) = {0}. The four scale-invariant minima are also
/// recomputed over the extreme rays of K(H); a disagreement is reported as an
/// internal error. If ray enumeration exceeds the limits the cross-check is
/// skipped and `cone_checked` is false.
pub fn minimum_weights(h: &ParityCheckMatrix, limits: &Limits) -> Result<Option<MinimumWeights>> {
    let vertices: Vec<RatVec> =
        build_polytope(h, limits)?.vertices(limits)?.into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
    if vertices.is_empty() {
        return Ok(None);
    }
    let reports = crate::par::map(&vertices, |v| WeightReport::new(v)).into_iter().collect::<Result<Vec<_>>>()?;
    let mins = MinimumWeights {
        w_awgnc: minimum_over(&reports, |r| r.w_awgnc.clone()),
        w_bsc: minimum_over(&reports, |r| r.w_bsc.clone()),
        w_bec: minimum_over(&reports, |r| Rat::from_integer(r.w_bec.into())),
        w_frac: minimum_over(&reports, |r| r.w_frac.clone()),
        w_maxfrac: minimum_over(&reports, |r| r.w_maxfrac.clone()),
        nonzero_vertices: reports.len(),
        cone_checked: false,
    };
    let rays = match build_cone(h, limits)?.extreme_rays(limits) {
        Ok(r) => r,
        Err(Error::LimitExceeded(_)) => return Ok(Some(mins)),
        Err(e) => return Err(e),
    };
    let ray_reports = rays.iter().map(|r| WeightReport::new(r)).collect::<Result<Vec<_>>>()?;
    let agree = !ray_reports.is_empty()
        && minimum_over(&ray_reports, |r| r.w_awgnc.clone()).value == mins.w_awgnc.value
        && minimum_over(&ray_reports, |r| r.w_bsc.clone()).value == mins.w_bsc.value
        && minimum_over(&ray_reports, |r| Rat::from_integer(r.w_bec.into())).value == mins.w_bec.value
        && minimum_over(&ray_reports, |r| r.w_maxfrac.clone()).value == mins.w_maxfrac.value;
    if !agree {
        return Err(Error::Internal("vertex and cone-ray minima disagree".into()));
    }
    Ok(Some(MinimumWeights { cone_checked: true, ..mins }))
}

/// wp_awgnc written as |S| * (mean over S)^2 / (second moment over S), S the support.
pub fn wp_awgnc_moment_form(w: &[f64]) -> f64 {
    let s: Vec<f64> = w.iter().copied().filter(|x| *x != 0.0).collect();
    if s.is_empty() {
        return 0.0;
    }
    let k = s.len() as f64;
    let m1 = s.iter().sum::<f64>() / k;
    let m2 = s.iter().map(|x| x * x).sum::<f64>() / k;
    k * m1 * m1 / m2
}

/// n * cos^2 of the angle between w and the all-ones vector.
pub fn wp_awgnc_angle_form(w: &[f64]) -> f64 {
    let dot: f64 = w.iter().sum();
    let nw: f64 = w.iter().map(|x| x * x).sum();
    if nw == 0.0 {
        return 0.0;
    }
    let n = w.len() as f64;
    n * dot * dot / (nw * n)
}

/// Partial derivative of wp_awgnc in coordinate i.
pub fn wp_awgnc_gradient(w: &[f64], i: usize) -> f64 {
    let l1: f64 = w.iter().sum();
    let l2: f64 = w.iter().map(|x| x * x).sum();
    2.0 * l1 / l2 - 2.0 * l1 * l1 * w[i] / (l2 * l2)
}
