//! Decision regions of a decoder on a two-dimensional slice of LLR space.

use crate::channels::llrs;
use crate::code_model::ParityCheckMatrix;
use crate::decoders::{CheckRule, Decision, LpDecoder, MessagePassing, MlDecoder, MpOptions};
use crate::rational_geometry::{to_f64, Rat};
use crate::{Error, Limits, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

/// The affine plane origin + a*u + b*v in R^n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Plane {
    pub origin: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

fn unit(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(a: &mut [f64]) -> Result<()> {
    let norm = dot(a, a).sqrt();
    if norm < 1e-12 {
        return Err(Error::InvalidArgument("plane direction vanishes".into()));
    }
    a.iter_mut().for_each(|x| *x /= norm);
    Ok(())
}

impl Plane {
    pub fn new(origin: Vec<f64>, u: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        let n = origin.len();
        if u.len() != n || v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: u.len().max(v.len()) });
        }
        let (uu, vv, uv) = (dot(&u, &u), dot(&v, &v), dot(&u, &v));
        if uu * vv - uv * uv <= 1e-12 * uu.max(vv).max(1.0) {
            return Err(Error::InvalidArgument("plane directions are linearly dependent".into()));
        }
        Ok(Plane { origin, u, v })
    }

    /// Coordinates `a_axis`, `b_axis` vary; every other coordinate is taken from `fixed` (default 0).
    pub fn axes(n: usize, a_axis: usize, b_axis: usize, fixed: &[(usize, f64)]) -> Result<Self> {
        if a_axis >= n || b_axis >= n || fixed.iter().any(|(i, _)| *i >= n) {
            return Err(Error::IndexOutOfRange("plane axis".into()));
        }
        let mut origin = vec![0.0; n];
        for &(i, x) in fixed {
            origin[i] = x;
        }
        Plane::new(origin, unit(n, a_axis), unit(n, b_axis))
    }

    /// The plane through `offset * v3` spanned by u1 = omega/|omega| and the unit
    /// vector u2 in span(omega, 1) orthogonal to u1. The score difference
    /// between omega and the zero word vanishes along u2, so the pairwise
    /// boundary appears as the line a = 0.
    ///
    /// With `seed`, v3 is a random unit vector orthogonal to u1 and u2;
    /// otherwise `offset` is ignored.
    pub fn boundary(omega: &[Rat], seed: Option<u64>, offset: f64) -> Result<Self> {
        let n = omega.len();
        let mut u1: Vec<f64> = omega.iter().map(to_f64).collect();
        normalize(&mut u1)?;
        let ones = vec![1.0; n];
        let c = dot(&ones, &u1);
        let mut u2: Vec<f64> = ones.iter().zip(&u1).map(|(o, x)| o - c * x).collect();
        normalize(&mut u2)?;
        let mut origin = vec![0.0; n];
        if let Some(seed) = seed {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut v3: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            for b in [&u1, &u2] {
                let p = dot(&v3, b);
                v3.iter_mut().zip(b.iter()).for_each(|(x, y)| *x -= p * y);
            }
            normalize(&mut v3)?;
            origin = v3.iter().map(|x| offset * x).collect();
        }
        Plane::new(origin, u1, u2)
    }

    pub fn point(&self, a: f64, b: f64) -> Vec<f64> {
        (0..self.origin.len()).map(|i| self.origin[i] + a * self.u[i] + b * self.v[i]).collect()
    }
}

/// A regular grid of `res` points per axis on [min, max]^2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub res: usize,
}

impl Grid {
    pub fn new(min: f64, max: f64, res: usize) -> Result<Self> {
        if res < 2 || !(min < max) {
            return Err(Error::InvalidArgument("grid needs min < max and at least 2 points per axis".into()));
        }
        Ok(Grid { min, max, res })
    }

    pub fn coord(&self, k: usize) -> f64 {
        self.min + (self.max - self.min) * k as f64 / (self.res - 1) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "decoder", rename_all = "lowercase")]
pub enum DecoderSpec {
    Mld,
    Lpd,
    Spa(MpOptions),
    Msa(MpOptions),
}

impl DecoderSpec {
    pub fn is_message_passing(&self) -> bool {
        matches!(self, DecoderSpec::Spa(_) | DecoderSpec::Msa(_))
    }
}

/// A decoder ready to be run many times on the same code.
pub enum PreparedDecoder {
    Ml(MlDecoder),
    Lp(LpDecoder),
    Mp(MessagePassing),
}

impl PreparedDecoder {
    pub fn new(h: &ParityCheckMatrix, spec: DecoderSpec, limits: &Limits) -> Result<Self> {
        Ok(match spec {
            DecoderSpec::Mld => PreparedDecoder::Ml(MlDecoder::new(h, limits)?),
            DecoderSpec::Lpd => PreparedDecoder::Lp(LpDecoder::new(h, limits)?),
            DecoderSpec::Spa(o) => PreparedDecoder::Mp(MessagePassing::new(h, CheckRule::SumProduct, o)?),
            DecoderSpec::Msa(o) => PreparedDecoder::Mp(MessagePassing::new(h, CheckRule::MinSum, o)?),
        })
    }

    pub fn decode(&self, lambda: &[crate::channels::Llr]) -> Result<crate::decoders::DecodeResult> {
        match self {
            PreparedDecoder::Ml(d) => d.decode(lambda),
            PreparedDecoder::Lp(d) => d.decode(lambda),
            PreparedDecoder::Mp(d) => d.run(lambda),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Pixel {
    pub a: f64,
    pub b: f64,
    /// Index into `SweepResult::decisions`.
    pub decision: usize,
    pub converged: bool,
    pub iterations: usize,
    pub tie: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub grid: Grid,
    /// Row-major with `b` (the second axis) outer and increasing.
    pub pixels: Vec<Pixel>,
    /// Distinct decisions in order of first appearance.
    pub decisions: Vec<Decision>,
    pub max_iter: usize,
    pub message_passing: bool,
}

/// Runs the decoder at every grid point. Points are independent and may be
/// decoded in parallel; the output order is always the grid order.
pub fn sweep(h: &ParityCheckMatrix, plane: &Plane, grid: Grid, spec: DecoderSpec, limits: &Limits) -> Result<SweepResult> {
    if plane.origin.len() != h.n() {
        return Err(Error::DimensionMismatch { expected: h.n(), got: plane.origin.len() });
    }
    let dec = PreparedDecoder::new(h, spec, limits)?;
    let cells: Vec<(usize, usize)> = (0..grid.res).flat_map(|kb| (0..grid.res).map(move |ka| (ka, kb))).collect();
    let results = crate::par::map(&cells, |&(ka, kb)| {
        let (a, b) = (grid.coord(ka), grid.coord(kb));
        dec.decode(&llrs(&plane.point(a, b))).map(|r| (a, b, r))
    });
    let mut decisions: Vec<Decision> = Vec::new();
    let mut pixels = Vec::with_capacity(cells.len());
    for r in results {
        let (a, b, r) = r?;
        let id = match decisions.iter().position(|d| *d == r.decision) {
            Some(k) => k,
            None => {
                decisions.push(r.decision.clone());
                decisions.len() - 1
            }
        };
        pixels.push(Pixel { a, b, decision: id, converged: r.converged, iterations: r.iterations, tie: r.tie });
    }
    let max_iter = match spec {
        DecoderSpec::Spa(o) | DecoderSpec::Msa(o) => o.max_iter,
        _ => 0,
    };
    Ok(SweepResult { grid, pixels, decisions, max_iter, message_passing: spec.is_message_passing() })
}

impl SweepResult {
    /// Darkness level per pixel: for message passing, iterations scaled to
    /// [0, 254] and 255 for non-convergence; otherwise the decision index
    /// spread over [0, 254].
    pub fn level(&self, p: &Pixel) -> u8 {
        if !p.converged {
            return 255;
        }
        let (x, max) = if self.message_passing {
            (p.iterations, self.max_iter.max(1))
        } else {
            (p.decision, self.decisions.len().saturating_sub(1).max(1))
        };
        ((254 * x.min(max)) as f64 / max as f64).round() as u8
    }

    /// Binary PGM (P5). Byte = 255 - level, so non-converged pixels are black;
    /// the top row is the largest `b`.
    pub fn to_pgm(&self) -> Vec<u8> {
        let r = self.grid.res;
        let mut out = format!("P5\n{r} {r}\n255\n").into_bytes();
        for kb in (0..r).rev() {
            out.extend(self.pixels[kb * r..(kb + 1) * r].iter().map(|p| 255 - self.level(p)));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("a,b,decision_id,decision,converged,iterations,tie\n");
        for p in &self.pixels {
            let d = &self.decisions[p.decision];
            let text: Vec<String> = match d {
                Decision::Binary(b) => b.iter().map(u8::to_string).collect(),
                Decision::Fractional(f) => f.iter().map(crate::rational_geometry::fmt_rat).collect(),
            };
            writeln!(s, "{},{},{},{},{},{},{}", p.a, p.b, p.decision, text.join(" "), p.converged, p.iterations, p.tie)
                .unwrap();
        }
        s
    }

    pub fn decision_of(&self, p: &Pixel) -> &Decision {
        &self.decisions[p.decision]
    }
}
