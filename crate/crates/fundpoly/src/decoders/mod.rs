//! ML, LP, sum-product and min-sum decoding on extended-real LLRs.
//!
//! All decoders minimize (or, for message passing, approximate the
//! minimization of) the score sum_i x_i * lambda_i. Ties among optimal
//! codewords or polytope vertices go to the lexicographically smallest one.

mod lp;
mod ml;
mod mp;

pub use lp::{lpd, LpDecoder};
pub use ml::{correlation_decode, mld, MlDecoder};
pub use mp::{msa, spa, CheckRule, MessagePassing, MessageState, MpOptions};

use crate::channels::Llr;
use crate::rational_geometry::{fmt_rat, to_f64, Rat, RatVec};
use num_traits::{One, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

/// A hard 0/1 decision or a fractional polytope point.
#[derive(Debug, Clone, PartialEq)]
pub enum Decision {
    Binary(Vec<u8>),
    Fractional(RatVec),
}

impl Decision {
    /// Binary when every coordinate is 0 or 1.
    pub fn from_point(p: RatVec) -> Decision {
        if p.iter().all(|x| x.is_zero() || x.is_one()) {
            Decision::Binary(p.iter().map(|x| u8::from(x.is_one())).collect())
        } else {
            Decision::Fractional(p)
        }
    }

    pub fn is_fractional(&self) -> bool {
        matches!(self, Decision::Fractional(_))
    }

    pub fn as_binary(&self) -> Option<&[u8]> {
        match self {
            Decision::Binary(b) => Some(b),
            Decision::Fractional(_) => None,
        }
    }

    pub fn to_rat(&self) -> RatVec {
        match self {
            Decision::Binary(b) => b.iter().map(|&x| Rat::from_integer(x.into())).collect(),
            Decision::Fractional(p) => p.clone(),
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Decision::Binary(b) => b.iter().map(|&x| x as f64).collect(),
            Decision::Fractional(p) => p.iter().map(to_f64).collect(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Decision::Binary(b) => b.len(),
            Decision::Fractional(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Binary decisions serialize as integers, fractional ones as "p/q" strings.
impl Serialize for Decision {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        match self {
            Decision::Binary(b) => b.iter().try_for_each(|x| seq.serialize_element(x))?,
            Decision::Fractional(p) => p.iter().try_for_each(|x| seq.serialize_element(&fmt_rat(x)))?,
        }
        seq.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecodeResult {
    pub decision: Decision,
    pub fractional: bool,
    pub converged: bool,
    pub iterations: usize,
    /// sum_i decision_i * lambda_i, with 0 * inf = 0.
    pub score: f64,
    pub tie: bool,
    /// Hard decision after every iteration (message passing only).
    #[serde(skip)]
    pub trace: Vec<Vec<u8>>,
}

impl DecodeResult {
    pub(crate) fn new(decision: Decision, lambda: &[Llr], converged: bool, iterations: usize, tie: bool) -> Self {
        let score = score(&decision.to_f64(), lambda);
        DecodeResult { fractional: decision.is_fractional(), decision, converged, iterations, score, tie, trace: Vec::new() }
    }
}

/// Extended-real score with the convention 0 * inf = 0. Opposite infinities give NaN.
pub fn score(x: &[f64], lambda: &[Llr]) -> f64 {
    x.iter()
        .zip(lambda)
        .filter(|(a, _)| **a != 0.0)
        .map(|(a, l)| a * l.to_f64())
        .sum()
}

/// Comparison tolerance for scores: 1e-9 relative to the total LLR magnitude.
pub(crate) fn score_tolerance(lambda: &[Llr]) -> f64 {
    1e-9 * lambda.iter().filter_map(|l| if let Llr::Finite(x) = l { Some(x.abs()) } else { None }).sum::<f64>().max(1.0)
}
