use super::{score_tolerance, DecodeResult, Decision};
use crate::channels::Llr;
use crate::code_model::{Codeword, ParityCheckMatrix};
use crate::{Error, Limits, Result};
use std::cmp::Ordering;

/// Score of a codeword that keeps infinities apart: infeasible words (a one
/// on a +inf position) compare above everything, then more -inf hits win,
/// then the finite part decides.
#[derive(Debug, Clone, Copy, PartialEq)]
struct ExtScore {
    infeasible: bool,
    neg_inf: usize,
    finite: f64,
}

impl ExtScore {
    fn of(word: &[u8], lambda: &[Llr], sign: f64) -> Self {
        let mut s = ExtScore { infeasible: false, neg_inf: 0, finite: 0.0 };
        for (&b, &l) in word.iter().zip(lambda) {
            // Contribution of this bit: sign * lambda when b = 1 (ML), or
            // -(1 - 2b) * lambda (correlation, minimized).
            let c = if sign > 0.0 {
                if b == 1 { l } else { Llr::ZERO }
            } else if b == 1 {
                l
            } else {
                -l
            };
            match c {
                Llr::Finite(x) => s.finite += x,
                Llr::PosInf => s.infeasible = true,
                Llr::NegInf => s.neg_inf += 1,
            }
        }
        s
    }

    fn cmp(&self, o: &ExtScore, tol: f64) -> Ordering {
        self.infeasible
            .cmp(&o.infeasible)
            .then(o.neg_inf.cmp(&self.neg_inf))
            .then(if (self.finite - o.finite).abs() <= tol { Ordering::Equal } else { self.finite.total_cmp(&o.finite) })
    }
}

/// Exhaustive maximum-likelihood decoding over a cached codeword list.
#[derive(Debug, Clone)]
pub struct MlDecoder {
    n: usize,
    codewords: Vec<Codeword>,
}

impl MlDecoder {
    pub fn new(h: &ParityCheckMatrix, limits: &Limits) -> Result<Self> {
        Ok(MlDecoder { n: h.n(), codewords: h.enumerate_codewords(limits)? })
    }

    pub fn codewords(&self) -> &[Codeword] {
        &self.codewords
    }

    fn best(&self, lambda: &[Llr], sign: f64) -> Result<(usize, bool)> {
        if lambda.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: lambda.len() });
        }
        let tol = score_tolerance(lambda) * if sign > 0.0 { 1.0 } else { 2.0 };
        let mut best = 0;
        let mut best_s = ExtScore::of(&self.codewords[0].bits, lambda, sign);
        let mut tie = false;
        for (k, c) in self.codewords.iter().enumerate().skip(1) {
            let s = ExtScore::of(&c.bits, lambda, sign);
            match s.cmp(&best_s, tol) {
                Ordering::Less => {
                    best = k;
                    best_s = s;
                    tie = false;
                }
                Ordering::Equal => tie = true,
                Ordering::Greater => {}
            }
        }
        Ok((best, tie))
    }

    /// argmin over codewords of <x, lambda>.
    pub fn decode(&self, lambda: &[Llr]) -> Result<DecodeResult> {
        let (k, tie) = self.best(lambda, 1.0)?;
        Ok(DecodeResult::new(Decision::Binary(self.codewords[k].bits.clone()), lambda, true, 0, tie))
    }

    /// argmax over codewords of sum_i (1 - 2 x_i) lambda_i.
    pub fn correlation(&self, lambda: &[Llr]) -> Result<DecodeResult> {
        let (k, tie) = self.best(lambda, -1.0)?;
        Ok(DecodeResult::new(Decision::Binary(self.codewords[k].bits.clone()), lambda, true, 0, tie))
    }
}

pub fn mld(h: &ParityCheckMatrix, lambda: &[Llr], limits: &Limits) -> Result<DecodeResult> {
    MlDecoder::new(h, limits)?.decode(lambda)
}

pub fn correlation_decode(h: &ParityCheckMatrix, lambda: &[Llr], limits: &Limits) -> Result<DecodeResult> {
    MlDecoder::new(h, limits)?.correlation(lambda)
}
