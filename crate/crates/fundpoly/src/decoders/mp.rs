use super::{DecodeResult, Decision};
use crate::channels::Llr;
use crate::code_model::ParityCheckMatrix;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckRule {
    SumProduct,
    MinSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MpOptions {
    pub max_iter: usize,
    /// Weight of the fresh variable-to-check message; 1 disables damping.
    pub alpha: f64,
    /// Number of consecutive iterations the same codeword must be decided.
    pub window: usize,
    /// Finite messages are clamped to this magnitude before entering tanh.
    pub clamp: f64,
}

impl Default for MpOptions {
    fn default() -> Self {
        MpOptions { max_iter: 60, alpha: 1.0, window: 5, clamp: 30.0 }
    }
}

/// Messages on every Tanner edge, indexed like `ParityCheckMatrix::edges`.
#[derive(Debug, Clone, PartialEq)]
pub struct MessageState {
    /// Variable-to-check messages.
    pub mu: Vec<Llr>,
    /// Check-to-variable messages.
    pub mu_tilde: Vec<Llr>,
    /// Completed iterations.
    pub t: usize,
    lambda: Vec<Llr>,
}

/// Flooding-schedule message passing: each iteration updates all variable
/// nodes, then all check nodes.
#[derive(Debug, Clone)]
pub struct MessagePassing {
    n: usize,
    rule: CheckRule,
    opts: MpOptions,
    checks: Vec<Vec<usize>>,
    var_edges: Vec<Vec<usize>>,
    check_edges: Vec<Vec<usize>>,
}

fn sum_except(terms: &[Llr], skip: Option<usize>, start: Llr) -> Option<Llr> {
    terms.iter().enumerate().filter(|(k, _)| Some(*k) != skip).try_fold(start, |acc, (_, &x)| acc.checked_add(x))
}

impl MessagePassing {
    pub fn new(h: &ParityCheckMatrix, rule: CheckRule, opts: MpOptions) -> Result<Self> {
        if opts.max_iter == 0 || opts.window == 0 || !(0.0..=1.0).contains(&opts.alpha) || !(opts.clamp > 0.0) {
            return Err(Error::InvalidArgument(format!("bad message-passing options {opts:?}")));
        }
        let edges = h.edges();
        let mut var_edges = vec![Vec::new(); h.n()];
        let mut check_edges = vec![Vec::new(); h.m()];
        for (e, &(j, i)) in edges.iter().enumerate() {
            var_edges[i].push(e);
            check_edges[j].push(e);
        }
        let checks = h.row_supports().to_vec();
        Ok(MessagePassing { n: h.n(), rule, opts, checks, var_edges, check_edges })
    }

    pub fn options(&self) -> &MpOptions {
        &self.opts
    }

    /// mu^(0) = lambda on every edge, mu_tilde = 0.
    pub fn init(&self, lambda: &[Llr]) -> Result<MessageState> {
        if lambda.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: lambda.len() });
        }
        let ne = self.var_edges.iter().map(Vec::len).sum();
        let mut mu = vec![Llr::ZERO; ne];
        for (i, es) in self.var_edges.iter().enumerate() {
            for &e in es {
                mu[e] = lambda[i];
            }
        }
        Ok(MessageState { mu, mu_tilde: vec![Llr::ZERO; ne], t: 0, lambda: lambda.to_vec() })
    }

    fn blend(&self, fresh: Llr, old: Llr, i: usize) -> Result<Llr> {
        let a = self.opts.alpha;
        if a == 1.0 {
            return Ok(fresh);
        }
        if a == 0.0 {
            return Ok(old);
        }
        (fresh * a).checked_add(old * (1.0 - a)).ok_or(Error::Contradiction(i))
    }

    fn check_message(&self, incoming: &[Llr], skip: usize) -> Llr {
        let others = incoming.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &x)| x);
        match self.rule {
            CheckRule::SumProduct => {
                let c = self.opts.clamp;
                let p: f64 = others
                    .map(|x| match x {
                        Llr::Finite(v) => (v.clamp(-c, c) / 2.0).tanh(),
                        Llr::PosInf => 1.0,
                        Llr::NegInf => -1.0,
                    })
                    .product();
                if p >= 1.0 {
                    Llr::PosInf
                } else if p <= -1.0 {
                    Llr::NegInf
                } else {
                    Llr::Finite(2.0 * p.atanh())
                }
            }
            CheckRule::MinSum => {
                let mut neg = false;
                let mut min = f64::INFINITY;
                for x in others {
                    let v = x.to_f64();
                    neg ^= v < 0.0;
                    min = min.min(v.abs());
                }
                Llr::from_f64(if neg { -min } else { min })
            }
        }
    }

    /// One variable-node sweep followed by one check-node sweep.
    pub fn iterate(&self, st: &mut MessageState) -> Result<()> {
        st.t += 1;
        for (i, es) in self.var_edges.iter().enumerate() {
            let incoming: Vec<Llr> = es.iter().map(|&e| st.mu_tilde[e]).collect();
            for (k, &e) in es.iter().enumerate() {
                let fresh = sum_except(&incoming, Some(k), st.lambda[i]).ok_or(Error::Contradiction(i))?;
                st.mu[e] = if st.t == 1 { fresh } else { self.blend(fresh, st.mu[e], i)? };
            }
        }
        for es in &self.check_edges {
            let incoming: Vec<Llr> = es.iter().map(|&e| st.mu[e]).collect();
            for (k, &e) in es.iter().enumerate() {
                st.mu_tilde[e] = self.check_message(&incoming, k);
            }
        }
        Ok(())
    }

    /// Per-bit total LLR sign: 1 if negative, 0 otherwise. The flag reports
    /// whether some total is exactly zero.
    pub fn hard_decision(&self, st: &MessageState) -> Result<(Vec<u8>, bool)> {
        let mut undecided = false;
        let mut bits = Vec::with_capacity(self.n);
        for (i, es) in self.var_edges.iter().enumerate() {
            let incoming: Vec<Llr> = es.iter().map(|&e| st.mu_tilde[e]).collect();
            let total = sum_except(&incoming, None, st.lambda[i]).ok_or(Error::Contradiction(i))?;
            undecided |= total.signum() == 0;
            bits.push(u8::from(total.signum() < 0));
        }
        Ok((bits, undecided))
    }

    fn is_codeword(&self, x: &[u8]) -> bool {
        self.checks.iter().all(|s| s.iter().map(|&i| x[i]).sum::<u8>() % 2 == 0)
    }

    /// Runs `max_iter` iterations, stopping early only if the messages reach
    /// an exact fixed point. The decoder has converged when the final hard
    /// decisions form a run of at least `window` identical codewords;
    /// `iterations` is then the iteration at which that run began.
    pub fn run(&self, lambda: &[Llr]) -> Result<DecodeResult> {
        let mut st = self.init(lambda)?;
        let mut trace: Vec<Vec<u8>> = Vec::new();
        let mut run_start = 0;
        let mut run_len = 0;
        while st.t < self.opts.max_iter {
            let before = (st.t > 0).then(|| (st.mu.clone(), st.mu_tilde.clone()));
            self.iterate(&mut st)?;
            let (bits, undecided) = self.hard_decision(&st)?;
            if !undecided && self.is_codeword(&bits) {
                if run_len > 0 && trace.last() == Some(&bits) {
                    run_len += 1;
                } else {
                    run_start = st.t;
                    run_len = 1;
                }
            } else {
                run_len = 0;
            }
            trace.push(bits);
            if before.is_some_and(|(mu, mt)| mu == st.mu && mt == st.mu_tilde) {
                // Nothing can change any more; the current decision persists.
                run_len = if run_len > 0 { usize::MAX } else { 0 };
                break;
            }
        }
        let converged = run_len >= self.opts.window;
        let decision = Decision::Binary(trace.last().cloned().unwrap_or_default());
        let iterations = if converged { run_start } else { st.t };
        Ok(DecodeResult { trace, ..DecodeResult::new(decision, lambda, converged, iterations, false) })
    }
}

/// Sum-product decoding; `opts.alpha < 1` gives the damped variant.
pub fn spa(h: &ParityCheckMatrix, lambda: &[Llr], opts: MpOptions) -> Result<DecodeResult> {
    MessagePassing::new(h, CheckRule::SumProduct, opts)?.run(lambda)
}

pub fn msa(h: &ParityCheckMatrix, lambda: &[Llr], opts: MpOptions) -> Result<DecodeResult> {
    MessagePassing::new(h, CheckRule::MinSum, opts)?.run(lambda)
}
