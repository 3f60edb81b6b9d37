use super::{DecodeResult, Decision};
use crate::channels::Llr;
use crate::code_model::ParityCheckMatrix;
use crate::fundamental_polytope::build_polytope;
use crate::rational_geometry::{HPolyhedron, PreparedLp};
use crate::{Error, Limits, Result};

/// LP decoding over P(H). Phase one is done once; each decode only runs phase two.
///
/// Infinite LLRs pin coordinates: +inf forces omega_i = 0 and -inf forces
/// omega_i = 1. Such LLRs need a fresh LP per call.
#[derive(Debug, Clone)]
pub struct LpDecoder {
    poly: HPolyhedron,
    prepared: PreparedLp,
}

impl LpDecoder {
    pub fn new(h: &ParityCheckMatrix, limits: &Limits) -> Result<Self> {
        let poly = build_polytope(h, limits)?.poly;
        let prepared = PreparedLp::new(&poly)?;
        Ok(LpDecoder { poly, prepared })
    }

    pub fn decode(&self, lambda: &[Llr]) -> Result<DecodeResult> {
        if lambda.len() != self.poly.n {
            return Err(Error::DimensionMismatch { expected: self.poly.n, got: lambda.len() });
        }
        let finite: Vec<f64> = lambda.iter().map(|l| if let Llr::Finite(x) = l { *x } else { 0.0 }).collect();
        let sol = if lambda.iter().all(|l| l.is_finite()) {
            self.prepared.minimize_f64(&finite)?
        } else {
            let mut p = self.poly.clone();
            for (i, l) in lambda.iter().enumerate() {
                let mut a = vec![0; p.n];
                a[i] = 1;
                match l {
                    Llr::PosInf => p.add_eq(a, 0)?,
                    Llr::NegInf => p.add_eq(a, 1)?,
                    Llr::Finite(_) => {}
                }
            }
            match PreparedLp::new(&p) {
                Ok(lp) => lp.minimize_f64(&finite)?,
                Err(Error::Empty) => {
                    let i = lambda.iter().position(|l| !l.is_finite()).unwrap_or(0);
                    return Err(Error::Contradiction(i));
                }
                Err(e) => return Err(e),
            }
        };
        Ok(DecodeResult::new(Decision::from_point(sol.point), lambda, true, 0, sol.tie))
    }
}

pub fn lpd(h: &ParityCheckMatrix, lambda: &[Llr], limits: &Limits) -> Result<DecodeResult> {
    LpDecoder::new(h, limits)?.decode(lambda)
}
