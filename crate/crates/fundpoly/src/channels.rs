//! Binary-input memoryless channels: AWGNC, BSC and BEC.
//!
//! The AWGNC is normalized to energy per coded bit E_c = 1, so that
//! E_b = 1/R and N_0 = 1/(R * Eb/N0). Log-likelihood ratios are positive
//! when the observation favours bit 0.

use crate::pseudoweights::{wp_bec_exact, wp_bsc_exact};
use crate::rational_geometry::Rat;
use crate::{Error, Result};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg};

/// The random generator used for every sampled quantity.
pub type ChannelRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> ChannelRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ChannelModel {
    /// `ebn0` is the linear ratio E_b/N_0; `rate` the code rate in (0, 1].
    Awgnc { ebn0: f64, rate: f64 },
    Bsc { eps: f64 },
    Bec { eps: f64 },
}

/// A channel observation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Observation {
    Real(f64),
    Bit(u8),
    Erased,
}

/// An extended real log-likelihood ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Llr {
    Finite(f64),
    PosInf,
    NegInf,
}

impl Llr {
    pub const ZERO: Llr = Llr::Finite(0.0);

    /// Maps IEEE infinities to the tagged infinities.
    pub fn from_f64(x: f64) -> Llr {
        debug_assert!(!x.is_nan());
        if x == f64::INFINITY {
            Llr::PosInf
        } else if x == f64::NEG_INFINITY {
            Llr::NegInf
        } else {
            Llr::Finite(x)
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Llr::Finite(x) => x,
            Llr::PosInf => f64::INFINITY,
            Llr::NegInf => f64::NEG_INFINITY,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Llr::Finite(_))
    }

    /// Extended addition; `None` for +inf + (-inf).
    pub fn checked_add(self, o: Llr) -> Option<Llr> {
        use Llr::*;
        match (self, o) {
            (Finite(a), Finite(b)) => Some(Finite(a + b)),
            (PosInf, NegInf) | (NegInf, PosInf) => None,
            (PosInf, _) | (_, PosInf) => Some(PosInf),
            (NegInf, _) | (_, NegInf) => Some(NegInf),
        }
    }

    /// -1, 0 or +1.
    pub fn signum(self) -> i8 {
        match self {
            Llr::Finite(x) if x > 0.0 => 1,
            Llr::Finite(x) if x < 0.0 => -1,
            Llr::Finite(_) => 0,
            Llr::PosInf => 1,
            Llr::NegInf => -1,
        }
    }
}

impl Neg for Llr {
    type Output = Llr;
    fn neg(self) -> Llr {
        match self {
            Llr::Finite(x) => Llr::Finite(-x),
            Llr::PosInf => Llr::NegInf,
            Llr::NegInf => Llr::PosInf,
        }
    }
}

/// Scaling by a positive factor.
impl Mul<f64> for Llr {
    type Output = Llr;
    fn mul(self, c: f64) -> Llr {
        match self {
            Llr::Finite(x) => Llr::Finite(x * c),
            inf => inf,
        }
    }
}

/// Panics on +inf + (-inf); use [`Llr::checked_add`] where that can occur.
impl Add for Llr {
    type Output = Llr;
    fn add(self, o: Llr) -> Llr {
        self.checked_add(o).expect("sum of opposite infinities")
    }
}

impl From<f64> for Llr {
    fn from(x: f64) -> Llr {
        Llr::from_f64(x)
    }
}

impl fmt::Display for Llr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Llr::Finite(x) => write!(f, "{x}"),
            Llr::PosInf => write!(f, "+inf"),
            Llr::NegInf => write!(f, "-inf"),
        }
    }
}

pub fn llrs(v: &[f64]) -> Vec<Llr> {
    v.iter().map(|&x| Llr::from_f64(x)).collect()
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

impl ChannelModel {
    pub fn awgnc_db(ebn0_db: f64, rate: f64) -> Result<Self> {
        ChannelModel::Awgnc { ebn0: db_to_linear(ebn0_db), rate }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        let ok = match self {
            ChannelModel::Awgnc { ebn0, rate } => ebn0 > 0.0 && ebn0.is_finite() && rate > 0.0 && rate <= 1.0,
            ChannelModel::Bsc { eps } => (0.0..=0.5).contains(&eps),
            ChannelModel::Bec { eps } => (0.0..=1.0).contains(&eps),
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidArgument(format!("channel parameters out of range: {self:?}")))
        }
    }

    /// Parses `awgnc:ebn0_db=4.2`, `awgnc:ebn0=2.6`, `bsc:eps=0.05` or `bec:eps=0.3`.
    /// The AWGNC needs the code rate, which is not part of the channel string.
    pub fn parse(spec: &str, rate: f64) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad channel spec {spec:?}"));
        let (kind, params) = spec.split_once(':').ok_or_else(bad)?;
        let (key, value) = params.split_once('=').ok_or_else(bad)?;
        let value: f64 = value.trim().parse().map_err(|_| bad())?;
        match (kind.trim().to_ascii_lowercase().as_str(), key.trim()) {
            ("awgnc", "ebn0_db") => ChannelModel::awgnc_db(value, rate),
            ("awgnc", "ebn0") => ChannelModel::Awgnc { ebn0: value, rate }.validated(),
            ("bsc", "eps") => ChannelModel::Bsc { eps: value }.validated(),
            ("bec", "eps") => ChannelModel::Bec { eps: value }.validated(),
            _ => Err(bad()),
        }
    }

    /// N_0 for the AWGNC (E_c = 1).
    pub fn n0(&self) -> Option<f64> {
        match *self {
            ChannelModel::Awgnc { ebn0, rate } => Some(1.0 / (rate * ebn0)),
            _ => None,
        }
    }

    /// BSC with eps = 0 or 1/2 gives infinite or zero LLRs.
    pub fn is_degenerate(&self) -> bool {
        matches!(*self, ChannelModel::Bsc { eps } if eps == 0.0 || eps == 0.5)
    }

    /// Channel LLR of a single observation.
    pub fn llr_one(&self, y: Observation) -> Result<Llr> {
        match (*self, y) {
            (ChannelModel::Awgnc { .. }, Observation::Real(v)) if v.is_finite() => {
                Ok(Llr::Finite(4.0 * v / self.n0().unwrap()))
            }
            (ChannelModel::Bsc { eps }, Observation::Bit(b)) if b <= 1 => {
                let mag = if eps == 0.0 { Llr::PosInf } else { Llr::Finite(((1.0 - eps) / eps).ln()) };
                Ok(if b == 0 { mag } else { -mag })
            }
            (ChannelModel::Bec { .. }, Observation::Bit(0)) => Ok(Llr::PosInf),
            (ChannelModel::Bec { .. }, Observation::Bit(1)) => Ok(Llr::NegInf),
            (ChannelModel::Bec { .. }, Observation::Erased) => Ok(Llr::ZERO),
            _ => Err(Error::InvalidArgument(format!("observation {y:?} is not an output of {self:?}"))),
        }
    }

    /// Conditional probability (or density) of `y` given input bit `x`.
    pub fn likelihood(&self, y: Observation, x: u8) -> f64 {
        match (*self, y) {
            (ChannelModel::Awgnc { .. }, Observation::Real(v)) => {
                let var = self.n0().unwrap() / 2.0;
                let mean = 1.0 - 2.0 * x as f64;
                (-(v - mean).powi(2) / (2.0 * var)).exp() / (2.0 * std::f64::consts::PI * var).sqrt()
            }
            (ChannelModel::Bsc { eps }, Observation::Bit(b)) => {
                if b == x {
                    1.0 - eps
                } else {
                    eps
                }
            }
            (ChannelModel::Bec { eps }, Observation::Erased) => eps,
            (ChannelModel::Bec { eps }, Observation::Bit(b)) => {
                if b == x {
                    1.0 - eps
                } else {
                    0.0
                }
            }
            _ => 0.0,
        }
    }

    /// The output-symmetry involution.
    pub fn sigma(&self, y: Observation) -> Observation {
        match y {
            Observation::Real(v) => Observation::Real(-v),
            Observation::Bit(b) => Observation::Bit(1 - b),
            Observation::Erased => Observation::Erased,
        }
    }

    /// Transmits `x` once; AWGNC maps bit x to 1 - 2x before adding noise of variance N_0/2.
    pub fn sample_with(&self, x: &[u8], rng: &mut impl Rng) -> Vec<Observation> {
        match *self {
            ChannelModel::Awgnc { .. } => {
                let noise = Normal::new(0.0, (self.n0().unwrap() / 2.0).sqrt()).expect("positive variance");
                x.iter().map(|&b| Observation::Real(1.0 - 2.0 * b as f64 + noise.sample(rng))).collect()
            }
            ChannelModel::Bsc { eps } => {
                x.iter().map(|&b| Observation::Bit(if rng.gen::<f64>() < eps { 1 - b } else { b })).collect()
            }
            ChannelModel::Bec { eps } => {
                x.iter().map(|&b| if rng.gen::<f64>() < eps { Observation::Erased } else { Observation::Bit(b) }).collect()
            }
        }
    }

    pub fn sample(&self, x: &[u8], seed: u64) -> Vec<Observation> {
        self.sample_with(x, &mut rng_from_seed(seed))
    }
}

pub fn llr(ch: &ChannelModel, y: &[Observation]) -> Result<Vec<Llr>> {
    y.iter().map(|&o| ch.llr_one(o)).collect()
}

pub fn sample(ch: &ChannelModel, x: &[u8], seed: u64) -> Vec<Observation> {
    ch.sample(x, seed)
}

/// Outcome of the output-symmetry check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryWitness {
    pub involution: &'static str,
    pub points_checked: usize,
    pub max_abs_error: f64,
    pub symmetric: bool,
}

/// Checks P(y|0) = P(sigma(y)|1) on the output alphabet, or on a 10^4-point
/// grid over +-6 noise standard deviations for the AWGNC.
pub fn check_output_symmetric(ch: &ChannelModel) -> SymmetryWitness {
    let (involution, points): (&'static str, Vec<Observation>) = match ch {
        ChannelModel::Awgnc { .. } => {
            let span = 6.0 * (ch.n0().unwrap() / 2.0).sqrt() + 1.0;
            let grid = (0..10_000).map(|k| Observation::Real(-span + 2.0 * span * k as f64 / 9_999.0)).collect();
            ("y -> -y", grid)
        }
        ChannelModel::Bsc { .. } => ("y -> 1 - y", vec![Observation::Bit(0), Observation::Bit(1)]),
        ChannelModel::Bec { .. } => {
            ("0 <-> 1, ? fixed", vec![Observation::Bit(0), Observation::Bit(1), Observation::Erased])
        }
    };
    let max_abs_error =
        points.iter().map(|&y| (ch.likelihood(y, 0) - ch.likelihood(ch.sigma(y), 1)).abs()).fold(0.0, f64::max);
    SymmetryWitness { involution, points_checked: points.len(), max_abs_error, symmetric: max_abs_error <= 1e-12 }
}

/// Gaussian tail function.
pub fn q_function(x: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(x / std::f64::consts::SQRT_2)
}

/// Q(sqrt(2 R Eb/N0 w)) for a Hamming weight or AWGNC pseudo-weight w.
pub fn pairwise_error_awgnc(weight: f64, rate: f64, ebn0: f64) -> Result<f64> {
    if !(weight >= 0.0) {
        return Err(Error::InvalidArgument("weight must be nonnegative".into()));
    }
    Ok(q_function((2.0 * rate * ebn0 * weight).sqrt()))
}

/// Smallest number of BSC flips that can make the score of omega nonpositive: ceil(wp_bsc/2).
pub fn bsc_flip_threshold(omega: &[Rat]) -> Result<u64> {
    let half = wp_bsc_exact(omega)? / Rat::from_integer(2.into());
    half.ceil().to_integer().to_u64().ok_or_else(|| Error::Internal("threshold overflow".into()))
}

/// Smallest number of BEC erasures that can make the score of omega nonpositive: |supp(omega)|.
pub fn bec_erasure_threshold(omega: &[Rat]) -> Result<u64> {
    Ok(wp_bec_exact(omega)? as u64)
}
