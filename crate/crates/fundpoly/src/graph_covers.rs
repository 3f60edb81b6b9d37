//! Finite graph covers of Tanner graphs.
//!
//! An M-cover is described by one permutation of [M] per edge (j, i): copy
//! m of check j is joined to copy `perm(j, i)[m]` of bit i. Internally all
//! indices are 0-based; the JSON form uses 1-based keys and entries.

use crate::code_model::{even_weight_words, ParityCheckMatrix};
use crate::fundamental_polytope::{build_polytope, PseudoCodeword, PseudoKind};
use crate::gf2::{self, Bits};
use crate::rational_geometry::{common_denominator, fmt_rat, int, to_f64, HPolyhedron, PreparedLp, Rat, RatVec};
use crate::{Error, Limits, Result};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MCover {
    h: ParityCheckMatrix,
    degree: usize,
    perms: BTreeMap<(usize, usize), Vec<usize>>,
}

/// JSON form of a cover: `{"M": 3, "perms": {"j,i": [..]}}`, all 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverFile {
    #[serde(rename = "M")]
    pub m: usize,
    pub perms: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codeword: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Vec<String>>,
}

fn is_permutation(p: &[usize], m: usize) -> bool {
    let mut seen = vec![false; m];
    p.len() == m && p.iter().all(|&x| x < m && !std::mem::replace(&mut seen[x], true))
}

impl MCover {
    /// Validates that exactly the edges of T(H) carry a permutation of [M].
    pub fn new(h: &ParityCheckMatrix, degree: usize, perms: BTreeMap<(usize, usize), Vec<usize>>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument("cover degree must be at least 1".into()));
        }
        let edges: BTreeSet<(usize, usize)> = h.edges().into_iter().collect();
        if perms.len() != edges.len() || perms.keys().any(|e| !edges.contains(e)) {
            return Err(Error::InvalidArgument("permutations must be given for exactly the Tanner-graph edges".into()));
        }
        if let Some(((j, i), _)) = perms.iter().find(|(_, p)| !is_permutation(p, degree)) {
            return Err(Error::InvalidArgument(format!("edge ({},{}) does not carry a permutation", j + 1, i + 1)));
        }
        Ok(MCover { h: h.clone(), degree, perms })
    }

    /// M disjoint copies of the base graph.
    pub fn identity(h: &ParityCheckMatrix, degree: usize) -> Self {
        let perms = h.edges().into_iter().map(|e| (e, (0..degree).collect())).collect();
        MCover { h: h.clone(), degree, perms }
    }

    pub fn base(&self) -> &ParityCheckMatrix {
        &self.h
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn perm(&self, j: usize, i: usize) -> Option<&[usize]> {
        self.perms.get(&(j, i)).map(Vec::as_slice)
    }

    /// The (mM x nM) matrix with rows (j, m) and columns (i, m'), both in row-major order.
    pub fn lift_parity_check(&self) -> ParityCheckMatrix {
        let big_m = self.degree;
        let rows = (0..self.h.m())
            .flat_map(|j| {
                (0..big_m).map(move |m| self.h.check_support(j).iter().map(|&i| i * big_m + self.perms[&(j, i)][m]).collect())
            })
            .collect();
        ParityCheckMatrix::from_row_supports(self.h.n() * big_m, rows).expect("lifted rows are nonempty")
    }

    pub fn is_codeword(&self, bits: &[u8]) -> bool {
        bits.len() == self.h.n() * self.degree && self.lift_parity_check().is_codeword(bits)
    }

    pub fn to_file(&self) -> CoverFile {
        let perms = self
            .perms
            .iter()
            .map(|((j, i), p)| (format!("{},{}", j + 1, i + 1), p.iter().map(|x| x + 1).collect()))
            .collect();
        CoverFile { m: self.degree, perms, codeword: None, nu: None }
    }

    pub fn from_file(h: &ParityCheckMatrix, f: &CoverFile) -> Result<Self> {
        let mut perms = BTreeMap::new();
        for (key, p) in &f.perms {
            let bad = || Error::InvalidArgument(format!("bad edge key {key:?}"));
            let (j, i) = key.split_once(',').ok_or_else(bad)?;
            let j: usize = j.trim().parse().map_err(|_| bad())?;
            let i: usize = i.trim().parse().map_err(|_| bad())?;
            if j == 0 || i == 0 || p.iter().any(|&x| x == 0) {
                return Err(bad());
            }
            perms.insert((j - 1, i - 1), p.iter().map(|x| x - 1).collect());
        }
        MCover::new(h, f.m, perms)
    }
}

/// A codeword of a cover; bits are stored in (i, m) row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCodeword {
    n: usize,
    degree: usize,
    bits: Vec<u8>,
}

impl CoverCodeword {
    pub fn new(cover: &MCover, bits: Vec<u8>) -> Result<Self> {
        if !cover.is_codeword(&bits) {
            return Err(Error::InvalidArgument("bits violate a check of the cover".into()));
        }
        Ok(CoverCodeword { n: cover.h.n(), degree: cover.degree, bits })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn bit(&self, i: usize, m: usize) -> u8 {
        self.bits[i * self.degree + m]
    }

    /// Number of ones among the copies of each bit.
    pub fn counts(&self) -> Vec<usize> {
        (0..self.n).map(|i| (0..self.degree).map(|m| self.bit(i, m) as usize).sum()).collect()
    }
}

/// omega_i = (1/M) sum_m x_{i,m}.
pub fn scaled_pseudocodeword(x: &CoverCodeword) -> PseudoCodeword {
    let m = int(x.degree as i64);
    PseudoCodeword { coords: x.counts().into_iter().map(|c| int(c as i64) / &m).collect(), kind: PseudoKind::Scaled }
}

/// Repeats every entry M times.
pub fn lift_vector<T: Clone>(v: &[T], degree: usize) -> Vec<T> {
    v.iter().flat_map(|x| std::iter::repeat(x.clone()).take(degree)).collect()
}

/// A convex combination of local words: (word over I_j, weight).
pub type LocalDecomposition = Vec<(Vec<u8>, Rat)>;

/// Writes `nu` (a point of conv of the even-weight words of its length) as a
/// convex combination of such words.
///
/// Greedy stripping takes, at each step, the word allowing the longest step
/// while the remainder stays in the correspondingly shrunk hull. If that
/// stalls, an exact LP over the word weights finishes the job.
pub fn decompose_local(nu: &[Rat]) -> Result<LocalDecomposition> {
    match greedy_decompose(nu) {
        Some(d) => Ok(d),
        None => decompose_local_lp(nu),
    }
}

fn local_constraints(d: usize) -> Vec<(Vec<i64>, i64)> {
    let mut cs = Vec::new();
    for k in 0..d {
        let mut a = vec![0; d];
        a[k] = -1;
        cs.push((a.clone(), 0));
        a[k] = 1;
        cs.push((a, 1));
    }
    for mask in 0u64..(1u64 << d) {
        if mask.count_ones() % 2 == 1 {
            let a = (0..d).map(|k| if (mask >> k) & 1 == 1 { 1 } else { -1 }).collect();
            cs.push((a, mask.count_ones() as i64 - 1));
        }
    }
    cs
}

fn greedy_decompose(nu: &[Rat]) -> Option<LocalDecomposition> {
    let d = nu.len();
    let words = even_weight_words(d);
    let cons = local_constraints(d);
    let dot = |a: &[i64], y: &[Rat]| -> Rat { a.iter().zip(y).filter(|(c, _)| **c != 0).map(|(c, v)| v * int(*c)).sum() };
    let mut residual = nu.to_vec();
    let mut mass = Rat::one();
    let mut out: BTreeMap<Vec<u8>, Rat> = BTreeMap::new();
    for _ in 0..4 * (d + 2) {
        if mass.is_zero() {
            break;
        }
        let mut best: Option<(usize, Rat)> = None;
        for (w, word) in words.iter().enumerate() {
            let wv: Vec<Rat> = word.iter().map(|&b| int(b as i64)).collect();
            let mut t = mass.clone();
            for (a, c) in &cons {
                let slack = &mass * int(*c) - dot(a, &residual);
                if slack.is_negative() {
                    return None;
                }
                let g = int(*c) - dot(a, &wv);
                if g.is_positive() {
                    let lim = slack / g;
                    if lim < t {
                        t = lim;
                    }
                }
            }
            if best.as_ref().map_or(true, |(_, bt)| t > *bt) {
                best = Some((w, t));
            }
        }
        let (w, t) = best?;
        if t.is_zero() {
            return None;
        }
        for (r, &b) in residual.iter_mut().zip(&words[w]) {
            if b == 1 {
                *r -= &t;
            }
        }
        mass -= &t;
        *out.entry(words[w].clone()).or_insert_with(Rat::zero) += t;
    }
    (mass.is_zero() && residual.iter().all(Zero::is_zero)).then(|| out.into_iter().collect())
}

/// Exact LP decomposition; the returned basic solution uses at most |nu| + 1 words.
pub fn decompose_local_lp(nu: &[Rat]) -> Result<LocalDecomposition> {
    let d = nu.len();
    let words = even_weight_words(d);
    let den = common_denominator(nu);
    let den_i = den.to_i64().ok_or_else(|| Error::LimitExceeded("denominator too large".into()))?;
    let mut p = HPolyhedron::orthant(words.len());
    for k in 0..d {
        let a = words.iter().map(|w| den_i * w[k] as i64).collect();
        let b = (&nu[k] * Rat::from_integer(den.clone())).to_integer().to_i64().unwrap();
        p.add_eq(a, b)?;
    }
    p.add_eq(vec![1; words.len()], 1)?;
    let lp = PreparedLp::new(&p).map_err(|e| match e {
        Error::Empty => Error::OutsidePolytope,
        e => e,
    })?;
    let sol = lp.minimize(&vec![Rat::zero(); words.len()])?;
    Ok(words.into_iter().zip(sol.point).filter(|(_, a)| !a.is_zero()).collect())
}

/// A cover and cover codeword realizing a rational point of P(H).
#[derive(Debug, Clone)]
pub struct Realization {
    pub cover: MCover,
    pub codeword: CoverCodeword,
    /// Per check: the convex combination of local words used for the wiring.
    pub decompositions: Vec<LocalDecomposition>,
}

impl Realization {
    pub fn degree(&self) -> usize {
        self.cover.degree
    }
}

/// Builds an M-cover and a codeword in it whose scaled pseudo-codeword is `nu`.
///
/// M is the least common multiple of all denominators of `nu` and of the
/// per-check decomposition weights. Copies m < M nu_i of bit i are set to 1;
/// each check then walks its decomposition, handing the next unused one-copy
/// of bit i to a check copy whose word has a 1 there and the next unused
/// zero-copy otherwise.
pub fn realize_cover(h: &ParityCheckMatrix, nu: &[Rat], limits: &Limits) -> Result<Realization> {
    if nu.len() != h.n() {
        return Err(Error::DimensionMismatch { expected: h.n(), got: nu.len() });
    }
    if !build_polytope(h, limits)?.contains(nu)? {
        return Err(Error::OutsidePolytope);
    }
    let mut decompositions = Vec::with_capacity(h.m());
    let mut denoms: Vec<Rat> = nu.to_vec();
    for j in 0..h.m() {
        let local: Vec<Rat> = h.check_support(j).iter().map(|&i| nu[i].clone()).collect();
        let dec = decompose_local(&local)?;
        denoms.extend(dec.iter().map(|(_, a)| a.clone()));
        decompositions.push(dec);
    }
    let big_m = common_denominator(&denoms)
        .to_usize()
        .ok_or_else(|| Error::LimitExceeded("cover degree does not fit in memory".into()))?;
    let mr = |r: &Rat| -> usize { (r * Rat::from_integer(BigInt::from(big_m))).to_integer().to_usize().unwrap() };
    let ones: Vec<usize> = nu.iter().map(mr).collect();
    let mut bits = vec![0u8; h.n() * big_m];
    for i in 0..h.n() {
        for m in 0..ones[i] {
            bits[i * big_m + m] = 1;
        }
    }
    let mut perms = BTreeMap::new();
    for (j, dec) in decompositions.iter().enumerate() {
        let sup = h.check_support(j);
        let mut next_one: Vec<usize> = vec![0; sup.len()];
        let mut next_zero: Vec<usize> = sup.iter().map(|&i| ones[i]).collect();
        let mut maps: Vec<Vec<usize>> = vec![Vec::with_capacity(big_m); sup.len()];
        for (word, alpha) in dec {
            for _ in 0..mr(alpha) {
                for k in 0..sup.len() {
                    let counter = if word[k] == 1 { &mut next_one[k] } else { &mut next_zero[k] };
                    maps[k].push(*counter);
                    *counter += 1;
                }
            }
        }
        for (k, &i) in sup.iter().enumerate() {
            perms.insert((j, i), std::mem::take(&mut maps[k]));
        }
    }
    let cover = MCover::new(h, big_m, perms).map_err(|e| Error::Internal(format!("cover wiring failed: {e}")))?;
    let codeword = CoverCodeword::new(&cover, bits).map_err(|e| Error::Internal(format!("cover codeword invalid: {e}")))?;
    Ok(Realization { cover, codeword, decompositions })
}

/// All distinct scaled pseudo-codewords of covers of degree at most `m_max`.
///
/// Covers are enumerated exhaustively except that edges of a BFS spanning
/// forest of T(H) carry the identity, which loses no pseudo-codeword.
#[derive(Debug, Clone)]
pub struct GcdOracle {
    pub m_max: usize,
    /// Sorted lexicographically.
    pub points: Vec<RatVec>,
}

/// Result of graph-cover decoding.
#[derive(Debug, Clone, PartialEq)]
pub struct GcdDecision {
    pub omega: RatVec,
    pub value: f64,
    pub tie: bool,
}

impl GcdOracle {
    pub fn new(h: &ParityCheckMatrix, m_max: usize, limits: &Limits) -> Result<Self> {
        let tree: BTreeSet<(usize, usize)> =
            h.tanner_graph().spanning_forest().into_iter().map(|(i, c)| (c - h.n(), i)).collect();
        let free: Vec<(usize, usize)> = h.edges().into_iter().filter(|e| !tree.contains(e)).collect();
        let mut points = BTreeSet::new();
        let mut work: u64 = 0;
        for big_m in 1..=m_max {
            let all_perms: Vec<Vec<usize>> = (0..big_m).permutations(big_m).collect();
            let covers = (all_perms.len() as u64).checked_pow(free.len() as u32).unwrap_or(u64::MAX);
            work = work.saturating_add(covers);
            if work > limits.max_gcd_work {
                return Err(Error::LimitExceeded(format!("{covers} covers of degree {big_m} exceed max_gcd_work")));
            }
            let ids: Vec<u64> = (0..covers).collect();
            let per_cover = crate::par::map(&ids, |&id| -> Result<Vec<RatVec>> {
                let mut perms = BTreeMap::new();
                for &e in &tree {
                    perms.insert(e, (0..big_m).collect::<Vec<_>>());
                }
                let mut rest = id;
                for &e in &free {
                    let k = all_perms.len() as u64;
                    perms.insert(e, all_perms[(rest % k) as usize].clone());
                    rest /= k;
                }
                let cover = MCover { h: h.clone(), degree: big_m, perms };
                let lifted = cover.lift_parity_check();
                let rows: Vec<Bits> = lifted.row_supports().iter().map(|r| Bits::from_support(lifted.n(), r)).collect();
                let basis = gf2::nullspace(&rows, lifted.n());
                if basis.len() > limits.max_nullspace_dim {
                    return Err(Error::LimitExceeded("cover code too large to enumerate".into()));
                }
                let denom = int(big_m as i64);
                let mut found = BTreeSet::new();
                for w in gf2::span(&basis, lifted.n()) {
                    let omega: RatVec = (0..h.n())
                        .map(|i| int((0..big_m).filter(|&m| w.get(i * big_m + m)).count() as i64) / &denom)
                        .collect();
                    found.insert(omega);
                }
                Ok(found.into_iter().collect())
            });
            for r in per_cover {
                points.extend(r?);
            }
        }
        Ok(GcdOracle { m_max, points: points.into_iter().collect() })
    }

    /// Minimizes <omega, lambda>; ties (relative 1e-9) go to the lexicographically smallest omega.
    pub fn decode(&self, lambda: &[f64]) -> GcdDecision {
        let tol = 1e-9 * lambda.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        let score = |w: &RatVec| -> f64 { w.iter().zip(lambda).map(|(a, b)| to_f64(a) * b).sum() };
        let mut best: Option<(usize, f64)> = None;
        let mut tie = false;
        for (k, w) in self.points.iter().enumerate() {
            let s = score(w);
            match best {
                None => best = Some((k, s)),
                Some((_, bs)) if s < bs - tol => {
                    best = Some((k, s));
                    tie = false;
                }
                Some((_, bs)) if (s - bs).abs() <= tol => tie = true,
                _ => {}
            }
        }
        let (k, value) = best.expect("the zero word is always present");
        GcdDecision { omega: self.points[k].clone(), value, tie }
    }
}

/// Graph-cover decoding by exhaustive enumeration of covers up to degree `m_max`.
pub fn brute_force_gcd(h: &ParityCheckMatrix, lambda: &[f64], m_max: usize, limits: &Limits) -> Result<GcdDecision> {
    if lambda.len() != h.n() {
        return Err(Error::DimensionMismatch { expected: h.n(), got: lambda.len() });
    }
    Ok(GcdOracle::new(h, m_max, limits)?.decode(lambda))
}

/// Pretty form "1:1:0, 0:1:1, ..." of a cover codeword.
pub fn format_cover_word(x: &CoverCodeword) -> String {
    (0..x.n).map(|i| (0..x.degree).map(|m| x.bit(i, m).to_string()).join(":")).join(", ")
}

/// Display helper for a decomposition.
pub fn format_decomposition(d: &LocalDecomposition) -> String {
    d.iter()
        .map(|(w, a)| format!("{} * {}", fmt_rat(a), w.iter().map(|b| b.to_string()).collect::<String>()))
        .join(" + ")
}
