//! The fundamental polytope P(H) and fundamental cone K(H).
//!
//! P(H) is written with box constraints plus, for every check j and every
//! odd-size subset S of I_j, the parity inequality
//! `sum_{S} w_i - sum_{I_j \ S} w_i <= |S| - 1`. K(H) keeps only the
//! homogeneous inequalities: `w >= 0` and `w_i' <= sum_{I_j \ i'} w_i`.
//! Checks of degree one or two additionally contribute the equalities they
//! imply (`w_i = 0` and `w_a = w_b`), which shrinks the search space for the
//! enumeration routines without changing the set.

use crate::code_model::ParityCheckMatrix;
use crate::rational_geometry::{
    enumerate_extreme_rays, enumerate_vertices, int, Constraint, HPolyhedron, PreparedLp, Rat, RatVec,
};
use crate::{Error, Limits, Result};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// How a pseudo-codeword vector is normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PseudoKind {
    /// A point of P(H).
    Scaled,
    /// An integer point of K(H), i.e. M times a scaled pseudo-codeword.
    Unscaled,
    /// A representative of a cone ray.
    Ray,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoCodeword {
    #[serde(with = "crate::rational_geometry::ratvec_serde")]
    pub coords: RatVec,
    pub kind: PseudoKind,
}

#[derive(Debug, Clone)]
pub struct FundamentalPolytope {
    pub h: ParityCheckMatrix,
    pub poly: HPolyhedron,
}

#[derive(Debug, Clone)]
pub struct FundamentalCone {
    pub h: ParityCheckMatrix,
    pub cone: HPolyhedron,
}

fn unit(n: usize, i: usize, v: i64) -> Vec<i64> {
    let mut a = vec![0; n];
    a[i] = v;
    a
}

fn degenerate_equalities(h: &ParityCheckMatrix) -> Vec<Constraint> {
    let n = h.n();
    let mut eqs = Vec::new();
    for j in 0..h.m() {
        match h.check_support(j) {
            [i] => eqs.push(Constraint { a: unit(n, *i, 1), b: 0 }),
            [a, b] => {
                let mut c = unit(n, *a, 1);
                c[*b] = -1;
                eqs.push(Constraint { a: c, b: 0 });
            }
            _ => {}
        }
    }
    eqs
}

fn check_row_weight(h: &ParityCheckMatrix, limits: &Limits) -> Result<()> {
    if h.max_row_weight() > limits.max_row_weight {
        return Err(Error::LimitExceeded(format!(
            "row weight {} exceeds max_row_weight={}",
            h.max_row_weight(),
            limits.max_row_weight
        )));
    }
    Ok(())
}

/// Builds the H-representation of P(H).
pub fn build_polytope(h: &ParityCheckMatrix, limits: &Limits) -> Result<FundamentalPolytope> {
    check_row_weight(h, limits)?;
    let n = h.n();
    let mut poly = HPolyhedron::new(n);
    for i in 0..n {
        poly.ineqs.push(Constraint { a: unit(n, i, -1), b: 0 });
        poly.ineqs.push(Constraint { a: unit(n, i, 1), b: 1 });
    }
    for j in 0..h.m() {
        let sup = h.check_support(j);
        let d = sup.len();
        for mask in 0u64..(1u64 << d) {
            if mask.count_ones() % 2 == 0 {
                continue;
            }
            let mut a = vec![0i64; n];
            for (k, &i) in sup.iter().enumerate() {
                a[i] = if (mask >> k) & 1 == 1 { 1 } else { -1 };
            }
            poly.ineqs.push(Constraint { a, b: mask.count_ones() as i64 - 1 });
        }
    }
    poly.eqs = degenerate_equalities(h);
    Ok(FundamentalPolytope { h: h.clone(), poly })
}

/// Builds the H-representation of K(H).
pub fn build_cone(h: &ParityCheckMatrix, limits: &Limits) -> Result<FundamentalCone> {
    check_row_weight(h, limits)?;
    let n = h.n();
    let mut cone = HPolyhedron::new(n);
    for i in 0..n {
        cone.ineqs.push(Constraint { a: unit(n, i, -1), b: 0 });
    }
    for j in 0..h.m() {
        let sup = h.check_support(j);
        for &ip in sup {
            let mut a = vec![0i64; n];
            for &i in sup {
                a[i] = if i == ip { 1 } else { -1 };
            }
            cone.ineqs.push(Constraint { a, b: 0 });
        }
    }
    cone.eqs = degenerate_equalities(h);
    Ok(FundamentalCone { h: h.clone(), cone })
}

impl FundamentalPolytope {
    /// Number of inequalities: 2n + sum_j 2^(|I_j| - 1).
    pub fn inequality_count(&self) -> usize {
        self.poly.ineqs.len()
    }

    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        self.poly.contains(x)
    }

    pub fn vertices(&self, limits: &Limits) -> Result<Vec<RatVec>> {
        enumerate_vertices(&self.poly, limits)
    }

    /// Whether some point of P(H) has support exactly `set`.
    pub fn has_point_with_support(&self, set: &[usize]) -> Result<bool> {
        let n = self.h.n();
        let mut face = self.poly.clone();
        for i in (0..n).filter(|i| !set.contains(i)) {
            face.eqs.push(Constraint { a: unit(n, i, 1), b: 0 });
        }
        let lp = match PreparedLp::new(&face) {
            Ok(lp) => lp,
            Err(Error::Empty) => return Ok(false),
            Err(e) => return Err(e),
        };
        // Averaging the maximizers of each coordinate gives full support on `set`.
        for &i in set {
            let mut c = vec![Rat::zero(); n];
            c[i] = int(-1);
            if !lp.minimize(&c)?.value.is_negative() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl FundamentalCone {
    /// Number of inequalities: n + sum_j |I_j|.
    pub fn inequality_count(&self) -> usize {
        self.cone.ineqs.len()
    }

    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        self.cone.contains(x)
    }

    pub fn extreme_rays(&self, limits: &Limits) -> Result<Vec<RatVec>> {
        enumerate_extreme_rays(&self.cone, limits)
    }
}

/// The extreme rays of K(H) as coprime nonnegative integer vectors, sorted.
pub fn minimal_pseudocodewords(h: &ParityCheckMatrix, limits: &Limits) -> Result<Vec<PseudoCodeword>> {
    Ok(build_cone(h, limits)?
        .extreme_rays(limits)?
        .into_iter()
        .map(|coords| PseudoCodeword { coords, kind: PseudoKind::Ray })
        .collect())
}

/// Whether the nonnegative integer vector `z` lies in K(H).
///
/// For members the parity of `z` is also checked to be a codeword; a failure
/// there would mean the cone description is wrong and is reported as an
/// internal error.
pub fn is_unscaled_pseudocodeword(h: &ParityCheckMatrix, z: &[i64]) -> Result<bool> {
    if z.len() != h.n() {
        return Err(Error::DimensionMismatch { expected: h.n(), got: z.len() });
    }
    if z.iter().any(|&v| v < 0) {
        return Err(Error::InvalidArgument("unscaled pseudo-codewords are nonnegative".into()));
    }
    let cone = build_cone(h, &Limits { max_row_weight: usize::MAX, ..Limits::default() })?;
    let x: RatVec = z.iter().map(|&v| int(v)).collect();
    let inside = cone.contains(&x)?;
    if inside {
        let parity: Vec<u8> = z.iter().map(|&v| (v % 2) as u8).collect();
        if !h.is_codeword(&parity) {
            return Err(Error::Internal("cone member whose parity is not a codeword".into()));
        }
    }
    Ok(inside)
}

/// For a forest Tanner graph, whether the vertices of P(H) are exactly the codewords.
pub fn tree_polytope_check(h: &ParityCheckMatrix, limits: &Limits) -> Result<bool> {
    if !h.tanner_graph().is_forest() {
        return Err(Error::Precondition("the Tanner graph has a cycle".into()));
    }
    let words: Vec<RatVec> =
        h.enumerate_codewords(limits)?.into_iter().map(|c| c.bits.iter().map(|&b| int(b as i64)).collect()).collect();
    let mut verts = build_polytope(h, limits)?.vertices(limits)?;
    verts.sort();
    let mut words = words;
    words.sort();
    Ok(verts == words)
}

/// Whether adding all sums of up to `r` rows leaves the vertex set of P(H) unchanged.
pub fn redundancy_invariance_check(h: &ParityCheckMatrix, r: usize, limits: &Limits) -> Result<bool> {
    let expanded = h.redundant_expansion(r, limits)?;
    let a = build_polytope(h, limits)?.vertices(limits)?;
    let b = build_polytope(&expanded, limits)?.vertices(limits)?;
    Ok(a == b)
}

/// The five equivalent ways of writing the cone condition for a nonnegative vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeForm {
    /// The H-representation built by [`build_cone`].
    Inequalities,
    /// For each check, every signed sum with exactly one minus sign is nonnegative.
    SignedSums,
    /// `(J - 2I) w_{I_j} >= 0` with J the all-ones matrix.
    MatrixProduct,
    /// `sum_{I_j} w >= 2 w_i'` for each i' in I_j.
    TwiceEach,
    /// `||w_{I_j}||_1 >= 2 ||w_{I_j}||_inf`.
    NormRatio,
}

impl ConeForm {
    pub const ALL: [ConeForm; 5] =
        [ConeForm::Inequalities, ConeForm::SignedSums, ConeForm::MatrixProduct, ConeForm::TwiceEach, ConeForm::NormRatio];
}

/// Cone membership of `w >= 0` evaluated through the chosen formulation.
pub fn cone_member(h: &ParityCheckMatrix, w: &[Rat], form: ConeForm) -> Result<bool> {
    if w.len() != h.n() {
        return Err(Error::DimensionMismatch { expected: h.n(), got: w.len() });
    }
    if w.iter().any(Signed::is_negative) {
        return Err(Error::InvalidArgument("vector must be nonnegative".into()));
    }
    if form == ConeForm::Inequalities {
        return build_cone(h, &Limits { max_row_weight: usize::MAX, ..Limits::default() })?.contains(w);
    }
    let local = |j: usize| -> Vec<Rat> { h.check_support(j).iter().map(|&i| w[i].clone()).collect() };
    let two = int(2);
    Ok((0..h.m()).all(|j| {
        let v = local(j);
        let d = v.len();
        let sum: Rat = v.iter().sum();
        match form {
            ConeForm::Inequalities => unreachable!(),
            ConeForm::SignedSums => (0..d).all(|k| {
                let s: Rat = v.iter().enumerate().map(|(l, x)| if l == k { -x.clone() } else { x.clone() }).sum();
                !s.is_negative()
            }),
            ConeForm::MatrixProduct => (0..d).all(|r| {
                let row: Rat = (0..d).map(|c| &v[c] * int(if r == c { -1 } else { 1 })).sum();
                !row.is_negative()
            }),
            ConeForm::TwiceEach => v.iter().all(|x| sum >= &two * x),
            ConeForm::NormRatio => {
                let max = v.iter().max().cloned().unwrap_or_else(Rat::zero);
                sum >= &two * max
            }
        }
    }))
}
