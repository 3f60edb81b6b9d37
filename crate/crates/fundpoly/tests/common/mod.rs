//! Shared fixtures and checks for the integration tests.
#![allow(dead_code)]

use fundpoly::catalog;
use fundpoly::code_model::ParityCheckMatrix;
use fundpoly::fundamental_polytope::{build_cone, build_polytope, cone_member, ConeForm};
use fundpoly::graph_covers::decompose_local_lp;
use fundpoly::pseudoweights::*;
use fundpoly::rational_geometry::{int, Rat, RatVec};
use fundpoly::Limits;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The catalog codes plus two small irregular matrices.
pub fn test_codes() -> Vec<(&'static str, ParityCheckMatrix)> {
    let mut v: Vec<(&'static str, ParityCheckMatrix)> =
        catalog::NAMES.iter().map(|&name| (name, catalog::by_name(name).unwrap())).collect();
    v.push(("cycle5", ParityCheckMatrix::from_row_supports(5, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 0]]).unwrap()));
    v.push(("mixed6", ParityCheckMatrix::from_row_supports(6, vec![vec![0, 1, 2, 3], vec![2, 3, 4], vec![0, 4, 5], vec![1, 5]]).unwrap()));
    v
}

/// A random parity-check matrix whose Tanner graph is a forest.
pub fn random_forest(rng: &mut impl Rng) -> ParityCheckMatrix {
    let n = rng.gen_range(2..=9);
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        if c[x] != x {
            let r = find(c, c[x]);
            c[x] = r;
        }
        c[x]
    }
    let mut rows = Vec::new();
    for _ in 0..rng.gen_range(1..=n) {
        let mut bits: Vec<usize> = (0..n).collect();
        bits.shuffle(rng);
        let mut row: Vec<usize> = Vec::new();
        let want = rng.gen_range(1..=4);
        for b in bits {
            if row.len() == want {
                break;
            }
            let rb = find(&mut comp, b);
            if row.iter().all(|&x| find(&mut comp, x) != rb) {
                row.push(b);
            }
        }
        for w in row.windows(2) {
            let (a, b) = (find(&mut comp, w[0]), find(&mut comp, w[1]));
            comp[a] = b;
        }
        row.sort();
        rows.push(row);
    }
    ParityCheckMatrix::from_row_supports(n, rows).unwrap()
}

/// A random matrix with `n` columns and rows of weight 1..=4.
pub fn random_matrix(rng: &mut impl Rng, n: usize, m: usize) -> ParityCheckMatrix {
    let rows = (0..m)
        .map(|_| {
            let mut bits: Vec<usize> = (0..n).collect();
            bits.shuffle(rng);
            let mut r = bits[..rng.gen_range(1..=n.min(4))].to_vec();
            r.sort();
            r
        })
        .collect();
    ParityCheckMatrix::from_row_supports(n, rows).unwrap()
}

pub fn random_rat(rng: &mut impl Rng, max_den: i64) -> Rat {
    let q = rng.gen_range(1..=max_den);
    Rat::new(rng.gen_range(0..=q).into(), q.into())
}

pub fn random_unit_vec(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| if rng.gen_bool(0.2) { 0.0 } else { rng.gen::<f64>() }).collect()
}

/// Every subset S of [n]: S is a stopping set iff some point of P(H) has support exactly S.
pub fn stopping_support_equivalence(h: &ParityCheckMatrix, limits: &Limits) -> Result<usize, String> {
    let p = build_polytope(h, limits).map_err(|e| e.to_string())?;
    let n = h.n();
    for mask in 0u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let stop = h.is_stopping_set(&set).map_err(|e| e.to_string())?;
        let supp = p.has_point_with_support(&set).map_err(|e| e.to_string())?;
        if stop != supp {
            return Err(format!("subset {set:?}: stopping set {stop}, support of a polytope point {supp}"));
        }
    }
    Ok(1 << n)
}

/// Draws nonnegative vectors, half of them conic combinations of the cone's
/// rays (members) and half uniform small integers, and compares all five
/// membership predicates.
pub fn five_way_agreement(h: &ParityCheckMatrix, trials: usize, rng: &mut impl Rng, limits: &Limits) -> Result<(usize, usize), String> {
    let rays = build_cone(h, limits).and_then(|k| k.extreme_rays(limits)).map_err(|e| e.to_string())?;
    let (mut members, mut others) = (0, 0);
    for t in 0..trials {
        let w: RatVec = if t % 2 == 0 && !rays.is_empty() {
            let mut w = vec![Rat::zero(); h.n()];
            for r in &rays {
                let a = random_rat(rng, 5);
                for (x, y) in w.iter_mut().zip(r) {
                    *x += &a * y;
                }
            }
            w
        } else {
            (0..h.n()).map(|_| int(rng.gen_range(0..4))).collect()
        };
        let verdicts: Vec<bool> =
            ConeForm::ALL.iter().map(|&f| cone_member(h, &w, f)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        if verdicts.iter().any(|&v| v != verdicts[0]) {
            return Err(format!("{w:?}: {verdicts:?}"));
        }
        if verdicts[0] {
            members += 1;
        } else {
            others += 1;
        }
    }
    Ok((members, others))
}

/// The H-representation of P(H) describes the intersection of the local convex hulls:
/// each inequality holds on every local word, and every vertex decomposes into local words.
pub fn local_hull_agreement(h: &ParityCheckMatrix, limits: &Limits) -> Result<usize, String> {
    let p = build_polytope(h, limits).map_err(|e| e.to_string())?;
    let words: Vec<Vec<Vec<u8>>> = (0..h.m())
        .map(|j| h.local_codes(j).and_then(|l| l.enumerate_full(limits)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let dot = |a: &[i64], x: &[u8]| -> i64 { a.iter().zip(x).map(|(a, &b)| a * b as i64).sum() };
    for c in &p.poly.ineqs {
        if !words.iter().any(|ws| ws.iter().all(|x| dot(&c.a, x) <= c.b)) {
            return Err(format!("inequality {c:?} is valid on no local code"));
        }
    }
    for c in &p.poly.eqs {
        if !words.iter().any(|ws| ws.iter().all(|x| dot(&c.a, x) == c.b)) {
            return Err(format!("equality {c:?} is valid on no local code"));
        }
    }
    let vertices = p.vertices(limits).map_err(|e| e.to_string())?;
    for v in &vertices {
        for j in 0..h.m() {
            let local: Vec<Rat> = h.check_support(j).iter().map(|&i| v[i].clone()).collect();
            decompose_local_lp(&local).map_err(|e| format!("vertex {v:?} check {j}: {e}"))?;
        }
    }
    Ok(vertices.len())
}

// ---- pseudo-weight lemma checks (floating point, tolerances pinned here) ----

pub const REL_TOL: f64 = 1e-12;
pub const CHAIN_TOL: f64 = 1e-9;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Weights that are invariant under positive scaling, in a fixed order.
pub fn scale_invariant(w: &[f64]) -> [f64; 4] {
    [wp_awgnc(w).unwrap(), wp_bsc(w).unwrap(), wp_bec(w).unwrap() as f64, w_maxfrac(w).unwrap()]
}

pub fn scaling_invariance(w: &[Rat]) -> Result<(), String> {
    let base = WeightReport::new(w).unwrap();
    for a in [Rat::new(1.into(), 3.into()), int(2), int(17)] {
        let s: RatVec = w.iter().map(|x| x * &a).collect();
        let r = WeightReport::new(&s).unwrap();
        let ok = r.w_awgnc == base.w_awgnc
            && r.w_bsc == base.w_bsc
            && r.w_bec == base.w_bec
            && r.w_maxfrac == base.w_maxfrac
            && r.w_frac == &base.w_frac * &a;
        if !ok {
            return Err(format!("scaling {w:?} by {a}"));
        }
    }
    Ok(())
}

pub fn hamming_reduction(max_n: usize) -> Result<usize, String> {
    let mut count = 0;
    for n in 1..=max_n {
        for mask in 0u32..(1 << n) {
            let w: RatVec = (0..n).map(|i| int((mask >> i & 1) as i64)).collect();
            let d = int(mask.count_ones() as i64);
            let r = WeightReport::new(&w).unwrap();
            if [&r.w_awgnc, &r.w_bsc, &r.w_frac, &r.w_maxfrac].iter().any(|x| **x != d) || r.w_bec != mask.count_ones() as usize {
                return Err(format!("{w:?}: {r:?}"));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// Returns how often each inequality of the two chains was strict.
pub fn chains(w: &[f64], strict: &mut [usize; 6]) -> Result<(), String> {
    let (fr, mf, aw, bs, be) = (w_frac(w).unwrap(), w_maxfrac(w).unwrap(), wp_awgnc(w).unwrap(), wp_bsc(w).unwrap(), wp_bec(w).unwrap() as f64);
    let le = |a: f64, b: f64| a <= b + CHAIN_TOL * b.abs().max(1.0);
    let pairs = [(fr, mf), (mf, aw), (aw, be), (mf, bs), (bs, be), (fr, bs)];
    for (k, &(a, b)) in pairs.iter().enumerate() {
        if !le(a, b) {
            return Err(format!("{w:?}: chain link {k} fails ({a} > {b})"));
        }
        if a < b - CHAIN_TOL * b.abs().max(1.0) {
            strict[k] += 1;
        }
    }
    Ok(())
}

pub fn moment_and_angle_forms(w: &[f64]) -> Result<(), String> {
    let aw = wp_awgnc(w).unwrap();
    let supp: Vec<f64> = w.iter().map(|&x| if x != 0.0 { 1.0 } else { 0.0 }).collect();
    let cos2 = |a: &[f64], b: &[f64]| {
        let d: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        let na: f64 = a.iter().map(|x| x * x).sum();
        let nb: f64 = b.iter().map(|x| x * x).sum();
        if na == 0.0 || nb == 0.0 {
            0.0
        } else {
            d * d / (na * nb)
        }
    };
    let ones = vec![1.0; w.len()];
    let forms = [
        wp_awgnc_moment_form(w),
        wp_awgnc_angle_form(w),
        w.len() as f64 * cos2(w, &ones),
        supp.iter().sum::<f64>() * cos2(w, &supp),
    ];
    match forms.iter().find(|&&f| !close(f, aw, REL_TOL)) {
        Some(f) => Err(format!("{w:?}: wp_awgnc {aw} vs form {f}")),
        None => Ok(()),
    }
}

/// Conic combinations never have a smaller scale-invariant weight than all their parts.
pub fn conic_lower_bound(parts: &[Vec<f64>], alphas: &[f64]) -> Result<(), String> {
    let n = parts[0].len();
    let combo: Vec<f64> = (0..n).map(|i| parts.iter().zip(alphas).map(|(p, a)| a * p[i]).sum()).collect();
    let c = scale_invariant(&combo);
    for k in 0..4 {
        let min = parts.iter().filter(|p| p.iter().any(|&x| x > 0.0)).map(|p| scale_invariant(p)[k]).fold(f64::INFINITY, f64::min);
        if c[k] < min - CHAIN_TOL * min.max(1.0) {
            return Err(format!("weight {k}: combination {} below min {min}", c[k]));
        }
    }
    Ok(())
}

/// 1/sqrt(wp(sum a_l w_l)) <= sum a_l / sqrt(wp(w_l)) for ||w_l||_1 = 1 and sum a_l = 1.
pub fn reciprocal_sqrt(parts: &[Vec<f64>], alphas: &[f64]) -> Result<(), String> {
    let n = parts[0].len();
    let parts: Vec<Vec<f64>> = parts
        .iter()
        .map(|p| {
            let s: f64 = p.iter().sum();
            p.iter().map(|x| x / s).collect()
        })
        .collect();
    let total: f64 = alphas.iter().sum();
    let alphas: Vec<f64> = alphas.iter().map(|a| a / total).collect();
    let combo: Vec<f64> = (0..n).map(|i| parts.iter().zip(&alphas).map(|(p, a)| a * p[i]).sum()).collect();
    let lhs = 1.0 / wp_awgnc(&combo).unwrap().sqrt();
    let rhs: f64 = parts.iter().zip(&alphas).map(|(p, a)| a / wp_awgnc(p).unwrap().sqrt()).sum();
    if lhs <= rhs * (1.0 + CHAIN_TOL) {
        Ok(())
    } else {
        Err(format!("{lhs} > {rhs}"))
    }
}

/// Signs of the partial derivatives of wp_awgnc against central differences.
/// Returns how many coordinates were compared.
pub fn derivative_signs(w: &[f64]) -> Result<usize, String> {
    let wp = wp_awgnc(w).unwrap();
    let l1: f64 = w.iter().sum();
    let h = 1e-6;
    let mut compared = 0;
    for i in 0..w.len() {
        let pivot = l1 / wp - w[i];
        if pivot.abs() < 1e-4 || w[i] < h {
            continue;
        }
        let mut up = w.to_vec();
        let mut down = w.to_vec();
        up[i] += h;
        down[i] -= h;
        let fd = (wp_awgnc(&up).unwrap() - wp_awgnc(&down).unwrap()) / (2.0 * h);
        let analytic = wp_awgnc_gradient(w, i);
        if fd.signum() != pivot.signum() || analytic.signum() != pivot.signum() {
            return Err(format!("{w:?} coord {i}: pivot {pivot}, difference {fd}, gradient {analytic}"));
        }
        compared += 1;
    }
    Ok(compared)
}
