//! Vertex and extreme-ray enumeration.
//!
//! Small instances enumerate subsets of constraints and solve each square
//! system exactly; once the number of subsets exceeds the configured limit
//! the double description method takes over. Both paths are public so they
//! can be cross-checked.

use super::linalg::{nullspace, rank, rref, solve_unique};
use super::{dd, dot_int, int, HPolyhedron, PreparedLp, Rat, RatVec};
use crate::code_model::binomial_count;
use crate::{Error, Limits, Result};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

fn rat_row(a: &[i64]) -> Vec<Rat> {
    a.iter().map(|&x| int(x)).collect()
}

/// Reduced equality system [E | d] with inconsistent systems reported as empty.
fn reduced_equalities(p: &HPolyhedron) -> Result<Vec<Vec<Rat>>> {
    let n = p.n;
    let mut m: Vec<Vec<Rat>> = p.eqs.iter().map(|c| rat_row(&c.a).into_iter().chain([int(c.b)]).collect()).collect();
    let piv = rref(&mut m, n);
    if m[piv.len()..].iter().any(|row| !row[n].is_zero()) {
        return Err(Error::Empty);
    }
    m.truncate(piv.len());
    Ok(m)
}

fn check_size(p: &HPolyhedron, limits: &Limits) -> Result<()> {
    if p.n > limits.max_vertex_n {
        return Err(Error::LimitExceeded(format!("dimension {} exceeds max_vertex_n={}", p.n, limits.max_vertex_n)));
    }
    Ok(())
}

fn subset_count(p: &HPolyhedron, k: usize) -> u128 {
    binomial_count(p.ineqs.len() as u128, k as u128)
}

/// Runs `f` over all k-subsets of 0..m in chunks, possibly in parallel.
fn for_subsets<T: Send>(m: usize, k: usize, f: impl Fn(&[usize]) -> Option<T> + Sync + Send) -> Vec<T> {
    let mut out = Vec::new();
    let mut combos = (0..m).combinations(k);
    loop {
        let chunk: Vec<Vec<usize>> = combos.by_ref().take(16_384).collect();
        if chunk.is_empty() {
            break;
        }
        out.extend(crate::par::map(&chunk, |s| f(s)).into_iter().flatten());
        if k == 0 {
            break;
        }
    }
    out
}

fn ensure_bounded(p: &HPolyhedron) -> Result<()> {
    let lp = PreparedLp::new(p)?;
    for i in 0..p.n {
        for s in [1, -1] {
            let mut c = vec![Rat::zero(); p.n];
            c[i] = int(s);
            lp.minimize(&c)?;
        }
    }
    Ok(())
}

/// Vertices of a bounded polyhedron via subsets of tight inequalities.
pub fn vertices_by_subsets(p: &HPolyhedron) -> Result<Vec<RatVec>> {
    let n = p.n;
    ensure_bounded(p)?;
    let eq = reduced_equalities(p)?;
    let k = n - eq.len();
    let (e_rows, e_rhs): (Vec<Vec<Rat>>, Vec<Rat>) = eq.iter().map(|r| (r[..n].to_vec(), r[n].clone())).unzip();
    let found = for_subsets(p.ineqs.len(), k, |s| {
        let mut rows = e_rows.clone();
        let mut rhs = e_rhs.clone();
        for &t in s {
            rows.push(rat_row(&p.ineqs[t].a));
            rhs.push(int(p.ineqs[t].b));
        }
        let x = if n == 0 { Vec::new() } else { solve_unique(&rows, &rhs)? };
        p.ineqs.iter().all(|c| dot_int(&c.a, &x) <= int(c.b)).then_some(x)
    });
    let set: BTreeSet<RatVec> = found.into_iter().collect();
    Ok(set.into_iter().collect())
}

/// Vertices of a bounded polyhedron via double description on its homogenization.
pub fn vertices_by_dd(p: &HPolyhedron, max_rays: usize) -> Result<Vec<RatVec>> {
    let n = p.n;
    let big = |x: i64| BigInt::from(x);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut t_row = vec![BigInt::zero(); n + 1];
    t_row[n] = big(1);
    rows.push(t_row);
    for c in &p.eqs {
        let r: Vec<BigInt> = c.a.iter().map(|&x| big(-x)).chain([big(c.b)]).collect();
        rows.push(r.iter().map(|x| -x).collect());
        rows.push(r);
    }
    for c in &p.ineqs {
        rows.push(c.a.iter().map(|&x| big(-x)).chain([big(c.b)]).collect());
    }
    let rays = match dd::extreme_rays(&rows, n + 1, max_rays) {
        Err(Error::NotPointed) => return Err(Error::Unbounded),
        r => r?,
    };
    let mut out = BTreeSet::new();
    for r in rays {
        if r[n].is_zero() {
            return Err(Error::Unbounded);
        }
        let t = Rat::from_integer(r[n].clone());
        out.insert(r[..n].iter().map(|x| Rat::from_integer(x.clone()) / &t).collect::<RatVec>());
    }
    if out.is_empty() {
        return Err(Error::Empty);
    }
    Ok(out.into_iter().collect())
}

/// All vertices of a bounded polyhedron, sorted lexicographically.
pub fn enumerate_vertices(p: &HPolyhedron, limits: &Limits) -> Result<Vec<RatVec>> {
    check_size(p, limits)?;
    let k = p.n - reduced_equalities(p)?.len();
    if subset_count(p, k) > limits.max_subset_count as u128 {
        vertices_by_dd(p, limits.max_dd_rays)
    } else {
        vertices_by_subsets(p)
    }
}

fn normalize_ray(v: &[Rat]) -> RatVec {
    super::linalg::primitive_integer(v).into_iter().map(Rat::from_integer).collect()
}

fn require_cone(k: &HPolyhedron) -> Result<()> {
    if !k.is_homogeneous() {
        return Err(Error::Precondition("extreme rays need a cone (all right-hand sides zero)".into()));
    }
    let all: Vec<Vec<Rat>> = k.ineqs.iter().chain(&k.eqs).map(|c| rat_row(&c.a)).collect();
    if k.n > 0 && rank(&all) < k.n {
        return Err(Error::NotPointed);
    }
    Ok(())
}

/// Extreme rays of a pointed cone via subsets of n - 1 independent tight constraints.
pub fn extreme_rays_by_subsets(k: &HPolyhedron) -> Result<Vec<RatVec>> {
    require_cone(k)?;
    let n = k.n;
    let eq = reduced_equalities(k)?;
    if eq.len() >= n {
        return Ok(Vec::new());
    }
    let e_rows: Vec<Vec<Rat>> = eq.iter().map(|r| r[..n].to_vec()).collect();
    let found = for_subsets(k.ineqs.len(), n - eq.len() - 1, |s| {
        let mut rows = e_rows.clone();
        rows.extend(s.iter().map(|&t| rat_row(&k.ineqs[t].a)));
        let ns = nullspace(&rows, n);
        if ns.len() != 1 {
            return None;
        }
        let d = &ns[0];
        let vals: Vec<Rat> = k.ineqs.iter().map(|c| dot_int(&c.a, d)).collect();
        if vals.iter().all(|v| !v.is_positive()) {
            Some(normalize_ray(d))
        } else if vals.iter().all(|v| !v.is_negative()) {
            Some(normalize_ray(&d.iter().map(|x| -x.clone()).collect::<Vec<_>>()))
        } else {
            None
        }
    });
    let set: BTreeSet<RatVec> = found.into_iter().collect();
    Ok(set.into_iter().collect())
}

/// Extreme rays of a pointed cone via double description.
pub fn extreme_rays_by_dd(k: &HPolyhedron, max_rays: usize) -> Result<Vec<RatVec>> {
    require_cone(k)?;
    let big = |x: i64| BigInt::from(x);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for c in &k.eqs {
        rows.push(c.a.iter().map(|&x| big(x)).collect());
        rows.push(c.a.iter().map(|&x| big(-x)).collect());
    }
    for c in &k.ineqs {
        rows.push(c.a.iter().map(|&x| big(-x)).collect());
    }
    let rays = dd::extreme_rays(&rows, k.n, max_rays)?;
    let set: BTreeSet<RatVec> = rays.into_iter().map(|r| r.into_iter().map(Rat::from_integer).collect()).collect();
    Ok(set.into_iter().collect())
}

/// One coprime-integer representative per extreme ray, sorted lexicographically.
pub fn enumerate_extreme_rays(k: &HPolyhedron, limits: &Limits) -> Result<Vec<RatVec>> {
    check_size(k, limits)?;
    require_cone(k)?;
    let e = reduced_equalities(k)?.len();
    if e >= k.n {
        return Ok(Vec::new());
    }
    if subset_count(k, k.n - e - 1) > limits.max_subset_count as u128 {
        extreme_rays_by_dd(k, limits.max_dd_rays)
    } else {
        extreme_rays_by_subsets(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational_geometry::{int_vec, rat_vec};

    fn square() -> HPolyhedron {
        HPolyhedron::cube(2)
    }

    #[test]
    fn unit_square_vertices() {
        let want = vec![int_vec(&[0, 0]), int_vec(&[0, 1]), int_vec(&[1, 0]), int_vec(&[1, 1])];
        assert_eq!(vertices_by_subsets(&square()).unwrap(), want);
        assert_eq!(vertices_by_dd(&square(), 1000).unwrap(), want);
        assert_eq!(enumerate_vertices(&square(), &Limits::default()).unwrap(), want);
    }

    #[test]
    fn triangle_with_fractional_vertex() {
        let mut p = HPolyhedron::orthant(2);
        p.add_ineq(vec![3, 2], 6).unwrap();
        p.add_ineq(vec![2, 3], 6).unwrap();
        let want = vec![int_vec(&[0, 0]), int_vec(&[0, 2]), rat_vec(&[(6, 5), (6, 5)]), int_vec(&[2, 0])];
        assert_eq!(vertices_by_subsets(&p).unwrap(), want);
        assert_eq!(vertices_by_dd(&p, 1000).unwrap(), want);
    }

    #[test]
    fn orthant_rays() {
        let want = vec![int_vec(&[0, 0, 1]), int_vec(&[0, 1, 0]), int_vec(&[1, 0, 0])];
        assert_eq!(extreme_rays_by_subsets(&HPolyhedron::orthant(3)).unwrap(), want);
        assert_eq!(extreme_rays_by_dd(&HPolyhedron::orthant(3), 100).unwrap(), want);
    }

    #[test]
    fn unbounded_and_non_pointed() {
        assert_eq!(vertices_by_subsets(&HPolyhedron::orthant(2)).unwrap_err(), Error::Unbounded);
        assert_eq!(vertices_by_dd(&HPolyhedron::orthant(2), 100).unwrap_err(), Error::Unbounded);
        let mut half = HPolyhedron::new(2);
        half.add_ineq(vec![-1, 0], 0).unwrap();
        assert_eq!(extreme_rays_by_subsets(&half).unwrap_err(), Error::NotPointed);
    }

    #[test]
    fn size_limit_is_reported() {
        let l = Limits { max_vertex_n: 2, ..Limits::default() };
        assert!(matches!(enumerate_vertices(&HPolyhedron::cube(3), &l), Err(Error::LimitExceeded(_))));
    }
}
