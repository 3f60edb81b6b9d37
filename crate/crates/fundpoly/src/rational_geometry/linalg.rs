use super::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Gauss-Jordan elimination in place; returns pivot columns among the first `ncols`.
pub(crate) fn rref(m: &mut Vec<Vec<Rat>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&k| !m[k][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// The unique solution of `rows * x = rhs`, or `None` if there is none or many.
pub fn solve_unique(rows: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = rows.first()?.len();
    let mut m: Vec<Vec<Rat>> = rows.iter().zip(rhs).map(|(r, b)| r.iter().cloned().chain([b.clone()]).collect()).collect();
    let pivots = rref(&mut m, n);
    if pivots.len() != n {
        return None;
    }
    if m[n..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    Some((0..n).map(|k| m[k][n].clone()).collect())
}

/// A basis of {x : rows * x = 0}.
pub fn nullspace(rows: &[Vec<Rat>], n: usize) -> Vec<Vec<Rat>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, n);
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Scales a rational vector to coprime integers with the same direction.
pub fn primitive_integer(v: &[Rat]) -> Vec<BigInt> {
    let l = super::common_denominator(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    primitive(ints)
}

pub(crate) fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}
