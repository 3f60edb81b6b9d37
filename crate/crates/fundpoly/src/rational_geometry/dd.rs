//! Double description method for pointed cones {x : A x >= 0} with integer data.

use super::linalg::{primitive, rref};
use super::Rat;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Clone)]
struct Ray {
    v: Vec<BigInt>,
    zero: Vec<u64>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum()
}

fn set_bit(s: &mut [u64], k: usize) {
    s[k / 64] |= 1 << (k % 64);
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn popcount(a: &[u64]) -> usize {
    a.iter().map(|w| w.count_ones() as usize).sum()
}

/// Extreme rays of the pointed cone {x : row . x >= 0 for every row}, each a
/// primitive integer vector. Rows are added in the given order.
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>], n: usize, max_rays: usize) -> Result<Vec<Vec<BigInt>>> {
    let words = rows.len().div_ceil(64).max(1);
    // Greedily pick n independent rows to seed the cone with a simplicial one.
    let mut basis_rows: Vec<usize> = Vec::new();
    let mut echelon: Vec<Vec<Rat>> = Vec::new();
    for (k, r) in rows.iter().enumerate() {
        let mut trial = echelon.clone();
        trial.push(r.iter().map(|x| Rat::from_integer(x.clone())).collect());
        let rank = rref(&mut trial, n).len();
        if rank > echelon.len() {
            trial.truncate(rank);
            echelon = trial;
            basis_rows.push(k);
            if basis_rows.len() == n {
                break;
            }
        }
    }
    if basis_rows.len() < n {
        return Err(Error::NotPointed);
    }
    // Columns of the inverse of the seed block are its extreme rays.
    let mut aug: Vec<Vec<Rat>> = basis_rows
        .iter()
        .enumerate()
        .map(|(p, &k)| {
            let mut row: Vec<Rat> = rows[k].iter().map(|x| Rat::from_integer(x.clone())).collect();
            row.extend((0..n).map(|q| Rat::from_integer(BigInt::from((p == q) as i64))));
            row
        })
        .collect();
    rref(&mut aug, n);
    let mut rays: Vec<Ray> = (0..n)
        .map(|q| {
            let col: Vec<Rat> = (0..n).map(|r| aug[r][n + q].clone()).collect();
            let v = super::linalg::primitive_integer(&col);
            let mut zero = vec![0u64; words];
            for &k in &basis_rows {
                if dot(&rows[k], &v).is_zero() {
                    set_bit(&mut zero, k);
                }
            }
            Ray { v, zero }
        })
        .collect();
    let mut in_basis = vec![false; rows.len()];
    basis_rows.iter().for_each(|&k| in_basis[k] = true);

    for (k, row) in rows.iter().enumerate() {
        if in_basis[k] {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&t| vals[t].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&t| vals[t].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        for t in 0..rays.len() {
            if !vals[t].is_negative() {
                let mut r = rays[t].clone();
                if vals[t].is_zero() {
                    set_bit(&mut r.zero, k);
                }
                next.push(r);
            }
        }
        for &p in &pos {
            for &q in &neg {
                let common: Vec<u64> = rays[p].zero.iter().zip(&rays[q].zero).map(|(a, b)| a & b).collect();
                if popcount(&common) + 2 < n {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|t| t == p || t == q || !is_subset(&common, &rays[t].zero));
                if !adjacent {
                    continue;
                }
                let v: Vec<BigInt> =
                    rays[q].v.iter().zip(&rays[p].v).map(|(a, b)| &vals[p] * a - &vals[q] * b).collect();
                let mut zero = common;
                set_bit(&mut zero, k);
                next.push(Ray { v: primitive(v), zero });
            }
        }
        if next.len() > max_rays {
            return Err(Error::LimitExceeded(format!("double description holds {} rays", next.len())));
        }
        rays = next;
    }
    Ok(rays.into_iter().map(|r| r.v).collect())
}
