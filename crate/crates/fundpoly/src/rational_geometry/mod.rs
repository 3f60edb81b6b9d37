//! Exact rational polyhedral computation.
//!
//! Polyhedra are stored in H-representation with integer coefficients and
//! every computation here is carried out over the rationals. Floating point
//! only enters through [`lp_minimize_f64`], where the objective is real
//! valued but the constraint data stays exact.

mod dd;
mod enumerate;
mod linalg;
mod simplex;

pub use enumerate::{
    enumerate_extreme_rays, enumerate_vertices, extreme_rays_by_dd, extreme_rays_by_subsets, vertices_by_dd,
    vertices_by_subsets,
};
pub use linalg::{nullspace, primitive_integer, rank, solve_unique};
pub use simplex::{lp_minimize, lp_minimize_f64, LpSolution, PreparedLp};

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// An exact rational number, always kept in lowest terms with a positive denominator.
pub type Rat = BigRational;
/// A vector of exact rationals.
pub type RatVec = Vec<Rat>;

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

pub fn rat_vec(v: &[(i64, i64)]) -> RatVec {
    v.iter().map(|&(p, q)| rat(p, q)).collect()
}

pub fn int_vec(v: &[i64]) -> RatVec {
    v.iter().map(|&p| int(p)).collect()
}

/// Parses "p/q", "p" or a finite decimal such as "0.25".
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = whole.starts_with('-');
        let w: BigInt = if whole.is_empty() || whole == "-" { BigInt::zero() } else { whole.parse().map_err(|_| bad())? };
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let mag = Rat::new(w.abs() * &scale + f, scale);
        return Ok(if neg { -mag } else { mag });
    }
    Ok(Rat::from_integer(s.parse().map_err(|_| bad())?))
}

/// Formats as "p/q", or "p" for integers.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn fmt_vec(v: &[Rat]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

pub fn parse_vec(s: &str) -> Result<RatVec> {
    s.trim().trim_start_matches('(').trim_end_matches(')').split(',').map(parse_rat).collect()
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn to_f64_vec(v: &[Rat]) -> Vec<f64> {
    v.iter().map(to_f64).collect()
}

/// Least common multiple of all denominators.
pub fn common_denominator(v: &[Rat]) -> BigInt {
    use num_integer::Integer;
    v.iter().fold(BigInt::from(1), |acc, r| acc.lcm(r.denom()))
}

pub(crate) fn dot_int(a: &[i64], x: &[Rat]) -> Rat {
    let mut num = Rat::zero();
    for (ai, xi) in a.iter().zip(x) {
        if *ai != 0 {
            num += xi * Rat::from_integer(BigInt::from(*ai));
        }
    }
    num
}

/// Serde adapter writing rational vectors as arrays of "p/q" strings.
pub mod ratvec_serde {
    use super::{fmt_rat, parse_rat, Rat};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(fmt_rat))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| parse_rat(s).map_err(serde::de::Error::custom)).collect()
    }
}

/// Serde adapter for a single rational as a "p/q" string.
pub mod rat_serde {
    use super::{fmt_rat, parse_rat, Rat};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        parse_rat(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// One linear constraint `a . x (<= or =) b` with integer data.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Constraint {
    pub a: Vec<i64>,
    pub b: i64,
}

/// A polyhedron {x : A x <= b, C x = d} in R^n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPolyhedron {
    pub n: usize,
    pub ineqs: Vec<Constraint>,
    pub eqs: Vec<Constraint>,
}

impl HPolyhedron {
    pub fn new(n: usize) -> Self {
        HPolyhedron { n, ineqs: Vec::new(), eqs: Vec::new() }
    }

    /// The unit cube [0,1]^n.
    pub fn cube(n: usize) -> Self {
        let mut p = HPolyhedron::new(n);
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = -1;
            p.ineqs.push(Constraint { a: e.clone(), b: 0 });
            e[i] = 1;
            p.ineqs.push(Constraint { a: e, b: 1 });
        }
        p
    }

    /// The nonnegative orthant.
    pub fn orthant(n: usize) -> Self {
        let mut p = HPolyhedron::new(n);
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = -1;
            p.ineqs.push(Constraint { a: e, b: 0 });
        }
        p
    }

    pub fn add_ineq(&mut self, a: Vec<i64>, b: i64) -> Result<()> {
        self.check_len(a.len())?;
        self.ineqs.push(Constraint { a, b });
        Ok(())
    }

    pub fn add_eq(&mut self, a: Vec<i64>, b: i64) -> Result<()> {
        self.check_len(a.len())?;
        self.eqs.push(Constraint { a, b });
        Ok(())
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: len });
        }
        Ok(())
    }

    pub fn num_constraints(&self) -> usize {
        self.ineqs.len() + self.eqs.len()
    }

    /// True when every right-hand side is zero, i.e. the set is a cone.
    pub fn is_homogeneous(&self) -> bool {
        self.ineqs.iter().chain(&self.eqs).all(|c| c.b == 0)
    }

    /// Exact membership test.
    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        self.check_len(x.len())?;
        Ok(self.ineqs.iter().all(|c| dot_int(&c.a, x) <= int(c.b)) && self.eqs.iter().all(|c| dot_int(&c.a, x) == int(c.b)))
    }

    /// Indices of inequalities tight at `x`.
    pub fn active_set(&self, x: &[Rat]) -> Vec<usize> {
        (0..self.ineqs.len()).filter(|&k| dot_int(&self.ineqs[k].a, x) == int(self.ineqs[k].b)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_membership() {
        let c = HPolyhedron::cube(3);
        assert!(c.contains(&rat_vec(&[(1, 2), (1, 2), (1, 2)])).unwrap());
        assert!(!c.contains(&rat_vec(&[(3, 2), (0, 1), (0, 1)])).unwrap());
        assert!(c.contains(&int_vec(&[1, 1])).is_err());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rat("2/3").unwrap(), rat(2, 3));
        assert_eq!(parse_rat("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(parse_rat("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rat("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat("7").unwrap(), int(7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(fmt_rat(&rat(4, 6)), "2/3");
        assert_eq!(fmt_rat(&int(-3)), "-3");
        assert_eq!(parse_vec("(1/2, 1,0)").unwrap(), rat_vec(&[(1, 2), (1, 1), (0, 1)]));
    }
}
