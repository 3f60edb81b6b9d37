//! Two-phase tableau simplex over the rationals with Bland's pivoting rule.

use super::{to_f64, HPolyhedron, Rat, RatVec};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Scalar type for objective coefficients and reduced costs.
trait Cost: Clone {
    fn zero_like(&self) -> Self;
    fn neg(&self) -> Self;
    fn is_exact_zero(&self) -> bool;
    /// `self -= s * c`
    fn sub_scaled(&mut self, c: &Self, s: &Rat);
    /// Sign with tolerance `tol` (ignored by exact types).
    fn sign(&self, tol: f64) -> i8;
}

impl Cost for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    fn sub_scaled(&mut self, c: &Self, s: &Rat) {
        *self -= c * s;
    }
    fn sign(&self, _tol: f64) -> i8 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
}

impl Cost for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn is_exact_zero(&self) -> bool {
        *self == 0.0
    }
    fn sub_scaled(&mut self, c: &Self, s: &Rat) {
        *self -= c * to_f64(s);
    }
    fn sign(&self, tol: f64) -> i8 {
        if *self > tol {
            1
        } else if *self < -tol {
            -1
        } else {
            0
        }
    }
}

/// Lexicographically ordered cost vector, used to pick the lexicographically
/// extreme point of an optimal face.
#[derive(Clone)]
struct Lex(Vec<Rat>);

impl Cost for Lex {
    fn zero_like(&self) -> Self {
        Lex(vec![Rat::zero(); self.0.len()])
    }
    fn neg(&self) -> Self {
        Lex(self.0.iter().map(|x| -x.clone()).collect())
    }
    fn is_exact_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
    fn sub_scaled(&mut self, c: &Self, s: &Rat) {
        for (a, b) in self.0.iter_mut().zip(&c.0) {
            if !b.is_zero() {
                *a -= b * s;
            }
        }
    }
    fn sign(&self, _tol: f64) -> i8 {
        self.0.iter().find(|x| !x.is_zero()).map_or(0, |x| if x.is_positive() { 1 } else { -1 })
    }
}

const MAX_PIVOTS: usize = 1_000_000;

#[derive(Debug, Clone)]
struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for k in 0..self.rows.len() {
            if k == r || self.rows[k][c].is_zero() {
                continue;
            }
            let f = self.rows[k][c].clone();
            for (x, p) in self.rows[k].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            self.rhs[k] -= &f * &prhs;
        }
        self.is_basic[self.basis[r]] = false;
        self.basis[r] = c;
        self.is_basic[c] = true;
    }

    fn reduced_cost<C: Cost>(&self, costs: &[C], j: usize) -> C {
        let mut d = costs[j].clone();
        for (r, row) in self.rows.iter().enumerate() {
            let cb = &costs[self.basis[r]];
            if !cb.is_exact_zero() && !row[j].is_zero() {
                d.sub_scaled(cb, &row[j]);
            }
        }
        d
    }

    /// Bland's rule: lowest-index improving column enters; among tied ratios
    /// the lowest-index basic variable leaves.
    fn optimize<C: Cost>(&mut self, costs: &[C], allowed: &[bool], tol: f64) -> Result<()> {
        for _ in 0..MAX_PIVOTS {
            let entering = (0..self.ncols)
                .find(|&j| allowed[j] && !self.is_basic[j] && self.reduced_cost(costs, j).sign(tol) < 0);
            let Some(j) = entering else { return Ok(()) };
            let mut best: Option<(usize, Rat)> = None;
            for r in 0..self.rows.len() {
                if !self.rows[r][j].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / &self.rows[r][j];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let Some((r, _)) = best else { return Err(Error::Unbounded) };
            self.pivot(r, j);
        }
        Err(Error::Internal("simplex pivot limit reached".into()))
    }

    fn value_of(&self, col: usize) -> Rat {
        self.basis.iter().position(|&b| b == col).map_or_else(Rat::zero, |r| self.rhs[r].clone())
    }
}

/// Result of a linear program.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution<C> {
    /// Optimal objective value.
    pub value: C,
    /// Optimal vertex; the lexicographically smallest one when the optimum is not unique.
    pub point: RatVec,
    /// Whether the optimal face contains more than one point.
    pub tie: bool,
}

/// A polyhedron converted to standard form with a feasible basis already found.
///
/// Phase one does not depend on the objective, so repeated solves over the
/// same polyhedron only pay for phase two.
#[derive(Debug, Clone)]
pub struct PreparedLp {
    n: usize,
    tab: Tableau,
    plus: Vec<usize>,
    minus: Vec<Option<usize>>,
}

impl PreparedLp {
    pub fn new(p: &HPolyhedron) -> Result<Self> {
        let n = p.n;
        // Variables with an explicit lower bound x_i >= c >= 0 need no split.
        let mut nonneg = vec![false; n];
        let mut dropped = vec![false; p.ineqs.len()];
        for (k, c) in p.ineqs.iter().enumerate() {
            let nz: Vec<usize> = (0..n).filter(|&i| c.a[i] != 0).collect();
            if nz.len() == 1 && c.a[nz[0]] < 0 && c.b <= 0 {
                nonneg[nz[0]] = true;
                dropped[k] = c.b == 0;
            }
        }
        let mut ncols = 0;
        let mut plus = Vec::with_capacity(n);
        let mut minus = Vec::with_capacity(n);
        for &nn in &nonneg {
            plus.push(ncols);
            ncols += 1;
            minus.push(if nn {
                None
            } else {
                ncols += 1;
                Some(ncols - 1)
            });
        }
        struct Row {
            coef: Vec<(usize, i64)>,
            b: i64,
            slack: Option<usize>,
        }
        let mut rows = Vec::new();
        let expand = |a: &[i64]| {
            let mut coef = Vec::new();
            for i in 0..n {
                if a[i] != 0 {
                    coef.push((plus[i], a[i]));
                    if let Some(mc) = minus[i] {
                        coef.push((mc, -a[i]));
                    }
                }
            }
            coef
        };
        for (k, c) in p.ineqs.iter().enumerate() {
            if dropped[k] {
                continue;
            }
            rows.push(Row { coef: expand(&c.a), b: c.b, slack: Some(ncols) });
            ncols += 1;
        }
        for c in &p.eqs {
            rows.push(Row { coef: expand(&c.a), b: c.b, slack: None });
        }
        let n_real = ncols;
        let needs_art: Vec<bool> = rows.iter().map(|r| r.slack.is_none() || r.b < 0).collect();
        let n_art = needs_art.iter().filter(|&&x| x).count();
        let total = n_real + n_art;
        let mut tab = Tableau {
            rows: Vec::with_capacity(rows.len()),
            rhs: Vec::with_capacity(rows.len()),
            basis: Vec::with_capacity(rows.len()),
            is_basic: vec![false; total],
            ncols: total,
        };
        let mut art = n_real;
        for (row, &na) in rows.iter().zip(&needs_art) {
            let sign: i64 = if row.b < 0 { -1 } else { 1 };
            let mut v = vec![Rat::zero(); total];
            for &(c, a) in &row.coef {
                v[c] += Rat::from_integer(BigInt::from(sign * a));
            }
            if let Some(s) = row.slack {
                v[s] = Rat::from_integer(BigInt::from(sign));
            }
            let b = Rat::from_integer(BigInt::from(sign * row.b));
            let basic = if na {
                v[art] = Rat::from_integer(BigInt::from(1));
                art += 1;
                art - 1
            } else {
                row.slack.unwrap()
            };
            tab.rows.push(v);
            tab.rhs.push(b);
            tab.basis.push(basic);
            tab.is_basic[basic] = true;
        }
        if n_art > 0 {
            let costs: Vec<Rat> = (0..total).map(|j| Rat::from_integer(BigInt::from((j >= n_real) as i64))).collect();
            tab.optimize(&costs, &vec![true; total], 0.0)?;
            if (0..tab.rows.len()).any(|r| tab.basis[r] >= n_real && !tab.rhs[r].is_zero()) {
                return Err(Error::Empty);
            }
            let mut redundant = Vec::new();
            for r in 0..tab.rows.len() {
                if tab.basis[r] < n_real {
                    continue;
                }
                match (0..n_real).find(|&j| !tab.rows[r][j].is_zero()) {
                    Some(j) => tab.pivot(r, j),
                    None => redundant.push(r),
                }
            }
            for &r in redundant.iter().rev() {
                let b = tab.basis.remove(r);
                tab.is_basic[b] = false;
                tab.rows.remove(r);
                tab.rhs.remove(r);
            }
            for row in tab.rows.iter_mut() {
                row.truncate(n_real);
            }
            tab.is_basic.truncate(n_real);
            tab.ncols = n_real;
        }
        Ok(PreparedLp { n, tab, plus, minus })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn point(&self, tab: &Tableau) -> RatVec {
        (0..self.n)
            .map(|i| {
                let v = tab.value_of(self.plus[i]);
                match self.minus[i] {
                    Some(mc) => v - tab.value_of(mc),
                    None => v,
                }
            })
            .collect()
    }

    fn column_costs<C: Cost>(&self, cx: &[C]) -> Vec<C> {
        let zero = cx[0].zero_like();
        let mut costs = vec![zero; self.tab.ncols];
        for i in 0..self.n {
            costs[self.plus[i]] = cx[i].clone();
            if let Some(mc) = self.minus[i] {
                costs[mc] = cx[i].neg();
            }
        }
        costs
    }

    fn solve<C: Cost>(&self, cx: &[C], tol: f64) -> Result<(RatVec, bool)> {
        if cx.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: cx.len() });
        }
        if self.n == 0 {
            return Ok((Vec::new(), false));
        }
        let costs = self.column_costs(cx);
        let mut tab = self.tab.clone();
        tab.optimize(&costs, &vec![true; tab.ncols], tol)?;
        // Complementary slackness: the optimal face is where every column with
        // a strictly positive reduced cost stays at zero.
        let face: Vec<bool> =
            (0..tab.ncols).map(|j| tab.is_basic[j] || tab.reduced_cost(&costs, j).sign(tol) == 0).collect();
        if face.iter().zip(&tab.is_basic).all(|(f, b)| !f || *b) {
            return Ok((self.point(&tab), false));
        }
        let lex: Vec<Lex> = (0..self.n)
            .map(|i| {
                let mut e = vec![Rat::zero(); self.n];
                e[i] = Rat::from_integer(BigInt::from(1));
                Lex(e)
            })
            .collect();
        let lex_costs = self.column_costs(&lex);
        let lex_neg: Vec<Lex> = lex_costs.iter().map(Cost::neg).collect();
        let mut lo = tab.clone();
        let mut hi = tab.clone();
        match (lo.optimize(&lex_costs, &face, 0.0), hi.optimize(&lex_neg, &face, 0.0)) {
            (Ok(()), Ok(())) => {
                let a = self.point(&lo);
                let tie = a != self.point(&hi);
                Ok((a, tie))
            }
            _ => Ok((self.point(&tab), true)),
        }
    }

    /// Minimizes an exact rational objective.
    pub fn minimize(&self, c: &[Rat]) -> Result<LpSolution<Rat>> {
        let (point, tie) = self.solve(c, 0.0)?;
        let value = c.iter().zip(&point).map(|(a, b)| a * b).sum();
        Ok(LpSolution { value, point, tie })
    }

    /// Minimizes a real objective; reduced costs within `1e-9 * max(1, max|c_i|)` count as zero.
    pub fn minimize_f64(&self, c: &[f64]) -> Result<LpSolution<f64>> {
        if c.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("objective must be finite".into()));
        }
        let scale = c.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        let (point, tie) = self.solve(c, 1e-9 * scale)?;
        let value = c.iter().zip(&point).map(|(a, b)| a * to_f64(b)).sum();
        Ok(LpSolution { value, point, tie })
    }
}

/// Minimizes `c . x` over `p` exactly.
pub fn lp_minimize(p: &HPolyhedron, c: &[Rat]) -> Result<LpSolution<Rat>> {
    PreparedLp::new(p)?.minimize(c)
}

/// Minimizes a real objective over `p` with exact constraint data.
pub fn lp_minimize_f64(p: &HPolyhedron, c: &[f64]) -> Result<LpSolution<f64>> {
    PreparedLp::new(p)?.minimize_f64(c)
}
