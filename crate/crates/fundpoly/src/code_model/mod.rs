//! Parity-check matrices, codes and Tanner-graph combinatorics.
//!
//! Indices are 0-based throughout the API; only the on-disk formats are
//! 1-based. For check `j` the sorted bit positions are `check_support(j)`
//! (the set I_j) and for bit `i` the sorted checks are `bit_checks(i)` (J_i).

mod format;
mod graph;
mod random;

pub use format::{parse_alist, parse_dense, parse_matrix};
pub use graph::TannerGraph;
pub use random::random_regular;

use crate::gf2::{self, Bits};
use crate::{Error, Limits, Result};
use itertools::Itertools;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::path::Path;

/// An m x n binary parity-check matrix with cached row and column supports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    n: usize,
    rows: Vec<Vec<usize>>,
    cols: Vec<Vec<usize>>,
}

/// A binary word of the code defined by some parity-check matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Codeword {
    pub bits: Vec<u8>,
}

impl Codeword {
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }
}

/// The single-check codes belonging to one row of H.
///
/// `local_words` is C'_j: the even-weight words of length |I_j|, listed in
/// increasing order of their integer encoding (bit k of the integer is the
/// k-th position of I_j). C_j is C'_j extended freely on the other positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCode {
    pub check: usize,
    pub n: usize,
    pub support: Vec<usize>,
    pub local_words: Vec<Vec<u8>>,
}

impl LocalCode {
    /// Membership in C_j.
    pub fn contains(&self, x: &[u8]) -> bool {
        x.len() == self.n && self.support.iter().map(|&i| x[i] as usize).sum::<usize>() % 2 == 0
    }

    /// Projection of a length-n word onto I_j.
    pub fn project<T: Clone>(&self, x: &[T]) -> Vec<T> {
        self.support.iter().map(|&i| x[i].clone()).collect()
    }

    /// Every word of C_j; only sensible for small n.
    pub fn enumerate_full(&self, limits: &Limits) -> Result<Vec<Vec<u8>>> {
        if self.n > limits.max_exhaustive_n {
            return Err(Error::LimitExceeded(format!(
                "C_j enumeration needs n <= {}, got {}",
                limits.max_exhaustive_n, self.n
            )));
        }
        let free: Vec<usize> = (0..self.n).filter(|i| !self.support.contains(i)).collect();
        let mut out = Vec::new();
        for local in &self.local_words {
            for mask in 0u64..(1u64 << free.len()) {
                let mut x = vec![0u8; self.n];
                for (k, &i) in self.support.iter().enumerate() {
                    x[i] = local[k];
                }
                for (k, &i) in free.iter().enumerate() {
                    x[i] = ((mask >> k) & 1) as u8;
                }
                out.push(x);
            }
        }
        out.sort();
        Ok(out)
    }
}

/// All even-weight words of length `d`, ordered by integer encoding.
pub fn even_weight_words(d: usize) -> Vec<Vec<u8>> {
    (0u64..(1u64 << d))
        .filter(|w| w.count_ones() % 2 == 0)
        .map(|w| (0..d).map(|k| ((w >> k) & 1) as u8).collect())
        .collect()
}

impl ParityCheckMatrix {
    /// Builds a matrix from the bit supports of its rows.
    pub fn from_row_supports(n: usize, supports: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 || supports.is_empty() {
            return Err(Error::InvalidMatrix("matrix must have m >= 1 and n >= 1".into()));
        }
        let mut rows = Vec::with_capacity(supports.len());
        for (j, mut s) in supports.into_iter().enumerate() {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::InvalidMatrix(format!("row {} is all-zero", j + 1)));
            }
            if let Some(&bad) = s.iter().find(|&&i| i >= n) {
                return Err(Error::IndexOutOfRange(format!("row {} has column {} >= n={}", j + 1, bad, n)));
            }
            rows.push(s);
        }
        let mut cols = vec![Vec::new(); n];
        for (j, r) in rows.iter().enumerate() {
            for &i in r {
                cols[i].push(j);
            }
        }
        Ok(ParityCheckMatrix { n, rows, cols })
    }

    /// Builds a matrix from a dense 0/1 table.
    pub fn from_dense(entries: &[Vec<u8>]) -> Result<Self> {
        let n = entries.first().map_or(0, |r| r.len());
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix("ragged rows".into()));
        }
        let supports = entries
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, _)| i).collect())
            .collect();
        Self::from_row_supports(n, supports)
    }

    /// Reads an alist or dense text file (format detected from content).
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Parse { line: 0, msg: format!("{}: {e}", path.as_ref().display()) })?;
        parse_matrix(&text)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    /// I_j: the sorted bit positions of check `j`.
    pub fn check_support(&self, j: usize) -> &[usize] {
        &self.rows[j]
    }

    /// J_i: the sorted checks touching bit `i`.
    pub fn bit_checks(&self, i: usize) -> &[usize] {
        &self.cols[i]
    }

    pub fn row_supports(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn entry(&self, j: usize, i: usize) -> bool {
        self.rows[j].binary_search(&i).is_ok()
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        self.rows
            .iter()
            .map(|r| {
                let mut v = vec![0u8; self.n];
                r.iter().for_each(|&i| v[i] = 1);
                v
            })
            .collect()
    }

    pub fn row_weight(&self, j: usize) -> usize {
        self.rows[j].len()
    }

    pub fn col_weight(&self, i: usize) -> usize {
        self.cols[i].len()
    }

    pub fn max_row_weight(&self) -> usize {
        self.rows.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn uniform_row_weight(&self) -> Option<usize> {
        let w = self.rows[0].len();
        self.rows.iter().all(|r| r.len() == w).then_some(w)
    }

    pub fn uniform_col_weight(&self) -> Option<usize> {
        let w = self.cols[0].len();
        self.cols.iter().all(|c| c.len() == w).then_some(w)
    }

    pub fn num_edges(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Edges (j, i) in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.rows.iter().enumerate().flat_map(|(j, r)| r.iter().map(move |&i| (j, i))).collect()
    }

    pub fn tanner_graph(&self) -> TannerGraph {
        TannerGraph::new(self)
    }

    pub(crate) fn row_bits(&self) -> Vec<Bits> {
        self.rows.iter().map(|r| Bits::from_support(self.n, r)).collect()
    }

    /// GF(2) rank of H.
    pub fn rank(&self) -> usize {
        gf2::rank(&self.row_bits())
    }

    /// Code rate (n - rank H) / n.
    pub fn rate(&self) -> f64 {
        (self.n - self.rank()) as f64 / self.n as f64
    }

    /// x * H^T over GF(2).
    pub fn syndrome(&self, x: &[u8]) -> Result<Vec<u8>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.len() });
        }
        Ok(self.rows.iter().map(|r| (r.iter().map(|&i| x[i] as usize).sum::<usize>() % 2) as u8).collect())
    }

    pub fn is_codeword(&self, x: &[u8]) -> bool {
        self.syndrome(x).map(|s| s.iter().all(|&b| b == 0)).unwrap_or(false)
    }

    /// All codewords, sorted lexicographically.
    pub fn enumerate_codewords(&self, limits: &Limits) -> Result<Vec<Codeword>> {
        let basis = gf2::nullspace(&self.row_bits(), self.n);
        if basis.len() > limits.max_nullspace_dim && self.n > limits.max_exhaustive_n {
            return Err(Error::LimitExceeded(format!(
                "code dimension {} exceeds {} and n={} exceeds {}",
                basis.len(),
                limits.max_nullspace_dim,
                self.n,
                limits.max_exhaustive_n
            )));
        }
        let mut words: Vec<Codeword> =
            gf2::span(&basis, self.n).into_iter().map(|b| Codeword { bits: b.to_bits() }).collect();
        words.sort();
        Ok(words)
    }

    /// Minimum Hamming weight over nonzero codewords; `None` stands for infinity.
    pub fn minimum_hamming_weight(&self, limits: &Limits) -> Result<Option<usize>> {
        Ok(self.enumerate_codewords(limits)?.iter().map(Codeword::weight).filter(|&w| w > 0).min())
    }

    /// C_j and C'_j for check `j`.
    pub fn local_codes(&self, j: usize) -> Result<LocalCode> {
        if j >= self.m() {
            return Err(Error::IndexOutOfRange(format!("check {j} >= m={}", self.m())));
        }
        let support = self.rows[j].clone();
        Ok(LocalCode { check: j, n: self.n, local_words: even_weight_words(support.len()), support })
    }

    /// Whether every check touching `set` sees at least two of its bits.
    pub fn is_stopping_set(&self, set: &[usize]) -> Result<bool> {
        let mut count = vec![0usize; self.m()];
        let mut seen = vec![false; self.n];
        for &i in set {
            if i >= self.n {
                return Err(Error::IndexOutOfRange(format!("bit {i} >= n={}", self.n)));
            }
            if std::mem::replace(&mut seen[i], true) {
                continue;
            }
            for &j in &self.cols[i] {
                count[j] += 1;
            }
        }
        Ok(count.iter().all(|&c| c != 1))
    }

    /// (w, w'): Hamming weight of `x` and of its syndrome.
    pub fn near_codeword_params(&self, x: &[u8]) -> Result<(usize, usize)> {
        if let Some(&b) = x.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidArgument(format!("non-binary entry {b}")));
        }
        let s = self.syndrome(x)?;
        Ok((x.iter().filter(|&&b| b == 1).count(), s.iter().filter(|&&b| b == 1).count()))
    }

    /// All distinct nonzero GF(2) sums of at most `r` distinct rows.
    ///
    /// Rows appear in order of first occurrence: single rows first, then pair
    /// sums in lexicographic order of the row indices, and so on.
    pub fn redundant_expansion(&self, r: usize, limits: &Limits) -> Result<ParityCheckMatrix> {
        if r == 0 {
            return Err(Error::InvalidArgument("r must be at least 1".into()));
        }
        let m = self.m();
        let r = r.min(m);
        let total: u128 = (1..=r).map(|k| binomial_count(m as u128, k as u128)).sum();
        if total > limits.max_expansion_rows as u128 {
            return Err(Error::LimitExceeded(format!(
                "{total} row combinations exceed max_expansion_rows={}",
                limits.max_expansion_rows
            )));
        }
        let bits = self.row_bits();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for k in 1..=r {
            for combo in (0..m).combinations(k) {
                let mut acc = Bits::zeros(self.n);
                for &j in &combo {
                    acc.xor_assign(&bits[j]);
                }
                if !acc.is_zero() && seen.insert(acc.clone()) {
                    out.push(acc.support());
                }
            }
        }
        ParityCheckMatrix::from_row_supports(self.n, out)
    }

    /// The matrix in alist format.
    pub fn to_alist(&self) -> String {
        format::write_alist(self)
    }

    /// The matrix in the dense "m n" + 0/1 rows format.
    pub fn to_dense_text(&self) -> String {
        let mut s = format!("{} {}\n", self.m(), self.n);
        for row in self.to_dense() {
            s.extend(row.iter().map(|&b| if b == 1 { '1' } else { '0' }));
            s.push('\n');
        }
        s
    }
}

pub(crate) fn binomial_count(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, t| acc.saturating_mul(n - t) / (t + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn words(h: &ParityCheckMatrix) -> Vec<String> {
        h.enumerate_codewords(&Limits::default())
            .unwrap()
            .iter()
            .map(|c| c.bits.iter().map(|b| b.to_string()).collect())
            .collect()
    }

    #[test]
    fn trivial_code_has_only_zero_word() {
        assert_eq!(words(&catalog::trivial3()), vec!["000"]);
    }

    #[test]
    fn four_two_code_words() {
        assert_eq!(words(&catalog::code_4_2()), vec!["0000", "0110", "1011", "1101"]);
    }

    #[test]
    fn dumbbell_code_words() {
        assert_eq!(words(&catalog::dumbbell()), vec!["0000000", "0000111", "1110000", "1110111"]);
    }

    #[test]
    fn minimum_weights() {
        let l = Limits::default();
        assert_eq!(catalog::trivial3().minimum_hamming_weight(&l).unwrap(), None);
        assert_eq!(catalog::code_4_2().minimum_hamming_weight(&l).unwrap(), Some(2));
        assert_eq!(catalog::dumbbell().minimum_hamming_weight(&l).unwrap(), Some(3));
    }

    #[test]
    fn local_code_of_first_check() {
        let h = catalog::trivial3();
        let c = h.local_codes(0).unwrap();
        assert_eq!(c.support, vec![0, 1]);
        assert_eq!(c.local_words, vec![vec![0, 0], vec![1, 1]]);
        let full = c.enumerate_full(&Limits::default()).unwrap();
        assert_eq!(full.len(), 4);
        assert!(full.iter().all(|x| x[0] == x[1]));
    }

    #[test]
    fn degenerate_local_codes() {
        let h = ParityCheckMatrix::from_row_supports(2, vec![vec![1]]).unwrap();
        assert_eq!(h.local_codes(0).unwrap().local_words, vec![vec![0]]);
        assert_eq!(catalog::code_4_2().local_codes(1).unwrap().local_words.len(), 4);
        assert!(h.local_codes(3).is_err());
    }

    #[test]
    fn stopping_sets() {
        let h = catalog::trivial3();
        assert!(!h.is_stopping_set(&[0]).unwrap());
        assert!(h.is_stopping_set(&[]).unwrap());
        assert!(catalog::dumbbell().is_stopping_set(&[0, 1, 2]).unwrap());
        assert!(h.is_stopping_set(&[7]).is_err());
    }

    #[test]
    fn near_codeword_parameters() {
        let h = catalog::dumbbell();
        assert_eq!(h.near_codeword_params(&[1, 1, 1, 0, 0, 0, 0]).unwrap(), (3, 0));
        assert_eq!(h.near_codeword_params(&[0, 0, 0, 1, 0, 0, 0]).unwrap(), (1, 2));
        assert_eq!(h.near_codeword_params(&[0; 7]).unwrap(), (0, 0));
    }

    #[test]
    fn expansion_of_trivial_code() {
        let l = Limits::default();
        let h = catalog::trivial3();
        assert_eq!(h.redundant_expansion(1, &l).unwrap(), h);
        assert_eq!(h.redundant_expansion(2, &l).unwrap().m(), 6);
        let full = catalog::code_4_2().redundant_expansion(2, &l).unwrap();
        assert_eq!(full.m(), 3);
    }

    #[test]
    fn zero_rows_rejected() {
        assert!(ParityCheckMatrix::from_dense(&[vec![1, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn rate_uses_rank() {
        let h = catalog::dumbbell();
        assert_eq!(h.rank(), 5);
        assert!((h.rate() - 2.0 / 7.0).abs() < 1e-15);
    }
}
