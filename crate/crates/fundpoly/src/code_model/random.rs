use super::ParityCheckMatrix;
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::Rng;

/// A random (w_col, w_row)-regular matrix whose Tanner graph has no 4-cycles.
///
/// Bits are attached one at a time to distinct checks with spare capacity,
/// never to a check that already shares a bit with another chosen check of
/// the same bit. A failed attempt restarts from scratch.
pub fn random_regular<R: Rng>(n: usize, w_col: usize, w_row: usize, rng: &mut R) -> Result<ParityCheckMatrix> {
    if w_col == 0 || w_row < 2 || (n * w_col) % w_row != 0 {
        return Err(Error::InvalidArgument(format!("no ({w_col},{w_row})-regular matrix with n={n}")));
    }
    let m = n * w_col / w_row;
    'attempt: for _ in 0..2000 {
        let mut rows: Vec<Vec<usize>> = vec![Vec::new(); m];
        // bits_sharing[j] = set of checks that share a bit with check j
        let mut linked = vec![vec![false; m]; m];
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        for &i in &order {
            let mut chosen: Vec<usize> = Vec::with_capacity(w_col);
            for _ in 0..w_col {
                let spare = |j: usize| w_row - rows[j].len();
                let mut cands: Vec<usize> = (0..m)
                    .filter(|&j| spare(j) > 0 && !chosen.contains(&j) && chosen.iter().all(|&c| !linked[c][j]))
                    .collect();
                if cands.is_empty() {
                    continue 'attempt;
                }
                cands.shuffle(rng);
                let best = cands.iter().map(|&j| spare(j)).max().unwrap();
                let j = *cands.iter().find(|&&j| spare(j) == best).unwrap();
                chosen.push(j);
            }
            for (a, &ja) in chosen.iter().enumerate() {
                rows[ja].push(i);
                for &jb in &chosen[a + 1..] {
                    linked[ja][jb] = true;
                    linked[jb][ja] = true;
                }
            }
        }
        return ParityCheckMatrix::from_row_supports(n, rows);
    }
    Err(Error::Internal("could not build a 4-cycle-free regular matrix".into()))
}
