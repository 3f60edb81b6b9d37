mod common;

use common::{random_forest, random_matrix, rng, test_codes};
use fundpoly::code_model::{parse_alist, parse_dense, parse_matrix, ParityCheckMatrix};
use fundpoly::Limits;
use proptest::prelude::*;

fn arb_matrix() -> impl Strategy<Value = ParityCheckMatrix> {
    (2usize..10, 1usize..7, any::<u64>()).prop_map(|(n, m, seed)| random_matrix(&mut rng(seed), n, m))
}

proptest! {
    #[test]
    fn alist_round_trip(h in arb_matrix()) {
        let text = h.to_alist();
        prop_assert_eq!(&parse_alist(&text).unwrap(), &h);
        prop_assert_eq!(&parse_matrix(&text).unwrap(), &h);
    }

    #[test]
    fn dense_round_trip(h in arb_matrix()) {
        let text = h.to_dense_text();
        prop_assert_eq!(&parse_dense(&text).unwrap(), &h);
        prop_assert_eq!(&ParityCheckMatrix::from_dense(&h.to_dense()).unwrap(), &h);
    }

    #[test]
    fn local_projection_matches_membership(h in arb_matrix(), word in prop::collection::vec(0u8..2, 10)) {
        let x = &word[..h.n()];
        for j in 0..h.m() {
            let local = h.local_codes(j).unwrap();
            let proj = local.project(x);
            prop_assert_eq!(local.contains(x), local.local_words.contains(&proj));
        }
        let all_local = (0..h.m()).all(|j| h.local_codes(j).unwrap().contains(x));
        prop_assert_eq!(all_local, h.is_codeword(x));
    }

    #[test]
    fn near_codeword_zero_syndrome_iff_codeword(h in arb_matrix(), word in prop::collection::vec(0u8..2, 10)) {
        let x = &word[..h.n()];
        let (w, s) = h.near_codeword_params(x).unwrap();
        prop_assert_eq!(w, x.iter().filter(|&&b| b == 1).count());
        prop_assert_eq!(s == 0, h.is_codeword(x));
    }

    #[test]
    fn redundant_rows_leave_the_code_unchanged(h in arb_matrix(), r in 1usize..4) {
        let limits = Limits::default();
        let big = h.redundant_expansion(r, &limits).unwrap();
        prop_assert_eq!(big.rank(), h.rank());
        prop_assert_eq!(big.enumerate_codewords(&limits).unwrap(), h.enumerate_codewords(&limits).unwrap());
    }

    #[test]
    fn forest_stopping_sets_contain_codeword_supports(seed in any::<u64>()) {
        let h = random_forest(&mut rng(seed));
        prop_assert!(h.tanner_graph().is_forest());
        let limits = Limits::default();
        let codewords = h.enumerate_codewords(&limits).unwrap();
        for mask in 1u32..(1 << h.n()) {
            let set: Vec<usize> = (0..h.n()).filter(|i| mask >> i & 1 == 1).collect();
            if h.is_stopping_set(&set).unwrap() {
                // On a tree every stopping set contains the support of a nonzero codeword.
                let covered = codewords.iter().any(|c| {
                    c.weight() > 0 && (0..h.n()).all(|i| c.bits[i] == 0 || set.contains(&i))
                });
                prop_assert!(covered, "stopping set {:?} holds no codeword support", set);
            }
        }
    }
}

#[test]
fn codeword_counts_follow_rank() {
    let limits = Limits::default();
    for (name, h) in test_codes() {
        let count = h.enumerate_codewords(&limits).unwrap().len();
        assert_eq!(count, 1usize << (h.n() - h.rank()), "{name}");
        assert!(h.enumerate_codewords(&limits).unwrap().iter().all(|c| h.is_codeword(&c.bits)), "{name}");
    }
}

#[test]
fn catalog_girths() {
    let girths: Vec<(&str, Option<usize>)> =
        test_codes().iter().map(|(name, h)| (*name, h.tanner_graph().girth())).collect();
    for (name, g) in girths {
        let g = g.unwrap_or(usize::MAX);
        assert!(g >= 4 && g % 2 == 0, "{name}: girth {g}");
    }
}

#[test]
fn malformed_inputs_are_rejected() {
    assert!(parse_alist("3 2\n").is_err());
    assert!(parse_dense("2 3\n1 0 1\n").is_err());
    assert!(parse_dense("1 3\n1 2 1\n").is_err());
    assert!(ParityCheckMatrix::from_row_supports(3, vec![vec![0, 3]]).is_err());
}
