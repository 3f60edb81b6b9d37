mod common;

use common::{rng, test_codes};
use fundpoly::canonical_completion::*;
use fundpoly::code_model::ParityCheckMatrix;
use fundpoly::fundamental_polytope::{cone_member, ConeForm};
use fundpoly::pseudoweights::{minimum_weights, wp_awgnc_exact};
use fundpoly::rational_geometry::{int, to_f64};
use fundpoly::{Error, Limits};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// Random matrix whose rows all have weight `w_row`.
fn uniform_rows(rng: &mut impl Rng, n: usize, m: usize, w_row: usize) -> ParityCheckMatrix {
    let rows = (0..m)
        .map(|_| {
            let mut bits: Vec<usize> = (0..n).collect();
            bits.shuffle(rng);
            let mut r = bits[..w_row].to_vec();
            r.sort();
            r
        })
        .collect();
    ParityCheckMatrix::from_row_supports(n, rows).unwrap()
}

fn arb_uniform() -> impl Strategy<Value = ParityCheckMatrix> {
    (4usize..12, 1usize..8, 2usize..5, any::<u64>())
        .prop_map(|(n, m, w, seed)| uniform_rows(&mut rng(seed), n, m, w.min(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn completion_lies_in_the_cone(h in arb_uniform(), root in 0usize..12) {
        let root = root % h.n();
        let omega = canonical_completion(&h, root).unwrap().coords;
        prop_assert_eq!(&omega[root], &int(1));
        for form in ConeForm::ALL {
            prop_assert!(cone_member(&h, &omega, form).unwrap(), "{:?}", form);
        }
    }

    #[test]
    fn norms_follow_from_the_tier_profile(h in arb_uniform(), root in 0usize..12) {
        let c = completion_weight(&h, root % h.n()).unwrap();
        prop_assert_eq!(&c.l1, &c.l1_from_tiers);
        prop_assert_eq!(&c.l2_squared, &c.l2_squared_from_tiers);
        prop_assert_eq!(&c.w_awgnc, &(&c.l1 * &c.l1 / &c.l2_squared));
        prop_assert_eq!(&c.w_awgnc, &wp_awgnc_exact(&c.omega).unwrap());
        prop_assert_eq!(c.tier_profile[0], 1);
    }

    #[test]
    fn bound_grows_sublinearly(w_col in 3usize..7, extra in 1usize..6, n in 10usize..100_000) {
        let w_row = w_col + extra;
        let b = upper_bound(w_col, w_row, n).unwrap();
        let b2 = upper_bound(w_col, w_row, 2 * n).unwrap();
        prop_assert!(b.beta > 0.0 && b.beta < 1.0);
        prop_assert!(b2.value > b.value && b2.value < 2.0 * b.value);
        prop_assert!((b.value - b.beta_prime * (n as f64).powf(b.beta)).abs() <= 1e-9 * b.value);
    }
}

#[test]
fn tiers_alternate_between_bits_and_checks() {
    for (name, h) in test_codes() {
        let g = h.tanner_graph();
        for root in 0..h.n() {
            let t = bfs_tiers(&g, root).unwrap();
            for v in 0..g.num_nodes() {
                if let Some(d) = t.tier[v] {
                    assert_eq!(d % 2 == 0, g.is_variable(v), "{name} root {root} node {v}");
                }
            }
            assert_eq!(t.counts.iter().sum::<usize>(), t.tier.iter().flatten().count());
        }
        assert!(matches!(bfs_tiers(&g, h.n()), Err(Error::Precondition(_))), "{name}");
    }
}

#[test]
fn completion_needs_uniform_rows() {
    let mixed = ParityCheckMatrix::from_row_supports(4, vec![vec![0, 1, 2], vec![2, 3]]).unwrap();
    assert!(canonical_completion(&mixed, 0).is_err());
    assert!(all_roots(&mixed).is_err());
    assert!(upper_bound(2, 4, 100).is_err());
    assert!(upper_bound(4, 4, 100).is_err());
}

#[test]
fn completions_bound_the_vertex_minimum() {
    let limits = Limits::default();
    for (name, h) in test_codes() {
        if h.uniform_row_weight().is_none_or(|w| w < 2) {
            continue;
        }
        let best = all_roots(&h).unwrap().into_iter().map(|c| c.w_awgnc).min().unwrap();
        if let Some(m) = minimum_weights(&h, &limits).unwrap() {
            assert!(m.w_awgnc.value <= best, "{name}: {} > {}", to_f64(&m.w_awgnc.value), to_f64(&best));
        }
    }
}
