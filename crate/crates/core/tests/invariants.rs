//! Randomised invariants on permutations beyond exhaustive range.

use proptest::prelude::*;

use pipedream::degree::{lambda_filled, psw_degree, rho_a, rrw_degree, tau};
use pipedream::{Bpd, Permutation};

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|w| Permutation::from_one_line(&w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn codes_are_consistent(p in permutation(9)) {
        let (c, r) = (p.lehmer_code(), p.rajchgot_code());
        prop_assert_eq!(c.sum(), p.length());
        for i in 1..=p.n() {
            prop_assert!(c.get(i) <= r.get(i));
            prop_assert!(r.get(i) <= p.n() - i);
        }
        prop_assert_eq!(p.inverse().compose(&p), Permutation::identity(p.n()));
    }

    #[test]
    fn rothe_round_trips(p in permutation(9)) {
        let b = Bpd::rothe(&p);
        prop_assert_eq!(b.permutation_of(), p.clone());
        prop_assert!(b.up_elbows().is_empty());
        prop_assert_eq!(b.blanks().len(), p.length());
        let reparsed = Bpd::parse_ascii(&b.render_ascii()).unwrap();
        prop_assert_eq!(reparsed, b);
    }

    #[test]
    fn shape_degree_matches_code_degree(p in permutation(9)) {
        prop_assume!(p.is_vexillary());
        prop_assert_eq!(rrw_degree(&p).unwrap(), psw_degree(&p));
        let shape = lambda_filled(&p).unwrap();
        let rho: Vec<usize> = (1..=p.n()).map(|k| rho_a(&tau(&shape, k))).collect();
        prop_assert!(rho.windows(2).all(|w| w[0] >= w[1]));
    }
}
