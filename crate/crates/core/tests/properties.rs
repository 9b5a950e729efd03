mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use prn_core::algebra::{product, sum, Combiner};
use prn_core::netio::{matrix_from_csv, matrix_to_csv, parse_network, serialize_network};
use prn_core::subnet::{invariant_subnetworks, invariant_subsets_by_scan, DEFAULT_SUBNET_CAP};
use prn_core::{
    check_homomorphism, compose_morphisms, enumerate_homomorphisms, recurrent_classes,
    steady_state, transition_matrix, EnumOptions, Prn, StateMap,
};

use common::random_prn;

fn network(seed: u64, name: &str, states: usize, fns: usize) -> Prn {
    random_prn(&mut ChaCha8Rng::seed_from_u64(seed), name, states, fns)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rows_are_stochastic(seed in any::<u64>()) {
        let t = transition_matrix(&network(seed, "x", 8, 5));
        for row in t.rows() {
            prop_assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            prop_assert!(row.iter().all(|&p| p >= 0.0));
        }
    }

    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let n = network(seed, "x", 7, 4);
        let text = serialize_network(&n);
        let back = parse_network(&text).unwrap();
        prop_assert_eq!(&back, &n);
        prop_assert_eq!(serialize_network(&back), text);
    }

    #[test]
    fn csv_round_trip(seed in any::<u64>()) {
        let t = transition_matrix(&network(seed, "x", 6, 4));
        prop_assert_eq!(matrix_from_csv(&matrix_to_csv(&t).unwrap()).unwrap(), t);
    }

    #[test]
    fn identity_is_exact(seed in any::<u64>()) {
        let n = network(seed, "x", 6, 4);
        let c = check_homomorphism(&n, &n, &StateMap::identity(&n)).unwrap();
        prop_assert_eq!(c.epsilon, Some(0.0));
        prop_assert!(c.is_isomorphism);
    }

    #[test]
    fn inclusions_into_sum_are_exact(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (network(a, "a", 5, 3), network(b, "b", 5, 3));
        let s = sum(&x, &y).unwrap();
        for (src, iota) in [(&x, &s.iota1), (&y, &s.iota2)] {
            let c = check_homomorphism(src, &s.network, iota).unwrap();
            prop_assert!(c.holds());
            // each summand function is split over the other summand's
            // functions, so arcs keep their weight
            prop_assert!(c.epsilon.unwrap() <= 1e-12);
        }
    }

    #[test]
    fn product_projections_hold(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (network(a, "a", 4, 3), network(b, "b", 4, 3));
        for combiner in [Combiner::Product, Combiner::Average] {
            let p = product(&x, &y, &combiner).unwrap();
            prop_assert!(check_homomorphism(&p.network, &x, &p.pi1).unwrap().holds());
            prop_assert!(check_homomorphism(&p.network, &y, &p.pi2).unwrap().holds());
        }
    }

    #[test]
    fn invariant_family_matches_scan(seed in any::<u64>()) {
        let n = network(seed, "x", 7, 3);
        let report = invariant_subnetworks(&n, DEFAULT_SUBNET_CAP).unwrap();
        prop_assert!(report.lattice_closed);
        prop_assert_eq!(report.invariant_sets, invariant_subsets_by_scan(&n).unwrap());
    }

    #[test]
    fn steady_state_is_fixed(seed in any::<u64>()) {
        let n = network(seed, "x", 6, 4);
        let t = transition_matrix(&n);
        if recurrent_classes(&t).len() == 1 {
            let pi = steady_state(&t, 1e-13, 1_000_000).unwrap().weights;
            for v in 0..t.dim() {
                let next: f64 = (0..t.dim()).map(|u| pi[u] * t.get(u, v)).sum();
                prop_assert!((next - pi[v]).abs() < 1e-9);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn composition_bound(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (x, y, z) = (network(a, "a", 3, 3), network(b, "b", 3, 3), network(c, "c", 3, 3));
        let opts = EnumOptions::default();
        let first = enumerate_homomorphisms(&x, &y, &opts).unwrap();
        let second = enumerate_homomorphisms(&y, &z, &opts).unwrap();
        for p1 in &first {
            for p2 in &second {
                let k = compose_morphisms(&x, &y, &z, p1, p2).unwrap();
                let bound = p1.epsilon.unwrap() + p2.epsilon.unwrap();
                prop_assert!(k.holds());
                prop_assert!(k.epsilon.unwrap() <= bound + 1e-12);
            }
        }
    }
}
