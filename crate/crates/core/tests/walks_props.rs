use geodlab_core::graph::fixtures;
use geodlab_core::walks::{d_c, d_c_star, laplacian, nbrw_exact, nbrw_sample};
use proptest::prelude::*;

fn fixture() -> impl Strategy<Value = geodlab_core::graph::GraphOfGroups> {
    prop::sample::select(vec!["figure8", "theta", "petersen", "k4", "dumbbell", "biregular23"])
        .prop_map(|n| fixtures::all().into_iter().find(|(m, _)| *m == n).unwrap().1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exact_law_is_probability(g in fixture(), v in 0usize..16, n in 0usize..40) {
        let r = nbrw_exact(&g, &g.point(v % g.num_vertices()), n).unwrap();
        prop_assert!((r.dist.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(r.dist.iter().all(|&p| p >= -1e-15));
    }

    #[test]
    fn sampling_reproducible(g in fixture(), seed in any::<u64>()) {
        let a = nbrw_sample(&g, &g.point(0), 7, 500, seed).unwrap();
        let b = nbrw_sample(&g, &g.point(0), 7, 500, seed).unwrap();
        prop_assert_eq!(a.counts.iter().sum::<u64>(), 500);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn laplacian_kills_constants_and_factors(g in fixture(), c in -3.0f64..3.0, f in prop::collection::vec(-5.0f64..5.0, 16)) {
        let k = vec![c; g.num_vertices()];
        prop_assert!(laplacian(&g, &k).iter().all(|x| x.abs() < 1e-12));
        // the factorisation needs p(e) = p(ē), which c = 0 gives on regular graphs
        let deg = g.tree_degree(0);
        prop_assume!((0..g.num_vertices()).all(|v| g.tree_degree(v) == deg));
        let f = &f[..g.num_vertices()];
        let lhs = laplacian(&g, f);
        let rhs = d_c_star(&g, &d_c(&g, f));
        for (a, b) in lhs.iter().zip(&rhs) {
            prop_assert!((a - b).abs() < 1e-9, "{} vs {}", a, b);
        }
    }
}
