use geodlab_core::graph::{fixtures, volumes};
use geodlab_core::perp::{count_perpendiculars, PerpQuery};
use geodlab_core::shift::{pressure, EdgeShift};
use proptest::prelude::*;

fn fixture() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["figure8", "theta", "petersen", "k4", "dumbbell", "biregular23"])
}

fn get(name: &str) -> geodlab_core::graph::GraphOfGroups {
    fixtures::all().into_iter().find(|(n, _)| *n == name).unwrap().1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relabeling_preserves_invariants(name in fixture(), seed in any::<u64>()) {
        let g = get(name);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let mut vperm: Vec<usize> = (0..g.num_vertices()).collect();
        let mut eperm: Vec<usize> = (0..g.num_edges()).collect();
        rand::seq::SliceRandom::shuffle(vperm.as_mut_slice(), &mut rng);
        rand::seq::SliceRandom::shuffle(eperm.as_mut_slice(), &mut rng);
        let h = g.relabeled(&vperm, &eperm);
        let (vg, vh) = (volumes(&g), volumes(&h));
        prop_assert_eq!(&vg.vol, &vh.vol);
        prop_assert_eq!(&vg.tvol, &vh.tvol);
        for v in 0..g.num_vertices() {
            prop_assert_eq!(vg.degrees[v], vh.degrees[vperm[v]]);
        }
        let (pg, ph) = (pressure(&EdgeShift::from_graph(&g).unwrap()).unwrap(), pressure(&EdgeShift::from_graph(&h).unwrap()).unwrap());
        prop_assert!((pg - ph).abs() < 1e-12);
        let a = count_perpendiculars(&PerpQuery::points(&g, 0, 0, 10)).unwrap();
        let b = count_perpendiculars(&PerpQuery::points(&h, vperm[0], vperm[0], 10)).unwrap();
        prop_assert_eq!(a.counts, b.counts);
    }

    #[test]
    fn reversal_involution(name in fixture()) {
        let g = get(name);
        for e in 0..g.num_edges() {
            prop_assert_eq!(g.reverse(g.reverse(e)), e);
            prop_assert_eq!(g.origin(g.reverse(e)), g.terminus(e));
        }
    }
}
