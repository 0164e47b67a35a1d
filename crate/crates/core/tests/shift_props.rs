use geodlab_core::shift::{equilibrium_measure, pressure, weak_gibbs_audit, EdgeShift};
use proptest::prelude::*;

fn shift() -> impl Strategy<Value = EdgeShift> {
    (2usize..=4)
        .prop_flat_map(|k| (prop::collection::vec(prop::bool::weighted(0.6), k * k), prop::collection::vec(-1.0f64..1.0, k)))
        .prop_filter_map("irreducible", |(bits, phi)| {
            let k = phi.len();
            let allowed: Vec<Vec<bool>> = bits.chunks(k).map(|r| r.to_vec()).collect();
            EdgeShift::from_matrix(&allowed, &phi).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pressure_shifts_by_constant(s in shift(), kappa in -2.0f64..2.0) {
        let moved: Vec<f64> = s.phi().iter().map(|x| x + kappa).collect();
        let p0 = pressure(&s).unwrap();
        let p1 = pressure(&s.with_potential(&moved).unwrap()).unwrap();
        prop_assert!((p1 - p0 - kappa).abs() < 1e-12);
    }

    #[test]
    fn variational_identity(s in shift()) {
        let m = equilibrium_measure(&s).unwrap();
        prop_assert!((m.entropy + m.integral_phi - m.pressure).abs() < 1e-9);
        let total: f64 = m.p.iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        for (a, row) in m.transition.iter().enumerate() {
            prop_assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            for (b, &x) in row.iter().enumerate() {
                prop_assert_eq!(x > 0.0, s.allowed(a, b));
            }
        }
    }

    #[test]
    fn gibbs_ratios_bounded(s in shift()) {
        let m = equilibrium_measure(&s).unwrap();
        let a = weak_gibbs_audit(&s, &m, 8).unwrap();
        prop_assert!(a.pass);
    }
}
