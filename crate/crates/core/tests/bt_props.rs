use geodlab_core::bt::{
    crossratio_abs, horoball_ball_mass, point_ball_mass, transform_check, vertex_distance, vertex_distance_between,
    BTMatrix, Ball, BoundaryPoint,
};
use geodlab_core::ff::{FqPoly, QuadIrr, RatFunc};
use num_rational::BigRational;
use proptest::prelude::*;

const Q: u32 = 3;

fn poly(max_deg: usize) -> impl Strategy<Value = FqPoly> {
    prop::collection::vec(0..Q as i64, 0..=max_deg + 1).prop_map(|c| FqPoly::new(Q, &c).unwrap())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(3), poly(2)).prop_map(|(n, d)| RatFunc::new(n, if d.is_zero() { FqPoly::one(Q) } else { d }).unwrap())
}

fn matrix() -> impl Strategy<Value = BTMatrix> {
    prop::array::uniform4(ratfunc())
        .prop_filter_map("invertible", |[a, b, c, d]| BTMatrix::new([[a, b], [c, d]]).ok())
}

/// Elementary matrices in `GL₂(𝔽_q[Y])` and their products.
fn gl2() -> impl Strategy<Value = [[FqPoly; 2]; 2]> {
    prop::collection::vec((0u8..3, poly(2), 1..Q), 1..5).prop_map(|gens| {
        let (one, zero) = (FqPoly::one(Q), FqPoly::zero(Q));
        let mut g = [[one.clone(), zero.clone()], [zero.clone(), one.clone()]];
        for (kind, p, c) in gens {
            let e = match kind {
                0 => [[one.clone(), p], [zero.clone(), one.clone()]],
                1 => [[one.clone(), zero.clone()], [p, one.clone()]],
                _ => [[FqPoly::constant(c, Q), zero.clone()], [zero.clone(), one.clone()]],
            };
            g = std::array::from_fn(|i| std::array::from_fn(|j| g[i][0].mul(&e[0][j]).add(&g[i][1].mul(&e[1][j]))));
        }
        g
    })
}

fn alpha() -> QuadIrr {
    QuadIrr::from_coeffs(Q, &[1], &[0], &[0, -1, -1], false).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn distance_symmetric_under_inverse(g in matrix()) {
        prop_assert_eq!(vertex_distance(&g), vertex_distance(&g.inv()));
    }

    #[test]
    fn distance_left_invariant(h in matrix(), a in matrix(), b in matrix()) {
        prop_assert_eq!(vertex_distance_between(&h.mul(&a), &h.mul(&b)), vertex_distance_between(&a, &b));
    }

    #[test]
    fn triangle_inequality(a in matrix(), b in matrix(), c in matrix()) {
        let ab = vertex_distance_between(&a, &b);
        let bc = vertex_distance_between(&b, &c);
        let ac = vertex_distance_between(&a, &c);
        prop_assert!(ac <= ab + bc);
        prop_assert_eq!((ab + bc + ac) % 2, 0);
    }

    #[test]
    fn crossratio_invariant(g in matrix(), pts in prop::array::uniform4(ratfunc())) {
        let p: Vec<BoundaryPoint> = pts.iter().cloned().map(BoundaryPoint::Rational).collect();
        prop_assume!((0..4).all(|i| (i + 1..4).all(|j| !p[i].same_point(&p[j]))));
        let before = crossratio_abs(&p[0], &p[1], &p[2], &p[3]).unwrap();
        let img: Vec<BoundaryPoint> = p.iter().map(|x| g.act(x).unwrap()).collect();
        prop_assert_eq!(crossratio_abs(&img[0], &img[1], &img[2], &img[3]).unwrap(), before);
    }

    #[test]
    fn ball_masses_additive(c in ratfunc(), n in -3i64..4) {
        let b = Ball::new(c, n);
        let kids = b.children();
        prop_assert_eq!(kids.len(), Q as usize);
        prop_assert_eq!(kids.iter().map(point_ball_mass).sum::<BigRational>(), point_ball_mass(&b));
        prop_assert_eq!(kids.iter().map(horoball_ball_mass).sum::<BigRational>(), horoball_ball_mass(&b));
    }

    #[test]
    fn norm_form_law(g in gl2(), grid in prop::collection::vec((poly(2), poly(2)), 1..10)) {
        let grid: Vec<_> = grid.into_iter().filter(|(x, y)| !(x.is_zero() && y.is_zero())).collect();
        prop_assert!(transform_check(&alpha(), &g, &grid).unwrap().pass);
    }
}
