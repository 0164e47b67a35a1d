//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so every line lands in the test
//! log. The process fails only on unexpected failures; criterion 3 checks a
//! closed form that the exact counts do not support and is reported as a
//! known failure together with the assembled constant that does match.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use geodlab_core::bt::{
    covolume_suite, displacement_translation_length, farey_count, hecke_index, hecke_index_enumerated,
    horoball_height, lattice_index_distance, patterson_total_mass, point_ball_mass, shell_total_mass,
    transform_check, translation_length, vertex_distance, BTMatrix, Ball,
};
use geodlab_core::ff::{mertens_closed_form, mertens_sum, monic_degree_phi_sum, FqPoly, QuadIrr, RatFunc};
use geodlab_core::graph::{fixtures, GraphOfGroups};
use geodlab_core::perp::{
    bicyclette_constant, closed_orbit_count, conjugacy_count, count_perpendiculars, theoretical_constant, PerpQuery,
};
use geodlab_core::seed::stream_rng;
use geodlab_core::shift::{
    brute_force_equilibrium, equilibrium_measure, pressure, tv_two_cylinders, weak_gibbs_audit, EdgeShift,
};
use geodlab_core::walks::{green_ratio_check, nbrw_exact, nbrw_sample, tree_harmonic_measure, TreeWalkKernel};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240611;

/// Known failures: the criterion is checked as stated and expected to fail.
const EXPECTED_FAIL: &[u32] = &[3];

type Outcome = Result<(bool, String), String>;

fn within(x: f64, target: f64, rel: f64) -> bool {
    ((x - target) / target).abs() <= rel
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c1() -> Outcome {
    let g = fixtures::figure8();
    let (series, dt) = timed(|| count_perpendiculars(&PerpQuery::points(&g, 0, 0, 15)));
    let series = series.map_err(s)?;
    let exact = (1..=15u32).all(|n| series.cumulative[n as usize] == BigUint::from(2 * (3u64.pow(n) - 1)));
    let fast = dt < Duration::from_millis(100);
    Ok((exact && fast, format!("2(3^n-1) for n<=15: {exact}; {:.1} ms (limit 100)", dt.as_secs_f64() * 1e3)))
}

fn c2() -> Outcome {
    let g = fixtures::petersen();
    let (series, dt) = timed(|| count_perpendiculars(&PerpQuery::points(&g, 0, 0, 30)));
    let series = series.map_err(s)?;
    let r = series.cumulative[30].to_f64().unwrap() / 2f64.powi(30);
    let ok = within(r, 0.3, 0.03) && dt < Duration::from_secs(1);
    Ok((ok, format!("N(30)/2^30 = {r:.5} vs 0.3 (3%); {:.1} ms (limit 1000)", dt.as_secs_f64() * 1e3)))
}

fn c3() -> Outcome {
    let g = fixtures::biregular23();
    let (out, dt) = timed(|| -> Result<_, String> {
        let mut lines = Vec::new();
        let mut ok = true;
        for n in [30usize, 31] {
            let q = PerpQuery::named(&g, "cycle4", "cycle6", n).map_err(s)?;
            let series = count_perpendiculars(&q).map_err(s)?;
            let closed = bicyclette_constant(2, 3, 4, 6, g.num_edges()) * 6f64.sqrt().powi(n as i32 + 2);
            let r = series.cumulative[n].to_f64().unwrap() / closed;
            let assembled = theoretical_constant(&q, 0.05).map_err(s)?;
            ok &= within(r, 1.0, 0.05);
            lines.push(format!("N={n}: count/closed form = {r:.4}, count/assembled = {:.4}", assembled.ratios[n]));
        }
        Ok((ok, lines.join("; ")))
    });
    let (ok, detail) = out?;
    Ok((ok && dt < Duration::from_secs(5), format!("{detail} (5%); {:.0} ms", dt.as_secs_f64() * 1e3)))
}

fn c4() -> Outcome {
    let (out, dt) = timed(|| -> Result<bool, String> {
        let mut ok = true;
        for q in [2u32, 3, 5] {
            for n in 1..=5usize {
                ok &= mertens_sum(q, n).map_err(s)? == mertens_closed_form(q, n);
                let monic = BigUint::from(q).pow(2 * n as u32 - 1) * BigUint::from(q - 1);
                ok &= monic_degree_phi_sum(q, n).map_err(s)? == monic;
            }
        }
        Ok(ok)
    });
    let ok = out?;
    Ok((ok && dt < Duration::from_secs(10), format!("q in {{2,3,5}}, n<=5 exact: {ok}; {:.0} ms", dt.as_secs_f64() * 1e3)))
}

fn c5() -> Outcome {
    let mut worst = 0.0f64;
    let mut names = Vec::new();
    for (name, g) in fixtures::all() {
        if !g.trivial_groups() {
            continue;
        }
        let deg = g.tree_degree(0);
        if (0..g.num_vertices()).any(|v| g.tree_degree(v) != deg) {
            continue;
        }
        let p = pressure(&EdgeShift::from_graph(&g).map_err(s)?).map_err(s)?;
        worst = worst.max((p - ((deg - 1) as f64).ln()).abs());
        names.push(name);
    }
    let gm = pressure(&EdgeShift::golden_mean(&[0.0, 0.0]).map_err(s)?).map_err(s)?;
    let gm_err = (gm - ((1.0 + 5f64.sqrt()) / 2.0).ln()).abs();
    let ok = worst <= 1e-10 && gm_err <= 1e-10 && names.len() >= 4;
    Ok((ok, format!("regular {names:?}: max |P - ln q| = {worst:.1e}; golden mean {gm_err:.1e} (1e-10)")))
}

fn random_shift(rng: &mut ChaCha8Rng) -> (EdgeShift, usize) {
    loop {
        let k = rng.gen_range(2..=4);
        let allowed: Vec<Vec<bool>> = (0..k).map(|_| (0..k).map(|_| rng.gen_bool(0.6)).collect()).collect();
        let phi: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if let Ok(sh) = EdgeShift::from_matrix(&allowed, &phi) {
            return (sh, k);
        }
    }
}

fn c6() -> Outcome {
    let mut rng = stream_rng(SEED, 6);
    let (mut vp, mut bv, mut tv) = (0.0f64, 0.0f64, 0.0f64);
    let mut gibbs_ok = true;
    for i in 0..25 {
        let (sh, _) = random_shift(&mut rng);
        let m = equilibrium_measure(&sh).map_err(s)?;
        vp = vp.max((m.entropy + m.integral_phi - m.pressure).abs());
        let b = brute_force_equilibrium(&sh, SEED + i).map_err(s)?;
        bv = bv.max((b.value - m.pressure).abs());
        tv = tv.max(tv_two_cylinders(&m, &b.measure));
        gibbs_ok &= weak_gibbs_audit(&sh, &m, 12).map_err(s)?.pass;
    }
    let ok = vp <= 1e-8 && bv <= 1e-6 && tv <= 1e-4 && gibbs_ok;
    Ok((
        ok,
        format!("25 SFTs: |h+int phi-P| {vp:.1e} (1e-8), brute value {bv:.1e} (1e-6), TV {tv:.1e} (1e-4), Gibbs bounded {gibbs_ok}"),
    ))
}

fn c7() -> Outcome {
    let g = fixtures::petersen();
    let start = g.point(0);
    let exact = nbrw_exact(&g, &start, 60).map_err(s)?;
    let sample = nbrw_sample(&g, &start, 60, 100_000, SEED).map_err(s)?;
    let z = sample.z_scores(&exact.dist).into_iter().fold(0.0, f64::max);
    let ok = exact.tv < 1e-3 && z <= 3.0;
    Ok((ok, format!("TV(n=60) = {:.1e} (1e-3); 1e5 paths max |z| = {z:.2} (3)", exact.tv)))
}

fn c8() -> Outcome {
    let k = TreeWalkKernel::simple(2).map_err(s)?;
    let (out, dt) = timed(|| -> Result<_, String> {
        let h1 = tree_harmonic_measure(&k, 1, 1_000_000, SEED).map_err(s)?;
        let h2 = tree_harmonic_measure(&k, 2, 1_000_000, SEED + 1).map_err(s)?;
        Ok((h1, h2))
    });
    let (h1, h2) = out?;
    let targets = (h1.target - 1.0 / 3.0).abs() < 1e-15 && (h2.target - 1.0 / 6.0).abs() < 1e-15;
    let ok = targets && h1.max_z() <= 3.0 && h2.max_z() <= 3.0 && dt < Duration::from_secs(30);
    Ok((
        ok,
        format!(
            "depth 1 -> 1/3 max |z| {:.2}, depth 2 -> 1/6 max |z| {:.2} (3); {:.1} s (limit 30)",
            h1.max_z(),
            h2.max_z(),
            dt.as_secs_f64()
        ),
    ))
}

fn c9() -> Outcome {
    let k = TreeWalkKernel::simple(2).map_err(s)?;
    let r = green_ratio_check(&k, &[0], &[0, 0], 1_000_000, SEED).map_err(s)?;
    let ok = (r.target - 2.0).abs() < 1e-12 && r.z() <= 3.0;
    Ok((ok, format!("ratio {:.4} +- {:.4} vs 2, |z| = {:.2} (3)", r.ratio, r.stderr, r.z())))
}

/// `tr(B₀ⁿ)` by repeated dense big-integer matrix products.
fn trace_by_matrix_powers(g: &GraphOfGroups, nmax: usize) -> Vec<BigUint> {
    let m = g.num_edges();
    let mut b = vec![vec![BigUint::zero(); m]; m];
    for e in 0..m {
        for &f in g.out_edges(g.terminus(e)) {
            if f != g.reverse(e) {
                b[e][f] = BigUint::one();
            }
        }
    }
    let mut p = b.clone();
    let mut out = vec![BigUint::from(m), (0..m).map(|i| p[i][i].clone()).sum()];
    for _ in 2..=nmax {
        let mut next = vec![vec![BigUint::zero(); m]; m];
        for i in 0..m {
            for k in 0..m {
                if p[i][k].is_zero() {
                    continue;
                }
                for j in 0..m {
                    if !b[k][j].is_zero() {
                        next[i][j] += &p[i][k];
                    }
                }
            }
        }
        p = next;
        out.push((0..m).map(|i| p[i][i].clone()).sum());
    }
    out
}

fn c10() -> Outcome {
    let g = fixtures::petersen();
    let o = closed_orbit_count(&g, 24).map_err(s)?;
    let r = o.prime_ratio(2f64.ln(), 24);
    let oracle = trace_by_matrix_powers(&g, 24);
    let fix_ok = (1..=24).all(|n| o.fix[n] == oracle[n]);
    Ok((within(r, 1.0, 0.15) && fix_ok, format!("prime ratio at n=24 = {r:.4} (15%); Fix_n = tr(B^n) n<=24: {fix_ok}")))
}

fn c11() -> Outcome {
    let g = fixtures::dumbbell();
    let l = g.edge_index("l").ok_or("dumbbell has no edge l")?;
    let c = conjugacy_count(&g, 0, &[l], 34).map_err(s)?;
    let r = c.counts[34].to_f64().unwrap() / 2f64.powi((34 - c.lambda as i32) / 2);
    Ok((within(r, 0.5, 0.10), format!("N(34)/2^16 = {r:.4} vs 0.5 (10%)")))
}

fn random_ratfunc(rng: &mut ChaCha8Rng, q: u32) -> RatFunc {
    let mut poly = |deg: usize| {
        let c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(0..q) as i64).collect();
        FqPoly::new(q, &c).unwrap()
    };
    let num = poly(3);
    let mut den = poly(2);
    if den.is_zero() {
        den = FqPoly::one(q);
    }
    RatFunc::new(num, den).unwrap()
}

fn c12() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    let mut rng = stream_rng(SEED, 12);
    let mut tried = 0;
    let mut agree = 0;
    while tried < 200 {
        let q = [2, 3, 5][tried % 3];
        let m = [0; 4].map(|_| random_ratfunc(&mut rng, q));
        let Ok(g) = BTMatrix::new([[m[0].clone(), m[1].clone()], [m[2].clone(), m[3].clone()]]) else {
            continue;
        };
        tried += 1;
        agree += (vertex_distance(&g) == lattice_index_distance(&g)) as usize;
    }
    ok &= agree == 200;
    notes.push(format!("distance vs lattice index {agree}/200"));

    let mat = |q, t: &str| BTMatrix::parse(q, t).map_err(s);
    let r = |q, t: &str| RatFunc::parse(q, t).map_err(s);
    let heights = [
        (mat(3, "0;2;1;0")?, 0, r(3, "0")?),
        (mat(3, "1;0;Y;1")?, 2, r(3, "1/Y")?),
        (mat(3, "1;0;1/Y;1")?, -2, r(3, "Y")?),
    ];
    let h_ok = heights.iter().all(|(g, h, c)| horoball_height(g).map(|(hh, cc)| hh == *h && cc == *c).unwrap_or(false));
    ok &= h_ok;
    notes.push(format!("horoball heights {h_ok}"));

    let lengths = [(mat(2, "Y;1;1;0")?, 2), (mat(3, "1;1;0;1")?, 0), (mat(2, "Y^2;1;1;0")?, 4)];
    let mut t_ok = true;
    for (g, l) in &lengths {
        t_ok &= translation_length(g).map_err(s)? == *l;
        t_ok &= displacement_translation_length(g, 6).map_err(s)? == *l;
    }
    ok &= t_ok;
    notes.push(format!("translation lengths {t_ok}"));

    let mut cov_ok = true;
    for q in [2, 3, 5] {
        cov_ok &= covolume_suite(q, None).map_err(s)?.pass;
    }
    let y2 = FqPoly::new(2, &[0, 0, 1]).map_err(s)?;
    let ideal = covolume_suite(2, Some(&y2)).map_err(s)?;
    cov_ok &= ideal.pass && ideal.ideal_covol == Some(BigRational::from_integer(2.into()));
    let q2 = covolume_suite(2, None).map_err(s)?.via_zeta;
    cov_ok &= q2 == BigRational::new(2.into(), 3.into());
    ok &= cov_ok;
    notes.push(format!("covolume q in {{2,3,5}} {cov_ok}"));

    let ideals = [(2, vec![0, 1], 3u32), (3, vec![0, 0, 1], 12), (2, vec![0, 1, 1], 9)];
    let mut hk_ok = true;
    for (q, c, expect) in &ideals {
        let i = FqPoly::new(*q, c).map_err(s)?;
        let f = hecke_index(&i).map_err(s)?;
        hk_ok &= f == BigUint::from(*expect) && hecke_index_enumerated(&i).map_err(s)? == f;
    }
    ok &= hk_ok;
    notes.push(format!("Hecke formula = enumeration {hk_ok}"));
    Ok((ok, notes.join("; ")))
}

fn c13() -> Outcome {
    let mut total_ok = true;
    for q in [2u32, 3, 5] {
        let expect = BigRational::new((q + 1).into(), q.into());
        total_ok &= patterson_total_mass(q) == expect && shell_total_mass(q) == expect;
    }
    let mut add_ok = true;
    let mut balls = 0;
    for q in [2u32, 3, 5] {
        for (c, n) in [("0", -3), ("0", -1), ("0", 0), ("0", 2), ("Y^2", -1), ("Y+1", 0), ("1/Y", 3), ("Y^3+Y", -2)] {
            let b = Ball::new(RatFunc::parse(q, c).map_err(s)?, n);
            let kids: BigRational = b.children().iter().map(point_ball_mass).sum();
            add_ok &= kids == point_ball_mass(&b);
            balls += 1;
        }
    }
    Ok((total_ok && add_ok, format!("total (q+1)/q exact: {total_ok}; additivity over {balls} balls: {add_ok}")))
}

/// A random element of `GL₂(𝔽_q[Y])` as a product of elementary matrices.
fn random_gl2(rng: &mut ChaCha8Rng, q: u32) -> [[FqPoly; 2]; 2] {
    let mul = |a: &[[FqPoly; 2]; 2], b: &[[FqPoly; 2]; 2]| -> [[FqPoly; 2]; 2] {
        std::array::from_fn(|i| std::array::from_fn(|j| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]))))
    };
    let (one, zero) = (FqPoly::one(q), FqPoly::zero(q));
    let mut g = [[one.clone(), zero.clone()], [zero.clone(), one.clone()]];
    for _ in 0..rng.gen_range(1..=4) {
        let deg = rng.gen_range(0..=2);
        let c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(0..q) as i64).collect();
        let p = FqPoly::new(q, &c).unwrap();
        let e = match rng.gen_range(0..3) {
            0 => [[one.clone(), p], [zero.clone(), one.clone()]],
            1 => [[one.clone(), zero.clone()], [p, one.clone()]],
            _ => [[FqPoly::constant(rng.gen_range(1..q), q), zero.clone()], [zero.clone(), one.clone()]],
        };
        g = mul(&g, &e);
    }
    g
}

fn c14() -> Outcome {
    let alphas = [
        QuadIrr::from_coeffs(3, &[1], &[0], &[0, -1, -1], false).map_err(s)?,
        QuadIrr::from_coeffs(5, &[1], &[0, 1], &[-1], true).map_err(s)?,
        QuadIrr::from_coeffs(3, &[1], &[0], &[-1, -1, 0, 0, -1], false).map_err(s)?,
    ];
    let mut rng = stream_rng(SEED, 14);
    let (mut checks, mut points, mut failed) = (0, 0, 0);
    for a in &alphas {
        let q = a.modulus();
        let polys: Vec<FqPoly> = FqPoly::all_below_degree(q, 2).take(5).collect();
        let grid: Vec<(FqPoly, FqPoly)> = polys
            .iter()
            .flat_map(|x| polys.iter().map(move |y| (x.clone(), y.clone())))
            .filter(|(x, y)| !(x.is_zero() && y.is_zero()))
            .collect();
        for _ in 0..20 {
            let g = random_gl2(&mut rng, q);
            let c = transform_check(a, &g, &grid).map_err(s)?;
            checks += 1;
            points += c.points;
            failed += (!c.pass) as usize;
        }
    }
    Ok((failed == 0, format!("{checks} transforms, {points} grid points, {failed} failing")))
}

fn c15() -> Outcome {
    let f = farey_count(2, 8, 1).map_err(s)?;
    let ok = f.max_rel_dev < 0.02;
    Ok((ok, format!("q=2 t=8 histogram {:?}, max rel dev {:.4} (2%)", f.histogram, f.max_rel_dev)))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 15] = [
        (1, "figure-8 exact law", c1),
        (2, "regular counting constant", c2),
        (3, "biregular cycles closed form", c3),
        (4, "polynomial Mertens", c4),
        (5, "pressure and critical exponent", c5),
        (6, "variational principle and weak Gibbs", c6),
        (7, "non-backtracking walk convergence", c7),
        (8, "harmonic measure", c8),
        (9, "Green ratio", c9),
        (10, "closed orbits", c10),
        (11, "conjugacy counting", c11),
        (12, "Bruhat-Tits identities", c12),
        (13, "Patterson masses", c13),
        (14, "norm-form transformation law", c14),
        (15, "Farey equidistribution", c15),
    ];
    let mut unexpected = 0;
    for (id, name, f) in criteria {
        let (pass, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        let expected_fail = EXPECTED_FAIL.contains(&id);
        let tag = match (pass, expected_fail) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        if !pass && !expected_fail {
            unexpected += 1;
        }
        println!("{tag:<12} {id:>2} {name}: {detail}");
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
