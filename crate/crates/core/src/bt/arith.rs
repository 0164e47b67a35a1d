//! Covolumes, Hecke congruence indices and Farey counts over `𝔽_q[Y]`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::ff::{factor, mertens_sum, FqPoly, LaurentSeries, RatFunc};

use super::{check_budget, BtError};

/// Genus of `𝔽_q(Y)`; every formula below carries it explicitly.
const GENUS: i64 = 0;

#[derive(Clone, Debug, PartialEq)]
pub struct CovolumeReport {
    pub q: u32,
    /// `ζ_K(−1)` from `Z(u) = 1/((1−u)(1−qu))` at `u = q`.
    pub zeta_minus_one: BigRational,
    /// `1/|Γ₋₁| + Σ_{n≥0} 1/|Γ_n|` along the modular ray.
    pub nagao_series: BigRational,
    /// `2ζ_K(−1)`.
    pub via_zeta: BigRational,
    /// `2/((q−1)(q²−1))`.
    pub closed_form: BigRational,
    /// `Haar(K_v/I) = q^{g−1} N(I)`, when an ideal is given.
    pub ideal_covol: Option<BigRational>,
    pub pass: bool,
}

fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Projective order of the vertex stabiliser at step `n ≥ −1` of the ray.
fn ray_order(q: u32, n: i64) -> BigInt {
    let q = BigInt::from(q);
    if n == -1 {
        &q * (&q * &q - 1)
    } else {
        (&q - 1) * q.pow((n + 2) as u32)
    }
}

pub fn covolume_suite(q: u32, ideal: Option<&FqPoly>) -> Result<CovolumeReport, BtError> {
    crate::ff::FqElem::new(0, q)?;
    let qi = BigInt::from(q);
    // genus-0 zeta function Z(u) at u = q^{1}, i.e. s = −1
    let u = BigRational::from_integer(qi.clone());
    let one = BigRational::one();
    let zeta = one.clone() / ((&one - &u) * (&one - &u * BigRational::from_integer(qi.clone())));
    let via_zeta = &zeta * BigRational::from_integer(2.into());

    let head = rat(1, ray_order(q, -1));
    let first = rat(1, ray_order(q, 0));
    let ratio = rat(ray_order(q, 0), ray_order(q, 1));
    debug_assert_eq!(ratio, rat(ray_order(q, 5), ray_order(q, 6)));
    let nagao = head + first / (&one - ratio);

    let closed_form = rat(2, (&qi - 1) * (&qi * &qi - 1));
    let ideal_covol = ideal.map(|i| {
        let deg = i.degree().expect("nonzero ideal") as i64;
        let e = GENUS - 1 + deg;
        if e >= 0 {
            BigRational::from_integer(qi.pow(e as u32))
        } else {
            rat(1, qi.pow((-e) as u32))
        }
    });
    if let Some(i) = ideal {
        if i.is_zero() {
            return Err(BtError::InvalidArgument("ideal must be nonzero".into()));
        }
    }
    let pass = nagao == via_zeta && via_zeta == closed_form;
    Ok(CovolumeReport { q, zeta_minus_one: zeta, nagao_series: nagao, via_zeta, closed_form, ideal_covol, pass })
}

/// `[GL₂(R_v) : G_I] = N(I) ∏_{p | I} (1 + 1/N(p))`.
pub fn hecke_index(ideal: &FqPoly) -> Result<BigUint, BtError> {
    if ideal.is_zero() {
        return Err(BtError::InvalidArgument("ideal must be nonzero".into()));
    }
    let q = BigUint::from(ideal.modulus());
    let mut idx = q.pow(ideal.degree().unwrap() as u32);
    for (p, _) in factor(ideal) {
        let np = q.pow(p.degree().unwrap() as u32);
        idx = idx / &np * (np + 1u32);
    }
    Ok(idx)
}

/// Index of the upper-triangular subgroup in `GL₂(R_v/I)` by enumerating
/// every matrix over `R_v/I`: `|GL₂| / |B|` with `|B| = |units|²·N(I)`.
pub fn hecke_index_enumerated(ideal: &FqPoly) -> Result<BigUint, BtError> {
    let deg = ideal.degree().ok_or_else(|| BtError::InvalidArgument("ideal must be nonzero".into()))?;
    if deg > 4 {
        return Err(BtError::InvalidArgument(format!("enumeration needs deg I <= 4, got {deg}")));
    }
    let q = ideal.modulus();
    let elems: Vec<FqPoly> = FqPoly::all_below_degree(q, deg).collect();
    let n = elems.len();
    check_budget((n as u128).pow(4))?;
    let index_of = |p: &FqPoly| -> usize {
        (0..deg).rev().fold(0usize, |acc, k| acc * q as usize + p.coeff(k) as usize)
    };
    let mul: Vec<Vec<usize>> =
        elems.iter().map(|a| elems.iter().map(|b| index_of(&a.mul(b).rem(ideal).unwrap())).collect()).collect();
    let sub: Vec<Vec<usize>> = elems.iter().map(|a| elems.iter().map(|b| index_of(&a.sub(b))).collect()).collect();
    let unit: Vec<bool> = elems.iter().map(|a| !a.is_zero() && a.gcd(ideal).is_one() || deg == 0).collect();
    let gl: u64 = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut c = 0u64;
            for b in 0..n {
                for cc in 0..n {
                    let bc = mul[b][cc];
                    for d in 0..n {
                        c += unit[sub[mul[a][d]][bc]] as u64;
                    }
                }
            }
            c
        })
        .sum();
    let units = unit.iter().filter(|&&u| u).count() as u64;
    let borel = units * units * n as u64;
    if gl % borel != 0 {
        return Err(BtError::Invariant(format!("|GL2| = {gl} not divisible by |B| = {borel}")));
    }
    Ok(BigUint::from(gl / borel))
}

#[derive(Clone, Debug, PartialEq)]
pub struct FareyReport {
    pub q: u32,
    pub t: usize,
    /// Shear classes of coprime pairs `(x, y)` with `deg y ≤ t`.
    pub psi: BigUint,
    /// `Σ_{0<deg f≤t} φ(f) + 2(q − 1)`.
    pub psi_closed: BigUint,
    /// `Ψ(t)/Ψ(t−1)`, which tends to `q²`.
    pub growth: Option<f64>,
    pub hist_depth: usize,
    /// Counts of the points `x/y + c` (`c ∈ 𝔽_q`) per ball of radius
    /// `q^{−hist_depth}` in `𝒪_v`, balls in lexicographic digit order.
    pub histogram: Vec<u64>,
    pub points: u64,
    /// `max |count/expected − 1|` against the uniform (Haar) target.
    pub max_rel_dev: f64,
}

fn psi_closed(q: u32, t: usize) -> Result<BigUint, BtError> {
    let base = BigUint::from(2 * (q - 1));
    Ok(if t == 0 { base } else { mertens_sum(q, t)? + base })
}

/// Ball digit `Σ_k c_k q^k` of the fractional part `x/y`, `deg x < deg y`,
/// over the coefficients of `π¹ … π^{depth−1}`.
fn frac_digits(x: &FqPoly, y: &FqPoly, depth: usize) -> usize {
    let q = x.modulus();
    if x.is_zero() || depth <= 1 {
        return 0;
    }
    let s = LaurentSeries::from_ratfunc(&RatFunc::new(x.clone(), y.clone()).unwrap(), depth);
    (1..depth).rev().fold(0usize, |acc, k| acc * q as usize + s.coeff_at(k as i64).unwrap_or(0) as usize)
}

/// `Ψ(t)` by canonical representatives `deg x < deg y` (plus the `q − 1`
/// classes with `y = 0`), with the depth-`hist_depth` ball histogram.
pub fn farey_count(q: u32, t: usize, hist_depth: usize) -> Result<FareyReport, BtError> {
    crate::ff::FqElem::new(0, q)?;
    if hist_depth == 0 {
        return Err(BtError::InvalidArgument("hist_depth must be positive".into()));
    }
    check_budget((q as u128).pow(2 * t as u32 + 1))?;
    let bins = (q as usize).pow(hist_depth as u32);
    let ys: Vec<FqPoly> = FqPoly::all_below_degree(q, t + 1).filter(|y| !y.is_zero()).collect();
    let (classes, frac_hist) = ys
        .par_iter()
        .map(|y| {
            let mut h = vec![0u64; bins / q as usize];
            let mut c = 0u64;
            for x in FqPoly::all_below_degree(q, y.degree().unwrap()) {
                if x.gcd(y).is_one() {
                    c += 1;
                    h[frac_digits(&x, y, hist_depth)] += 1;
                }
            }
            (c, h)
        })
        .reduce(
            || (0, vec![0u64; bins / q as usize]),
            |(a, mut ha), (b, hb)| {
                ha.iter_mut().zip(hb).for_each(|(x, y)| *x += y);
                (a + b, ha)
            },
        );
    let psi = BigUint::from(classes) + (q - 1);
    // the constant digit c of x/y + c is the top digit of the ball index
    let histogram: Vec<u64> = (0..bins).map(|i| frac_hist[i % (bins / q as usize)]).collect();
    let points = classes * q as u64;
    let expected = points as f64 / bins as f64;
    let max_rel_dev = histogram.iter().map(|&c| (c as f64 / expected - 1.0).abs()).fold(0.0, f64::max);
    let psi_closed = psi_closed(q, t)?;
    let growth = (t > 0)
        .then(|| -> Result<f64, BtError> { Ok(ratio_f64(&psi_closed, &psi_closed_prev(q, t)?)) })
        .transpose()?;
    Ok(FareyReport { q, t, psi, psi_closed, growth, hist_depth, histogram, points, max_rel_dev })
}

fn psi_closed_prev(q: u32, t: usize) -> Result<BigUint, BtError> {
    psi_closed(q, t - 1)
}

fn ratio_f64(a: &BigUint, b: &BigUint) -> f64 {
    BigRational::new(BigInt::from(a.clone()), BigInt::from(b.clone())).to_f64().unwrap()
}

/// Brute-force `Ψ(t)`: every coprime pair in the box `deg x, deg y ≤ t`,
/// each class with `y ≠ 0` meeting the box in `q^{t+1−deg y}` points.
pub fn farey_count_naive(q: u32, t: usize) -> Result<BigUint, BtError> {
    crate::ff::FqElem::new(0, q)?;
    check_budget((q as u128).pow(2 * t as u32 + 2))?;
    let box_: Vec<FqPoly> = FqPoly::all_below_degree(q, t + 1).collect();
    let mut total = BigUint::zero();
    for y in &box_ {
        let hits = box_.iter().filter(|x| x.gcd(y).is_one()).count() as u64;
        total += match y.degree() {
            None => BigUint::from(hits),
            Some(d) => {
                let per = (q as u64).pow((t + 1 - d) as u32);
                debug_assert_eq!(hits % per, 0);
                BigUint::from(hits / per)
            }
        };
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: u32, c: &[i64]) -> FqPoly {
        FqPoly::new(q, c).unwrap()
    }

    #[test]
    fn covolume_examples() {
        let r = covolume_suite(2, Some(&p(2, &[0, 0, 1]))).unwrap();
        assert_eq!(r.nagao_series, rat(2, 3));
        assert_eq!(r.via_zeta, rat(2, 3));
        assert_eq!(r.ideal_covol, Some(rat(2, 1)));
        assert!(r.pass);
        let r = covolume_suite(3, None).unwrap();
        assert_eq!(r.closed_form, rat(1, 8));
        assert_eq!(r.zeta_minus_one, rat(1, 16));
        for q in [2, 3, 5, 7] {
            assert!(covolume_suite(q, None).unwrap().pass);
        }
        assert!(covolume_suite(4, None).is_err());
    }

    #[test]
    fn partial_ray_sums_approach_the_series() {
        let r = covolume_suite(3, None).unwrap();
        let mut s = rat(1, ray_order(3, -1));
        for n in 0..30 {
            s += rat(1, ray_order(3, n));
        }
        let gap = (&r.nagao_series - s).to_f64().unwrap();
        assert!(gap > 0.0 && gap < 1e-14);
    }

    #[test]
    fn hecke_examples() {
        for (q, c, expect) in [(2, vec![0, 1], 3u32), (3, vec![0, 0, 1], 12), (2, vec![0, 1, 1], 9)] {
            let i = p(q, &c);
            assert_eq!(hecke_index(&i).unwrap(), BigUint::from(expect));
            assert_eq!(hecke_index_enumerated(&i).unwrap(), BigUint::from(expect));
        }
        // irreducible of degree 2 over F2 and a cube
        for c in [vec![1, 1, 1], vec![1, 1, 0, 1], vec![0, 0, 0, 1]] {
            let i = p(2, &c);
            assert_eq!(hecke_index(&i).unwrap(), hecke_index_enumerated(&i).unwrap());
        }
        assert_eq!(hecke_index(&p(3, &[2])).unwrap(), BigUint::one());
    }

    #[test]
    fn farey_matches_brute_force() {
        for t in 0..=5 {
            let r = farey_count(2, t, 1).unwrap();
            assert_eq!(r.psi, farey_count_naive(2, t).unwrap(), "t={t}");
            assert_eq!(r.psi, r.psi_closed, "t={t}");
        }
        let r = farey_count(3, 3, 2).unwrap();
        assert_eq!(r.psi, farey_count_naive(3, 3).unwrap());
        // t = 0: y a nonzero constant (x = 0) or y = 0 (x a unit)
        assert_eq!(farey_count(3, 0, 1).unwrap().psi, BigUint::from(4u32));
    }

    #[test]
    fn farey_growth_and_histogram() {
        let r = farey_count(2, 8, 1).unwrap();
        assert!((r.growth.unwrap() / 4.0 - 1.0).abs() < 0.05);
        assert_eq!(r.histogram.len(), 2);
        assert!(r.max_rel_dev < 0.02);
        let r = farey_count(2, 8, 3).unwrap();
        assert_eq!(r.histogram.iter().sum::<u64>(), r.points);
        assert!(r.max_rel_dev < 0.1, "{:?}", r.histogram);
    }
}
