//! Distances, horoball heights and translation lengths in the tree.

use crate::ff::{FqPoly, RatFunc};

use super::{check_budget, BTMatrix, BtError};

/// `d(*, g·*) = v(det g) − 2·min v(g_ij)`: the gap between the two
/// elementary divisors of `g` over the valuation ring.
pub fn vertex_distance(g: &BTMatrix) -> u64 {
    (g.det_valuation() - 2 * g.min_entry_valuation()).unsigned_abs()
}

/// `d(g₁·*, g₂·*)`.
pub fn vertex_distance_between(g1: &BTMatrix, g2: &BTMatrix) -> u64 {
    vertex_distance(&g1.inv().mul(g2))
}

fn transpose(g: &BTMatrix) -> [[RatFunc; 2]; 2] {
    let e = g.entries();
    [[e[0][0].clone(), e[1][0].clone()], [e[0][1].clone(), e[1][1].clone()]]
}

/// `v(det(L + L'))` for the lattice spanned by the columns of `[B | I]`,
/// read off as the least valuation of a 2×2 minor.
fn sum_with_standard(b: &[[RatFunc; 2]; 2]) -> i64 {
    let q = b[0][0].modulus();
    let cols = [
        [b[0][0].clone(), b[1][0].clone()],
        [b[0][1].clone(), b[1][1].clone()],
        [RatFunc::one(q), RatFunc::zero(q)],
        [RatFunc::zero(q), RatFunc::one(q)],
    ];
    let mut best = i64::MAX;
    for i in 0..4 {
        for j in i + 1..4 {
            let m = cols[i][0].mul(&cols[j][1]).sub(&cols[j][0].mul(&cols[i][1]));
            if let Some(v) = m.valuation() {
                best = best.min(v);
            }
        }
    }
    best
}

/// Independent distance oracle from lattice indices: with `L = 𝒪²` and
/// `M = g𝒪²`, `d = min_j [L : L ∩ πʲM] + [πʲM : L ∩ πʲM]`, where the
/// intersection is computed through duals, `(L ∩ M)^* = L^* + M^*`.
pub fn lattice_index_distance(g: &BTMatrix) -> u64 {
    let q = g.modulus();
    let vdet = g.det_valuation();
    let span: i64 = g
        .entries()
        .iter()
        .flatten()
        .chain(g.inv().entries().iter().flatten())
        .filter_map(|r| r.valuation())
        .map(i64::abs)
        .sum();
    let reach = span + vdet.abs() + 2;
    let mut best = i64::MAX;
    for j in -reach..=reach {
        // π^j = Y^{-j}
        let s = RatFunc::parse(q, "Y").unwrap().pow(-j as i32).unwrap();
        let sm = BTMatrix::new([
            [g.entry(0, 0).mul(&s), g.entry(0, 1).mul(&s)],
            [g.entry(1, 0).mul(&s), g.entry(1, 1).mul(&s)],
        ])
        .unwrap();
        let v_m = vdet + 2 * j;
        let dual = transpose(&sm.inv());
        let v_cap = -sum_with_standard(&dual);
        best = best.min(2 * v_cap - v_m);
    }
    best as u64
}

fn check_unit_det(g: &BTMatrix) -> Result<(), BtError> {
    match g.det_valuation() {
        0 => Ok(()),
        v => Err(BtError::DetNotUnit(v)),
    }
}

/// Height `−2v(c)` and point at infinity `a/c` of the image of the horoball
/// centred at `∞` through the base point.
pub fn horoball_height(g: &BTMatrix) -> Result<(i64, RatFunc), BtError> {
    check_unit_det(g)?;
    let (a, c) = (g.entry(0, 0), g.entry(1, 0));
    let v = c.valuation().ok_or(BtError::FixesInfinity)?;
    Ok((-2 * v, a.div(c)?))
}

/// `max(0, −2v(tr g))` for `det g` a unit.
pub fn translation_length(g: &BTMatrix) -> Result<u64, BtError> {
    check_unit_det(g)?;
    Ok(match g.trace().valuation() {
        Some(v) if v < 0 => (-2 * v) as u64,
        _ => 0,
    })
}

/// `Σ_k c_k Y^k` for `k` from `lo` on.
fn laurent_poly(q: u32, lo: i64, coeffs: &[u32]) -> RatFunc {
    let c: Vec<i64> = coeffs.iter().map(|&c| c as i64).collect();
    let p = RatFunc::from_poly(FqPoly::new(q, &c).unwrap());
    p.mul(&RatFunc::parse(q, "Y").unwrap().pow(lo as i32).unwrap())
}

/// Every vertex within `radius` of `*`, as `[[Yⁿ, b], [0, 1]]` with `b`
/// reduced modulo `Yⁿ𝒪_v`.
fn ball_vertices(q: u32, radius: i64) -> Result<Vec<BTMatrix>, BtError> {
    let mut out = Vec::new();
    for n in -radius..=radius {
        let top = (n + radius).div_euclid(2);
        let len = (top - n).max(0) as u32;
        let count = (q as u128).pow(len);
        check_budget(count * (2 * radius as u128 + 1))?;
        let yn = RatFunc::parse(q, "Y").unwrap().pow(n as i32)?;
        let mut digits = vec![0u32; len as usize];
        for mut idx in 0..count {
            for d in digits.iter_mut() {
                *d = (idx % q as u128) as u32;
                idx /= q as u128;
            }
            let b = laurent_poly(q, n + 1, &digits);
            let h = BTMatrix::new([[yn.clone(), b], [RatFunc::zero(q), RatFunc::one(q)]])?;
            if vertex_distance(&h) <= radius as u64 {
                out.push(h);
            }
        }
    }
    Ok(out)
}

/// Oracle for the translation length: `min d(h·*, g h·*)` over vertices
/// `h·*` within `radius` of the base point.  Exact once the ball meets the
/// minimal displacement set.
pub fn displacement_translation_length(g: &BTMatrix, radius: u32) -> Result<u64, BtError> {
    let vs = ball_vertices(g.modulus(), radius as i64)?;
    Ok(vs.iter().map(|h| vertex_distance(&h.inv().mul(g).mul(h))).min().unwrap())
}
