//! Breadth-first exploration of a `GL₂(𝔽_q[Y])`-orbit of a quadratic
//! irrational, binned by complexity or by relative height.

use std::collections::{BTreeMap, HashSet};

use crate::ff::{FqPoly, QuadIrr};

use super::{check_budget, relative_height, BtError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitMode {
    /// `h(β) = q^{deg A − deg D/2}`.
    Complexity,
    /// `h_{α₀}(β)`, skipping `α₀` and its conjugate.
    RelativeHeight,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub word_len: usize,
    /// Distinct orbit points reached.
    pub size: usize,
    /// New points per word length `0..=word_len`.
    pub levels: Vec<usize>,
    /// `(n, #{β : value = qⁿ})`, increasing in `n`.
    pub bins: Vec<(i64, u64)>,
    /// `(n, N(qⁿ))` with `N(s) = #{β : value ≤ s}`.
    pub cumulative: Vec<(i64, u64)>,
    pub monotone: bool,
    /// Every relative height is `qⁿ` with `n ≥ 0` (always true for the
    /// complexity mode).
    pub powers_ok: bool,
    pub skipped: usize,
}

/// Shear by `Y`, shear by `1`, their inverses, and `z ↦ 1/z`.
fn generators(q: u32) -> Vec<[[FqPoly; 2]; 2]> {
    let (o, z) = (FqPoly::one(q), FqPoly::zero(q));
    let y = FqPoly::y(q);
    let shear = |b: FqPoly| [[o.clone(), b], [z.clone(), o.clone()]];
    vec![shear(y.clone()), shear(o.clone()), shear(y.neg()), shear(o.neg()), [[z.clone(), o.clone()], [o.clone(), z.clone()]]]
}

pub fn quad_orbit_experiment(alpha0: &QuadIrr, mode: OrbitMode, word_len: usize) -> Result<OrbitReport, BtError> {
    if word_len > 12 {
        return Err(BtError::InvalidArgument(format!("word length {word_len} exceeds 12")));
    }
    let gens = generators(alpha0.modulus());
    check_budget((gens.len() as u128).pow(word_len.min(10) as u32))?;
    let start = alpha0.canonical();
    let mut seen: HashSet<QuadIrr> = HashSet::from([start.clone()]);
    let mut order = vec![start.clone()];
    let mut frontier = vec![start];
    let mut levels = vec![1];
    for _ in 0..word_len {
        let mut next = Vec::new();
        for x in &frontier {
            for g in &gens {
                let y = x.transform(g)?.canonical();
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        next.sort_by(|a, b| a.canonical_cmp(b));
        levels.push(next.len());
        order.extend(next.iter().cloned());
        frontier = next;
    }

    let mut bins: BTreeMap<i64, u64> = BTreeMap::new();
    let mut skipped = 0;
    let mut powers_ok = true;
    let conj0 = alpha0.conj().canonical();
    for b in &order {
        let exp = match mode {
            OrbitMode::Complexity => b.complexity().exp,
            OrbitMode::RelativeHeight => {
                if *b == alpha0.canonical() || *b == conj0 {
                    skipped += 1;
                    continue;
                }
                match relative_height(alpha0, b) {
                    Ok(h) => h.exp,
                    Err(BtError::Invariant(_)) => {
                        powers_ok = false;
                        continue;
                    }
                    Err(e) => return Err(e),
                }
            }
        };
        *bins.entry(exp).or_default() += 1;
    }
    let mut cumulative = Vec::new();
    let mut acc = 0;
    if let (Some(&lo), Some(&hi)) = (bins.keys().next(), bins.keys().last()) {
        for n in lo..=hi {
            acc += bins.get(&n).copied().unwrap_or(0);
            cumulative.push((n, acc));
        }
    }
    let monotone = cumulative.windows(2).all(|w| w[0].1 <= w[1].1);
    if mode == OrbitMode::RelativeHeight {
        powers_ok &= bins.keys().all(|&n| n >= 0);
    }
    Ok(OrbitReport {
        word_len,
        size: order.len(),
        levels,
        bins: bins.into_iter().collect(),
        cumulative,
        monotone,
        powers_ok,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha3() -> QuadIrr {
        QuadIrr::from_coeffs(3, &[1], &[0], &[0, -1, -1], false).unwrap()
    }

    #[test]
    fn complexity_bins_cover_the_orbit() {
        let r = quad_orbit_experiment(&alpha3(), OrbitMode::Complexity, 4).unwrap();
        assert!(r.monotone);
        assert_eq!(r.levels[0], 1);
        assert_eq!(r.size, r.levels.iter().sum::<usize>());
        assert_eq!(r.bins.iter().map(|b| b.1).sum::<u64>() as usize, r.size);
    }

    #[test]
    fn relative_heights_are_nonnegative_powers() {
        let r = quad_orbit_experiment(&alpha3(), OrbitMode::RelativeHeight, 4).unwrap();
        assert!(r.powers_ok && r.monotone);
        assert!(r.skipped >= 1);
        assert!(r.bins.iter().all(|&(n, _)| n >= 0));
    }

    #[test]
    fn orbit_points_are_distinct() {
        let a = alpha3();
        let gens = generators(3);
        let mut pts = vec![a.canonical()];
        for g in &gens {
            pts.push(a.transform(g).unwrap().canonical());
            for h in &gens {
                pts.push(a.transform(g).unwrap().transform(h).unwrap().canonical());
            }
        }
        let set: HashSet<QuadIrr> = pts.iter().cloned().collect();
        let r = quad_orbit_experiment(&a, OrbitMode::Complexity, 2).unwrap();
        assert_eq!(r.size, set.len());
        assert!(quad_orbit_experiment(&a, OrbitMode::Complexity, 13).is_err());
    }
}
