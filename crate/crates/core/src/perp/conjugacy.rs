//! Orbit counts in a loxodromic conjugacy class, reduced to perpendiculars
//! from the basepoint to the closed geodesic.

use num_bigint::BigUint;
use num_traits::Zero;

use super::{count_perpendiculars, PerpError, PerpQuery};
use crate::graph::{GraphOfGroups, Subgraph};

#[derive(Debug, Clone)]
pub struct ConjugacyCounts {
    /// Translation length `λ₀`, the cycle length.
    pub lambda: usize,
    /// `𝒩(n)`: class elements `γ` with `d(x₀, γx₀) ≤ n`.
    pub counts: Vec<BigUint>,
}

/// Checks that `cycle` is a closed non-backtracking edge loop through
/// distinct vertices.
fn check_cycle(g: &GraphOfGroups, cycle: &[usize]) -> Result<(), PerpError> {
    let err = |m: &str| Err(PerpError::NotASimpleCycle(m.to_string()));
    if cycle.is_empty() {
        return err("empty");
    }
    if cycle.iter().any(|&e| e >= g.num_edges()) {
        return err("edge index out of range");
    }
    let l = cycle.len();
    let mut seen = Vec::with_capacity(l);
    for i in 0..l {
        let (e, f) = (cycle[i], cycle[(i + 1) % l]);
        if g.terminus(e) != g.origin(f) {
            return err("edges are not consecutive");
        }
        if f == g.reverse(e) {
            return err("backtracks");
        }
        if seen.contains(&g.origin(e)) {
            return err("repeats a vertex");
        }
        seen.push(g.origin(e));
    }
    Ok(())
}

/// Counts for the class of the closed geodesic `cycle` (edges in order).
pub fn conjugacy_count(g: &GraphOfGroups, x0: usize, cycle: &[usize], nmax: usize) -> Result<ConjugacyCounts, PerpError> {
    if !g.trivial_groups() {
        return Err(PerpError::NontrivialGroups);
    }
    check_cycle(g, cycle)?;
    let lambda = cycle.len();
    let mut edges: Vec<usize> = cycle.iter().flat_map(|&e| [e, g.reverse(e)]).collect();
    edges.sort_unstable();
    edges.dedup();
    let mut vertices: Vec<usize> = cycle.iter().map(|&e| g.origin(e)).collect();
    vertices.sort_unstable();
    let on_axis = vertices.binary_search(&x0).is_ok();
    let rmax = nmax.saturating_sub(lambda) / 2;
    let q = PerpQuery { graph: g, minus: g.point(x0), plus: Subgraph { vertices, edges }, nmax: rmax.max(1) };
    let perp = count_perpendiculars(&q)?;
    let counts = (0..=nmax)
        .map(|n| {
            if n < lambda {
                return BigUint::zero();
            }
            let r = (n - lambda) / 2;
            let base = BigUint::from(on_axis as u8);
            if r == 0 {
                base
            } else {
                base + &perp.cumulative[r]
            }
        })
        .collect();
    Ok(ConjugacyCounts { lambda, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;
    use num_traits::ToPrimitive;

    #[test]
    fn dumbbell_loop_limit() {
        let g = fixtures::dumbbell();
        let l = g.edge_index("l").unwrap();
        for x0 in 0..2 {
            let c = conjugacy_count(&g, x0, &[l], 34).unwrap();
            let ratio = c.counts[34].to_f64().unwrap() / 2f64.powi(((34 - 1) / 2) as i32);
            assert!((ratio - 0.5).abs() < 0.05, "x0={x0} ratio {ratio}");
        }
    }

    #[test]
    fn below_translation_length_is_zero() {
        let g = fixtures::petersen();
        // a 5-cycle in the Petersen graph
        let path = [0usize, 1, 2, 3, 4, 0];
        let cycle: Vec<usize> = path
            .windows(2)
            .map(|w| *g.out_edges(w[0]).iter().find(|&&e| g.terminus(e) == w[1]).expect("outer cycle"))
            .collect();
        let c = conjugacy_count(&g, 0, &cycle, 12).unwrap();
        assert!(c.counts[..5].iter().all(|x| x.is_zero()));
        assert_eq!(c.counts[5], BigUint::from(1u8));
    }

    #[test]
    fn doubled_cycle_rejected() {
        let g = fixtures::dumbbell();
        let l = g.edge_index("l").unwrap();
        assert!(matches!(conjugacy_count(&g, 0, &[l, l], 10), Err(PerpError::NotASimpleCycle(_))));
    }
}
