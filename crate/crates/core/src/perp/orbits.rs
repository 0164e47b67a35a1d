//! Periodic orbits of the non-backtracking shift: exact traces, Möbius
//! inversion, rotation classes.

use nalgebra::DMatrix;
use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use super::count::predecessors;
use super::{check_budget, PerpError};
use crate::graph::GraphOfGroups;

/// Largest supported period.
pub const MAX_PERIOD: usize = 26;

#[derive(Debug, Clone)]
pub struct OrbitCounts {
    /// `Fix_n = tr(B₀ⁿ)`, index 0 unused.
    pub fix: Vec<BigUint>,
    /// `tr(B_cⁿ)`.
    pub weighted_fix: Vec<f64>,
    /// Prime orbits (rotation classes) of length exactly `n`.
    pub prime: Vec<BigUint>,
    /// `Σ e^{c(g)}` over prime orbits of length `n`.
    pub weighted_prime: Vec<f64>,
    /// Prime orbits of length `≤ n`.
    pub cumulative_prime: Vec<BigUint>,
    pub cumulative_weighted_prime: Vec<f64>,
}

pub(crate) fn mobius(mut n: usize) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

fn divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..=n).filter(move |d| n % d == 0)
}

/// `tr(B₀ⁿ)` for `n = 0..=nmax` by a path DP from every edge.
pub fn trace_power(g: &GraphOfGroups, nmax: usize) -> Vec<BigUint> {
    let ne = g.num_edges();
    let pred = predecessors(g);
    let mut tr = vec![BigUint::zero(); nmax + 1];
    tr[0] = BigUint::from(ne);
    for e in 0..ne {
        let mut x = vec![BigUint::zero(); ne];
        x[e] = BigUint::from(1u8);
        for t in tr.iter_mut().skip(1) {
            x = pred.iter().map(|p| p.iter().map(|&a| &x[a]).sum()).collect();
            *t += &x[e];
        }
    }
    tr
}

/// Counts of periodic and prime periodic orbits up to length `nmax`.
pub fn closed_orbit_count(g: &GraphOfGroups, nmax: usize) -> Result<OrbitCounts, PerpError> {
    if !g.trivial_groups() {
        return Err(PerpError::NontrivialGroups);
    }
    if nmax > MAX_PERIOD {
        return Err(PerpError::Budget { needed: nmax as u128, budget: MAX_PERIOD as u64 });
    }
    let ne = g.num_edges();
    let harmonic: u128 = (1..=nmax.max(1) as u128).map(|k| nmax as u128 / k).sum();
    check_budget((ne as u128).pow(3) * harmonic)?;
    let b = crate::graph::nb_transfer(g)?;
    let fix = trace_power(g, nmax);

    // tr(B_{k c}^d) for k·d ≤ nmax
    let c = g.conductances();
    let mut tr_k = vec![vec![0.0; nmax + 1]; nmax + 1];
    for k in 1..=nmax {
        let m = DMatrix::from_fn(ne, ne, |i, j| {
            if b.rows[i].iter().any(|&(f, _)| f == j) {
                (k as f64 * c[j]).exp()
            } else {
                0.0
            }
        });
        let mut p = m.clone();
        for d in 1..=nmax / k {
            if d > 1 {
                p = &p * &m;
            }
            tr_k[k][d] = p.trace();
        }
    }

    let mut prime = vec![BigUint::zero(); nmax + 1];
    let mut weighted_prime = vec![0.0; nmax + 1];
    for n in 1..=nmax {
        let mut prim = BigInt::zero();
        let mut wprim = 0.0;
        for d in divisors(n) {
            let mu = mobius(n / d);
            prim += BigInt::from(mu) * BigInt::from(fix[d].clone());
            wprim += mu as f64 * tr_k[n / d][d];
        }
        let (q, r) = (&prim / BigInt::from(n), &prim % BigInt::from(n));
        debug_assert!(r.is_zero());
        prime[n] = q.to_biguint().expect("primitive counts are nonnegative");
        weighted_prime[n] = wprim / n as f64;
    }
    let weighted_fix = (0..=nmax).map(|n| if n == 0 { ne as f64 } else { tr_k[1][n] }).collect();
    let mut cumulative_prime = Vec::with_capacity(nmax + 1);
    let mut acc = BigUint::zero();
    for p in &prime {
        acc += p;
        cumulative_prime.push(acc.clone());
    }
    let cumulative_weighted_prime = weighted_prime
        .iter()
        .scan(0.0, |s, &w| {
            *s += w;
            Some(*s)
        })
        .collect();
    Ok(OrbitCounts { fix, weighted_fix, prime, weighted_prime, cumulative_prime, cumulative_weighted_prime })
}

impl OrbitCounts {
    /// Ratio of the cumulative prime count to `(e^δ/(e^δ−1))·e^{δn}/n`.
    pub fn prime_ratio(&self, delta: f64, n: usize) -> f64 {
        let ed = delta.exp();
        self.cumulative_prime[n].to_f64().unwrap() / (ed / (ed - 1.0) * (delta * n as f64).exp() / n as f64)
    }
}
