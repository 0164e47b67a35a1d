//! Decay of correlations for one-letter observables.

use super::MarkovMeasure;

#[derive(Debug, Clone)]
pub struct DecayReport {
    /// `cov_n` for `n = 0..=nmax`.
    pub cov: Vec<f64>,
    /// Fitted `lim (1/n) log |cov_n|`; `−∞` when correlations vanish.
    pub rate: f64,
    /// `log(ρ₂/ρ)` from a dense eigensolve of the transition matrix.
    pub spectral_rate: f64,
}

/// `cov_n = Σ_a p_a f_a (Pⁿg)_a − (p·f)(p·g)`.
pub fn correlation_decay(m: &MarkovMeasure, f: &[f64], g: &[f64], nmax: usize) -> DecayReport {
    let k = m.p.len();
    let pf: f64 = (0..k).map(|a| m.p[a] * f[a]).sum();
    let pg: f64 = (0..k).map(|a| m.p[a] * g[a]).sum();
    let mut h = g.to_vec();
    let mut cov = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        if n > 0 {
            h = (0..k).map(|a| (0..k).map(|b| m.transition[a][b] * h[b]).sum()).collect();
        }
        cov.push((0..k).map(|a| m.p[a] * f[a] * h[a]).sum::<f64>() - pf * pg);
    }
    DecayReport { rate: fit_rate(&cov), spectral_rate: spectral_rate(m), cov }
}

/// Slope of the log tail-supremum envelope `E_n = max_{k≥n} |cov_k|` between
/// two indices of equal parity, discarding values at rounding level.
fn fit_rate(cov: &[f64]) -> f64 {
    let scale = cov.iter().map(|c| c.abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return f64::NEG_INFINITY;
    }
    let floor = 1e-9 * scale;
    let mut env = vec![0.0; cov.len()];
    let mut run = 0.0f64;
    for i in (0..cov.len()).rev() {
        run = run.max(cov[i].abs());
        env[i] = run;
    }
    let Some(n2) = (1..cov.len()).rev().find(|&i| env[i] > floor) else {
        return f64::NEG_INFINITY;
    };
    let mut n1 = (n2 / 2).max(1);
    if (n2 - n1) % 2 == 1 {
        n1 -= 1;
    }
    if n1 == n2 || env[n1] == 0.0 {
        return f64::NEG_INFINITY;
    }
    (env[n2].ln() - env[n1].ln()) / (n2 - n1) as f64
}

fn spectral_rate(m: &MarkovMeasure) -> f64 {
    let k = m.p.len();
    let pm = nalgebra::DMatrix::from_fn(k, k, |a, b| m.transition[a][b]);
    let mut mods: Vec<f64> = pm.complex_eigenvalues().iter().map(|z| z.norm()).collect();
    mods.sort_by(|a, b| b.partial_cmp(a).unwrap());
    // the Perron eigenvalue of a stochastic matrix is 1; for periodic chains
    // the other roots of unity also have modulus 1
    mods.get(1).map(|x| x.ln()).unwrap_or(f64::NEG_INFINITY)
}

#[cfg(test)]
mod tests {
    use super::super::{equilibrium_measure, EdgeShift};
    use super::*;
    use crate::graph::fixtures;

    #[test]
    fn bernoulli_has_no_correlations() {
        let s = EdgeShift::full(2, &[0.0, 0.0]).unwrap();
        let m = equilibrium_measure(&s).unwrap();
        let r = correlation_decay(&m, &[1.0, -1.0], &[1.0, -1.0], 10);
        assert!((r.cov[0] - 1.0).abs() < 1e-14);
        assert!(r.cov[1..].iter().all(|c| c.abs() < 1e-15));
    }

    #[test]
    fn figure_eight_rate_is_one_third() {
        let s = EdgeShift::from_graph(&fixtures::figure8()).unwrap();
        let m = equilibrium_measure(&s).unwrap();
        let r = correlation_decay(&m, &[1.0, 0.0, -0.5, 2.0], &[0.3, -1.0, 0.0, 1.0], 30);
        assert!((r.spectral_rate - (1.0f64 / 3.0).ln()).abs() < 1e-9);
        assert!(r.rate <= r.spectral_rate + 1e-6);
        assert!((r.rate - r.spectral_rate).abs() < 1e-6);
    }
}
