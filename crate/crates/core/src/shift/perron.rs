//! Perron data by shifted power iteration, and the equilibrium measure.

use super::{EdgeShift, ShiftError};

const TOL: f64 = 1e-13;
const MAX_ITER: usize = 1_000_000;

/// Perron root and eigenvectors of the transfer matrix.
#[derive(Debug, Clone)]
pub struct PerronData {
    pub rho: f64,
    /// Right eigenvector, positive, max-normalised.
    pub right: Vec<f64>,
    /// Left eigenvector, positive, max-normalised.
    pub left: Vec<f64>,
    pub iterations: usize,
}

/// Markov measure `(p, P)` on the shift with its thermodynamic summary.
#[derive(Debug, Clone)]
pub struct MarkovMeasure {
    pub p: Vec<f64>,
    /// Row-stochastic matrix, zero on forbidden transitions.
    pub transition: Vec<Vec<f64>>,
    pub entropy: f64,
    pub integral_phi: f64,
    pub pressure: f64,
}

impl MarkovMeasure {
    /// Joint law of `(x₀, x₁)`.
    pub fn two_cylinders(&self) -> Vec<Vec<f64>> {
        self.transition.iter().zip(&self.p).map(|(row, &pa)| row.iter().map(|&x| pa * x).collect()).collect()
    }

    /// Builds `(p, P)` summaries from a stochastic matrix.
    pub(crate) fn from_transition(shift: &EdgeShift, transition: Vec<Vec<f64>>, p: Vec<f64>, pressure: f64) -> Self {
        let mut entropy = 0.0;
        let mut integral_phi = 0.0;
        for a in 0..shift.len() {
            integral_phi += p[a] * shift.phi[a];
            for &b in shift.successors(a) {
                let x = transition[a][b];
                if x > 0.0 {
                    entropy -= p[a] * x * x.ln();
                }
            }
        }
        MarkovMeasure { p, transition, entropy, integral_phi, pressure }
    }
}

/// Iterates `x ↦ (B + sI)x` (or the transpose) until the Collatz-Wielandt
/// bounds on the spectral radius meet.
fn iterate(shift: &EdgeShift, transpose: bool) -> Result<(f64, Vec<f64>, usize), ShiftError> {
    let n = shift.len();
    let w: Vec<f64> = shift.phi.iter().map(|x| x.exp()).collect();
    // The shift removes periodicity; the mean row sum keeps it on scale.
    let s = (0..n).map(|a| shift.successors(a).iter().map(|&b| w[b]).sum::<f64>()).sum::<f64>() / n as f64;
    let mut x = vec![1.0; n];
    let mut y = vec![0.0; n];
    for it in 1..=MAX_ITER {
        y.iter_mut().zip(&x).for_each(|(yi, &xi)| *yi = s * xi);
        for a in 0..n {
            for &b in shift.successors(a) {
                if transpose {
                    y[b] += w[b] * x[a];
                } else {
                    y[a] += w[b] * x[b];
                }
            }
        }
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..n {
            let r = y[i] / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        let m = y.iter().cloned().fold(0.0, f64::max);
        for i in 0..n {
            x[i] = y[i] / m;
        }
        if hi - lo <= TOL * hi {
            return Ok((0.5 * (hi + lo) - s, x, it));
        }
    }
    Err(ShiftError::NoConvergence(MAX_ITER))
}

pub fn perron(shift: &EdgeShift) -> Result<PerronData, ShiftError> {
    let (rho, right, i1) = iterate(shift, false)?;
    let (_, left, i2) = iterate(shift, true)?;
    Ok(PerronData { rho, right, left, iterations: i1.max(i2) })
}

/// `log ρ(B)`.
pub fn pressure(shift: &EdgeShift) -> Result<f64, ShiftError> {
    Ok(iterate(shift, false)?.0.ln())
}

/// The Parry-type Markov measure
/// `P[a,b] = B[a,b]·r(b)/(ρ·r(a))`, `p ∝ l·r`.
pub fn equilibrium_measure(shift: &EdgeShift) -> Result<MarkovMeasure, ShiftError> {
    let pd = perron(shift)?;
    let n = shift.len();
    let mut transition = vec![vec![0.0; n]; n];
    for (a, row) in transition.iter_mut().enumerate() {
        let mut total = 0.0;
        for &b in shift.successors(a) {
            row[b] = shift.phi[b].exp() * pd.right[b] / (pd.rho * pd.right[a]);
            total += row[b];
        }
        // remove the O(1e-13) defect left by the eigenvector tolerance
        for &b in shift.successors(a) {
            row[b] /= total;
        }
    }
    let mut p: Vec<f64> = pd.left.iter().zip(&pd.right).map(|(l, r)| l * r).collect();
    let z: f64 = p.iter().sum();
    p.iter_mut().for_each(|x| *x /= z);
    Ok(MarkovMeasure::from_transition(shift, transition, p, pd.rho.ln()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;

    #[test]
    fn figure_eight() {
        let s = EdgeShift::from_graph(&fixtures::figure8()).unwrap();
        assert!((pressure(&s).unwrap() - 3f64.ln()).abs() < 1e-12);
        let m = equilibrium_measure(&s).unwrap();
        assert!(m.p.iter().all(|&x| (x - 0.25).abs() < 1e-12));
        assert!((m.entropy - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn golden_mean() {
        let s = EdgeShift::golden_mean(&[0.0, 0.0]).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((pressure(&s).unwrap() - phi.ln()).abs() < 1e-12);
        let m = equilibrium_measure(&s).unwrap();
        // symmetric A: l = r = (φ, 1), so p ∝ (φ², 1)
        let z = phi * phi + 1.0;
        assert!((m.p[0] - phi * phi / z).abs() < 1e-10);
        assert!((m.p[1] - 1.0 / z).abs() < 1e-10);
    }

    #[test]
    fn full_shift_bernoulli() {
        let s = EdgeShift::full(2, &[0.0, 0.0]).unwrap();
        let m = equilibrium_measure(&s).unwrap();
        assert!((m.pressure - 2f64.ln()).abs() < 1e-13);
        for row in &m.transition {
            assert!(row.iter().all(|&x| (x - 0.5).abs() < 1e-14));
        }
    }

    #[test]
    fn periodic_matrix_converges() {
        // bipartite theta graph: NB matrix has period 2
        let s = EdgeShift::from_graph(&fixtures::theta()).unwrap();
        assert!((pressure(&s).unwrap() - 2f64.ln()).abs() < 1e-12);
    }
}
