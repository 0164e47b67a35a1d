//! Independent equilibrium oracle: maximise `h(P) + ∫φ` directly over
//! stochastic matrices compatible with the shift.
//!
//! Rows are parametrised by softmax logits on allowed transitions, so every
//! iterate is a valid compatible chain; the exact gradient comes from the
//! Poisson equation of the average-reward problem.

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use super::{EdgeShift, MarkovMeasure, ShiftError};
use crate::seed::stream_rng;

const STARTS: usize = 32;
const MAX_STEPS: usize = 20_000;

#[derive(Debug, Clone)]
pub struct BruteForceReport {
    pub measure: MarkovMeasure,
    /// Best objective `h + ∫φ` over all starts.
    pub value: f64,
    /// Objective reached from each start.
    pub start_values: Vec<f64>,
}

struct Eval {
    value: f64,
    p: Vec<f64>,
    pm: Vec<Vec<f64>>,
    grad: Vec<Vec<f64>>,
}

fn softmax_rows(shift: &EdgeShift, theta: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = shift.len();
    let mut pm = vec![vec![0.0; n]; n];
    for a in 0..n {
        let succ = shift.successors(a);
        let mx = succ.iter().map(|&b| theta[a][b]).fold(f64::NEG_INFINITY, f64::max);
        let z: f64 = succ.iter().map(|&b| (theta[a][b] - mx).exp()).sum();
        for &b in succ {
            pm[a][b] = (theta[a][b] - mx).exp() / z;
        }
    }
    pm
}

fn evaluate(shift: &EdgeShift, theta: &[Vec<f64>]) -> Eval {
    let n = shift.len();
    let pm = softmax_rows(shift, theta);
    let plog = |x: f64| if x > 0.0 { x * x.ln() } else { 0.0 };
    // stationary vector: pᵀ(I − P) = 0, Σp = 1, solved as (I − P + 1·1ᵀ)ᵀ p = 1
    let mut m = DMatrix::from_fn(n, n, |a, b| if a == b { 1.0 } else { 0.0 } - pm[a][b] + 1.0);
    m.transpose_mut();
    let p = m.lu().solve(&DVector::from_element(n, 1.0)).expect("irreducible chain");
    let reward: Vec<f64> =
        (0..n).map(|a| shift.phi[a] - shift.successors(a).iter().map(|&b| plog(pm[a][b])).sum::<f64>()).collect();
    let value: f64 = (0..n).map(|a| p[a] * reward[a]).sum();
    // differential values: (I − P + 1·pᵀ) w = r − F·1
    let k = DMatrix::from_fn(n, n, |a, b| if a == b { 1.0 } else { 0.0 } - pm[a][b] + p[b]);
    let rhs = DVector::from_iterator(n, reward.iter().map(|r| r - value));
    let w = k.lu().solve(&rhs).expect("Poisson system");
    let mut grad = vec![vec![0.0; n]; n];
    for a in 0..n {
        let succ = shift.successors(a);
        let adv = |b: usize| w[b] - pm[a][b].ln();
        let mean: f64 = succ.iter().map(|&b| pm[a][b] * adv(b)).sum();
        for &b in succ {
            grad[a][b] = p[a] * pm[a][b] * (adv(b) - mean);
        }
    }
    Eval { value, p: p.iter().copied().collect(), pm, grad }
}

fn ascend(shift: &EdgeShift, mut theta: Vec<Vec<f64>>) -> Eval {
    let n = shift.len();
    let mut cur = evaluate(shift, &theta);
    let mut step = 1.0;
    for _ in 0..MAX_STEPS {
        let gnorm: f64 = cur.grad.iter().flatten().map(|g| g * g).sum::<f64>().sqrt();
        if gnorm < 1e-13 {
            break;
        }
        let trial: Vec<Vec<f64>> =
            (0..n).map(|a| (0..n).map(|b| theta[a][b] + step * cur.grad[a][b]).collect()).collect();
        let next = evaluate(shift, &trial);
        if next.value >= cur.value {
            theta = trial;
            cur = next;
            step = (step * 1.5).min(1e6);
        } else {
            step *= 0.5;
            if step < 1e-12 {
                break;
            }
        }
    }
    cur
}

/// Maximises `h + ∫φ` from 32 random starts (seeded) and returns the best.
pub fn brute_force_equilibrium(shift: &EdgeShift, seed: u64) -> Result<BruteForceReport, ShiftError> {
    let n = shift.len();
    if n > 4 {
        return Err(ShiftError::Budget(format!("{n} letters; the oracle handles at most 4")));
    }
    let mut best: Option<Eval> = None;
    let mut start_values = Vec::with_capacity(STARTS);
    for s in 0..STARTS {
        let mut rng = stream_rng(seed, s as u64);
        let theta: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect()).collect();
        let e = ascend(shift, theta);
        start_values.push(e.value);
        if best.as_ref().map_or(true, |b| e.value > b.value) {
            best = Some(e);
        }
    }
    let best = best.expect("at least one start");
    let value = best.value;
    let measure = MarkovMeasure::from_transition(shift, best.pm, best.p, value);
    Ok(BruteForceReport { measure, value, start_values })
}

/// Total variation between the two-cylinder laws of two measures.
pub fn tv_two_cylinders(a: &MarkovMeasure, b: &MarkovMeasure) -> f64 {
    let ja = a.two_cylinders();
    let jb = b.two_cylinders();
    0.5 * ja.iter().flatten().zip(jb.iter().flatten()).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::super::equilibrium_measure;
    use super::*;

    #[test]
    fn full_two_shift() {
        let s = EdgeShift::full(2, &[0.0, 0.0]).unwrap();
        let r = brute_force_equilibrium(&s, 1).unwrap();
        assert!((r.value - 2f64.ln()).abs() < 1e-9);
        assert!(r.measure.p.iter().all(|&x| (x - 0.5).abs() < 1e-6));
    }

    #[test]
    fn golden_mean_matches_parry() {
        let s = EdgeShift::golden_mean(&[0.3, -0.7]).unwrap();
        let r = brute_force_equilibrium(&s, 2).unwrap();
        let m = equilibrium_measure(&s).unwrap();
        assert!((r.value - m.pressure).abs() < 1e-6);
        assert!(tv_two_cylinders(&r.measure, &m) < 1e-4);
    }
}
