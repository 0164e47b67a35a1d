//! Walks on the `(q+1)`-regular tree, generated lazily as a stack of child
//! indices below the root: the first index ranges over `0..=q`, later ones
//! over `0..q`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::WalkError;
use crate::seed::stream_rng;

/// Levels walked past the region of interest before the walk is cut off.
/// Returning `k` levels has probability `q^{-k}`.
pub const ESCAPE_MARGIN: usize = 30;

const CHUNK: u64 = 8192;

/// The kernel `P_c = κ_c·P` for conductance systems with constant Patterson
/// total mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeWalkKernel {
    pub q: u64,
    pub delta: f64,
    /// `κ_c = (1+q)/(e^δ + q·e^{−δ})`.
    pub kappa: f64,
}

impl TreeWalkKernel {
    pub fn new(q: u64, delta: f64) -> Result<Self, WalkError> {
        if q < 2 {
            return Err(WalkError::InvalidArgument(format!("q = {q}, need q >= 2")));
        }
        if (delta - 0.5 * (q as f64).ln()).abs() < 1e-12 {
            return Err(WalkError::NotTransient);
        }
        let kappa = (1.0 + q as f64) / (delta.exp() + q as f64 * (-delta).exp());
        Ok(TreeWalkKernel { q, delta, kappa })
    }

    /// `c ≡ 0`: `δ = log q`, `κ = 1`, the simple random walk.
    pub fn simple(q: u64) -> Result<Self, WalkError> {
        Self::new(q, (q as f64).ln())
    }

    fn require_simple(&self) -> Result<(), WalkError> {
        if (self.kappa - 1.0).abs() > 1e-12 {
            return Err(WalkError::InvalidArgument("only c = 0 (the simple random walk) is simulated".into()));
        }
        Ok(())
    }

    /// One step of the simple random walk.
    fn step(&self, pos: &mut Vec<u32>, rng: &mut ChaCha8Rng) {
        let q = self.q as u32;
        let k = rng.gen_range(0..=q);
        if pos.is_empty() {
            pos.push(k);
        } else if k == 0 {
            pos.pop();
        } else {
            pos.push(k - 1);
        }
    }
}

fn check_path(q: u64, path: &[u32]) -> Result<(), WalkError> {
    for (i, &c) in path.iter().enumerate() {
        let bound = if i == 0 { q + 1 } else { q };
        if c as u64 >= bound {
            return Err(WalkError::InvalidArgument(format!("child index {c} at depth {} exceeds {}", i + 1, bound - 1)));
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct HarmonicReport {
    pub q: u64,
    pub depth: usize,
    pub reps: u64,
    pub radius: usize,
    /// Shadow masses in lexicographic order of the depth-`d` vertex.
    pub estimates: Vec<f64>,
    pub stderr: Vec<f64>,
    /// `1/((q+1)q^{d−1})`.
    pub target: f64,
}

impl HarmonicReport {
    pub fn max_z(&self) -> f64 {
        self.estimates.iter().zip(&self.stderr).map(|(e, s)| (e - self.target).abs() / s).fold(0.0, f64::max)
    }
}

fn shadow_index(q: u64, pos: &[u32], d: usize) -> usize {
    pos[..d].iter().enumerate().fold(0usize, |acc, (i, &c)| if i == 0 { c as usize } else { acc * q as usize + c as usize })
}

/// Exit law of the simple random walk from the root through the depth-`d`
/// shadows, with the walk stopped at radius `d + ESCAPE_MARGIN`.
pub fn tree_harmonic_measure(kernel: &TreeWalkKernel, d: usize, reps: u64, seed: u64) -> Result<HarmonicReport, WalkError> {
    kernel.require_simple()?;
    if d == 0 || reps == 0 {
        return Err(WalkError::InvalidArgument("need depth >= 1 and reps >= 1".into()));
    }
    let q = kernel.q;
    let nshadow = (q + 1) as usize * (q as usize).pow(d as u32 - 1);
    let radius = d + ESCAPE_MARGIN;
    let counts = (0..reps.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut tally = vec![0u64; nshadow];
            let mut pos = Vec::with_capacity(radius);
            for i in c * CHUNK..((c + 1) * CHUNK).min(reps) {
                let mut rng = stream_rng(seed, i);
                pos.clear();
                while pos.len() < radius {
                    kernel.step(&mut pos, &mut rng);
                }
                tally[shadow_index(q, &pos, d)] += 1;
            }
            tally
        })
        .reduce(|| vec![0u64; nshadow], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect());
    let n = reps as f64;
    let estimates: Vec<f64> = counts.iter().map(|&c| c as f64 / n).collect();
    let target = 1.0 / nshadow as f64;
    let stderr = vec![(target * (1.0 - target) / n).sqrt(); nshadow];
    Ok(HarmonicReport { q, depth: d, reps, radius, estimates, stderr, target })
}

#[derive(Debug, Clone)]
pub struct GreenReport {
    pub mean_y: f64,
    pub mean_z: f64,
    /// Estimate of `𝔊(x,y)/𝔊(x,z)`.
    pub ratio: f64,
    /// Delta-method standard error of the ratio.
    pub stderr: f64,
    /// `e^{−δ(d(x,y) − d(x,z))}`.
    pub target: f64,
}

impl GreenReport {
    pub fn z(&self) -> f64 {
        if self.stderr == 0.0 {
            if (self.ratio - self.target).abs() < 1e-15 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.ratio - self.target).abs() / self.stderr
        }
    }
}

/// Expected visits to `y` and `z` (given as child-index paths from the root
/// `x`) by walks from `x`, and their ratio.
pub fn green_ratio_check(
    kernel: &TreeWalkKernel,
    y: &[u32],
    z: &[u32],
    reps: u64,
    seed: u64,
) -> Result<GreenReport, WalkError> {
    kernel.require_simple()?;
    check_path(kernel.q, y)?;
    check_path(kernel.q, z)?;
    if reps < 2 {
        return Err(WalkError::InvalidArgument("need reps >= 2".into()));
    }
    let target = (-kernel.delta * (y.len() as f64 - z.len() as f64)).exp();
    let radius = y.len().max(z.len()) + ESCAPE_MARGIN;
    // Σ Y, Σ Z, Σ Y², Σ Z², Σ YZ over paths
    let sums = (0..reps.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut s = [0u128; 5];
            let mut pos: Vec<u32> = Vec::with_capacity(radius);
            for i in c * CHUNK..((c + 1) * CHUNK).min(reps) {
                let mut rng = stream_rng(seed, i);
                pos.clear();
                let (mut vy, mut vz) = (0u128, 0u128);
                loop {
                    vy += (pos.as_slice() == y) as u128;
                    vz += (pos.as_slice() == z) as u128;
                    if pos.len() >= radius {
                        break;
                    }
                    kernel.step(&mut pos, &mut rng);
                }
                s[0] += vy;
                s[1] += vz;
                s[2] += vy * vy;
                s[3] += vz * vz;
                s[4] += vy * vz;
            }
            s
        })
        .reduce(|| [0u128; 5], |a, b| std::array::from_fn(|k| a[k] + b[k]));
    let n = reps as f64;
    let [sy, sz, syy, szz, syz] = sums.map(|v| v as f64);
    let (my, mz) = (sy / n, sz / n);
    let vy = (syy / n - my * my) * n / (n - 1.0);
    let vz = (szz / n - mz * mz) * n / (n - 1.0);
    let cyz = (syz / n - my * mz) * n / (n - 1.0);
    let ratio = my / mz;
    let var = (vy / (mz * mz) - 2.0 * cyz * my / mz.powi(3) + vz * my * my / mz.powi(4)) / n;
    Ok(GreenReport { mean_y: my, mean_z: mz, ratio, stderr: var.max(0.0).sqrt(), target })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_for_zero_conductance() {
        let k = TreeWalkKernel::simple(3).unwrap();
        assert!((k.kappa - 1.0).abs() < 1e-15);
        assert_eq!(TreeWalkKernel::new(4, 2f64.ln()), Err(WalkError::NotTransient));
    }

    #[test]
    fn depth_one_shadows() {
        let k = TreeWalkKernel::simple(2).unwrap();
        let r = tree_harmonic_measure(&k, 1, 30_000, 5).unwrap();
        assert_eq!(r.estimates.len(), 3);
        assert!((r.estimates.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(r.max_z() < 4.0);
    }

    /// Each depth-1 shadow carries 1/3 and splits evenly between its two
    /// children, so every depth-2 shadow carries 1/6.
    #[test]
    fn depth_two_shadows() {
        let k = TreeWalkKernel::simple(2).unwrap();
        let r = tree_harmonic_measure(&k, 2, 60_000, 6).unwrap();
        assert_eq!(r.estimates.len(), 6);
        assert!((r.target - 1.0 / 6.0).abs() < 1e-15);
        assert!(r.max_z() < 4.0);
    }

    #[test]
    fn green_ratio_near_q() {
        let k = TreeWalkKernel::simple(2).unwrap();
        let r = green_ratio_check(&k, &[0], &[1, 0], 40_000, 8).unwrap();
        assert!((r.target - 2.0).abs() < 1e-12);
        assert!(r.z() < 4.0, "{r:?}");
        let same = green_ratio_check(&k, &[2], &[2], 100, 8).unwrap();
        assert_eq!(same.ratio, 1.0);
    }

    #[test]
    fn deterministic() {
        let k = TreeWalkKernel::simple(3).unwrap();
        let a = tree_harmonic_measure(&k, 2, 20_000, 1).unwrap();
        let b = tree_harmonic_measure(&k, 2, 20_000, 1).unwrap();
        assert_eq!(a.estimates, b.estimates);
    }
}
