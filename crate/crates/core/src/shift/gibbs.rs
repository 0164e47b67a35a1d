//! Cylinder masses and the weak Gibbs audit over periodic words.

use super::{EdgeShift, MarkovMeasure, ShiftError};
use crate::budget::enumeration_budget;

/// `m([w₀ … w_{k−1}]) = p(w₀)·∏ P[w_i, w_{i+1}]`.
pub fn cylinder_measure(shift: &EdgeShift, m: &MarkovMeasure, word: &[usize]) -> Result<f64, ShiftError> {
    let Some(&first) = word.first() else {
        return Ok(1.0);
    };
    if word.iter().any(|&a| a >= shift.len()) {
        return Err(ShiftError::Dimension("letter out of range".into()));
    }
    let mut mass = m.p[first];
    for w in word.windows(2) {
        if !shift.allowed(w[0], w[1]) {
            return Err(ShiftError::InadmissibleWord(w[0], w[1]));
        }
        mass *= m.transition[w[0]][w[1]];
    }
    Ok(mass)
}

/// Extremes of `m([w]) / exp(S_nφ(w) − n·P)` over periodic words `w` of
/// length `1..=maxlen`, per starting letter.
#[derive(Debug, Clone)]
pub struct GibbsAudit {
    pub min_ratio: Vec<f64>,
    pub max_ratio: Vec<f64>,
    /// Smallest `C_v ≥ 1` with all ratios in `[C_v⁻¹, C_v]`.
    pub constant: Vec<f64>,
    /// `max/min` per letter: 1 exactly when the ratio is constant.
    pub spread: Vec<f64>,
    /// `−(1/n) log(m([w])/e^{S_nφ(w)})` averaged over words of length `maxlen`.
    pub c_estimate: f64,
    pub words: u64,
    pub pass: bool,
}

pub fn weak_gibbs_audit(shift: &EdgeShift, m: &MarkovMeasure, maxlen: usize) -> Result<GibbsAudit, ShiftError> {
    if maxlen == 0 || maxlen > 16 {
        return Err(ShiftError::Budget(format!("maxlen {maxlen} outside 1..=16")));
    }
    let n = shift.len();
    let max_deg = (0..n).map(|a| shift.successors(a).len()).max().unwrap_or(1) as f64;
    let estimate = n as f64 * max_deg.powi(maxlen as i32 - 1);
    let budget = enumeration_budget() as f64;
    if estimate > budget {
        return Err(ShiftError::Budget(format!("about {estimate:.0} words exceed budget {budget:.0}")));
    }
    let pr = m.pressure;
    let mut min_ratio = vec![f64::INFINITY; n];
    let mut max_ratio = vec![0.0f64; n];
    let mut words = 0u64;
    let (mut c_sum, mut c_count) = (0.0, 0u64);
    // depth-first over admissible words, carrying log-mass and Birkhoff sum
    let mut stack: Vec<(usize, usize, f64, f64)> = Vec::new();
    for start in 0..n {
        stack.push((start, 1, m.p[start].ln(), shift.phi[start]));
        while let Some((last, len, log_m, s)) = stack.pop() {
            if shift.allowed(last, start) {
                let log_ratio = log_m - (s - len as f64 * pr);
                let r = log_ratio.exp();
                min_ratio[start] = min_ratio[start].min(r);
                max_ratio[start] = max_ratio[start].max(r);
                words += 1;
                if len == maxlen {
                    c_sum += -(log_m - s) / len as f64;
                    c_count += 1;
                }
            }
            if len < maxlen {
                for &b in shift.successors(last).iter().rev() {
                    stack.push((b, len + 1, log_m + m.transition[last][b].ln(), s + shift.phi[b]));
                }
            }
        }
    }
    let constant: Vec<f64> = (0..n)
        .map(|a| if min_ratio[a].is_finite() { max_ratio[a].max(1.0 / min_ratio[a]) } else { f64::NAN })
        .collect();
    let spread: Vec<f64> = (0..n).map(|a| max_ratio[a] / min_ratio[a]).collect();
    let c_estimate = if c_count > 0 { c_sum / c_count as f64 } else { f64::NAN };
    let cmax = constant.iter().cloned().filter(|c| c.is_finite()).fold(1.0, f64::max);
    let finite = (0..n).all(|a| !min_ratio[a].is_finite() || (min_ratio[a] > 0.0 && max_ratio[a].is_finite()));
    let c_ok = c_count == 0 || (c_estimate - pr).abs() <= cmax.ln() / maxlen as f64 + 1e-9;
    Ok(GibbsAudit { min_ratio, max_ratio, constant, spread, c_estimate, words, pass: finite && c_ok })
}
