//! Artin continued fractions in `𝔽_q((Y⁻¹))`.
//!
//! Quadratic inputs are tracked through exact complete quotients
//! `(P_i + √D)/Q_i` with polynomial `P_i, Q_i`, so periodicity is detected by
//! a repeated `(P_i, Q_i)` pair rather than by comparing truncated series.

use std::collections::HashMap;

use super::laurent::LaurentSeries;
use super::poly::FqPoly;
use super::quad::QuadIrr;
use super::ratfunc::RatFunc;
use super::FfError;
use crate::budget::enumeration_budget;

#[derive(Clone, Debug)]
pub enum CfInput {
    Rational(RatFunc),
    Quadratic(QuadIrr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfExpansion {
    pub preperiod: Vec<FqPoly>,
    pub period: Vec<FqPoly>,
}

pub fn cf_expand(x: &CfInput) -> Result<CfExpansion, FfError> {
    match x {
        CfInput::Rational(r) => Ok(cf_rational(r)),
        CfInput::Quadratic(a) => cf_quadratic(a),
    }
}

fn cf_rational(r: &RatFunc) -> CfExpansion {
    let mut num = r.num().clone();
    let mut den = r.den().clone();
    let mut out = Vec::new();
    while !den.is_zero() {
        let (a, rem) = num.div_rem(&den).expect("nonzero divisor");
        out.push(a);
        num = den;
        den = rem;
    }
    CfExpansion { preperiod: out, period: Vec::new() }
}

fn cf_quadratic(x: &QuadIrr) -> Result<CfExpansion, FfError> {
    let d = x.disc();
    let m = x.half_disc_degree();
    let floor_w = x.sqrt_disc_series(m as usize + 1).poly_part()?;
    let mut p = x.b().neg();
    let mut qq = x.a().scale(2);
    let mut seen: HashMap<(FqPoly, FqPoly), usize> = HashMap::new();
    let mut terms = Vec::new();
    let budget = enumeration_budget();
    loop {
        if let Some(&i) = seen.get(&(p.clone(), qq.clone())) {
            let period = terms.split_off(i);
            return Ok(CfExpansion { preperiod: terms, period });
        }
        if terms.len() as u64 >= budget {
            return Err(FfError::TooLarge { needed: terms.len() as u128 + 1, budget });
        }
        seen.insert((p.clone(), qq.clone()), terms.len());
        let a = p.add(&floor_w).div_rem(&qq)?.0;
        let p_next = a.mul(&qq).sub(&p);
        let q_next = d.sub(&p_next.mul(&p_next)).div_exact(&qq)?;
        terms.push(a);
        p = p_next;
        qq = q_next;
    }
}

impl CfExpansion {
    /// The first `n` partial quotients, unrolling the period as needed.
    pub fn terms(&self, n: usize) -> Vec<FqPoly> {
        let mut out: Vec<FqPoly> = self.preperiod.iter().take(n).cloned().collect();
        if !self.period.is_empty() {
            let mut i = 0;
            while out.len() < n {
                out.push(self.period[i % self.period.len()].clone());
                i += 1;
            }
        }
        out
    }

    /// Convergents `(p_k, q_k)` for the first `n` partial quotients.
    pub fn convergents(&self, n: usize) -> Vec<(FqPoly, FqPoly)> {
        let terms = self.terms(n);
        let q = match terms.first() {
            Some(t) => t.modulus(),
            None => return Vec::new(),
        };
        let (mut p2, mut p1) = (FqPoly::zero(q), FqPoly::one(q));
        let (mut q2, mut q1) = (FqPoly::one(q), FqPoly::zero(q));
        let mut out = Vec::with_capacity(terms.len());
        for a in terms {
            let p = a.mul(&p1).add(&p2);
            let qk = a.mul(&q1).add(&q2);
            p2 = std::mem::replace(&mut p1, p.clone());
            q2 = std::mem::replace(&mut q1, qk.clone());
            out.push((p, qk));
        }
        out
    }

    /// Expansion of the `n`-th convergent, used to re-encode the input.
    pub fn convergent_series(&self, n: usize, prec: usize) -> Option<LaurentSeries> {
        let (p, q) = self.convergents(n).pop()?;
        let r = RatFunc::new(p, q).ok()?;
        Some(LaurentSeries::from_ratfunc(&r, prec))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::laurent::Expand;

    fn p(q: u32, c: &[i64]) -> FqPoly {
        FqPoly::new(q, c).unwrap()
    }

    #[test]
    fn rational_matches_euclid() {
        let r = RatFunc::new(p(3, &[1, 0, 1]), p(3, &[0, 1])).unwrap();
        let cf = cf_expand(&CfInput::Rational(r.clone())).unwrap();
        assert_eq!(cf.preperiod, vec![p(3, &[0, 1]), p(3, &[0, 1])]);
        assert!(cf.period.is_empty());
        let (pn, qn) = cf.convergents(2).pop().unwrap();
        assert_eq!(RatFunc::new(pn, qn).unwrap(), r);
    }

    #[test]
    fn worked_quadratic_is_periodic() {
        let a = QuadIrr::from_coeffs(3, &[1], &[], &[0, -1, -1], true).unwrap();
        let cf = cf_expand(&CfInput::Quadratic(a.clone())).unwrap();
        assert!(!cf.period.is_empty());
        for (i, t) in cf.terms(12).iter().enumerate().skip(1) {
            assert!(t.degree().unwrap() > 0, "term {i}");
        }
        // minimal period: no proper rotation divisor reproduces it
        let l = cf.period.len();
        for d in 1..l {
            if l % d == 0 {
                assert!((0..l).any(|i| cf.period[i] != cf.period[(i + d) % l]));
            }
        }
        let s = a.expand(40).unwrap();
        let c = cf.convergent_series(20, 40).unwrap();
        let diff = s.sub(&c);
        assert!(diff.valuation().map(|v| v.unwrap() > 15).unwrap_or(true));
    }

    #[test]
    fn determinant_identity() {
        let a = QuadIrr::from_coeffs(5, &[1, 1], &[2], &[3, 0, 4, 1], false).unwrap();
        let cf = cf_expand(&CfInput::Quadratic(a)).unwrap();
        let cv = cf.convergents(15);
        for k in 1..cv.len() {
            let (pk, qk) = &cv[k];
            let (pj, qj) = &cv[k - 1];
            let det = pk.mul(qj).sub(&pj.mul(qk));
            assert!(det.is_constant() && !det.is_zero());
        }
    }
}
