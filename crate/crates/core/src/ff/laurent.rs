//! Truncated Laurent series in `π = Y⁻¹`, i.e. elements of `𝔽_q((Y⁻¹))`.
//!
//! Coefficient `i` of a series multiplies `π^(start + i)`. Coefficients are
//! known up to (excluding) the absolute exponent `start + len`; when `exact`
//! is set every later coefficient is zero.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::field::{add_mod, inv_mod, mul_mod, neg_mod, sqrt_mod, sub_mod};
use super::poly::FqPoly;
use super::ratfunc::RatFunc;
use super::FfError;

/// Default cap on the number of coefficients any expansion may request.
pub const DEFAULT_PRECISION_CAP: usize = 256;

/// Reads `GEODLAB_PRECISION_CAP`, falling back to [`DEFAULT_PRECISION_CAP`].
pub fn precision_cap() -> usize {
    std::env::var("GEODLAB_PRECISION_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&c: &usize| c > 0)
        .unwrap_or(DEFAULT_PRECISION_CAP)
}

pub(crate) fn check_prec(prec: usize) -> Result<(), FfError> {
    if prec == 0 {
        return Err(FfError::InvalidArgument("precision must be positive".into()));
    }
    let cap = precision_cap();
    if prec > cap {
        return Err(FfError::PrecisionCap { requested: prec, cap });
    }
    Ok(())
}

/// The exact value `q^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QPower {
    pub q: u32,
    pub exp: i64,
}

impl QPower {
    pub fn new(q: u32, exp: i64) -> Self {
        QPower { q, exp }
    }

    pub fn to_rational(self) -> BigRational {
        let base = BigInt::from(self.q).pow(self.exp.unsigned_abs() as u32);
        if self.exp >= 0 {
            BigRational::from_integer(base)
        } else {
            BigRational::new(BigInt::one(), base)
        }
    }

    pub fn to_f64(self) -> f64 {
        (self.q as f64).powi(self.exp as i32)
    }

    pub fn mul(self, rhs: QPower) -> QPower {
        QPower::new(self.q, self.exp + rhs.exp)
    }

    pub fn div(self, rhs: QPower) -> QPower {
        QPower::new(self.q, self.exp - rhs.exp)
    }
}

impl fmt::Display for QPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exp {
            0 => write!(f, "1"),
            e if e > 0 => write!(f, "{}", self.to_rational()),
            e => write!(f, "1/{}", BigInt::from(self.q).pow((-e) as u32)),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    q: u32,
    start: i64,
    coeffs: Vec<u32>,
    exact: bool,
}

impl LaurentSeries {
    /// Builds a series from coefficients of `π^start, π^(start+1), ...`.
    pub fn from_parts(q: u32, start: i64, coeffs: Vec<u32>, exact: bool) -> Self {
        let mut coeffs: Vec<u32> = coeffs.into_iter().map(|c| c % q).collect();
        if exact {
            while coeffs.len() > 1 && coeffs.last() == Some(&0) {
                coeffs.pop();
            }
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        LaurentSeries { q, start, coeffs, exact }
    }

    pub fn zero(q: u32) -> Self {
        Self::from_parts(q, 0, vec![0], true)
    }

    /// Exact expansion of a polynomial in `Y`.
    pub fn from_poly(p: &FqPoly) -> Self {
        let q = p.modulus();
        match p.degree() {
            None => Self::zero(q),
            Some(d) => {
                let coeffs = p.coeffs().iter().rev().copied().collect();
                Self::from_parts(q, -(d as i64), coeffs, true)
            }
        }
    }

    /// Expansion of a rational function with `prec` coefficients from its
    /// valuation on; exact when the expansion terminates within `prec`.
    pub fn from_ratfunc(r: &RatFunc, prec: usize) -> Self {
        let q = r.modulus();
        if r.is_zero() {
            return Self::zero(q);
        }
        let num = r.num();
        let den = r.den();
        let dp = num.degree().unwrap();
        let dq = den.degree().unwrap();
        let pt: Vec<u32> = num.coeffs().iter().rev().copied().collect();
        let qt: Vec<u32> = den.coeffs().iter().rev().copied().collect();
        let start = dq as i64 - dp as i64;
        if qt.len() == 1 && pt.len() <= prec {
            return Self::from_parts(q, start, pt, true);
        }
        // den is monic so qt[0] = 1
        let coeffs = series_div(&pt, &qt, prec, q);
        Self::from_parts(q, start, coeffs, false)
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Number of known coefficients.
    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    /// Exponent of `π` up to which coefficients are known (exclusive);
    /// `None` when exact.
    pub fn abs_prec(&self) -> Option<i64> {
        if self.exact {
            None
        } else {
            Some(self.start + self.coeffs.len() as i64)
        }
    }

    /// Coefficient of `π^k`, or `None` if not known.
    pub fn coeff_at(&self, k: i64) -> Option<u32> {
        if k < self.start {
            return Some(0);
        }
        let i = (k - self.start) as usize;
        match self.coeffs.get(i) {
            Some(&c) => Some(c),
            None if self.exact => Some(0),
            None => None,
        }
    }

    /// Coefficient of `Y^k`, or `None` if not known.
    pub fn y_coeff(&self, k: i64) -> Option<u32> {
        self.coeff_at(-k)
    }

    fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    /// True when the series is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.exact && self.first_nonzero().is_none()
    }

    /// `v_∞`, `Ok(None)` for the exact zero series.
    pub fn valuation(&self) -> Result<Option<i64>, FfError> {
        match self.first_nonzero() {
            Some(i) => Ok(Some(self.start + i as i64)),
            None if self.exact => Ok(None),
            None => Err(FfError::PrecisionExhausted),
        }
    }

    /// Drops leading zero coefficients so that `start` is the valuation.
    pub fn normalized(&self) -> Result<LaurentSeries, FfError> {
        match self.first_nonzero() {
            Some(i) => Ok(LaurentSeries {
                q: self.q,
                start: self.start + i as i64,
                coeffs: self.coeffs[i..].to_vec(),
                exact: self.exact,
            }),
            None if self.exact => Ok(Self::zero(self.q)),
            None => Err(FfError::PrecisionExhausted),
        }
    }

    /// Keeps at most `prec` coefficients after the valuation.
    pub fn truncated(&self, prec: usize) -> Result<LaurentSeries, FfError> {
        let n = self.normalized()?;
        if n.coeffs.len() <= prec {
            return Ok(n);
        }
        Ok(LaurentSeries { q: n.q, start: n.start, coeffs: n.coeffs[..prec].to_vec(), exact: false })
    }

    pub fn neg(&self) -> LaurentSeries {
        LaurentSeries {
            q: self.q,
            start: self.start,
            coeffs: self.coeffs.iter().map(|&c| neg_mod(c, self.q)).collect(),
            exact: self.exact,
        }
    }

    pub fn scale(&self, c: u32) -> LaurentSeries {
        LaurentSeries {
            q: self.q,
            start: self.start,
            coeffs: self.coeffs.iter().map(|&a| mul_mod(a, c % self.q, self.q)).collect(),
            exact: self.exact,
        }
    }

    /// Multiplication by `π^k`.
    pub fn shift(&self, k: i64) -> LaurentSeries {
        LaurentSeries { start: self.start + k, ..self.clone() }
    }

    pub fn add(&self, rhs: &LaurentSeries) -> LaurentSeries {
        let q = self.q;
        let start = self.start.min(rhs.start);
        let end_a = self.start + self.coeffs.len() as i64;
        let end_b = rhs.start + rhs.coeffs.len() as i64;
        let (end, exact) = match (self.exact, rhs.exact) {
            (true, true) => (end_a.max(end_b), true),
            (true, false) => (end_b, false),
            (false, true) => (end_a, false),
            (false, false) => (end_a.min(end_b), false),
        };
        let end = end.max(start + 1);
        let coeffs = (start..end)
            .map(|k| add_mod(self.coeff_at(k).unwrap_or(0), rhs.coeff_at(k).unwrap_or(0), q))
            .collect();
        LaurentSeries { q, start, coeffs, exact }
    }

    pub fn sub(&self, rhs: &LaurentSeries) -> LaurentSeries {
        self.add(&rhs.neg())
    }

    /// Product; relative precision is the smaller of the two.
    pub fn mul(&self, rhs: &LaurentSeries) -> Result<LaurentSeries, FfError> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.q));
        }
        let a = self.normalized()?;
        let b = rhs.normalized()?;
        let q = a.q;
        let exact = a.exact && b.exact;
        let len = match (a.exact, b.exact) {
            (true, true) => a.coeffs.len() + b.coeffs.len() - 1,
            (true, false) => b.coeffs.len(),
            (false, true) => a.coeffs.len(),
            (false, false) => a.coeffs.len().min(b.coeffs.len()),
        };
        let mut out = vec![0u32; len];
        for (i, &x) in a.coeffs.iter().enumerate().take(len) {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = add_mod(out[i + j], mul_mod(x, y, q), q);
            }
        }
        Ok(LaurentSeries { q, start: a.start + b.start, coeffs: out, exact })
    }

    /// Inverse with at most `prec` coefficients (exact monomials stay exact).
    pub fn inv(&self, prec: usize) -> Result<LaurentSeries, FfError> {
        if self.is_zero() {
            return Err(FfError::DivisionByZero);
        }
        let a = self.normalized()?;
        let q = a.q;
        if a.exact && a.coeffs.len() == 1 {
            return Ok(Self::from_parts(q, -a.start, vec![inv_mod(a.coeffs[0], q)], true));
        }
        let len = if a.exact { prec } else { a.coeffs.len().min(prec) };
        let c = series_div(&[1], &a.coeffs, len, q);
        Ok(Self::from_parts(q, -a.start, c, false))
    }

    pub fn div(&self, rhs: &LaurentSeries, prec: usize) -> Result<LaurentSeries, FfError> {
        let inv = rhs.inv(prec)?;
        self.mul(&inv)?.truncated(prec)
    }

    /// Square root whose leading coefficient is the smaller residue root
    /// (`upper = false`) or its negative (`upper = true`).
    pub fn sqrt(&self, upper: bool) -> Result<LaurentSeries, FfError> {
        let q = self.q;
        if q == 2 {
            return Err(FfError::Char2Unsupported);
        }
        if self.is_zero() {
            return Ok(Self::zero(q));
        }
        let a = self.normalized()?;
        if a.start % 2 != 0 {
            return Err(FfError::NotSplit);
        }
        let r0 = sqrt_mod(a.coeffs[0], q)?.ok_or(FfError::NotSplit)?;
        let r0 = if upper { neg_mod(r0, q) } else { r0 };
        let len = a.coeffs.len();
        let inv2r0 = inv_mod(mul_mod(2, r0, q), q);
        let mut r = vec![0u32; len];
        r[0] = r0;
        for n in 1..len {
            let mut s = a.coeffs[n];
            for i in 1..n {
                s = sub_mod(s, mul_mod(r[i], r[n - i], q), q);
            }
            r[n] = mul_mod(s, inv2r0, q);
        }
        Ok(LaurentSeries { q, start: a.start / 2, coeffs: r, exact: false })
    }

    /// Polynomial part `Σ_{k≥0} c_k Y^k`; needs coefficients through `Y⁰`.
    pub fn poly_part(&self) -> Result<FqPoly, FfError> {
        if self.start > 0 {
            return Ok(FqPoly::zero(self.q));
        }
        let top = -self.start;
        let mut c = Vec::with_capacity(top as usize + 1);
        for k in 0..=top {
            c.push(self.y_coeff(k).ok_or(FfError::PrecisionExhausted)?);
        }
        Ok(FqPoly::from_raw(self.q, c))
    }

    /// True when the two series agree on every coefficient known to both.
    pub fn agrees_with(&self, rhs: &LaurentSeries) -> bool {
        let lo = self.start.min(rhs.start);
        let hi = match (self.abs_prec(), rhs.abs_prec()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => {
                (self.start + self.coeffs.len() as i64).max(rhs.start + rhs.coeffs.len() as i64)
            }
        };
        (lo..hi).all(|k| self.coeff_at(k) == rhs.coeff_at(k))
    }
}

/// First `len` coefficients of `num/den` as power series in `π`, `den[0] ≠ 0`.
pub(crate) fn series_div(num: &[u32], den: &[u32], len: usize, q: u32) -> Vec<u32> {
    let inv0 = inv_mod(den[0], q);
    let mut out = vec![0u32; len];
    for n in 0..len {
        let mut s = num.get(n).copied().unwrap_or(0);
        for i in 1..=n.min(den.len().saturating_sub(1)) {
            s = sub_mod(s, mul_mod(den[i], out[n - i], q), q);
        }
        out[n] = mul_mod(s, inv0, q);
    }
    out
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = -(self.start + i as i64);
            let mono = match e {
                0 => String::new(),
                1 => "Y".to_string(),
                e => format!("Y^{e}"),
            };
            terms.push(match (c, mono.is_empty()) {
                (c, true) => c.to_string(),
                (1, false) => mono,
                (c, false) => format!("{c}*{mono}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        if let Some(p) = self.abs_prec() {
            terms.push(format!("O(Y^{})", -p));
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// Anything with a Laurent expansion in `Y⁻¹`.
pub trait Expand {
    /// `prec` coefficients starting at the valuation.
    fn expand(&self, prec: usize) -> Result<LaurentSeries, FfError>;
}

impl Expand for RatFunc {
    fn expand(&self, prec: usize) -> Result<LaurentSeries, FfError> {
        check_prec(prec)?;
        Ok(LaurentSeries::from_ratfunc(self, prec))
    }
}

impl Expand for FqPoly {
    fn expand(&self, prec: usize) -> Result<LaurentSeries, FfError> {
        RatFunc::from_poly(self.clone()).expand(prec)
    }
}

/// Expands `x` to `prec` coefficients from its valuation on.
pub fn laurent_expand<T: Expand + ?Sized>(x: &T, prec: usize) -> Result<LaurentSeries, FfError> {
    x.expand(prec)
}

/// `(v_∞(x), |x|_v)`; `(None, None)` encodes `v = +∞`, `|x| = 0`.
pub fn valuation_abs(x: &LaurentSeries) -> Result<(Option<i64>, Option<QPower>), FfError> {
    let v = x.valuation()?;
    Ok((v, v.map(|v| QPower::new(x.modulus(), -v))))
}

/// Valuation of a lazily expanded quantity: doubles the working precision
/// until a nonzero coefficient appears, up to the precision cap.
pub fn valuation_adaptive<F>(mut f: F, start_prec: usize) -> Result<Option<i64>, FfError>
where
    F: FnMut(usize) -> Result<LaurentSeries, FfError>,
{
    let cap = precision_cap();
    let mut p = start_prec.clamp(1, cap);
    loop {
        let s = f(p)?;
        match s.valuation() {
            Ok(v) => return Ok(v),
            Err(FfError::PrecisionExhausted) if p < cap => p = (2 * p).min(cap),
            Err(e) => return Err(e),
        }
    }
}
