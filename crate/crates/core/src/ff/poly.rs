//! Dense polynomials over a prime field, coefficients little-endian in degree.

use std::cmp::Ordering;
use std::fmt;

use super::field::{add_mod, check_prime, inv_mod, mul_mod, neg_mod, sub_mod};
use super::FfError;

/// A polynomial in 𝔽_q[Y]. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqPoly {
    q: u32,
    coeffs: Vec<u32>,
}

impl FqPoly {
    /// Builds a polynomial from integer coefficients (constant term first).
    pub fn new(q: u32, coeffs: &[i64]) -> Result<Self, FfError> {
        check_prime(q)?;
        let c = coeffs.iter().map(|&a| a.rem_euclid(q as i64) as u32).collect();
        Ok(Self::from_raw(q, c))
    }

    pub(crate) fn from_raw(q: u32, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FqPoly { q, coeffs }
    }

    pub fn zero(q: u32) -> Self {
        FqPoly { q, coeffs: Vec::new() }
    }

    pub fn one(q: u32) -> Self {
        Self::constant(1, q)
    }

    pub fn constant(c: u32, q: u32) -> Self {
        Self::from_raw(q, vec![c % q])
    }

    /// The monomial `c·Y^k`.
    pub fn monomial(c: u32, k: usize, q: u32) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c % q;
        Self::from_raw(q, v)
    }

    /// The variable `Y`.
    pub fn y(q: u32) -> Self {
        Self::monomial(1, 1, q)
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u32 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = -1` sentinel, handy in valuation arithmetic.
    pub(crate) fn deg_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: u32) -> Self {
        let q = self.q;
        Self::from_raw(q, self.coeffs.iter().map(|&a| mul_mod(a, c, q)).collect())
    }

    /// Monic associate; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.q))
    }

    pub fn add(&self, rhs: &FqPoly) -> Self {
        debug_assert_eq!(self.q, rhs.q);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n)
            .map(|i| add_mod(self.coeff(i), rhs.coeff(i), self.q))
            .collect();
        Self::from_raw(self.q, v)
    }

    pub fn sub(&self, rhs: &FqPoly) -> Self {
        debug_assert_eq!(self.q, rhs.q);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n)
            .map(|i| sub_mod(self.coeff(i), rhs.coeff(i), self.q))
            .collect();
        Self::from_raw(self.q, v)
    }

    pub fn neg(&self) -> Self {
        let q = self.q;
        Self::from_raw(q, self.coeffs.iter().map(|&a| neg_mod(a, q)).collect())
    }

    pub fn mul(&self, rhs: &FqPoly) -> Self {
        debug_assert_eq!(self.q, rhs.q);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.q);
        }
        let q = self.q as u64;
        let mut acc = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % q;
            }
        }
        Self::from_raw(self.q, acc.into_iter().map(|x| x as u32).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut r = Self::one(self.q);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        r
    }

    /// Euclidean division `self = quot·d + rem` with `deg rem < deg d`.
    pub fn div_rem(&self, d: &FqPoly) -> Result<(FqPoly, FqPoly), FfError> {
        debug_assert_eq!(self.q, d.q);
        let dd = d.degree().ok_or(FfError::DivisionByZero)?;
        let q = self.q;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(q), self.clone()));
        }
        let inv_lead = inv_mod(d.leading(), q);
        let mut quot = vec![0u32; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = mul_mod(rem[k], inv_lead, q);
            if c == 0 {
                continue;
            }
            quot[k - dd] = c;
            for (j, &b) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = sub_mod(rem[idx], mul_mod(c, b, q), q);
            }
        }
        rem.truncate(dd);
        Ok((Self::from_raw(q, quot), Self::from_raw(q, rem)))
    }

    pub fn rem(&self, d: &FqPoly) -> Result<FqPoly, FfError> {
        Ok(self.div_rem(d)?.1)
    }

    /// Exact quotient; errors when `d` does not divide `self`.
    pub fn div_exact(&self, d: &FqPoly) -> Result<FqPoly, FfError> {
        let (quot, rem) = self.div_rem(d)?;
        if !rem.is_zero() {
            return Err(FfError::NotDivisible);
        }
        Ok(quot)
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, rhs: &FqPoly) -> FqPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s·self + t·rhs = g`, `g` monic.
    pub fn xgcd(&self, rhs: &FqPoly) -> (FqPoly, FqPoly, FqPoly) {
        let q = self.q;
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (Self::one(q), Self::zero(q));
        let (mut t0, mut t1) = (Self::zero(q), Self::one(q));
        while !r1.is_zero() {
            let (quot, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = s0.sub(&quot.mul(&s1));
            let t = t0.sub(&quot.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let c = inv_mod(r0.leading(), q);
        (r0.scale(c), s0.scale(c), t0.scale(c))
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.q), c, self.q))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> FqPoly {
        let q = self.q;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, (i as u64 % q as u64) as u32, q))
            .collect();
        Self::from_raw(q, v)
    }

    /// Enumerates all monic polynomials of the given degree, in lexicographic
    /// order of their lower coefficients.
    pub fn monics_of_degree(q: u32, degree: usize) -> impl Iterator<Item = FqPoly> {
        let count = (q as u64).pow(degree as u32);
        (0..count).map(move |mut idx| {
            let mut v = Vec::with_capacity(degree + 1);
            for _ in 0..degree {
                v.push((idx % q as u64) as u32);
                idx /= q as u64;
            }
            v.push(1);
            FqPoly::from_raw(q, v)
        })
    }

    /// Enumerates all polynomials of degree `< n` (including zero).
    pub fn all_below_degree(q: u32, n: usize) -> impl Iterator<Item = FqPoly> {
        let count = (q as u64).pow(n as u32);
        (0..count).map(move |mut idx| {
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push((idx % q as u64) as u32);
                idx /= q as u64;
            }
            FqPoly::from_raw(q, v)
        })
    }

    /// Irreducibility by trial division over monic polynomials of degree at
    /// most half the degree; desk-scale degrees only.
    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(d) => {
                for k in 1..=d / 2 {
                    for p in Self::monics_of_degree(self.q, k) {
                        if self.rem(&p).expect("monic").is_zero() {
                            return false;
                        }
                    }
                }
                true
            }
        }
    }

    /// Total order used for canonical forms: by degree, then coefficients
    /// from the top down.
    pub fn canonical_cmp(&self, rhs: &FqPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&rhs.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(rhs.coeffs.iter().rev()))
    }

    /// Coefficient list rendered as `[c0,c1,...]`.
    pub fn to_list_string(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "Y")?,
                (1, c) => write!(f, "{c}Y")?,
                (k, 1) => write!(f, "Y^{k}")?,
                (k, c) => write!(f, "{c}Y^{k}")?,
            }
        }
        Ok(())
    }
}
