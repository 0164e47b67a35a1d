//! Prime-field scalars.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::FfError;

/// Largest characteristic accepted anywhere in the crate.
pub const MAX_PRIME: u32 = 65_521;

/// Largest characteristic for which square roots of scalars are searched.
pub const MAX_SQRT_PRIME: u32 = 101;

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(q: u32) -> Result<(), FfError> {
    if q > MAX_PRIME || !is_prime(q) {
        return Err(FfError::NotPrime(q));
    }
    Ok(())
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, q: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % q as u64) as u32
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, q: u32) -> u32 {
    ((a as u64 + q as u64 - b as u64) % q as u64) as u32
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, q: u32) -> u32 {
    ((a as u64 * b as u64) % q as u64) as u32
}

#[inline]
pub(crate) fn neg_mod(a: u32, q: u32) -> u32 {
    if a == 0 {
        0
    } else {
        q - a
    }
}

pub(crate) fn pow_mod(mut a: u32, mut e: u64, q: u32) -> u32 {
    let mut r = 1 % q;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, q);
        }
        a = mul_mod(a, a, q);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue (Fermat).
#[inline]
pub(crate) fn inv_mod(a: u32, q: u32) -> u32 {
    debug_assert!(a % q != 0, "inverse of zero");
    pow_mod(a, q as u64 - 2, q)
}

/// Exhaustive square root in 𝔽_q; `None` for non-residues.
///
/// Returns the smaller of the two roots as an integer in `[0, q)`.
pub(crate) fn sqrt_mod(a: u32, q: u32) -> Result<Option<u32>, FfError> {
    if q > MAX_SQRT_PRIME {
        return Err(FfError::FieldTooLarge(q));
    }
    let a = a % q;
    Ok((0..q).find(|&r| mul_mod(r, r, q) == a))
}

/// An element of the prime field 𝔽_q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FqElem {
    value: u32,
    q: u32,
}

impl FqElem {
    pub fn new(value: i64, q: u32) -> Result<Self, FfError> {
        check_prime(q)?;
        Ok(Self::from_raw(value.rem_euclid(q as i64) as u32, q))
    }

    pub(crate) fn from_raw(value: u32, q: u32) -> Self {
        FqElem { value: value % q, q }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.q
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<Self, FfError> {
        if self.value == 0 {
            return Err(FfError::DivisionByZero);
        }
        Ok(Self::from_raw(inv_mod(self.value, self.q), self.q))
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FqElem {
    type Output = FqElem;
    fn add(self, rhs: FqElem) -> FqElem {
        debug_assert_eq!(self.q, rhs.q);
        FqElem::from_raw(add_mod(self.value, rhs.value, self.q), self.q)
    }
}

impl Sub for FqElem {
    type Output = FqElem;
    fn sub(self, rhs: FqElem) -> FqElem {
        debug_assert_eq!(self.q, rhs.q);
        FqElem::from_raw(sub_mod(self.value, rhs.value, self.q), self.q)
    }
}

impl Mul for FqElem {
    type Output = FqElem;
    fn mul(self, rhs: FqElem) -> FqElem {
        debug_assert_eq!(self.q, rhs.q);
        FqElem::from_raw(mul_mod(self.value, rhs.value, self.q), self.q)
    }
}

impl Neg for FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        FqElem::from_raw(neg_mod(self.value, self.q), self.q)
    }
}

impl Div for FqElem {
    type Output = FqElem;
    /// Panics on division by zero, like integer division.
    fn div(self, rhs: FqElem) -> FqElem {
        self * rhs.inv().expect("division by zero in 𝔽_q")
    }
}
