//! Reduced rational functions in 𝔽_q(Y).

use std::fmt;

use super::poly::FqPoly;
use super::FfError;

/// `num/den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: FqPoly,
    den: FqPoly,
}

impl RatFunc {
    pub fn new(num: FqPoly, den: FqPoly) -> Result<Self, FfError> {
        if den.is_zero() {
            return Err(FfError::DivisionByZero);
        }
        let q = num.modulus();
        if num.is_zero() {
            return Ok(RatFunc { num, den: FqPoly::one(q) });
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g)?;
        let den = den.div_exact(&g)?;
        let c = super::field::inv_mod(den.leading(), q);
        Ok(RatFunc { num: num.scale(c), den: den.scale(c) })
    }

    pub fn from_poly(p: FqPoly) -> Self {
        let q = p.modulus();
        RatFunc { num: p, den: FqPoly::one(q) }
    }

    pub fn zero(q: u32) -> Self {
        Self::from_poly(FqPoly::zero(q))
    }

    pub fn one(q: u32) -> Self {
        Self::from_poly(FqPoly::one(q))
    }

    pub fn constant(c: u32, q: u32) -> Self {
        Self::from_poly(FqPoly::constant(c, q))
    }

    pub fn num(&self) -> &FqPoly {
        &self.num
    }

    pub fn den(&self) -> &FqPoly {
        &self.den
    }

    pub fn modulus(&self) -> u32 {
        self.num.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `v_∞ = deg den − deg num`, `None` for zero (infinite valuation).
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.den.deg_i64() - self.num.deg_i64())
    }

    pub fn add(&self, rhs: &RatFunc) -> RatFunc {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        RatFunc::new(num, self.den.mul(&rhs.den)).expect("nonzero denominators")
    }

    pub fn sub(&self, rhs: &RatFunc) -> RatFunc {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).expect("nonzero denominators")
    }

    pub fn inv(&self) -> Result<RatFunc, FfError> {
        if self.is_zero() {
            return Err(FfError::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<RatFunc, FfError> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn scale(&self, c: u32) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc, FfError> {
        if e >= 0 {
            Ok(RatFunc { num: self.num.pow(e as u32), den: self.den.pow(e as u32) })
        } else {
            self.inv()?.pow(-e)
        }
    }

    /// Polynomial part and fractional part: `self = floor + frac`, `v(frac) > 0`.
    pub fn split_polynomial_part(&self) -> (FqPoly, RatFunc) {
        let (quot, rem) = self.num.div_rem(&self.den).expect("monic denominator");
        let frac = RatFunc::new(rem, self.den.clone()).expect("nonzero denominator");
        (quot, frac)
    }
}

/// Recursive-descent parser for expressions in `Y` with integer constants,
/// `+ - * / ^ ( )`; constants are reduced mod `q`.
struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    q: u32,
}

impl<'a> Parser<'a> {
    fn err(&self, m: &str) -> FfError {
        FfError::InvalidArgument(format!("{m} at offset {} in rational function", self.i))
    }

    fn peek(&mut self) -> Option<u8> {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<RatFunc, FfError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.i += 1;
            let t = self.term()?;
            acc = if c == b'+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, FfError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(b'/') => {
                    self.i += 1;
                    acc = acc.div(&self.power()?)?;
                }
                // implicit product such as `2Y` or `Y(Y+1)`
                Some(b'Y' | b'y' | b'(') => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatFunc, FfError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            let neg = if self.peek() == Some(b'-') {
                self.i += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e = i32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, FfError> {
        self.peek();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.i]).unwrap().parse().map_err(|_| self.err("number too large"))
    }

    fn atom(&mut self) -> Result<RatFunc, FfError> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.i += 1;
                Ok(self.power()?.neg())
            }
            Some(b'Y' | b'y') => {
                self.i += 1;
                Ok(RatFunc::from_poly(FqPoly::y(self.q)))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFunc::from_poly(FqPoly::new(self.q, &[n])?))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

impl RatFunc {
    /// Parses text such as `Y^2+1`, `1/(Y-1)` or `2*Y^-3` over `𝔽_q`.
    pub fn parse(q: u32, text: &str) -> Result<RatFunc, FfError> {
        super::field::check_prime(q)?;
        let mut p = Parser { s: text.as_bytes(), i: 0, q };
        let r = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(r)
    }
}

impl From<FqPoly> for RatFunc {
    fn from(p: FqPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: u32, c: &[i64]) -> FqPoly {
        FqPoly::new(q, c).unwrap()
    }

    #[test]
    fn reduction_and_monic_denominator() {
        // (2Y+2)/(2Y^2+2Y) over F_3 = 1/Y
        let r = RatFunc::new(p(3, &[2, 2]), p(3, &[0, 2, 2])).unwrap();
        assert_eq!(r.num(), &p(3, &[1]));
        assert_eq!(r.den(), &p(3, &[0, 1]));
        assert!(RatFunc::new(p(3, &[1]), FqPoly::zero(3)).is_err());
    }

    #[test]
    fn valuation_convention() {
        let r = RatFunc::new(p(3, &[1]), p(3, &[-1, 1])).unwrap();
        assert_eq!(r.valuation(), Some(1));
        assert_eq!(RatFunc::from_poly(p(3, &[0, 1])).valuation(), Some(-1));
        assert_eq!(RatFunc::zero(3).valuation(), None);
    }

    #[test]
    fn field_operations() {
        let a = RatFunc::new(p(5, &[1, 2]), p(5, &[3, 0, 1])).unwrap();
        let b = RatFunc::new(p(5, &[4, 1, 1]), p(5, &[0, 1])).unwrap();
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.mul(&b).div(&b).unwrap(), a);
        assert_eq!(a.mul(&a.inv().unwrap()), RatFunc::one(5));
    }

    #[test]
    fn parse_expressions() {
        let r = RatFunc::parse(3, "Y^2 + 2*Y + 1").unwrap();
        assert_eq!(r, RatFunc::from_poly(p(3, &[1, 2, 1])));
        let r = RatFunc::parse(5, "1/(Y-1)").unwrap();
        assert_eq!(r, RatFunc::new(p(5, &[1]), p(5, &[-1, 1])).unwrap());
        let r = RatFunc::parse(3, "2Y^-2").unwrap();
        assert_eq!(r, RatFunc::new(p(3, &[2]), p(3, &[0, 0, 1])).unwrap());
        assert_eq!(RatFunc::parse(2, "-Y(Y+1)").unwrap(), RatFunc::from_poly(p(2, &[0, 1, 1])));
        assert_eq!(RatFunc::parse(7, "10").unwrap(), RatFunc::from_poly(p(7, &[3])));
        assert!(RatFunc::parse(3, "Y+").is_err());
        assert!(RatFunc::parse(3, "1/(Y-Y)").is_err());
        assert!(RatFunc::parse(4, "Y").is_err());
        assert!(RatFunc::parse(3, "Y)").is_err());
    }

    #[test]
    fn parse_round_trips_display() {
        let a = RatFunc::new(p(5, &[1, 2]), p(5, &[3, 0, 1])).unwrap();
        assert_eq!(RatFunc::parse(5, &a.to_string()).unwrap(), a);
    }
}
