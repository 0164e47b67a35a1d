//! Quadratic irrationals over `𝔽_q(Y)`: roots in `𝔽_q((Y⁻¹))` of
//! `A X² + B X + C` with polynomial coefficients and nonsquare discriminant.

use std::cmp::Ordering;
use std::fmt;

use super::field::{inv_mod, mul_mod, sqrt_mod};
use super::laurent::{check_prec, precision_cap, Expand, LaurentSeries, QPower};
use super::poly::FqPoly;
use super::ratfunc::RatFunc;
use super::FfError;

/// The root `(−B + √D)/(2A)` where the leading coefficient of `√D` is the
/// smaller residue square root of `lead(D)` when `upper` is false and its
/// negative when `upper` is true.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadIrr {
    a: FqPoly,
    b: FqPoly,
    c: FqPoly,
    upper: bool,
}

/// Trace, norm, conjugate and complexity of a quadratic irrational.
#[derive(Clone, Debug)]
pub struct QuadInvariants {
    pub tr: RatFunc,
    pub n: RatFunc,
    pub conj: QuadIrr,
    /// `|tr² − 4n|^{-1/2}`, from the discriminant.
    pub h: QPower,
    /// `1/|α − α^σ|`, from the two expansions.
    pub h_from_series: QPower,
}

fn poly_sqrt_exact(d: &FqPoly) -> Option<FqPoly> {
    let q = d.modulus();
    let deg = d.degree()?;
    if deg % 2 == 1 {
        return None;
    }
    let m = deg / 2;
    let series = LaurentSeries::from_parts(q, -(deg as i64), d.coeffs().iter().rev().copied().collect(), false);
    let mut padded = series.coeffs().to_vec();
    padded.resize(m + 1, 0);
    let series = LaurentSeries::from_parts(q, series.start(), padded, false);
    let r = series.sqrt(false).ok()?;
    let cand: Vec<u32> = (0..=m as i64).map(|k| r.y_coeff(k).unwrap_or(0)).collect();
    let cand = FqPoly::from_raw(q, cand);
    (cand.mul(&cand) == *d).then_some(cand)
}

impl QuadIrr {
    pub fn new(a: FqPoly, b: FqPoly, c: FqPoly, upper: bool) -> Result<Self, FfError> {
        let q = a.modulus();
        if b.modulus() != q || c.modulus() != q {
            return Err(FfError::ModulusMismatch(q, if b.modulus() != q { b.modulus() } else { c.modulus() }));
        }
        if q == 2 {
            return Err(FfError::Char2Unsupported);
        }
        if a.is_zero() {
            return Err(FfError::ZeroLeading);
        }
        let x = QuadIrr { a, b, c, upper };
        let d = x.disc();
        if d.is_zero() || poly_sqrt_exact(&d).is_some() {
            return Err(FfError::NotIrrational);
        }
        if d.degree().unwrap() % 2 == 1 {
            return Err(FfError::NotSplit);
        }
        if sqrt_mod(d.leading(), q)?.is_none() {
            return Err(FfError::NotSplit);
        }
        Ok(x)
    }

    /// Convenience constructor from integer coefficient lists.
    pub fn from_coeffs(q: u32, a: &[i64], b: &[i64], c: &[i64], upper: bool) -> Result<Self, FfError> {
        Self::new(FqPoly::new(q, a)?, FqPoly::new(q, b)?, FqPoly::new(q, c)?, upper)
    }

    pub fn modulus(&self) -> u32 {
        self.a.modulus()
    }

    pub fn a(&self) -> &FqPoly {
        &self.a
    }

    pub fn b(&self) -> &FqPoly {
        &self.b
    }

    pub fn c(&self) -> &FqPoly {
        &self.c
    }

    pub fn upper(&self) -> bool {
        self.upper
    }

    /// `D = B² − 4AC`.
    pub fn disc(&self) -> FqPoly {
        self.b.mul(&self.b).sub(&self.a.mul(&self.c).scale(4))
    }

    /// Half the degree of the discriminant, i.e. `−v(√D)`.
    pub fn half_disc_degree(&self) -> i64 {
        (self.disc().degree().unwrap() / 2) as i64
    }

    /// Leading coefficient of the chosen `√D`.
    pub fn sqrt_disc_leading(&self) -> u32 {
        let q = self.modulus();
        let r = sqrt_mod(self.disc().leading(), q).unwrap().unwrap();
        if self.upper {
            q - r
        } else {
            r
        }
    }

    pub fn conj(&self) -> QuadIrr {
        QuadIrr { upper: !self.upper, ..self.clone() }
    }

    pub fn tr(&self) -> RatFunc {
        RatFunc::new(self.b.neg(), self.a.clone()).unwrap()
    }

    pub fn norm(&self) -> RatFunc {
        RatFunc::new(self.c.clone(), self.a.clone()).unwrap()
    }

    /// `√D` with `w` coefficients.
    pub fn sqrt_disc_series(&self, w: usize) -> LaurentSeries {
        let d = self.disc();
        let deg = d.degree().unwrap();
        let mut c: Vec<u32> = d.coeffs().iter().rev().copied().collect();
        c.resize(w.max(c.len()), 0);
        let ds = LaurentSeries::from_parts(self.modulus(), -(deg as i64), c, false);
        let s = ds.sqrt(self.upper).expect("split discriminant");
        s.truncated(w).unwrap()
    }

    fn expand_raw(&self, prec: usize) -> Result<LaurentSeries, FfError> {
        let s = self.sqrt_disc_series(prec);
        let nb = LaurentSeries::from_poly(&self.b.neg());
        let mine = nb.add(&s);
        let other = nb.sub(&s);
        let v_full = match self.b.degree() {
            Some(db) => (-(db as i64)).min(s.start()),
            None => s.start(),
        };
        let full = matches!(mine.valuation(), Ok(Some(v)) if v == v_full);
        if full {
            let two_a = LaurentSeries::from_poly(&self.a.scale(2));
            mine.div(&two_a, prec)
        } else {
            let two_c = LaurentSeries::from_poly(&self.c.scale(2));
            two_c.div(&other, prec)
        }
    }

    /// Exact complexity `h(α) = q^{deg A − deg D / 2}`.
    pub fn complexity(&self) -> QPower {
        QPower::new(self.modulus(), self.a.degree().unwrap() as i64 - self.half_disc_degree())
    }

    /// `1/|α − α^σ|` computed from the two expansions.
    pub fn complexity_from_series(&self) -> Result<QPower, FfError> {
        let cap = precision_cap();
        let mut p = 8usize.min(cap);
        loop {
            let diff = self.expand(p)?.sub(&self.conj().expand(p)?);
            match diff.valuation() {
                Ok(Some(v)) => return Ok(QPower::new(self.modulus(), v)),
                Ok(None) => return Err(FfError::NotIrrational),
                Err(FfError::PrecisionExhausted) if p < cap => p = (2 * p).min(cap),
                Err(e) => return Err(e),
            }
        }
    }

    pub fn invariants(&self) -> Result<QuadInvariants, FfError> {
        Ok(QuadInvariants {
            tr: self.tr(),
            n: self.norm(),
            conj: self.conj(),
            h: self.complexity(),
            h_from_series: self.complexity_from_series()?,
        })
    }

    /// Divides out `gcd(A, B, C)` and makes `A` monic, keeping the same root.
    pub fn canonical(&self) -> QuadIrr {
        let q = self.modulus();
        let g = self.a.gcd(&self.b.gcd(&self.c));
        let (a, b, c) = (
            self.a.div_exact(&g).unwrap(),
            self.b.div_exact(&g).unwrap(),
            self.c.div_exact(&g).unwrap(),
        );
        let u = inv_mod(a.leading(), q);
        let s0 = mul_mod(u, self.sqrt_disc_leading(), q);
        let (a, b, c) = (a.scale(u), b.scale(u), c.scale(u));
        let d = b.mul(&b).sub(&a.mul(&c).scale(4));
        let r = sqrt_mod(d.leading(), q).unwrap().unwrap();
        QuadIrr { a, b, c, upper: s0 != r }
    }

    /// Total order on canonical forms, for deterministic deduplication.
    pub fn canonical_cmp(&self, rhs: &QuadIrr) -> Ordering {
        self.a
            .canonical_cmp(&rhs.a)
            .then_with(|| self.b.canonical_cmp(&rhs.b))
            .then_with(|| self.c.canonical_cmp(&rhs.c))
            .then_with(|| self.upper.cmp(&rhs.upper))
    }

    /// The image `(aα + b)/(cα + d)` under an invertible polynomial matrix.
    pub fn transform(&self, m: &[[FqPoly; 2]; 2]) -> Result<QuadIrr, FfError> {
        let [[ga, gb], [gc, gd]] = m;
        let det = ga.mul(gd).sub(&gb.mul(gc));
        if det.is_zero() {
            return Err(FfError::DivisionByZero);
        }
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let na = a.mul(&gd.mul(gd)).sub(&b.mul(&gd.mul(gc))).add(&c.mul(&gc.mul(gc)));
        let nb = a
            .mul(&gb.mul(gd))
            .scale(2)
            .neg()
            .add(&b.mul(&ga.mul(gd).add(&gb.mul(gc))))
            .sub(&c.mul(&ga.mul(gc)).scale(2));
        let nc = a.mul(&gb.mul(gb)).sub(&b.mul(&ga.mul(gb))).add(&c.mul(&ga.mul(ga)));
        let lower = QuadIrr::new(na, nb, nc, false)?;
        // The two candidate roots first differ at the valuation of √D'/A'.
        let split = lower.a.degree().unwrap() as i64 - lower.half_disc_degree();
        let cap = precision_cap();
        let mut p = 8usize.min(cap);
        loop {
            let x = self.expand(p)?;
            let num = x.mul(&LaurentSeries::from_poly(ga))?.add(&LaurentSeries::from_poly(gb));
            let den = x.mul(&LaurentSeries::from_poly(gc))?.add(&LaurentSeries::from_poly(gd));
            if let (Ok(_), Ok(_)) = (num.normalized(), den.normalized()) {
                let y = num.div(&den, p)?;
                if let Some(c) = y.coeff_at(split) {
                    let lo = lower.expand_to_abs(split + 1)?;
                    return Ok(if lo.coeff_at(split) == Some(c) { lower } else { lower.conj() });
                }
            }
            if p >= cap {
                return Err(FfError::PrecisionExhausted);
            }
            p = (2 * p).min(cap);
        }
    }

    /// Expansion known at least through the absolute exponent `abs − 1`.
    pub fn expand_to_abs(&self, abs: i64) -> Result<LaurentSeries, FfError> {
        let v = self.expand(1)?.start();
        let need = (abs - v).max(1) as usize;
        self.expand(need)
    }
}

impl Expand for QuadIrr {
    fn expand(&self, prec: usize) -> Result<LaurentSeries, FfError> {
        check_prec(prec)?;
        self.expand_raw(prec)
    }
}

impl fmt::Debug for QuadIrr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QuadIrr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "root of ({})X^2 + ({})X + ({}) [{}]",
            self.a,
            self.b,
            self.c,
            if self.upper { "upper" } else { "lower" }
        )
    }
}
