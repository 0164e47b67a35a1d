//! Invertible 2×2 matrices over `𝔽_q(Y)` and points of `ℙ¹(𝔽_q((Y⁻¹)))`.

use std::fmt;

use crate::ff::{Expand, FfError, FqPoly, LaurentSeries, QPower, QuadIrr, RatFunc};
use crate::ff::valuation_adaptive;

use super::BtError;

/// `[[a, b], [c, d]]` with nonzero determinant, acting by homographies.
#[derive(Clone, PartialEq, Eq)]
pub struct BTMatrix {
    q: u32,
    m: [[RatFunc; 2]; 2],
}

impl BTMatrix {
    pub fn new(m: [[RatFunc; 2]; 2]) -> Result<Self, BtError> {
        let q = m[0][0].modulus();
        for r in m.iter().flatten() {
            if r.modulus() != q {
                return Err(FfError::ModulusMismatch(q, r.modulus()).into());
            }
        }
        let g = BTMatrix { q, m };
        if g.det().is_zero() {
            return Err(BtError::Singular);
        }
        Ok(g)
    }

    /// Parses four entries `a;b;c;d` in row order, e.g. `1;Y;0;1`.
    pub fn parse(q: u32, text: &str) -> Result<Self, BtError> {
        let parts: Vec<&str> = text.split(';').collect();
        if parts.len() != 4 {
            return Err(BtError::InvalidArgument(format!(
                "matrix needs 4 semicolon-separated entries, got {}",
                parts.len()
            )));
        }
        let e: Vec<RatFunc> = parts.iter().map(|s| RatFunc::parse(q, s)).collect::<Result<_, _>>()?;
        let [a, b, c, d]: [RatFunc; 4] = e.try_into().unwrap();
        Self::new([[a, b], [c, d]])
    }

    pub fn from_polys(m: [[FqPoly; 2]; 2]) -> Result<Self, BtError> {
        let [[a, b], [c, d]] = m;
        Self::new([
            [RatFunc::from_poly(a), RatFunc::from_poly(b)],
            [RatFunc::from_poly(c), RatFunc::from_poly(d)],
        ])
    }

    pub fn identity(q: u32) -> Self {
        BTMatrix { q, m: [[RatFunc::one(q), RatFunc::zero(q)], [RatFunc::zero(q), RatFunc::one(q)]] }
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn entry(&self, i: usize, j: usize) -> &RatFunc {
        &self.m[i][j]
    }

    pub fn entries(&self) -> &[[RatFunc; 2]; 2] {
        &self.m
    }

    pub fn det(&self) -> RatFunc {
        self.m[0][0].mul(&self.m[1][1]).sub(&self.m[0][1].mul(&self.m[1][0]))
    }

    pub fn trace(&self) -> RatFunc {
        self.m[0][0].add(&self.m[1][1])
    }

    pub fn det_valuation(&self) -> i64 {
        self.det().valuation().expect("nonzero determinant")
    }

    /// Smallest valuation among the nonzero entries.
    pub fn min_entry_valuation(&self) -> i64 {
        self.m.iter().flatten().filter_map(|r| r.valuation()).min().expect("nonzero matrix")
    }

    pub fn mul(&self, rhs: &BTMatrix) -> BTMatrix {
        let e = |i: usize, j: usize| self.m[i][0].mul(&rhs.m[0][j]).add(&self.m[i][1].mul(&rhs.m[1][j]));
        BTMatrix { q: self.q, m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn inv(&self) -> BTMatrix {
        let di = self.det().inv().expect("nonzero determinant");
        let [[a, b], [c, d]] = &self.m;
        BTMatrix { q: self.q, m: [[d.mul(&di), b.neg().mul(&di)], [c.neg().mul(&di), a.mul(&di)]] }
    }

    /// Equality in `PGL₂`: `self = λ·rhs` for some nonzero scalar `λ`.
    pub fn proj_eq(&self, rhs: &BTMatrix) -> bool {
        let Some((i, j)) = (0..4).map(|k| (k / 2, k % 2)).find(|&(i, j)| !self.m[i][j].is_zero()) else {
            return false;
        };
        if rhs.m[i][j].is_zero() {
            return false;
        }
        let lambda = rhs.m[i][j].div(&self.m[i][j]).unwrap();
        (0..4).all(|k| self.m[k / 2][k % 2].mul(&lambda) == rhs.m[k / 2][k % 2])
    }

    /// A polynomial matrix in the same projective class.
    pub fn to_poly_matrix(&self) -> [[FqPoly; 2]; 2] {
        let mut l = FqPoly::one(self.q);
        for r in self.m.iter().flatten() {
            let g = l.gcd(r.den());
            l = l.mul(&r.den().div_exact(&g).unwrap());
        }
        let f = |r: &RatFunc| r.num().mul(&l.div_exact(r.den()).unwrap());
        [[f(&self.m[0][0]), f(&self.m[0][1])], [f(&self.m[1][0]), f(&self.m[1][1])]]
    }

    /// Homography `z ↦ (az + b)/(cz + d)`.
    pub fn act(&self, z: &BoundaryPoint) -> Result<BoundaryPoint, BtError> {
        let [[a, b], [c, d]] = &self.m;
        Ok(match z {
            BoundaryPoint::Infinity => {
                if c.is_zero() {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Rational(a.div(c)?)
                }
            }
            BoundaryPoint::Rational(z) => {
                let den = c.mul(z).add(d);
                if den.is_zero() {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Rational(a.mul(z).add(b).div(&den)?)
                }
            }
            BoundaryPoint::Quadratic(x) => BoundaryPoint::Quadratic(x.transform(&self.to_poly_matrix())?),
        })
    }
}

impl fmt::Display for BTMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl fmt::Debug for BTMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A point of `ℙ¹(K_v)` known exactly: `∞`, an element of `𝔽_q(Y)`, or a
/// quadratic irrational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryPoint {
    Infinity,
    Rational(RatFunc),
    Quadratic(QuadIrr),
}

impl BoundaryPoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }

    fn expand(&self, prec: usize) -> Result<LaurentSeries, FfError> {
        match self {
            BoundaryPoint::Infinity => unreachable!("no expansion at infinity"),
            BoundaryPoint::Rational(r) => r.expand(prec),
            BoundaryPoint::Quadratic(x) => x.expand(prec),
        }
    }

    /// Exact equality of points; a rational never equals an irrational.
    pub fn same_point(&self, rhs: &BoundaryPoint) -> bool {
        match (self, rhs) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => true,
            (BoundaryPoint::Rational(a), BoundaryPoint::Rational(b)) => a == b,
            (BoundaryPoint::Quadratic(a), BoundaryPoint::Quadratic(b)) => a.canonical() == b.canonical(),
            _ => false,
        }
    }

    /// `|self − rhs|` for distinct finite points.
    pub fn abs_diff(&self, rhs: &BoundaryPoint) -> Result<QPower, BtError> {
        if self.is_infinity() || rhs.is_infinity() {
            return Err(BtError::InvalidArgument("distance to infinity".into()));
        }
        if self.same_point(rhs) {
            return Err(BtError::Degenerate(format!("points coincide: {self}")));
        }
        let q = self.modulus();
        if let (BoundaryPoint::Rational(a), BoundaryPoint::Rational(b)) = (self, rhs) {
            return Ok(QPower::new(q, -a.sub(b).valuation().unwrap()));
        }
        // Both expansions are taken from the same absolute exponent so the
        // difference is known to the shorter of the two precisions.
        let v = valuation_adaptive(|p| Ok(self.expand(p)?.sub(&rhs.expand(p)?)), 8)?;
        let v = v.ok_or_else(|| BtError::Degenerate("points coincide".into()))?;
        Ok(QPower::new(q, -v))
    }

    /// `|self|`, with `None` at infinity.
    pub fn abs(&self) -> Result<Option<QPower>, BtError> {
        match self {
            BoundaryPoint::Infinity => Ok(None),
            BoundaryPoint::Rational(r) => Ok(Some(match r.valuation() {
                Some(v) => QPower::new(r.modulus(), -v),
                None => return Err(BtError::Degenerate("|0| is zero".into())),
            })),
            BoundaryPoint::Quadratic(x) => {
                let v = valuation_adaptive(|p| x.expand(p), 4)?.expect("irrational is nonzero");
                Ok(Some(QPower::new(x.modulus(), -v)))
            }
        }
    }

    fn modulus(&self) -> u32 {
        match self {
            BoundaryPoint::Infinity => 0,
            BoundaryPoint::Rational(r) => r.modulus(),
            BoundaryPoint::Quadratic(x) => x.modulus(),
        }
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Infinity => write!(f, "∞"),
            BoundaryPoint::Rational(r) => write!(f, "{r}"),
            BoundaryPoint::Quadratic(x) => write!(f, "{x}"),
        }
    }
}
