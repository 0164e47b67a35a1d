//! Patterson and skinning masses, crossratios, relative heights and norm
//! forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::ff::{FqPoly, LaurentSeries, QPower, QuadIrr, RatFunc};

use super::{BoundaryPoint, BtError};

/// The ball `B(center, q^{−n})` of `K_v`; the center is kept truncated
/// below `πⁿ` so that equal balls compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    center: RatFunc,
    n: i64,
}

fn y_power(q: u32, k: i64) -> RatFunc {
    RatFunc::from_poly(FqPoly::y(q)).pow(k as i32).unwrap()
}

impl Ball {
    pub fn new(center: RatFunc, n: i64) -> Self {
        let q = center.modulus();
        let center = match center.valuation() {
            Some(v) if v < n => {
                let s = LaurentSeries::from_ratfunc(&center, (n - v) as usize);
                (v..n).fold(RatFunc::zero(q), |acc, k| match s.coeff_at(k) {
                    Some(c) if c != 0 => acc.add(&y_power(q, -k).scale(c)),
                    _ => acc,
                })
            }
            _ => RatFunc::zero(q),
        };
        Ball { center, n }
    }

    pub fn modulus(&self) -> u32 {
        self.center.modulus()
    }

    pub fn center(&self) -> &RatFunc {
        &self.center
    }

    /// The ball has radius `q^{−depth}`.
    pub fn depth(&self) -> i64 {
        self.n
    }

    pub fn contains(&self, z: &RatFunc) -> bool {
        match z.sub(&self.center).valuation() {
            None => true,
            Some(v) => v >= self.n,
        }
    }

    /// The `q` balls of radius `q^{−n−1}` partitioning this one.
    pub fn children(&self) -> Vec<Ball> {
        let q = self.modulus();
        let step = y_power(q, -(self.n));
        (0..q).map(|c| Ball::new(self.center.add(&step.scale(c)), self.n + 1)).collect()
    }

    pub fn haar(&self) -> QPower {
        QPower::new(self.modulus(), -self.n)
    }
}

fn qpow(q: u32, e: i64) -> BigRational {
    QPower::new(q, e).to_rational()
}

/// Mass of a ball for the density `max{1, |z|}⁻² dHaar`: the Patterson
/// measure seen from the base point, equal to the skinning measure of the
/// base point.  Balls around `0` are split into the unit ball and shells.
pub fn point_ball_mass(ball: &Ball) -> BigRational {
    let q = ball.modulus();
    let n = ball.depth();
    if ball.center().is_zero() {
        if n >= 0 {
            return qpow(q, -n);
        }
        let shell = BigRational::one() - qpow(q, -1);
        let mut total = BigRational::one();
        for k in 1..=-n {
            total += &shell * qpow(q, -k);
        }
        return total;
    }
    // every point of the ball has the absolute value of the center
    let v = ball.center().valuation().unwrap();
    qpow(q, -n) * qpow(q, 2 * v.min(0))
}

/// Total Patterson mass `(q+1)/q`.
pub fn patterson_total_mass(q: u32) -> BigRational {
    BigRational::new(BigInt::from(q + 1), BigInt::from(q))
}

/// `1 + Σ_{k≥1} (q−1)q^{−k−1}`: the unit ball plus every shell `|z| = qᵏ`,
/// each of which is `q − 1` balls of radius `q^{k−1}` at `cYᵏ`.
pub fn shell_total_mass(q: u32) -> BigRational {
    let unit = point_ball_mass(&Ball::new(RatFunc::zero(q), 0));
    let shell = |k: i64| -> BigRational {
        (1..q).map(|c| point_ball_mass(&Ball::new(y_power(q, k).scale(c), -(k - 1)))).sum()
    };
    let (first, second) = (shell(1), shell(2));
    let ratio = &second / &first;
    unit + &first / (BigRational::one() - ratio)
}

/// Skinning mass of a ball for a horoball centred at `∞`: Haar measure.
pub fn horoball_ball_mass(ball: &Ball) -> BigRational {
    ball.haar().to_rational()
}

/// `|x − y|`, or `None` when either point is `∞` (the factor is dropped).
fn factor(x: &BoundaryPoint, y: &BoundaryPoint) -> Result<Option<i64>, BtError> {
    if x.is_infinity() || y.is_infinity() {
        return Ok(None);
    }
    Ok(Some(x.abs_diff(y)?.exp))
}

/// Density `|L₊ − L₋| / (|ρ − L₋| |ρ − L₊|)` at `ρ` of the outer skinning
/// measure of the geodesic line with endpoints `L₋, L₊`.
pub fn line_density(l_minus: &BoundaryPoint, l_plus: &BoundaryPoint, rho: &BoundaryPoint) -> Result<QPower, BtError> {
    if l_minus.same_point(l_plus) {
        return Err(BtError::Degenerate("line endpoints coincide".into()));
    }
    if rho.is_infinity() || rho.same_point(l_minus) || rho.same_point(l_plus) {
        return Err(BtError::SingularPoint(format!("density undefined at {rho}")));
    }
    let q = match rho {
        BoundaryPoint::Rational(r) => r.modulus(),
        BoundaryPoint::Quadratic(x) => x.modulus(),
        BoundaryPoint::Infinity => unreachable!(),
    };
    let e = factor(l_plus, l_minus)?.unwrap_or(0) - factor(rho, l_minus)?.unwrap_or(0) - factor(rho, l_plus)?.unwrap_or(0);
    Ok(QPower::new(q, e))
}

/// `|a,b,c,d| = |c − a||d − b| / (|c − b||d − a|)`, dropping the factors
/// that involve `∞`.
pub fn crossratio_abs(
    a: &BoundaryPoint,
    b: &BoundaryPoint,
    c: &BoundaryPoint,
    d: &BoundaryPoint,
) -> Result<QPower, BtError> {
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i].same_point(pts[j]) {
                return Err(BtError::Degenerate(format!("crossratio of non-distinct points {}", pts[i])));
            }
        }
    }
    let q = pts
        .iter()
        .find_map(|p| match p {
            BoundaryPoint::Rational(r) => Some(r.modulus()),
            BoundaryPoint::Quadratic(x) => Some(x.modulus()),
            BoundaryPoint::Infinity => None,
        })
        .unwrap();
    let f = |x, y| factor(x, y).map(|v| v.unwrap_or(0));
    Ok(QPower::new(q, f(c, a)? + f(d, b)? - f(c, b)? - f(d, a)?))
}

/// `h_α(β) = max{|α, β, β^σ, α^σ|, |α, β^σ, β, α^σ|}`; always `qⁿ` with
/// `n ≥ 0`, where `n` is the distance between the two axes.
pub fn relative_height(alpha: &QuadIrr, beta: &QuadIrr) -> Result<QPower, BtError> {
    let p = |x: &QuadIrr| BoundaryPoint::Quadratic(x.clone());
    let (a, s_a, b, s_b) = (p(alpha), p(&alpha.conj()), p(beta), p(&beta.conj()));
    if b.same_point(&a) || b.same_point(&s_a) {
        return Err(BtError::Degenerate("β is α or its conjugate".into()));
    }
    let x = crossratio_abs(&a, &b, &s_b, &s_a)?;
    let y = crossratio_abs(&a, &s_b, &b, &s_a)?;
    let h = if x.exp >= y.exp { x } else { y };
    if h.exp < 0 {
        return Err(BtError::Invariant(format!("relative height q^{} below 1", h.exp)));
    }
    Ok(h)
}

/// `Q_α(x, y) = |x² − xy·tr α + y²·n(α)|`.
pub fn norm_form(alpha: &QuadIrr, x: &FqPoly, y: &FqPoly) -> Result<QPower, BtError> {
    if x.is_zero() && y.is_zero() {
        return Err(BtError::InvalidArgument("(x, y) = (0, 0)".into()));
    }
    let (x, y) = (RatFunc::from_poly(x.clone()), RatFunc::from_poly(y.clone()));
    let val = x.mul(&x).sub(&x.mul(&y).mul(&alpha.tr())).add(&y.mul(&y).mul(&alpha.norm()));
    let v = val.valuation().expect("norm form of an irrational has no nontrivial zero");
    Ok(QPower::new(alpha.modulus(), -v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformCheck {
    pub points: usize,
    pub mismatches: usize,
    pub pass: bool,
}

/// Checks `Q_{gα}(x, y) = h(α)/h(gα) · Q_α(g⁻¹(x, y))` exactly on every
/// grid point, for `g ∈ GL₂(𝔽_q[Y])`.
pub fn transform_check(
    alpha: &QuadIrr,
    g: &[[FqPoly; 2]; 2],
    grid: &[(FqPoly, FqPoly)],
) -> Result<TransformCheck, BtError> {
    let [[a, b], [c, d]] = g;
    let det = a.mul(d).sub(&b.mul(c));
    if det.is_zero() || !det.is_constant() {
        return Err(BtError::InvalidArgument("g must lie in GL2 of the polynomial ring".into()));
    }
    let gi = det.inv_constant();
    let ga = alpha.transform(g)?;
    let shift = alpha.complexity().exp - ga.complexity().exp;
    let mut mismatches = 0;
    for (x, y) in grid {
        let lhs = norm_form(&ga, x, y)?;
        let xp = d.mul(x).sub(&b.mul(y)).scale(gi);
        let yp = a.mul(y).sub(&c.mul(x)).scale(gi);
        let rhs = norm_form(alpha, &xp, &yp)?.exp + shift;
        if lhs.exp != rhs {
            mismatches += 1;
        }
    }
    Ok(TransformCheck { points: grid.len(), mismatches, pass: mismatches == 0 })
}

trait ConstantInverse {
    fn inv_constant(&self) -> u32;
}

impl ConstantInverse for FqPoly {
    fn inv_constant(&self) -> u32 {
        let q = self.modulus();
        crate::ff::FqElem::new(self.leading() as i64, q).unwrap().inv().unwrap().value()
    }
}
