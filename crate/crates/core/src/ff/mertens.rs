//! Euler's function on `𝔽_q[Y]` and the polynomial Mertens sum.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::field::check_prime;
use super::poly::FqPoly;
use super::FfError;
use crate::budget::enumeration_budget;

/// Monic irreducibles grouped by degree, built lazily.
#[derive(Debug, Default)]
pub struct IrreducibleCache {
    q: u32,
    by_degree: Vec<Vec<FqPoly>>,
}

impl IrreducibleCache {
    pub fn new(q: u32) -> Self {
        IrreducibleCache { q, by_degree: vec![Vec::new()] }
    }

    /// Monic irreducibles of degree `d`, sieved against lower degrees.
    pub fn of_degree(&mut self, d: usize) -> &[FqPoly] {
        while self.by_degree.len() <= d {
            let k = self.by_degree.len();
            let lower: Vec<FqPoly> = (1..=k / 2).flat_map(|j| self.by_degree[j].iter().cloned()).collect();
            let irr = FqPoly::monics_of_degree(self.q, k)
                .filter(|f| lower.iter().all(|p| !f.rem(p).unwrap().is_zero()))
                .collect();
            self.by_degree.push(irr);
        }
        &self.by_degree[d]
    }

    /// Factorisation into monic irreducible powers (the unit is dropped).
    pub fn factor(&mut self, f: &FqPoly) -> Vec<(FqPoly, u32)> {
        let mut g = f.monic();
        let mut out = Vec::new();
        let mut d = 1;
        while let Some(deg) = g.degree() {
            if deg == 0 {
                break;
            }
            if 2 * d > deg {
                out.push((g.clone(), 1));
                break;
            }
            for p in self.of_degree(d).to_vec() {
                let mut k = 0;
                loop {
                    let (quot, rem) = g.div_rem(&p).unwrap();
                    if !rem.is_zero() {
                        break;
                    }
                    g = quot;
                    k += 1;
                }
                if k > 0 {
                    out.push((p, k));
                }
            }
            d += 1;
        }
        out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        // a leftover factor may coincide with one found earlier
        let mut merged: Vec<(FqPoly, u32)> = Vec::new();
        for (p, k) in out {
            match merged.last_mut() {
                Some((lp, lk)) if *lp == p => *lk += k,
                _ => merged.push((p, k)),
            }
        }
        merged
    }

    pub fn euler_phi(&mut self, f: &FqPoly) -> BigUint {
        let q = BigUint::from(self.q);
        let mut phi = BigUint::one();
        for (p, k) in self.factor(f) {
            let np = q.pow(p.degree().unwrap() as u32);
            phi *= np.pow(k - 1) * (&np - 1u32);
        }
        phi
    }
}

pub fn factor(f: &FqPoly) -> Vec<(FqPoly, u32)> {
    IrreducibleCache::new(f.modulus()).factor(f)
}

/// `|(𝔽_q[Y]/f)^×|` for nonzero `f`.
pub fn euler_phi(f: &FqPoly) -> Result<BigUint, FfError> {
    if f.is_zero() {
        return Err(FfError::DivisionByZero);
    }
    Ok(IrreducibleCache::new(f.modulus()).euler_phi(f))
}

/// `Σ φ(f)` over monic `f` of degree exactly `n`, by enumeration.
pub fn monic_degree_phi_sum(q: u32, n: usize) -> Result<BigUint, FfError> {
    check_prime(q)?;
    check_budget(q, n)?;
    let mut cache = IrreducibleCache::new(q);
    Ok(FqPoly::monics_of_degree(q, n).map(|f| cache.euler_phi(&f)).sum())
}

fn check_budget(q: u32, n: usize) -> Result<(), FfError> {
    let budget = enumeration_budget();
    let needed = (q as u128).checked_pow(n as u32 + 1).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(FfError::TooLarge { needed, budget });
    }
    Ok(())
}

/// `Σ_{0 < deg f ≤ n} φ(f)` over all nonzero polynomials, by enumeration.
pub fn mertens_sum(q: u32, n: usize) -> Result<BigUint, FfError> {
    check_prime(q)?;
    if n == 0 {
        return Err(FfError::InvalidArgument("n must be positive".into()));
    }
    check_budget(q, n)?;
    let mut cache = IrreducibleCache::new(q);
    let mut total = BigUint::zero();
    for d in 1..=n {
        let s: BigUint = FqPoly::monics_of_degree(q, d).map(|f| cache.euler_phi(&f)).sum();
        total += s;
    }
    // φ is invariant under scalars, each monic stands for q−1 polynomials
    Ok(total * (q - 1))
}

/// `q(q−1)(q^{2n}−1)/(q+1)`.
pub fn mertens_closed_form(q: u32, n: usize) -> BigUint {
    let qb = BigUint::from(q);
    let num = &qb * (q - 1) * (qb.pow(2 * n as u32) - 1u32);
    num / (q + 1)
}
