use clap::{Args, Subcommand};
use geodlab_core::ff::{
    cf_expand, euler_phi, factor, laurent_expand, mertens_closed_form, mertens_sum, monic_degree_phi_sum, CfInput,
    Expand, LaurentSeries,
};
use num_bigint::BigUint;

use crate::error::{CliError, Context};
use crate::input::{poly, quad, ratfunc};
use crate::output::{Cell, Table};

#[derive(Subcommand, Debug)]
pub enum FfCmd {
    /// Sum of Euler's function over nonzero polynomials of degree 1..=n.
    /// Columns: n,mertens,closed_form,monic_degree_sum,pass.
    Mertens(MertensArgs),
    /// Euler's function of a polynomial. Columns: f,phi.
    Phi(PolyArgs),
    /// Monic irreducible factorisation. Columns: factor,multiplicity.
    Factor(PolyArgs),
    /// Laurent expansion in 1/Y. Columns: exponent,coefficient.
    Laurent(ExpandArgs),
    /// Continued fraction. Columns: index,part,term.
    Cf(ValueArgs),
    /// Trace, norm, conjugate and complexity of a quadratic irrational.
    /// Columns: tr,norm,conj,h,h_from_series.
    Quad(QuadArgs),
}

#[derive(Args, Debug)]
pub struct MertensArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    #[arg(long)]
    q: u32,
    /// `[c0,c1,...]` or an expression such as `Y^2+1`.
    #[arg(long)]
    f: String,
}

#[derive(Args, Debug)]
pub struct ValueArgs {
    #[arg(long)]
    q: u32,
    /// Rational function such as `1/(Y-1)`.
    #[arg(long, conflicts_with = "quad")]
    x: Option<String>,
    /// Quadratic irrational as `A;B;C` for A X^2 + B X + C = 0.
    #[arg(long)]
    quad: Option<String>,
    /// Take the other root.
    #[arg(long)]
    upper: bool,
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    #[command(flatten)]
    value: ValueArgs,
    /// Number of coefficients from the valuation on.
    #[arg(long, default_value_t = 16)]
    prec: usize,
}

#[derive(Args, Debug)]
pub struct QuadArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    quad: String,
    #[arg(long)]
    upper: bool,
}

fn value(a: &ValueArgs) -> Result<CfInput, CliError> {
    match (&a.x, &a.quad) {
        (Some(x), None) => Ok(CfInput::Rational(ratfunc(a.q, x)?)),
        (None, Some(s)) => Ok(CfInput::Quadratic(quad(a.q, s, a.upper)?)),
        _ => Err(CliError::Usage("give exactly one of --x or --quad".into())),
    }
}

pub fn run(c: FfCmd) -> Result<Table, CliError> {
    match c {
        FfCmd::Mertens(a) => {
            let mut t = Table::new(&["n", "mertens", "closed_form", "monic_degree_sum", "pass"]);
            for n in 1..=a.n {
                let m = mertens_sum(a.q, n).op("ff_arith", "mertens_sum")?;
                let c = mertens_closed_form(a.q, n);
                let monic = monic_degree_phi_sum(a.q, n).op("ff_arith", "mertens_sum")?;
                // q^{2n}(1 − 1/q) = q^{2n−1}(q − 1)
                let monic_expect = BigUint::from(a.q).pow(2 * n as u32 - 1) * (a.q - 1);
                let pass = m == c && monic == monic_expect;
                t.push(vec![Cell::int(n), Cell::int(&m), Cell::int(&c), Cell::int(&monic), Cell::text(pass)]);
            }
            Ok(t)
        }
        FfCmd::Phi(a) => {
            let f = poly(a.q, &a.f)?;
            let phi = euler_phi(&f).op("ff_arith", "euler_phi")?;
            let mut t = Table::new(&["f", "phi"]);
            t.push(vec![Cell::text(&f), Cell::int(phi)]);
            Ok(t)
        }
        FfCmd::Factor(a) => {
            let f = poly(a.q, &a.f)?;
            if f.is_zero() {
                return Err(CliError::Usage("cannot factor 0".into()));
            }
            let mut t = Table::new(&["factor", "multiplicity"]);
            for (p, k) in factor(&f) {
                t.push(vec![Cell::text(p), Cell::int(k)]);
            }
            Ok(t)
        }
        FfCmd::Laurent(a) => {
            let s: LaurentSeries = match value(&a.value)? {
                CfInput::Rational(r) => laurent_expand(&r, a.prec),
                CfInput::Quadratic(x) => x.expand(a.prec),
            }
            .op("ff_arith", "laurent_expand")?;
            let mut t = Table::new(&["exponent", "coefficient"]);
            for (i, c) in s.coeffs().iter().enumerate() {
                t.push(vec![Cell::int(s.start() + i as i64), Cell::int(c)]);
            }
            Ok(t)
        }
        FfCmd::Cf(a) => {
            let e = cf_expand(&value(&a)?).op("ff_arith", "cf_expand")?;
            let mut t = Table::new(&["index", "part", "term"]);
            let parts = e.preperiod.iter().map(|p| ("preperiod", p)).chain(e.period.iter().map(|p| ("period", p)));
            for (i, (part, p)) in parts.enumerate() {
                t.push(vec![Cell::int(i), Cell::text(part), Cell::text(p.to_list_string())]);
            }
            Ok(t)
        }
        FfCmd::Quad(a) => {
            let x = quad(a.q, &a.quad, a.upper)?;
            let inv = x.invariants().op("ff_arith", "quad_invariants")?;
            let mut t = Table::new(&["tr", "norm", "conj", "h", "h_from_series"]);
            t.push(vec![
                Cell::text(&inv.tr),
                Cell::text(&inv.n),
                Cell::text(&inv.conj),
                Cell::text(inv.h),
                Cell::text(inv.h_from_series),
            ]);
            Ok(t)
        }
    }
}
