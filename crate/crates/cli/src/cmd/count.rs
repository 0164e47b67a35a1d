use clap::{Args, Subcommand};
use geodlab_core::perp::{
    closed_orbit_count, conjugacy_count, count_perpendiculars, theoretical_constant, PerpQuery, TreeSpec,
};
use num_traits::ToPrimitive;

use crate::error::{CliError, Context};
use crate::input::{load_graph, subgraph, vertex};
use crate::output::{Cell, Table};

#[derive(Subcommand, Debug)]
pub enum CountCmd {
    /// Common perpendiculars from Y- to Y+ by length.
    /// Columns: n,count,weighted,cumulative,theory_ratio.
    Perp(PerpArgs),
    /// Closed orbits (prime, by length).
    /// Columns: n,count,weighted,cumulative,theory_ratio,fix.
    Orbits(OrbitArgs),
    /// Elements of a loxodromic conjugacy class by displacement of x0.
    /// Columns: n,count,weighted,cumulative,theory_ratio.
    Conjugacy(ConjArgs),
}

#[derive(Args, Debug)]
pub struct PerpArgs {
    /// Graph JSON file or `builtin:<name>`.
    #[arg(long)]
    graph: String,
    /// Start subgraph name or vertex id.
    #[arg(long)]
    minus: String,
    /// End subgraph name or vertex id.
    #[arg(long)]
    plus: String,
    #[arg(long)]
    nmax: usize,
    /// Relative tolerance reported by the constant check.
    #[arg(long, default_value_t = 0.03)]
    tolerance: f64,
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    #[arg(long)]
    graph: String,
    #[arg(long)]
    nmax: usize,
}

#[derive(Args, Debug)]
pub struct ConjArgs {
    #[arg(long)]
    graph: String,
    /// Base vertex id.
    #[arg(long)]
    x0: String,
    /// Comma-separated edge ids of a simple closed cycle.
    #[arg(long)]
    cycle: String,
    #[arg(long)]
    nmax: usize,
}

pub fn run(c: CountCmd) -> Result<Table, CliError> {
    match c {
        CountCmd::Perp(a) => perp(a),
        CountCmd::Orbits(a) => orbits(a),
        CountCmd::Conjugacy(a) => conjugacy(a),
    }
}

fn perp(a: PerpArgs) -> Result<Table, CliError> {
    let g = load_graph(&a.graph)?;
    let q = PerpQuery { graph: &g, minus: subgraph(&g, &a.minus)?, plus: subgraph(&g, &a.plus)?, nmax: a.nmax };
    let s = count_perpendiculars(&q).op("perp_count", "count_perpendiculars")?;
    // the constant only exists for c = 0 on regular or biregular trees
    let theory = theoretical_constant(&q, a.tolerance).ok();
    let mut t = Table::new(&["n", "count", "weighted", "cumulative", "theory_ratio"]);
    for n in 1..=a.nmax {
        let ratio = theory.as_ref().map(|r| r.ratios[n]).filter(|x| x.is_finite());
        t.push(vec![
            Cell::int(n),
            Cell::int(&s.counts[n]),
            Cell::Real(s.weighted[n]),
            Cell::int(&s.cumulative[n]),
            Cell::opt_real(ratio),
        ]);
    }
    Ok(t)
}

fn orbits(a: OrbitArgs) -> Result<Table, CliError> {
    let g = load_graph(&a.graph)?;
    let o = closed_orbit_count(&g, a.nmax).op("perp_count", "closed_orbit_count")?;
    let delta = TreeSpec::infer(&g).ok().map(|t| t.delta());
    let mut t = Table::new(&["n", "count", "weighted", "cumulative", "theory_ratio", "fix"]);
    for n in 1..=a.nmax {
        t.push(vec![
            Cell::int(n),
            Cell::int(&o.prime[n]),
            Cell::Real(o.weighted_prime[n]),
            Cell::int(&o.cumulative_prime[n]),
            Cell::opt_real(delta.map(|d| o.prime_ratio(d, n))),
            Cell::int(&o.fix[n]),
        ]);
    }
    Ok(t)
}

fn conjugacy(a: ConjArgs) -> Result<Table, CliError> {
    let g = load_graph(&a.graph)?;
    let x0 = vertex(&g, &a.x0)?;
    let cycle: Vec<usize> = a
        .cycle
        .split(',')
        .map(|id| g.edge_index(id.trim()).ok_or_else(|| CliError::Usage(format!("unknown edge {id}"))))
        .collect::<Result<_, _>>()?;
    let c = conjugacy_count(&g, x0, &cycle, a.nmax).op("perp_count", "conjugacy_count")?;
    // normalised by q^{⌊(n−λ)/2⌋} on (q+1)-regular quotients
    let q = TreeSpec::infer(&g).ok().and_then(|t| match t {
        TreeSpec::Regular { q } => Some(q as f64),
        _ => None,
    });
    let mut t = Table::new(&["n", "count", "weighted", "cumulative", "theory_ratio"]);
    for n in 1..=a.nmax {
        let step = &c.counts[n] - &c.counts[n - 1];
        let ratio = q.filter(|_| n >= c.lambda).map(|q| {
            c.counts[n].to_f64().unwrap() / q.powi(((n - c.lambda) / 2) as i32)
        });
        t.push(vec![Cell::int(n), Cell::int(step), Cell::Empty, Cell::int(&c.counts[n]), Cell::opt_real(ratio)]);
    }
    Ok(t)
}
