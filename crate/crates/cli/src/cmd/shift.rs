use clap::{Args, Subcommand};
use geodlab_core::shift::{
    brute_force_equilibrium, correlation_decay, equilibrium_measure, perron, weak_gibbs_audit,
    EdgeShift,
};

use crate::error::{CliError, Context};
use crate::input::{bool_matrix, load_graph, reals};
use crate::output::{Cell, Table};

#[derive(Subcommand, Debug)]
pub enum ShiftCmd {
    /// Pressure and the variational summary.
    /// Columns: pressure,rho,entropy,integral_phi,variational_gap.
    Pressure(ShiftArgs),
    /// Equilibrium Markov measure, optionally against the brute-force
    /// maximiser (shifts with at most 4 letters).
    /// Columns: from,to,stationary,transition,brute_transition.
    Equilibrium(EquilibriumArgs),
    /// Weak-Gibbs ratios over cylinders up to `--maxlen`.
    /// Columns: letter,min_ratio,max_ratio,constant,spread,pass.
    GibbsAudit(GibbsArgs),
    /// Correlations of two letter observables.
    /// Columns: n,cov,rate,spectral_rate.
    Decay(DecayArgs),
}

#[derive(Args, Debug)]
pub struct ShiftArgs {
    /// Non-backtracking shift of this graph with potential c.
    #[arg(long, conflicts_with = "matrix")]
    graph: Option<String>,
    /// 0/1 transition matrix, rows separated by `;`, e.g. `1,1;1,0`.
    #[arg(long)]
    matrix: Option<String>,
    /// Comma-separated potential per letter (default 0).
    #[arg(long)]
    phi: Option<String>,
}

#[derive(Args, Debug)]
pub struct EquilibriumArgs {
    #[command(flatten)]
    shift: ShiftArgs,
    /// Also run the brute-force optimiser with this seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct GibbsArgs {
    #[command(flatten)]
    shift: ShiftArgs,
    #[arg(long, default_value_t = 12)]
    maxlen: usize,
}

#[derive(Args, Debug)]
pub struct DecayArgs {
    #[command(flatten)]
    shift: ShiftArgs,
    /// Observable f per letter.
    #[arg(long)]
    f: String,
    /// Observable g per letter.
    #[arg(long)]
    g: String,
    #[arg(long, default_value_t = 30)]
    nmax: usize,
}

fn build(a: &ShiftArgs) -> Result<EdgeShift, CliError> {
    let s = match (&a.graph, &a.matrix) {
        (Some(path), None) => EdgeShift::from_graph(&load_graph(path)?).op("geodesic_shift", "from_graph")?,
        (None, Some(m)) => {
            let allowed = bool_matrix(m)?;
            let phi = vec![0.0; allowed.len()];
            EdgeShift::from_matrix(&allowed, &phi).op("geodesic_shift", "from_matrix")?
        }
        _ => return Err(CliError::Usage("give exactly one of --graph or --matrix".into())),
    };
    match &a.phi {
        Some(p) => s.with_potential(&reals(p)?).op("geodesic_shift", "with_potential"),
        None => Ok(s),
    }
}

pub fn run(c: ShiftCmd) -> Result<Table, CliError> {
    match c {
        ShiftCmd::Pressure(a) => {
            let s = build(&a)?;
            let p = perron(&s).op("geodesic_shift", "pressure")?;
            let m = equilibrium_measure(&s).op("geodesic_shift", "equilibrium_measure")?;
            let mut t = Table::new(&["pressure", "rho", "entropy", "integral_phi", "variational_gap"]);
            t.push(vec![
                Cell::Real(m.pressure),
                Cell::Real(p.rho),
                Cell::Real(m.entropy),
                Cell::Real(m.integral_phi),
                Cell::Real(m.entropy + m.integral_phi - m.pressure),
            ]);
            Ok(t)
        }
        ShiftCmd::Equilibrium(a) => {
            let s = build(&a.shift)?;
            let m = equilibrium_measure(&s).op("geodesic_shift", "equilibrium_measure")?;
            let brute = match a.seed {
                Some(seed) => Some(brute_force_equilibrium(&s, seed).op("geodesic_shift", "brute_force_equilibrium")?),
                None => None,
            };
            let mut t = Table::new(&["from", "to", "stationary", "transition", "brute_transition"]);
            for i in 0..s.len() {
                for &j in s.successors(i) {
                    t.push(vec![
                        Cell::int(i),
                        Cell::int(j),
                        Cell::Real(m.p[i]),
                        Cell::Real(m.transition[i][j]),
                        Cell::opt_real(brute.as_ref().map(|b| b.measure.transition[i][j])),
                    ]);
                }
            }
            Ok(t)
        }
        ShiftCmd::GibbsAudit(a) => {
            let s = build(&a.shift)?;
            let m = equilibrium_measure(&s).op("geodesic_shift", "equilibrium_measure")?;
            let g = weak_gibbs_audit(&s, &m, a.maxlen).op("geodesic_shift", "weak_gibbs_audit")?;
            let mut t = Table::new(&["letter", "min_ratio", "max_ratio", "constant", "spread", "pass"]);
            for v in 0..s.len() {
                t.push(vec![
                    Cell::int(v),
                    Cell::Real(g.min_ratio[v]),
                    Cell::Real(g.max_ratio[v]),
                    Cell::Real(g.constant[v]),
                    Cell::Real(g.spread[v]),
                    Cell::text(g.pass),
                ]);
            }
            Ok(t)
        }
        ShiftCmd::Decay(a) => {
            let s = build(&a.shift)?;
            let (f, g) = (reals(&a.f)?, reals(&a.g)?);
            if f.len() != s.len() || g.len() != s.len() {
                return Err(CliError::Usage(format!("observables need {} values", s.len())));
            }
            let m = equilibrium_measure(&s).op("geodesic_shift", "equilibrium_measure")?;
            let d = correlation_decay(&m, &f, &g, a.nmax);
            let mut t = Table::new(&["n", "cov", "rate", "spectral_rate"]);
            for (n, c) in d.cov.iter().enumerate() {
                t.push(vec![Cell::int(n), Cell::Real(*c), Cell::Real(d.rate), Cell::Real(d.spectral_rate)]);
            }
            Ok(t)
        }
    }
}
