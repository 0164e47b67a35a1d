use clap::{Args, Subcommand};
use geodlab_core::walks::{
    d_c_star, laplacian, nbrw_exact, nbrw_sample, green_ratio_check, tree_harmonic_measure, TreeWalkKernel,
};

use crate::error::{CliError, Context};
use crate::input::{indices, load_graph, reals, require_seed, subgraph};
use crate::output::{Cell, Table};

#[derive(Subcommand, Debug)]
pub enum WalkCmd {
    /// Law of the n-th vertex of the non-backtracking walk.
    /// Columns: state,probability,target,empirical,z.
    Nbrw(NbrwArgs),
    /// Harmonic measure of depth-d shadows on the (q+1)-regular tree.
    /// Columns: depth,shadow,estimate,stderr,target.
    Harmonic(HarmonicArgs),
    /// Ratio of Green functions at two tree vertices.
    /// Columns: depth_y,depth_z,estimate,stderr,target,z.
    Green(GreenArgs),
    /// Weighted Laplacian of a vertex function.
    /// Columns: state,f,laplacian,d_star_d.
    Laplacian(LaplacianArgs),
}

#[derive(Args, Debug)]
pub struct NbrwArgs {
    #[arg(long)]
    graph: String,
    /// Start subgraph name or vertex id.
    #[arg(long)]
    start: String,
    #[arg(long)]
    n: usize,
    /// Monte-Carlo paths; exact law only when absent.
    #[arg(long)]
    reps: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct HarmonicArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    depth: usize,
    #[arg(long)]
    reps: u64,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct GreenArgs {
    #[arg(long)]
    q: u64,
    /// Child-index path from the root to y, e.g. `0,1`.
    #[arg(long)]
    y: String,
    /// Child-index path from the root to z.
    #[arg(long)]
    z: String,
    #[arg(long)]
    reps: u64,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct LaplacianArgs {
    #[arg(long)]
    graph: String,
    /// Comma-separated values per vertex.
    #[arg(long)]
    f: String,
}

pub fn run(c: WalkCmd) -> Result<Table, CliError> {
    match c {
        WalkCmd::Nbrw(a) => {
            let g = load_graph(&a.graph)?;
            let start = subgraph(&g, &a.start)?;
            let exact = nbrw_exact(&g, &start, a.n).op("random_walks", "nbrw_exact")?;
            let sample = match a.reps {
                Some(r) => {
                    let seed = require_seed(a.seed)?;
                    Some(nbrw_sample(&g, &start, a.n, r, seed).op("random_walks", "nbrw_sample")?)
                }
                None => None,
            };
            let emp = sample.as_ref().map(|s| s.empirical());
            let z = sample.as_ref().map(|s| s.z_scores(&exact.dist));
            let mut t = Table::new(&["state", "probability", "target", "empirical", "z"]);
            for v in 0..g.num_vertices() {
                t.push(vec![
                    Cell::text(g.vertex_id(v)),
                    Cell::Real(exact.dist[v]),
                    Cell::Real(exact.target[v]),
                    Cell::opt_real(emp.as_ref().map(|e| e[v])),
                    Cell::opt_real(z.as_ref().map(|z| z[v])),
                ]);
            }
            Ok(t)
        }
        WalkCmd::Harmonic(a) => {
            let k = TreeWalkKernel::simple(a.q).op("random_walks", "tree_harmonic_measure")?;
            let r = tree_harmonic_measure(&k, a.depth, a.reps, require_seed(a.seed)?)
                .op("random_walks", "tree_harmonic_measure")?;
            let mut t = Table::new(&["depth", "shadow", "estimate", "stderr", "target"]);
            for (i, (e, s)) in r.estimates.iter().zip(&r.stderr).enumerate() {
                t.push(vec![Cell::int(a.depth), Cell::int(i), Cell::Real(*e), Cell::Real(*s), Cell::Real(r.target)]);
            }
            Ok(t)
        }
        WalkCmd::Green(a) => {
            let k = TreeWalkKernel::simple(a.q).op("random_walks", "green_ratio_check")?;
            let (y, z) = (indices(&a.y)?, indices(&a.z)?);
            let r = green_ratio_check(&k, &y, &z, a.reps, require_seed(a.seed)?)
                .op("random_walks", "green_ratio_check")?;
            let mut t = Table::new(&["depth_y", "depth_z", "estimate", "stderr", "target", "z"]);
            t.push(vec![
                Cell::int(y.len()),
                Cell::int(z.len()),
                Cell::Real(r.ratio),
                Cell::Real(r.stderr),
                Cell::Real(r.target),
                Cell::Real(r.z()),
            ]);
            Ok(t)
        }
        WalkCmd::Laplacian(a) => {
            let g = load_graph(&a.graph)?;
            let f = reals(&a.f)?;
            if f.len() != g.num_vertices() {
                return Err(CliError::Usage(format!("--f needs {} values", g.num_vertices())));
            }
            let lf = laplacian(&g, &f);
            let dd = d_c_star(&g, &geodlab_core::walks::d_c(&g, &f));
            let mut t = Table::new(&["state", "f", "laplacian", "d_star_d"]);
            for v in 0..g.num_vertices() {
                t.push(vec![Cell::text(g.vertex_id(v)), Cell::Real(f[v]), Cell::Real(lf[v]), Cell::Real(dd[v])]);
            }
            Ok(t)
        }
    }
}
