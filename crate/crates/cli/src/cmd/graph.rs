use clap::{Args, Subcommand};
use geodlab_core::graph::{fixtures, nb_transfer, volumes};

use crate::error::{CliError, Context};
use crate::input::load_graph;
use crate::output::{Cell, Table};

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    /// Loads and validates a document. Columns: vertices,edges,bipartite,trivial_groups.
    Validate(GraphArgs),
    /// Volumes and degrees. Columns: vertex,order,degree,vol,tvol.
    Volumes(GraphArgs),
    /// Nonzero entries of the non-backtracking transfer matrix.
    /// Columns: from,to,weight.
    Transfer(GraphArgs),
    /// Bundled graphs. Columns: name,vertices,edges.
    Fixtures,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    /// Graph JSON file or `builtin:<name>`.
    #[arg(long)]
    graph: String,
}

pub fn run(c: GraphCmd) -> Result<Table, CliError> {
    match c {
        GraphCmd::Validate(a) => {
            let g = load_graph(&a.graph)?;
            let mut t = Table::new(&["vertices", "edges", "bipartite", "trivial_groups"]);
            t.push(vec![
                Cell::int(g.num_vertices()),
                Cell::int(g.num_edges()),
                Cell::text(g.two_coloring().is_some()),
                Cell::text(g.trivial_groups()),
            ]);
            Ok(t)
        }
        GraphCmd::Volumes(a) => {
            let g = load_graph(&a.graph)?;
            let r = volumes(&g);
            let mut t = Table::new(&["vertex", "order", "degree", "vol", "tvol"]);
            for v in 0..g.num_vertices() {
                t.push(vec![
                    Cell::text(g.vertex_id(v)),
                    Cell::int(g.vertex_order(v)),
                    Cell::int(r.degrees[v]),
                    Cell::text(&r.vol),
                    Cell::text(&r.tvol),
                ]);
            }
            Ok(t)
        }
        GraphCmd::Transfer(a) => {
            let g = load_graph(&a.graph)?;
            let b = nb_transfer(&g).op("graph", "nb_transfer")?;
            let mut t = Table::new(&["from", "to", "weight"]);
            for (e, row) in b.rows.iter().enumerate() {
                for &(f, w) in row {
                    t.push(vec![Cell::text(g.edge_id(e)), Cell::text(g.edge_id(f)), Cell::Real(w)]);
                }
            }
            Ok(t)
        }
        GraphCmd::Fixtures => {
            let mut t = Table::new(&["name", "vertices", "edges"]);
            for (n, g) in fixtures::all() {
                t.push(vec![Cell::text(n), Cell::int(g.num_vertices()), Cell::int(g.num_edges())]);
            }
            Ok(t)
        }
    }
}
