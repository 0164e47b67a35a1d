//! Common perpendiculars, closed orbits and conjugacy-class counts on graphs
//! with trivial groups, with the explicit asymptotic constants.

use thiserror::Error;

use crate::graph::{GraphError, GraphOfGroups, Subgraph};

mod conjugacy;
mod count;
mod masses;
mod orbits;

pub use conjugacy::{conjugacy_count, ConjugacyCounts};
pub use count::{count_perpendiculars, CountSeries};
pub use masses::{
    bicyclette_constant, bm_mass, skinning_mass, skinning_mass_of, theoretical_constant, AsymptoticReport, BmMass,
    Normalisation, SkinKind, TreeSpec,
};
pub use orbits::{closed_orbit_count, trace_power, OrbitCounts};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PerpError {
    #[error("budget: {needed} steps needed, budget {budget}")]
    Budget { needed: u128, budget: u64 },
    #[error("orders-ignored: counting needs trivial vertex and edge groups")]
    NontrivialGroups,
    #[error("bad-subgraph: {0}")]
    BadSubgraph(String),
    #[error("degree-mismatch: {0}")]
    DegreeMismatch(String),
    #[error("unsupported-kind: {0}")]
    UnsupportedKind(String),
    #[error("unsupported-configuration: {0}")]
    UnsupportedConfiguration(String),
    #[error("not-a-simple-cycle: {0}")]
    NotASimpleCycle(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A counting problem between two subgraphs `Y⁻` (start) and `Y⁺` (end).
#[derive(Debug, Clone)]
pub struct PerpQuery<'a> {
    pub graph: &'a GraphOfGroups,
    pub minus: Subgraph,
    pub plus: Subgraph,
    pub nmax: usize,
}

impl<'a> PerpQuery<'a> {
    /// Query between named subgraphs of the graph.
    pub fn named(graph: &'a GraphOfGroups, minus: &str, plus: &str, nmax: usize) -> Result<Self, PerpError> {
        let get = |n: &str| graph.subgraph(n).cloned().ok_or_else(|| PerpError::BadSubgraph(format!("unknown subgraph {n}")));
        Ok(PerpQuery { graph, minus: get(minus)?, plus: get(plus)?, nmax })
    }

    /// Point-to-point query.
    pub fn points(graph: &'a GraphOfGroups, x: usize, y: usize, nmax: usize) -> Self {
        PerpQuery { graph, minus: graph.point(x), plus: graph.point(y), nmax }
    }

    fn validate(&self) -> Result<(), PerpError> {
        let g = self.graph;
        if !g.trivial_groups() {
            return Err(PerpError::NontrivialGroups);
        }
        for (name, y) in [("Y-", &self.minus), ("Y+", &self.plus)] {
            check_subgraph(g, y).map_err(|m| PerpError::BadSubgraph(format!("{name}: {m}")))?;
        }
        Ok(())
    }
}

/// Nonempty, proper, reversal-closed, edges inside the vertex set, connected.
fn check_subgraph(g: &GraphOfGroups, y: &Subgraph) -> Result<(), String> {
    if y.vertices.is_empty() {
        return Err("empty".into());
    }
    if y.vertices.iter().any(|&v| v >= g.num_vertices()) || y.edges.iter().any(|&e| e >= g.num_edges()) {
        return Err("index out of range".into());
    }
    if y.vertices.len() == g.num_vertices() && y.edges.len() == g.num_edges() {
        return Err("not proper".into());
    }
    let inv = |v: usize| y.vertices.binary_search(&v).is_ok();
    for &e in &y.edges {
        if !inv(g.origin(e)) || !inv(g.terminus(e)) {
            return Err(format!("edge {} leaves the vertex set", g.edge_id(e)));
        }
        if y.edges.binary_search(&g.reverse(e)).is_err() {
            return Err(format!("edge {} without its reverse", g.edge_id(e)));
        }
    }
    let mut seen = vec![y.vertices[0]];
    let mut stack = vec![y.vertices[0]];
    while let Some(v) = stack.pop() {
        for &e in &y.edges {
            if g.origin(e) == v && !seen.contains(&g.terminus(e)) {
                seen.push(g.terminus(e));
                stack.push(g.terminus(e));
            }
        }
    }
    if seen.len() != y.vertices.len() {
        return Err("disconnected".into());
    }
    Ok(())
}

pub(crate) fn check_budget(needed: u128) -> Result<(), PerpError> {
    let budget = crate::budget::enumeration_budget();
    if needed > budget as u128 {
        return Err(PerpError::Budget { needed, budget });
    }
    Ok(())
}
