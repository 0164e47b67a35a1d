use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::GraphOfGroups;

/// Volumes, tree degrees and bipartition of a graph of groups.
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeReport {
    /// `Σ_v 1/|G_v|`.
    pub vol: BigRational,
    /// `Σ_e 1/|G_e|` over directed edges.
    pub tvol: BigRational,
    pub degrees: Vec<u64>,
    /// The two colour classes when bipartite.
    pub bipartition: Option<(Vec<usize>, Vec<usize>)>,
}

impl VolumeReport {
    pub fn is_bipartite(&self) -> bool {
        self.bipartition.is_some()
    }
}

fn recip(n: u64) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(n))
}

pub fn volumes(g: &GraphOfGroups) -> VolumeReport {
    let mut vol = BigRational::zero();
    for v in 0..g.num_vertices() {
        vol += recip(g.vertex_order(v));
    }
    let mut tvol = BigRational::zero();
    for e in 0..g.num_edges() {
        tvol += recip(g.edge_order(e));
    }
    let bipartition = g.two_coloring().map(|c| {
        let a = (0..c.len()).filter(|&v| c[v] == 0).collect();
        let b = (0..c.len()).filter(|&v| c[v] == 1).collect();
        (a, b)
    });
    VolumeReport { vol, tvol, degrees: (0..g.num_vertices()).map(|v| g.tree_degree(v)).collect(), bipartition }
}
