//! Finite graphs in Serre's conventions with vertex and edge group orders
//! and a conductance on directed edges.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub mod fixtures;
mod transfer;
mod volume;

pub use transfer::{nb_transfer, nb_transfer_exact, NbTransfer};
pub use volume::{volumes, VolumeReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("json: {0}")]
    Json(String),
    #[error("bad-involution: edge {0}")]
    BadInvolution(String),
    #[error("order-divisibility: edge {0}")]
    OrderDivisibility(String),
    #[error("disconnected: vertex {0} is unreachable")]
    Disconnected(String),
    #[error("dangling-reference: {0}")]
    DanglingReference(String),
    #[error("duplicate-id: {0}")]
    DuplicateId(String),
    #[error("bad-order: {0} must have positive order")]
    BadOrder(String),
    #[error("bad-subgraph: {0}")]
    BadSubgraph(String),
    #[error("degenerate: vertex {0} has tree-degree at most 1")]
    Degenerate(String),
    #[error("empty-graph")]
    Empty,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: String,
    pub order: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: String,
    pub from: String,
    pub to: String,
    pub reverse: String,
    pub order: u64,
    #[serde(default)]
    pub conductance: f64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SubgraphDoc {
    #[serde(default)]
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<String>,
}

/// The on-disk JSON document.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
    #[serde(default)]
    pub subgraphs: BTreeMap<String, SubgraphDoc>,
}

/// A named connected, reversal-closed subgraph (vertex and edge indices,
/// ascending).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct GraphOfGroups {
    vertex_ids: Vec<String>,
    vertex_order: Vec<u64>,
    edge_ids: Vec<String>,
    origin: Vec<usize>,
    terminus: Vec<usize>,
    reverse: Vec<usize>,
    edge_order: Vec<u64>,
    conductance: Vec<f64>,
    out_edges: Vec<Vec<usize>>,
    subgraphs: BTreeMap<String, Subgraph>,
}

impl GraphOfGroups {
    pub fn from_json_str(s: &str) -> Result<Self, GraphError> {
        let doc: GraphDoc = serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn from_doc(doc: &GraphDoc) -> Result<Self, GraphError> {
        if doc.vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut vidx = HashMap::new();
        for (i, v) in doc.vertices.iter().enumerate() {
            if vidx.insert(v.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateId(v.id.clone()));
            }
            if v.order == 0 {
                return Err(GraphError::BadOrder(v.id.clone()));
            }
        }
        let mut eidx = HashMap::new();
        for (i, e) in doc.edges.iter().enumerate() {
            if vidx.contains_key(&e.id) || eidx.insert(e.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateId(e.id.clone()));
            }
            if e.order == 0 {
                return Err(GraphError::BadOrder(e.id.clone()));
            }
        }
        let lookup_v = |id: &str, ctx: &str| {
            vidx.get(id).copied().ok_or_else(|| GraphError::DanglingReference(format!("{ctx} -> vertex {id}")))
        };
        let lookup_e = |id: &str, ctx: &str| {
            eidx.get(id).copied().ok_or_else(|| GraphError::DanglingReference(format!("{ctx} -> edge {id}")))
        };
        let n = doc.edges.len();
        let mut origin = Vec::with_capacity(n);
        let mut terminus = Vec::with_capacity(n);
        let mut reverse = Vec::with_capacity(n);
        for e in &doc.edges {
            origin.push(lookup_v(&e.from, &e.id)?);
            terminus.push(lookup_v(&e.to, &e.id)?);
            reverse.push(lookup_e(&e.reverse, &e.id)?);
        }
        let vertex_order: Vec<u64> = doc.vertices.iter().map(|v| v.order).collect();
        for (i, e) in doc.edges.iter().enumerate() {
            let r = reverse[i];
            if r == i || reverse[r] != i || origin[r] != terminus[i] || terminus[r] != origin[i] {
                return Err(GraphError::BadInvolution(e.id.clone()));
            }
            if doc.edges[r].order != e.order
                || vertex_order[origin[i]] % e.order != 0
                || vertex_order[terminus[i]] % e.order != 0
            {
                return Err(GraphError::OrderDivisibility(e.id.clone()));
            }
            if !e.conductance.is_finite() {
                return Err(GraphError::Json(format!("edge {}: conductance must be finite", e.id)));
            }
        }
        let mut out_edges = vec![Vec::new(); doc.vertices.len()];
        for (i, &o) in origin.iter().enumerate() {
            out_edges[o].push(i);
        }
        let mut g = GraphOfGroups {
            vertex_ids: doc.vertices.iter().map(|v| v.id.clone()).collect(),
            vertex_order,
            edge_ids: doc.edges.iter().map(|e| e.id.clone()).collect(),
            origin,
            terminus,
            reverse,
            edge_order: doc.edges.iter().map(|e| e.order).collect(),
            conductance: doc.edges.iter().map(|e| e.conductance).collect(),
            out_edges,
            subgraphs: BTreeMap::new(),
        };
        let all: Vec<usize> = (0..g.num_vertices()).collect();
        if let Some(v) = g.unreachable(&all, &(0..n).collect::<Vec<_>>()) {
            return Err(GraphError::Disconnected(g.vertex_ids[v].clone()));
        }
        for (name, sd) in &doc.subgraphs {
            let mut vs = sd.vertices.iter().map(|v| lookup_v(v, name)).collect::<Result<Vec<_>, _>>()?;
            let mut es = sd.edges.iter().map(|e| lookup_e(e, name)).collect::<Result<Vec<_>, _>>()?;
            vs.sort_unstable();
            vs.dedup();
            es.sort_unstable();
            es.dedup();
            g.check_subgraph(name, &vs, &es)?;
            g.subgraphs.insert(name.clone(), Subgraph { vertices: vs, edges: es });
        }
        Ok(g)
    }

    fn check_subgraph(&self, name: &str, vs: &[usize], es: &[usize]) -> Result<(), GraphError> {
        if vs.is_empty() {
            return Err(GraphError::BadSubgraph(format!("{name} has no vertices")));
        }
        for &e in es {
            if es.binary_search(&self.reverse[e]).is_err() {
                return Err(GraphError::BadSubgraph(format!("{name} is not closed under reversal at {}", self.edge_ids[e])));
            }
            if vs.binary_search(&self.origin[e]).is_err() || vs.binary_search(&self.terminus[e]).is_err() {
                return Err(GraphError::BadSubgraph(format!("{name}: edge {} leaves the subgraph", self.edge_ids[e])));
            }
        }
        if let Some(v) = self.unreachable(vs, es) {
            return Err(GraphError::BadSubgraph(format!("{name} is disconnected at {}", self.vertex_ids[v])));
        }
        Ok(())
    }

    /// First vertex of `vs` not reachable from `vs[0]` through edges `es`.
    fn unreachable(&self, vs: &[usize], es: &[usize]) -> Option<usize> {
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for &e in es {
            adj.entry(self.origin[e]).or_default().push(self.terminus[e]);
        }
        let mut seen = vec![false; self.num_vertices()];
        let mut queue = VecDeque::from([vs[0]]);
        seen[vs[0]] = true;
        while let Some(v) = queue.pop_front() {
            for &w in adj.get(&v).map(|x| x.as_slice()).unwrap_or(&[]) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        vs.iter().copied().find(|&v| !seen[v])
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            vertices: (0..self.num_vertices())
                .map(|v| VertexDoc { id: self.vertex_ids[v].clone(), order: self.vertex_order[v] })
                .collect(),
            edges: (0..self.num_edges())
                .map(|e| EdgeDoc {
                    id: self.edge_ids[e].clone(),
                    from: self.vertex_ids[self.origin[e]].clone(),
                    to: self.vertex_ids[self.terminus[e]].clone(),
                    reverse: self.edge_ids[self.reverse[e]].clone(),
                    order: self.edge_order[e],
                    conductance: self.conductance[e],
                })
                .collect(),
            subgraphs: self
                .subgraphs
                .iter()
                .map(|(k, s)| {
                    let d = SubgraphDoc {
                        vertices: s.vertices.iter().map(|&v| self.vertex_ids[v].clone()).collect(),
                        edges: s.edges.iter().map(|&e| self.edge_ids[e].clone()).collect(),
                    };
                    (k.clone(), d)
                })
                .collect(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_ids.len()
    }

    /// Number of directed edges.
    pub fn num_edges(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertex_ids[v]
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.edge_ids[e]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_ids.iter().position(|v| v == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_ids.iter().position(|e| e == id)
    }

    pub fn origin(&self, e: usize) -> usize {
        self.origin[e]
    }

    pub fn terminus(&self, e: usize) -> usize {
        self.terminus[e]
    }

    pub fn reverse(&self, e: usize) -> usize {
        self.reverse[e]
    }

    pub fn vertex_order(&self, v: usize) -> u64 {
        self.vertex_order[v]
    }

    pub fn edge_order(&self, e: usize) -> u64 {
        self.edge_order[e]
    }

    pub fn conductance(&self, e: usize) -> f64 {
        self.conductance[e]
    }

    pub fn conductances(&self) -> &[f64] {
        &self.conductance
    }

    /// Edges with origin `v`, ascending.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    /// `i(e) = |G_{o(e)}| / |G_e|`.
    pub fn index(&self, e: usize) -> u64 {
        self.vertex_order[self.origin[e]] / self.edge_order[e]
    }

    /// Degree of a lift of `v` in the Bass-Serre tree.
    pub fn tree_degree(&self, v: usize) -> u64 {
        self.out_edges[v].iter().map(|&e| self.index(e)).sum()
    }

    pub fn trivial_groups(&self) -> bool {
        self.vertex_order.iter().all(|&o| o == 1) && self.edge_order.iter().all(|&o| o == 1)
    }

    pub fn subgraph(&self, name: &str) -> Option<&Subgraph> {
        self.subgraphs.get(name)
    }

    pub fn subgraph_names(&self) -> impl Iterator<Item = &str> {
        self.subgraphs.keys().map(|s| s.as_str())
    }

    /// Adds or replaces a named subgraph after validation.
    pub fn with_subgraph(mut self, name: &str, vertices: Vec<usize>, edges: Vec<usize>) -> Result<Self, GraphError> {
        let mut vs = vertices;
        let mut es = edges;
        vs.sort_unstable();
        vs.dedup();
        es.sort_unstable();
        es.dedup();
        if vs.iter().any(|&v| v >= self.num_vertices()) || es.iter().any(|&e| e >= self.num_edges()) {
            return Err(GraphError::DanglingReference(name.to_string()));
        }
        self.check_subgraph(name, &vs, &es)?;
        self.subgraphs.insert(name.to_string(), Subgraph { vertices: vs, edges: es });
        Ok(self)
    }

    /// The single-vertex subgraph `{v}`.
    pub fn point(&self, v: usize) -> Subgraph {
        Subgraph { vertices: vec![v], edges: Vec::new() }
    }

    /// Same graph with new conductances (indexed by directed edge).
    pub fn with_conductances(&self, c: &[f64]) -> Self {
        assert_eq!(c.len(), self.num_edges());
        GraphOfGroups { conductance: c.to_vec(), ..self.clone() }
    }

    /// Isomorphic copy with vertices and edges renumbered by the given
    /// permutations (`new index = perm[old index]`).
    pub fn relabeled(&self, vperm: &[usize], eperm: &[usize]) -> Self {
        let nv = self.num_vertices();
        let ne = self.num_edges();
        let mut doc = GraphDoc::default();
        let mut vinv = vec![0; nv];
        for (old, &new) in vperm.iter().enumerate() {
            vinv[new] = old;
        }
        let mut einv = vec![0; ne];
        for (old, &new) in eperm.iter().enumerate() {
            einv[new] = old;
        }
        for &old in &vinv {
            doc.vertices.push(VertexDoc { id: self.vertex_ids[old].clone(), order: self.vertex_order[old] });
        }
        for &old in &einv {
            doc.edges.push(EdgeDoc {
                id: self.edge_ids[old].clone(),
                from: self.vertex_ids[self.origin[old]].clone(),
                to: self.vertex_ids[self.terminus[old]].clone(),
                reverse: self.edge_ids[self.reverse[old]].clone(),
                order: self.edge_order[old],
                conductance: self.conductance[old],
            });
        }
        doc.subgraphs = self.to_doc().subgraphs;
        GraphOfGroups::from_doc(&doc).expect("relabeling preserves validity")
    }

    /// Two-colouring of the vertices, if the graph is bipartite.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.num_vertices()];
        color[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.out_edges[v] {
                let w = self.terminus[e];
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return None;
                }
            }
        }
        Some(color)
    }

    pub(crate) fn check_nondegenerate(&self) -> Result<(), GraphError> {
        for v in 0..self.num_vertices() {
            if self.tree_degree(v) <= 1 {
                return Err(GraphError::Degenerate(self.vertex_ids[v].clone()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_eight_loads() {
        let g = fixtures::figure8();
        assert_eq!(g.num_vertices(), 1);
        assert_eq!(g.num_edges(), 4);
        assert_eq!(g.tree_degree(0), 4);
        assert!(g.trivial_groups());
    }

    #[test]
    fn self_reverse_rejected() {
        let s = r#"{"vertices":[{"id":"A","order":1}],
            "edges":[{"id":"a","from":"A","to":"A","reverse":"a","order":1,"conductance":0}]}"#;
        assert_eq!(GraphOfGroups::from_json_str(s).unwrap_err(), GraphError::BadInvolution("a".into()));
    }

    #[test]
    fn validation_errors_name_the_culprit() {
        let s = r#"{"vertices":[{"id":"A","order":2},{"id":"B","order":3}],
            "edges":[{"id":"a","from":"A","to":"B","reverse":"b","order":2,"conductance":0},
                     {"id":"b","from":"B","to":"A","reverse":"a","order":2,"conductance":0}]}"#;
        assert_eq!(GraphOfGroups::from_json_str(s).unwrap_err(), GraphError::OrderDivisibility("a".into()));
        let s = r#"{"vertices":[{"id":"A","order":1},{"id":"B","order":1}],
            "edges":[{"id":"a","from":"A","to":"A","reverse":"b","order":1,"conductance":0},
                     {"id":"b","from":"A","to":"A","reverse":"a","order":1,"conductance":0}]}"#;
        assert_eq!(GraphOfGroups::from_json_str(s).unwrap_err(), GraphError::Disconnected("B".into()));
        let s = r#"{"vertices":[{"id":"A","order":1}],
            "edges":[{"id":"a","from":"A","to":"Z","reverse":"b","order":1,"conductance":0}]}"#;
        assert!(matches!(GraphOfGroups::from_json_str(s).unwrap_err(), GraphError::DanglingReference(m) if m.contains('Z')));
    }

    #[test]
    fn nagao_prefix_is_valid() {
        let g = fixtures::nagao_prefix_q2();
        assert_eq!(g.tree_degree(g.vertex_index("-1").unwrap()), 3);
        assert_eq!(g.tree_degree(g.vertex_index("2").unwrap()), 3);
    }

    #[test]
    fn json_roundtrip() {
        let g = fixtures::biregular23();
        let s = serde_json::to_string(&g.to_doc()).unwrap();
        let h = GraphOfGroups::from_json_str(&s).unwrap();
        assert_eq!(h.num_edges(), 48);
        assert_eq!(h.subgraph("cycle6").unwrap(), g.subgraph("cycle6").unwrap());
    }

    #[test]
    fn coloring() {
        assert!(fixtures::theta().two_coloring().is_some());
        assert!(fixtures::biregular23().two_coloring().is_some());
        assert!(fixtures::petersen().two_coloring().is_none());
        assert!(fixtures::figure8().two_coloring().is_none());
    }
}
