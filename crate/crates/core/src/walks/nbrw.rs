//! Non-backtracking simple random walk on a graph of groups, realised on
//! directed edges with lift-count weights `i(f') − [f' = f̄]`.

use rand::distributions::{Distribution, WeightedIndex};
use rayon::prelude::*;

use super::WalkError;
use crate::graph::{GraphError, GraphOfGroups, Subgraph};
use crate::seed::stream_rng;

const CHUNK: u64 = 4096;

/// Transition kernel and start law on directed edges.
#[derive(Debug, Clone)]
pub struct NbrwKernel {
    /// Row `f`: `(f', P(f → f'))`.
    pub rows: Vec<Vec<(usize, f64)>>,
    /// Law of the first edge `f₀`.
    pub start: Vec<f64>,
    /// `o(f)` for every edge.
    pub origin: Vec<usize>,
    pub num_vertices: usize,
}

/// Builds the kernel. The start vertex is drawn from `vol` restricted to
/// `Y'`, then `f₀` uniformly among edges leaving it outside `E(Y')`;
/// vertices of `Y'` with no such edge are dropped.
pub fn nbrw_kernel(g: &GraphOfGroups, start: &Subgraph) -> Result<NbrwKernel, WalkError> {
    let ne = g.num_edges();
    for v in 0..g.num_vertices() {
        if g.tree_degree(v) < 2 {
            return Err(GraphError::Degenerate(g.vertex_id(v).to_string()).into());
        }
    }
    if start.vertices.is_empty() || start.vertices.iter().any(|&v| v >= g.num_vertices()) {
        return Err(WalkError::InvalidArgument("start subgraph must be a nonempty vertex set of the graph".into()));
    }
    let rows = (0..ne)
        .map(|f| {
            let back = g.reverse(f);
            let out = g.out_edges(g.terminus(f));
            let total: f64 = out.iter().map(|&h| g.index(h) as f64).sum::<f64>() - 1.0;
            out.iter()
                .map(|&h| (h, (g.index(h) as f64 - (h == back) as u8 as f64) / total))
                .filter(|&(_, p)| p > 0.0)
                .collect()
        })
        .collect();
    let mut startw = vec![0.0; ne];
    let mut mass = 0.0;
    for &v in &start.vertices {
        let valid: Vec<usize> =
            g.out_edges(v).iter().copied().filter(|e| start.edges.binary_search(e).is_err()).collect();
        if valid.is_empty() {
            continue;
        }
        let w = 1.0 / g.vertex_order(v) as f64;
        mass += w;
        for &e in &valid {
            startw[e] += w / valid.len() as f64;
        }
    }
    if mass == 0.0 {
        return Err(WalkError::InvalidArgument("no edge leaves the start subgraph transversally".into()));
    }
    startw.iter_mut().for_each(|x| *x /= mass);
    Ok(NbrwKernel { rows, start: startw, origin: (0..ne).map(|e| g.origin(e)).collect(), num_vertices: g.num_vertices() })
}

#[derive(Debug, Clone)]
pub struct NbrwReport {
    /// Law of the `n`-th vertex `o(f_n)`.
    pub dist: Vec<f64>,
    /// `vol/Vol`.
    pub target: Vec<f64>,
    pub tv: f64,
    /// Set when the graph is bipartite and the limit does not exist.
    pub bipartite: bool,
}



/// Exact law of the `n`-th vertex by `n` kernel steps.
pub fn nbrw_exact(g: &GraphOfGroups, start: &Subgraph, n: usize) -> Result<NbrwReport, WalkError> {
    let k = nbrw_kernel(g, start)?;
    let mut x = k.start.clone();
    for _ in 0..n {
        let mut y = vec![0.0; x.len()];
        for (f, row) in k.rows.iter().enumerate() {
            if x[f] != 0.0 {
                for &(h, p) in row {
                    y[h] += x[f] * p;
                }
            }
        }
        x = y;
    }
    let mut dist = vec![0.0; g.num_vertices()];
    for (f, &m) in x.iter().enumerate() {
        dist[k.origin[f]] += m;
    }
    let vol: Vec<f64> = (0..g.num_vertices()).map(|v| 1.0 / g.vertex_order(v) as f64).collect();
    let total: f64 = vol.iter().sum();
    let target: Vec<f64> = vol.iter().map(|v| v / total).collect();
    let tv = 0.5 * dist.iter().zip(&target).map(|(a, b)| (a - b).abs()).sum::<f64>();
    Ok(NbrwReport { dist, target, tv, bipartite: g.two_coloring().is_some() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NbrwSample {
    pub counts: Vec<u64>,
    pub reps: u64,
}

impl NbrwSample {
    pub fn empirical(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64 / self.reps as f64).collect()
    }

    /// Per-vertex `|emp − p| / √(p(1−p)/reps)`; zero where `p(1−p) = 0`
    /// and the empirical value matches.
    pub fn z_scores(&self, exact: &[f64]) -> Vec<f64> {
        self.empirical()
            .iter()
            .zip(exact)
            .map(|(&e, &p)| {
                let sd = (p * (1.0 - p) / self.reps as f64).sqrt();
                if sd > 0.0 {
                    (e - p).abs() / sd
                } else if (e - p).abs() < 1e-15 {
                    0.0
                } else {
                    f64::INFINITY
                }
            })
            .collect()
    }
}

/// Monte-Carlo law of the `n`-th vertex; path `i` draws from
/// `stream_rng(seed, i)`, so tallies do not depend on scheduling.
pub fn nbrw_sample(g: &GraphOfGroups, start: &Subgraph, n: usize, reps: u64, seed: u64) -> Result<NbrwSample, WalkError> {
    if reps == 0 {
        return Err(WalkError::InvalidArgument("reps must be at least 1".into()));
    }
    let k = nbrw_kernel(g, start)?;
    let first = WeightedIndex::new(&k.start).expect("start law has mass");
    let steps: Vec<(Vec<usize>, WeightedIndex<f64>)> = k
        .rows
        .iter()
        .map(|row| (row.iter().map(|&(h, _)| h).collect(), WeightedIndex::new(row.iter().map(|&(_, p)| p)).unwrap()))
        .collect();
    let nv = k.num_vertices;
    let chunks = reps.div_ceil(CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut tally = vec![0u64; nv];
            for i in c * CHUNK..((c + 1) * CHUNK).min(reps) {
                let mut rng = stream_rng(seed, i);
                let mut f = first.sample(&mut rng);
                for _ in 0..n {
                    let (succ, w) = &steps[f];
                    f = succ[w.sample(&mut rng)];
                }
                tally[k.origin[f]] += 1;
            }
            tally
        })
        .reduce(|| vec![0u64; nv], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect());
    Ok(NbrwSample { counts, reps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;

    #[test]
    fn rows_are_stochastic() {
        for (_, g) in fixtures::all() {
            let k = nbrw_kernel(&g, &g.point(0)).unwrap();
            for row in &k.rows {
                assert!((row.iter().map(|r| r.1).sum::<f64>() - 1.0).abs() < 1e-14);
                assert!(row.iter().all(|r| r.1 >= 0.0));
            }
            assert!((k.start.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn figure_eight_is_dirac() {
        let g = fixtures::figure8();
        let r = nbrw_exact(&g, &g.point(0), 7).unwrap();
        assert_eq!(r.dist, vec![1.0]);
        assert_eq!(r.tv, 0.0);
    }

    #[test]
    fn petersen_mixes() {
        let g = fixtures::petersen();
        let r = nbrw_exact(&g, &g.point(0), 60).unwrap();
        assert!(r.tv < 1e-3);
        assert!(!r.bipartite);
    }

    /// Dense matrix power of the kernel as an independent route.
    #[test]
    fn order_two_limit_is_volume() {
        let g = fixtures::order2();
        let k = nbrw_kernel(&g, &g.point(0)).unwrap();
        let ne = k.rows.len();
        let mut m = nalgebra::DMatrix::zeros(ne, ne);
        for (f, row) in k.rows.iter().enumerate() {
            for &(h, p) in row {
                m[(f, h)] = p;
            }
        }
        let mp = m.pow(200);
        let x = nalgebra::RowDVector::from_row_slice(&k.start) * mp;
        let mut dist = vec![0.0; g.num_vertices()];
        for f in 0..ne {
            dist[k.origin[f]] += x[f];
        }
        let r = nbrw_exact(&g, &g.point(0), 200).unwrap();
        for v in 0..g.num_vertices() {
            assert!((dist[v] - r.dist[v]).abs() < 1e-12);
            assert!((r.dist[v] - r.target[v]).abs() < 1e-9, "{:?} vs {:?}", r.dist, r.target);
        }
        assert!(r.target.iter().any(|&t| (t - r.target[0]).abs() > 1e-3));
    }

    #[test]
    fn sampling_is_deterministic() {
        let g = fixtures::petersen();
        let a = nbrw_sample(&g, &g.point(0), 20, 5000, 9).unwrap();
        let b = nbrw_sample(&g, &g.point(0), 20, 5000, 9).unwrap();
        assert_eq!(a, b);
        let one = nbrw_sample(&g, &g.point(0), 20, 1, 9).unwrap();
        assert_eq!(one.counts.iter().sum::<u64>(), 1);
    }

    #[test]
    fn sampling_matches_exact() {
        let g = fixtures::petersen();
        let ex = nbrw_exact(&g, &g.point(0), 5).unwrap();
        let s = nbrw_sample(&g, &g.point(0), 5, 100_000, 3).unwrap();
        assert!(s.z_scores(&ex.dist).iter().all(|&z| z < 4.0));
    }
}
