//! Weighted Laplacian `Δ_c` of a graph of groups with conductances, and the
//! coboundary `d_c` with its adjoint.

use nalgebra::DMatrix;

use crate::graph::GraphOfGroups;

fn deg_c(g: &GraphOfGroups, x: usize) -> f64 {
    g.out_edges(x).iter().map(|&e| g.index(e) as f64 * g.conductance(e).exp()).sum()
}

fn p(g: &GraphOfGroups, e: usize) -> f64 {
    g.conductance(e).exp() / deg_c(g, g.origin(e))
}

/// `Δ_c f(x) = (1/deg_c x)·Σ_{o(e)=x} i(e)e^{c(e)}(f(x) − f(t(e)))`.
pub fn laplacian(g: &GraphOfGroups, f: &[f64]) -> Vec<f64> {
    (0..g.num_vertices())
        .map(|x| g.out_edges(x).iter().map(|&e| g.index(e) as f64 * p(g, e) * (f[x] - f[g.terminus(e)])).sum())
        .collect()
}

/// Matrix of `Δ_c` in the vertex basis.
pub fn laplacian_matrix(g: &GraphOfGroups) -> DMatrix<f64> {
    let n = g.num_vertices();
    let mut m = DMatrix::zeros(n, n);
    for x in 0..n {
        for &e in g.out_edges(x) {
            let w = g.index(e) as f64 * p(g, e);
            m[(x, x)] += w;
            m[(x, g.terminus(e))] -= w;
        }
    }
    m
}

/// `d_c f(e) = √p(e)·(f(t(e)) − f(o(e)))`.
pub fn d_c(g: &GraphOfGroups, f: &[f64]) -> Vec<f64> {
    (0..g.num_edges()).map(|e| p(g, e).sqrt() * (f[g.terminus(e)] - f[g.origin(e)])).collect()
}

/// `d_c* φ(x) = Σ_{o(e)=x} (i(e)/2)(√p(ē)φ(ē) − √p(e)φ(e))`.
pub fn d_c_star(g: &GraphOfGroups, phi: &[f64]) -> Vec<f64> {
    (0..g.num_vertices())
        .map(|x| {
            g.out_edges(x)
                .iter()
                .map(|&e| {
                    let b = g.reverse(e);
                    g.index(e) as f64 / 2.0 * (p(g, b).sqrt() * phi[b] - p(g, e).sqrt() * phi[e])
                })
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fixtures, GraphDoc};
    use crate::seed::stream_rng;
    use rand::Rng;

    fn edge_pair() -> GraphOfGroups {
        let doc: GraphDoc = serde_json::from_str(
            r#"{"vertices":[{"id":"a","order":1},{"id":"b","order":1}],
                "edges":[{"id":"e","from":"a","to":"b","reverse":"e~","order":1,"conductance":0.0},
                         {"id":"e~","from":"b","to":"a","reverse":"e","order":1,"conductance":0.0}]}"#,
        )
        .unwrap();
        GraphOfGroups::from_doc(&doc).unwrap()
    }

    /// Random reversible conductances: `c(ē) = c(e)`.
    fn reversible(g: &GraphOfGroups, seed: u64) -> GraphOfGroups {
        let mut rng = stream_rng(seed, 0);
        let mut c = vec![0.0; g.num_edges()];
        for e in 0..g.num_edges() {
            if e < g.reverse(e) {
                c[e] = rng.gen_range(-1.0..1.0);
                c[g.reverse(e)] = c[e];
            }
        }
        g.with_conductances(&c)
    }

    #[test]
    fn two_vertex_spectrum() {
        let g = edge_pair();
        assert_eq!(laplacian(&g, &[3.0, 1.0]), vec![2.0, -2.0]);
        let mut ev: Vec<f64> = laplacian_matrix(&g).symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(ev[0].abs() < 1e-14 && (ev[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn constants_are_harmonic() {
        for (_, g) in fixtures::all() {
            assert!(laplacian(&g, &vec![1.5; g.num_vertices()]).iter().all(|x| x.abs() < 1e-14));
        }
    }

    #[test]
    fn theta_factorises() {
        for seed in 0..5 {
            let g = reversible(&fixtures::theta(), seed);
            let n = g.num_vertices();
            for x in 0..n {
                let mut f = vec![0.0; n];
                f[x] = 1.0;
                let a = laplacian(&g, &f);
                let b = d_c_star(&g, &d_c(&g, &f));
                for y in 0..n {
                    assert!((a[y] - b[y]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn theta_self_adjoint_and_nonnegative() {
        let g = reversible(&fixtures::theta(), 11);
        let mut rng = stream_rng(12, 0);
        for _ in 0..20 {
            let f: Vec<f64> = (0..2).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let h: Vec<f64> = (0..2).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let ip = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
            assert!((ip(&laplacian(&g, &f), &h) - ip(&f, &laplacian(&g, &h))).abs() < 1e-12);
            assert!(ip(&laplacian(&g, &f), &f) >= -1e-12);
        }
    }
}
