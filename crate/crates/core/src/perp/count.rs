//! Dynamic programme over directed edges for perpendicular counts.

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use super::{check_budget, PerpError, PerpQuery};
use crate::graph::GraphOfGroups;

/// Edge count above which a step is spread over threads.
const PAR_THRESHOLD: usize = 512;

/// Per-length counts; index `n` is the path length, index 0 is unused (zero).
#[derive(Debug, Clone, PartialEq)]
pub struct CountSeries {
    pub counts: Vec<BigUint>,
    /// `Σ e^{c(α)}` over the same paths.
    pub weighted: Vec<f64>,
    pub cumulative: Vec<BigUint>,
    pub cumulative_weighted: Vec<f64>,
    /// For bipartite graphs, `parity[i][j][n]` counts paths of length `n`
    /// starting in colour class `i` and ending in class `j`.
    pub parity: Option<[[Vec<BigUint>; 2]; 2]>,
}

impl CountSeries {
    pub fn nmax(&self) -> usize {
        self.counts.len() - 1
    }

    /// Cumulative count over lengths `≤ n` whose endpoints lie in classes
    /// `(i, j)`.
    pub fn cumulative_class(&self, i: usize, j: usize, n: usize) -> Option<BigUint> {
        self.parity.as_ref().map(|p| p[i][j][..=n].iter().sum())
    }
}

/// Predecessor lists of the non-backtracking transition `e → f`.
pub(crate) fn predecessors(g: &GraphOfGroups) -> Vec<Vec<usize>> {
    let mut pred = vec![Vec::new(); g.num_edges()];
    for e in 0..g.num_edges() {
        for &f in g.out_edges(g.terminus(e)) {
            if f != g.reverse(e) {
                pred[f].push(e);
            }
        }
    }
    pred
}

fn step<T: Send + Sync + Clone>(pred: &[Vec<usize>], x: &[T], f: impl Fn(usize, &[usize], &[T]) -> T + Sync) -> Vec<T> {
    if pred.len() >= PAR_THRESHOLD {
        pred.par_iter().enumerate().map(|(i, p)| f(i, p, x)).collect()
    } else {
        pred.iter().enumerate().map(|(i, p)| f(i, p, x)).collect()
    }
}

/// Counts non-backtracking edge paths leaving `V(Y⁻)` by an edge outside
/// `E(Y⁻)` and entering `V(Y⁺)` by an edge outside `E(Y⁺)`.
pub fn count_perpendiculars(q: &PerpQuery) -> Result<CountSeries, PerpError> {
    q.validate()?;
    let g = q.graph;
    let ne = g.num_edges();
    check_budget(ne as u128 * q.nmax as u128)?;
    let inside = |vs: &[usize], v: usize| vs.binary_search(&v).is_ok();
    let start: Vec<bool> = (0..ne)
        .map(|e| inside(&q.minus.vertices, g.origin(e)) && q.minus.edges.binary_search(&e).is_err())
        .collect();
    let harvest: Vec<usize> = (0..ne)
        .filter(|&e| inside(&q.plus.vertices, g.terminus(e)) && q.plus.edges.binary_search(&e).is_err())
        .collect();
    let c = g.conductances();
    let pred = predecessors(g);
    let colour = g.two_coloring();

    let mut x: Vec<BigUint> = start.iter().map(|&s| BigUint::from(s as u8)).collect();
    let mut y: Vec<f64> = (0..ne).map(|e| if start[e] { c[e].exp() } else { 0.0 }).collect();
    let mut counts = vec![BigUint::zero()];
    let mut weighted = vec![0.0];
    let mut parity: Option<[[Vec<BigUint>; 2]; 2]> =
        colour.as_ref().map(|_| std::array::from_fn(|_| std::array::from_fn(|_| vec![BigUint::zero()])));
    for n in 1..=q.nmax {
        if n > 1 {
            x = step(&pred, &x, |_, p, x| p.iter().map(|&e| &x[e]).sum());
            y = step(&pred, &y, |f, p, y| p.iter().map(|&e| y[e]).sum::<f64>() * c[f].exp());
        }
        counts.push(harvest.iter().map(|&e| &x[e]).sum());
        weighted.push(harvest.iter().map(|&e| y[e]).sum());
        if let (Some(par), Some(col)) = (parity.as_mut(), colour.as_ref()) {
            // a path of length n ending at t(e) started in colour t(e) + n
            let mut cell: [[BigUint; 2]; 2] = Default::default();
            for &e in &harvest {
                let j = col[g.terminus(e)] as usize;
                let i = (j + n) % 2;
                cell[i][j] += &x[e];
            }
            for (i, row) in cell.into_iter().enumerate() {
                for (j, v) in row.into_iter().enumerate() {
                    par[i][j].push(v);
                }
            }
        }
    }
    let mut cumulative = Vec::with_capacity(counts.len());
    let mut acc = BigUint::zero();
    for v in &counts {
        acc += v;
        cumulative.push(acc.clone());
    }
    let cumulative_weighted = weighted
        .iter()
        .scan(0.0, |s, &w| {
            *s += w;
            Some(*s)
        })
        .collect();
    Ok(CountSeries { counts, weighted, cumulative, cumulative_weighted, parity })
}
