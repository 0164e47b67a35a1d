//! Subshifts of finite type on a finite alphabet with a one-letter potential:
//! pressure, equilibrium (Markov) measures, Gibbs audits and correlations.
//!
//! The transfer matrix is `B[a, b] = A[a, b]·e^{φ(b)}`, so for the
//! non-backtracking shift of a graph it is exactly `B_c`.

use thiserror::Error;

use crate::graph::{nb_transfer, GraphError, GraphOfGroups};

mod brute;
mod decay;
mod gibbs;
mod perron;

pub use brute::{brute_force_equilibrium, tv_two_cylinders, BruteForceReport};
pub use decay::{correlation_decay, DecayReport};
pub use gibbs::{cylinder_measure, weak_gibbs_audit, GibbsAudit};
pub use perron::{equilibrium_measure, perron, pressure, MarkovMeasure, PerronData};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShiftError {
    #[error("reducible: transition graph is not strongly connected (letter {0} unreachable)")]
    Reducible(usize),
    #[error("no-convergence: power iteration stalled after {0} iterations")]
    NoConvergence(usize),
    #[error("inadmissible-word: transition {0} -> {1} is forbidden")]
    InadmissibleWord(usize, usize),
    #[error("budget: {0}")]
    Budget(String),
    #[error("orders-ignored: the shift needs trivial vertex and edge groups")]
    NontrivialGroups,
    #[error("dimension: {0}")]
    Dimension(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An irreducible subshift of finite type with potential `φ(x) = phi[x₀]`.
#[derive(Debug, Clone)]
pub struct EdgeShift {
    adj: Vec<Vec<usize>>,
    phi: Vec<f64>,
}

impl EdgeShift {
    /// Shift from a 0/1 transition matrix and per-letter potential.
    pub fn from_matrix(allowed: &[Vec<bool>], phi: &[f64]) -> Result<Self, ShiftError> {
        let n = allowed.len();
        if n == 0 || phi.len() != n || allowed.iter().any(|r| r.len() != n) {
            return Err(ShiftError::Dimension(format!("{n} letters, {} potential values", phi.len())));
        }
        if phi.iter().any(|x| !x.is_finite()) {
            return Err(ShiftError::Dimension("potential must be finite".into()));
        }
        let adj = allowed.iter().map(|r| (0..n).filter(|&j| r[j]).collect()).collect();
        let s = EdgeShift { adj, phi: phi.to_vec() };
        s.check_irreducible()?;
        Ok(s)
    }

    /// The non-backtracking shift on directed edges with `φ = c`.
    pub fn from_graph(g: &GraphOfGroups) -> Result<Self, ShiftError> {
        if !g.trivial_groups() {
            return Err(ShiftError::NontrivialGroups);
        }
        let b = nb_transfer(g)?;
        let adj = b.rows.iter().map(|r| r.iter().map(|&(j, _)| j).collect()).collect();
        let s = EdgeShift { adj, phi: g.conductances().to_vec() };
        s.check_irreducible()?;
        Ok(s)
    }

    /// Full shift on `k` symbols.
    pub fn full(k: usize, phi: &[f64]) -> Result<Self, ShiftError> {
        Self::from_matrix(&vec![vec![true; k]; k], phi)
    }

    /// Golden-mean shift: letters 0, 1 with `1 → 1` forbidden.
    pub fn golden_mean(phi: &[f64]) -> Result<Self, ShiftError> {
        Self::from_matrix(&[vec![true, true], vec![true, false]], phi)
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    /// Successors of letter `a`, ascending.
    pub fn successors(&self, a: usize) -> &[usize] {
        &self.adj[a]
    }

    pub fn allowed(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Same transitions with a new potential.
    pub fn with_potential(&self, phi: &[f64]) -> Result<Self, ShiftError> {
        if phi.len() != self.len() {
            return Err(ShiftError::Dimension("potential length".into()));
        }
        Ok(EdgeShift { adj: self.adj.clone(), phi: phi.to_vec() })
    }

    /// Dense transfer matrix `B[a, b] = e^{φ(b)}` on allowed transitions.
    pub fn transfer_dense(&self) -> nalgebra::DMatrix<f64> {
        let n = self.len();
        let mut m = nalgebra::DMatrix::zeros(n, n);
        for a in 0..n {
            for &b in &self.adj[a] {
                m[(a, b)] = self.phi[b].exp();
            }
        }
        m
    }

    fn check_irreducible(&self) -> Result<(), ShiftError> {
        let n = self.len();
        let mut rev = vec![Vec::new(); n];
        for a in 0..n {
            for &b in &self.adj[a] {
                rev[b].push(a);
            }
        }
        for graph in [&self.adj, &rev] {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(a) = stack.pop() {
                for &b in &graph[a] {
                    if !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
            if let Some(v) = seen.iter().position(|&s| !s) {
                return Err(ShiftError::Reducible(v));
            }
        }
        Ok(())
    }
}
