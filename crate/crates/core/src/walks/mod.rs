//! Random walks: the non-backtracking walk on graphs of groups, the simple
//! random walk on a regular tree, and the weighted Laplacian.

use thiserror::Error;

use crate::graph::GraphError;

mod laplacian;
mod nbrw;
mod tree;

pub use laplacian::{d_c, d_c_star, laplacian, laplacian_matrix};
pub use nbrw::{nbrw_exact, nbrw_kernel, nbrw_sample, NbrwKernel, NbrwReport, NbrwSample};
pub use tree::{green_ratio_check, tree_harmonic_measure, GreenReport, HarmonicReport, TreeWalkKernel, ESCAPE_MARGIN};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WalkError {
    #[error("not-transient: delta_c = log(q)/2 puts kappa_c at the Green radius")]
    NotTransient,
    #[error("invalid-argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
