//! Desk-scale laboratory for non-backtracking geodesic counting on finite
//! graphs, Markov-shift thermodynamics, random walks on trees and graphs of
//! groups, and the arithmetic of `𝔽_q(Y)` acting on its Bruhat-Tits tree.

pub mod budget;
pub mod ff;
pub mod graph;
pub mod perp;
pub mod seed;
pub mod walks;
pub mod shift;
pub mod bt;
