//! Valuative geometry of the Bruhat-Tits tree of `PGL₂(𝔽_q((Y⁻¹)))` and
//! the arithmetic of `𝔽_q[Y]` acting on it: distances, horoball heights,
//! translation lengths, Patterson and skinning masses, crossratios, norm
//! forms, covolumes, Hecke indices and Farey counts.
//!
//! Valuations follow `v(Y) = −1`, `|x| = q^{−v(x)}`, and the standard base
//! point `*` is the class of the lattice `𝒪_v × 𝒪_v`.

use thiserror::Error;

use crate::ff::FfError;

mod arith;
mod matrix;
mod measure;
mod orbit;
mod tree;

pub use arith::{
    covolume_suite, farey_count, farey_count_naive, hecke_index, hecke_index_enumerated, CovolumeReport, FareyReport,
};
pub use matrix::{BTMatrix, BoundaryPoint};
pub use measure::{
    crossratio_abs, horoball_ball_mass, line_density, norm_form, patterson_total_mass, point_ball_mass, relative_height,
    shell_total_mass, transform_check, Ball, TransformCheck,
};
pub use orbit::{quad_orbit_experiment, OrbitMode, OrbitReport};
pub use tree::{
    displacement_translation_length, horoball_height, lattice_index_distance, translation_length, vertex_distance,
    vertex_distance_between,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BtError {
    #[error("singular: matrix has zero determinant")]
    Singular,
    #[error("fixes-infinity: lower-left entry is zero")]
    FixesInfinity,
    #[error("det-not-unit: determinant has valuation {0}")]
    DetNotUnit(i64),
    #[error("singular-point: {0}")]
    SingularPoint(String),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("budget: {needed} items needed, budget {budget}")]
    Budget { needed: u128, budget: u64 },
    #[error("invariant-violated: {0}")]
    Invariant(String),
    #[error("invalid-argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Ff(#[from] FfError),
}

pub(crate) fn check_budget(needed: u128) -> Result<(), BtError> {
    let budget = crate::budget::enumeration_budget();
    if needed > budget as u128 {
        return Err(BtError::Budget { needed, budget });
    }
    Ok(())
}
