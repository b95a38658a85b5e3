//! Double-dimer configurations: the superposition of two lozenge matchings
//! on overlapping domains, its loop and path structure, the associated
//! height function and the loop-flipping coupling.

pub mod coupling;
pub mod decomposition;
pub mod error;
pub mod height;

pub use coupling::{build_m_double_prime, m_double_prime, off_path_agreement, paths_hit_ball, paths_hit_ball_sq};
pub use decomposition::{
    resample_orientations, superimpose, Component, ComponentDoc, ComponentKind, DecompositionDoc, LoopDecomposition,
    Orientation,
};
pub use error::{DdError, Result};
pub use height::{boundary_discrepancy, common_reference_face, dd_height, DDHeight};
