//! Multi-scale analysis of walks: crossing times through exponentially
//! spaced circles, scale classification, reference curves and crossing
//! estimates.

pub mod classify;
pub mod crossing;
pub mod error;
pub mod frechet;
pub mod gamma;
pub mod trace;

pub use classify::{classify_scales, isolated_scales, min_distance, separates, ScaleClassification};
pub use crossing::{uniform_crossing_estimate, CellEstimate, CrossingEstimate, Orientation};
pub use error::{Result, ScalesError};
pub use frechet::{densify, discrete_frechet, follow_tolerance, follows, follows_gamma, frechet_distance};
pub use gamma::{gamma_curves, GammaCurve, GammaKind, GammaPair};
pub use trace::{circle_radius, crossing_decomposition, crossing_decomposition_on, scale_range, Crossing, CrossingTrace};
