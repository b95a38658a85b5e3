//! Experiments on lozenge tilings, double dimers and spanning trees.

pub mod config;
pub mod error;
pub mod experiments;
pub mod perturb;
pub mod pool;
pub mod render;
pub mod report;
pub mod samples;
pub mod stats;
pub mod tv;

pub use config::{worker_count, ExperimentConfig, ExperimentKind, PerturbationSpec};
pub use error::{LabError, Result};
pub use experiments::{
    run, run_crossing_estimate, run_decoupling, run_nonconcentration, run_robustness, run_spread_out, run_with,
};
pub use perturb::{centred_hexagon, NoPerturbation, Perturbation, PerturbationRegistry, SingleCube, Translate, Zigzag};
pub use render::{lozenge_corners, render_svg, write_svg, Picture};
pub use report::{Direction, Invariant, Report, Row, Stat, Trend};
pub use samples::{parse_domain, sample_set, SampleSet};
pub use stats::{chi_square, mann_kendall, ols, MannKendall, Slope};
pub use tv::{tv_windows, tv_windows_paired, TvEstimate};
