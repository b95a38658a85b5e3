//! Experiment configuration.

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Robustness,
    SpreadOut,
    Nonconcentration,
    Decoupling,
    CrossingEstimate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerturbationSpec {
    pub name: String,
    /// Bound on the boundary height discrepancy, checked at load time.
    pub k_bound: i64,
    /// Number of boundary lozenges removed by `zigzag`.
    #[serde(default = "one")]
    pub amplitude: usize,
    /// Lattice shift used by `translate`.
    #[serde(default = "unit_shift")]
    pub shift: [i32; 2],
}

fn one() -> usize {
    1
}

fn unit_shift() -> [i32; 2] {
    [1, 0]
}

impl Default for PerturbationSpec {
    fn default() -> Self {
        PerturbationSpec { name: "single-cube".into(), k_bound: 1, amplitude: 1, shift: [1, 0] }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    /// Hexagon side lengths, or rectangle scales `n` for crossing estimates.
    #[serde(default)]
    pub sizes: Vec<i64>,
    #[serde(default)]
    pub perturbation: PerturbationSpec,
    pub samples: usize,
    /// Inner samples per outer sample in nested experiments.
    #[serde(default)]
    pub inner_samples: usize,
    /// Radius of the local window around the origin.
    #[serde(default = "two")]
    pub window_radius: f64,
    /// Conditioning radii, or subtree radii for decoupling.
    #[serde(default)]
    pub radii: Vec<f64>,
    /// Grid meshes `2^-k`, given by `k`.
    #[serde(default)]
    pub mesh_exponents: Vec<u32>,
    /// Offset added to `ceil(ln delta)` to get the smallest scale.
    #[serde(default = "c0")]
    pub scale_offset: i32,
    /// Tail level for quantiles.
    #[serde(default = "eps")]
    pub epsilon: f64,
    pub seed: u64,
    /// Worker threads; the `TILELAB_WORKERS` variable overrides it.
    #[serde(default)]
    pub workers: Option<usize>,
}

fn two() -> f64 {
    2.0
}

fn c0() -> i32 {
    2
}

fn eps() -> f64 {
    0.1
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind, samples: usize, seed: u64) -> Self {
        ExperimentConfig {
            kind,
            sizes: Vec::new(),
            perturbation: PerturbationSpec::default(),
            samples,
            inner_samples: 0,
            window_radius: 2.0,
            radii: Vec::new(),
            mesh_exponents: Vec::new(),
            scale_offset: 2,
            epsilon: 0.1,
            seed,
            workers: None,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(s)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(LabError::Config(m.to_string()));
        if self.samples == 0 {
            return bad("samples must be positive");
        }
        match self.kind {
            ExperimentKind::Robustness if self.sizes.is_empty() => bad("robustness needs sizes"),
            ExperimentKind::SpreadOut if self.sizes.len() != 1 || self.radii.is_empty() => {
                bad("spread-out needs one size and a radius schedule")
            }
            ExperimentKind::SpreadOut if self.inner_samples == 0 => bad("spread-out needs inner samples"),
            ExperimentKind::SpreadOut if self.radii.windows(2).any(|w| w[1] <= w[0]) => {
                bad("radius schedule must increase")
            }
            ExperimentKind::Nonconcentration if self.mesh_exponents.is_empty() => bad("winding needs meshes"),
            ExperimentKind::Decoupling if self.mesh_exponents.len() != 1 || self.radii.is_empty() => {
                bad("decoupling needs one mesh and a radius schedule")
            }
            ExperimentKind::CrossingEstimate if self.sizes.is_empty() => bad("crossing estimate needs scales"),
            _ => Ok(()),
        }
    }

    pub fn worker_count(&self) -> usize {
        worker_count(self.workers)
    }
}

/// Worker count from the `TILELAB_WORKERS` variable, the request, or the machine.
pub fn worker_count(requested: Option<usize>) -> usize {
    std::env::var("TILELAB_WORKERS")
        .ok()
        .and_then(|s| s.parse().ok())
        .or(requested)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1)
}
