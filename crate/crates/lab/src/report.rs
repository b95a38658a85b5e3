//! Experiment reports and their JSON and CSV forms.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::Result;
use crate::stats::{MannKendall, Slope};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub name: String,
    pub value: f64,
    pub ci_half_width: f64,
    pub samples: usize,
}

impl Stat {
    pub fn new(name: &str, value: f64, ci_half_width: f64, samples: usize) -> Stat {
        Stat { name: name.to_string(), value, ci_half_width, samples }
    }
}

/// Statistics at one point of the schedule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub label: String,
    pub param: f64,
    pub stats: Vec<Stat>,
}

impl Row {
    pub fn get(&self, name: &str) -> Option<&Stat> {
        self.stats.iter().find(|s| s.name == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Decreasing,
    Increasing,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trend {
    pub name: String,
    pub direction: Direction,
    pub test: MannKendall,
    pub p_value: f64,
    /// Whether the schedule values are monotone in the claimed direction.
    pub monotone: bool,
}

impl Trend {
    pub fn new(name: &str, direction: Direction, test: MannKendall, values: &[f64], strict: bool) -> Trend {
        let ok = |a: f64, b: f64| match (direction, strict) {
            (Direction::Decreasing, true) => b < a,
            (Direction::Decreasing, false) => b <= a,
            (Direction::Increasing, true) => b > a,
            (Direction::Increasing, false) => b >= a,
        };
        let p_value = match direction {
            Direction::Decreasing => test.p_decreasing,
            Direction::Increasing => test.p_increasing,
        };
        Trend {
            name: name.to_string(),
            direction,
            test,
            p_value,
            monotone: values.windows(2).all(|w| ok(w[0], w[1])),
        }
    }

    pub fn significant(&self, level: f64) -> bool {
        self.monotone && self.p_value < level
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Invariant {
    pub name: String,
    pub held: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub kind: ExperimentKind,
    pub seed: u64,
    pub config: ExperimentConfig,
    pub rows: Vec<Row>,
    pub trends: Vec<Trend>,
    pub slopes: Vec<Slope>,
    pub invariants: Vec<Invariant>,
    /// Not serialized, so equal runs give equal bytes.
    #[serde(skip)]
    pub wall_clock_s: f64,
}

impl Report {
    /// The worker count is dropped from the stored config, since it never
    /// changes the results.
    pub fn new(config: &ExperimentConfig) -> Report {
        Report {
            kind: config.kind,
            seed: config.seed,
            config: ExperimentConfig { workers: None, ..config.clone() },
            rows: Vec::new(),
            trends: Vec::new(),
            slopes: Vec::new(),
            invariants: Vec::new(),
            wall_clock_s: 0.0,
        }
    }

    pub fn invariants_hold(&self) -> bool {
        self.invariants.iter().all(|i| i.held)
    }

    pub fn trend(&self, name: &str) -> Option<&Trend> {
        self.trends.iter().find(|t| t.name == name)
    }

    pub fn slope(&self, name: &str) -> Option<&Slope> {
        self.slopes.iter().find(|s| s.name == name)
    }

    /// Values of one statistic along the schedule.
    pub fn series(&self, name: &str) -> Vec<f64> {
        self.rows.iter().filter_map(|r| r.get(name).map(|s| s.value)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn from_json(s: &str) -> Result<Report> {
        Ok(serde_json::from_str(s)?)
    }

    /// One line per statistic: `label,param,stat,value,ci_half_width,samples`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["label", "param", "stat", "value", "ci_half_width", "samples"])?;
        for r in &self.rows {
            for s in &r.stats {
                w.write_record([
                    r.label.clone(),
                    r.param.to_string(),
                    s.name.clone(),
                    s.value.to_string(),
                    s.ci_half_width.to_string(),
                    s.samples.to_string(),
                ])?;
            }
        }
        let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Writes `report.json` and `report.csv` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.json"), self.to_json())?;
        std::fs::write(dir.join("report.csv"), self.to_csv()?)?;
        Ok(())
    }
}
