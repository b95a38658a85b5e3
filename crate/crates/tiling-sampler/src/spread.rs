//! Largest unit-window mass of the origin height under the conditional law.
//!
//! Windows `(x, x + 1)` are scanned with `x` on a half-integer grid from one
//! below the smallest observed height to the largest.

use std::io::Write;

use rand::Rng;
use serde::Serialize;

use crate::conditional::{ConditionalRegion, ConditionalSpec};
use crate::error::{Result, SamplerError};

/// Normal quantile used for the binomial half-widths.
pub const Z95: f64 = 1.96;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WindowRow {
    pub x_window: f64,
    pub prob: f64,
    pub ci_halfwidth: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpreadOut {
    /// Maximum window probability.
    pub statistic: f64,
    pub ci_halfwidth: f64,
    pub samples: usize,
    pub windows: Vec<WindowRow>,
}

impl SpreadOut {
    /// Builds the scan from observed origin heights.
    pub fn from_heights(values: &[i64]) -> Result<SpreadOut> {
        if values.is_empty() {
            return Err(SamplerError::ZeroSamples);
        }
        let n = values.len();
        let lo = *values.iter().min().expect("non-empty");
        let hi = *values.iter().max().expect("non-empty");
        let half_width = |p: f64| Z95 * (p * (1.0 - p) / n as f64).sqrt();
        let mut windows = Vec::new();
        // x = k / 2 for k in [2 (lo - 1), 2 hi]
        for k in 2 * (lo - 1)..=2 * hi {
            let count = values.iter().filter(|&&h| 2 * h > k && 2 * h < k + 2).count();
            let prob = count as f64 / n as f64;
            windows.push(WindowRow { x_window: k as f64 / 2.0, prob, ci_halfwidth: half_width(prob) });
        }
        let best = windows
            .iter()
            .fold(None::<&WindowRow>, |b, w| match b {
                Some(b) if b.prob >= w.prob => Some(b),
                _ => Some(w),
            })
            .expect("at least one window");
        Ok(SpreadOut { statistic: best.prob, ci_halfwidth: best.ci_halfwidth, samples: n, windows: windows.clone() })
    }

    /// Writes the window scan as CSV with columns `x_window,prob,ci_halfwidth`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.windows {
            w.serialize(row).map_err(|e| SamplerError::Csv(e.to_string()))?;
        }
        w.flush().map_err(|e| SamplerError::Csv(e.to_string()))?;
        Ok(())
    }
}

impl ConditionalRegion {
    pub fn spread_out<R: Rng + ?Sized>(&self, samples: usize, rng: &mut R) -> Result<SpreadOut> {
        if samples == 0 {
            return Err(SamplerError::ZeroSamples);
        }
        SpreadOut::from_heights(&self.sample_origin_heights(samples, rng)?)
    }
}

pub fn spread_out_statistic<R: Rng + ?Sized>(spec: &ConditionalSpec, samples: usize, rng: &mut R) -> Result<SpreadOut> {
    if samples == 0 {
        return Err(SamplerError::ZeroSamples);
    }
    ConditionalRegion::new(spec)?.spread_out(samples, rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_mass_gives_one() {
        let s = SpreadOut::from_heights(&[4, 4, 4]).unwrap();
        assert_eq!(s.statistic, 1.0);
        assert_eq!(s.ci_halfwidth, 0.0);
    }

    #[test]
    fn two_values_split_mass() {
        let s = SpreadOut::from_heights(&[0, 3, 0, 3]).unwrap();
        assert_eq!(s.statistic, 0.5);
        assert_eq!(s.windows.first().unwrap().x_window, -1.0);
        assert_eq!(s.windows.last().unwrap().x_window, 3.0);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let s = SpreadOut::from_heights(&[1]).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("x_window,prob,ci_halfwidth"));
        assert_eq!(lines.count(), s.windows.len());
    }

    #[test]
    fn zero_samples_rejected() {
        assert!(matches!(SpreadOut::from_heights(&[]), Err(SamplerError::ZeroSamples)));
    }
}
