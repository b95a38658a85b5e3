//! Reference curves from `e^j` to `e^{j+1+i theta}` with two homotopy classes.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ScalesError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GammaKind {
    /// Radial, counterclockwise arc, radial.
    Direct,
    /// Makes an extra clockwise half turn through the negative axis.
    Detour,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaCurve {
    pub kind: GammaKind,
    pub j: i32,
    pub theta: f64,
}

/// `exp(re + i im)` as a plane point.
fn cexp(re: f64, im: f64) -> [f64; 2] {
    let r = re.exp();
    [r * im.cos(), r * im.sin()]
}

impl GammaCurve {
    pub fn t_end(&self) -> f64 {
        match self.kind {
            GammaKind::Direct => 3.0,
            GammaKind::Detour => 5.0,
        }
    }

    pub fn eval(&self, t: f64) -> [f64; 2] {
        let (j, th) = (self.j as f64, self.theta);
        match self.kind {
            GammaKind::Direct => {
                if t <= 1.0 {
                    cexp(j + t / 2.0, 0.0)
                } else if t <= 2.0 {
                    cexp(j + 0.5, th * (t - 1.0))
                } else {
                    cexp(j + (t - 1.0) / 2.0, th)
                }
            }
            GammaKind::Detour => {
                if t <= 1.0 {
                    cexp(j + t / 3.0, 0.0)
                } else if t <= 2.0 {
                    cexp(j + 1.0 / 3.0, -PI * (t - 1.0))
                } else if t <= 3.0 {
                    cexp(j + (t - 1.0) / 3.0, -PI)
                } else if t <= 4.0 {
                    cexp(j + 2.0 / 3.0, -PI - (PI - th) * (t - 3.0))
                } else {
                    cexp(j + (t - 2.0) / 3.0, th)
                }
            }
        }
    }

    /// Samples with consecutive points at most `step` apart.
    pub fn polyline(&self, step: f64) -> Vec<[f64; 2]> {
        // speed is bounded by the outer radius times the largest angular rate
        let speed = (self.j as f64 + 1.0).exp() * PI;
        let per_unit = (speed / step).ceil().max(1.0) as usize;
        let n = per_unit * self.t_end() as usize;
        (0..=n).map(|s| self.eval(self.t_end() * s as f64 / n as f64)).collect()
    }

    pub fn start(&self) -> [f64; 2] {
        self.eval(0.0)
    }

    pub fn end(&self) -> [f64; 2] {
        self.eval(self.t_end())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaPair {
    pub direct: GammaCurve,
    pub detour: GammaCurve,
    /// Winding of the detour around the origin minus that of the direct curve.
    pub winding_difference: f64,
}

pub fn gamma_curves(j: i32, theta: f64) -> Result<GammaPair> {
    if !(0.0..=PI).contains(&theta) {
        return Err(ScalesError::BadAngle(theta));
    }
    let direct = GammaCurve { kind: GammaKind::Direct, j, theta };
    let detour = GammaCurve { kind: GammaKind::Detour, j, theta };
    let step = (j as f64).exp() / 200.0;
    let w1 = ust::winding_topological(&direct.polyline(step), [0.0, 0.0])?;
    let w2 = ust::winding_topological(&detour.polyline(step), [0.0, 0.0])?;
    Ok(GammaPair { direct, detour, winding_difference: w2 - w1 })
}
