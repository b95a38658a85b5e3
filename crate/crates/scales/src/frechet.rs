//! Discrete Frechet distance and the `follows` predicate.

use crate::error::{Result, ScalesError};
use crate::gamma::GammaCurve;

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Discrete Frechet distance between two vertex sequences.
pub fn discrete_frechet(p: &[[f64; 2]], q: &[[f64; 2]]) -> Result<f64> {
    if p.is_empty() || q.is_empty() {
        return Err(ScalesError::EmptyCurve);
    }
    let m = q.len();
    let mut row = vec![0.0f64; m];
    for (i, &a) in p.iter().enumerate() {
        let mut diag = 0.0f64;
        for (k, &b) in q.iter().enumerate() {
            let d = dist(a, b);
            let best = match (i, k) {
                (0, 0) => 0.0,
                (0, _) => row[k - 1],
                (_, 0) => row[0],
                _ => diag.min(row[k]).min(row[k - 1]),
            };
            diag = row[k];
            row[k] = d.max(best);
        }
    }
    Ok(row[m - 1])
}

/// Inserts points so consecutive vertices are at most `step` apart.
pub fn densify(p: &[[f64; 2]], step: f64) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(p.len());
    if let Some(&first) = p.first() {
        out.push(first);
    }
    for s in p.windows(2) {
        let n = (dist(s[0], s[1]) / step).ceil().max(1.0) as usize;
        for k in 1..=n {
            let f = k as f64 / n as f64;
            out.push([s[0][0] + f * (s[1][0] - s[0][0]), s[0][1] + f * (s[1][1] - s[0][1])]);
        }
    }
    out
}

/// Frechet distance between polylines, resolved to within `step`.
pub fn frechet_distance(p: &[[f64; 2]], q: &[[f64; 2]], step: f64) -> Result<f64> {
    discrete_frechet(&densify(p, step), &densify(q, step))
}

/// Tolerance `e^j / 12`.
pub fn follow_tolerance(j: i32) -> f64 {
    (j as f64).exp() / 12.0
}

/// The piece stays within `e^j / 12` of the curve up to reparametrization.
pub fn follows(piece: &[[f64; 2]], curve: &[[f64; 2]], j: i32) -> Result<bool> {
    let step = (j as f64).exp() / 240.0;
    Ok(frechet_distance(piece, curve, step)? <= follow_tolerance(j))
}

pub fn follows_gamma(piece: &[[f64; 2]], curve: &GammaCurve) -> Result<bool> {
    let step = (curve.j as f64).exp() / 240.0;
    follows(piece, &curve.polyline(step), curve.j)
}
