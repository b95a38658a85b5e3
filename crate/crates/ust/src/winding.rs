//! Topological and intrinsic winding of polylines.

use std::collections::HashMap;
use std::f64::consts::PI;

use crate::error::{Result, UstError};
use crate::graph::{cross, dist_sq, segments_meet};

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

/// Signed angle from `a` to `b`, in `(-pi, pi]`.
pub fn turn_angle(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] * b[1] - a[1] * b[0]).atan2(a[0] * b[0] + a[1] * b[1])
}

fn touches(z: [f64; 2], a: [f64; 2], b: [f64; 2]) -> bool {
    let scale = 1.0 + dist_sq(a, b);
    cross(a, b, z).abs() <= 1e-12 * scale
        && (z[0] - a[0]) * (z[0] - b[0]) + (z[1] - a[1]) * (z[1] - b[1]) <= 1e-12 * scale
}

/// Continuous change of `arg(p - z)` along the polyline.
///
/// `z` may equal the first or last vertex, in which case the segment ending
/// (or starting) there contributes nothing, matching the limit taken along
/// the curve. Any other contact with the curve is an error.
pub fn winding_topological(p: &[[f64; 2]], z: [f64; 2]) -> Result<f64> {
    if p.len() < 2 {
        return Err(UstError::TooFewSegments(1));
    }
    let last = p.len() - 2;
    let mut total = 0.0;
    for (i, s) in p.windows(2).enumerate() {
        let (a, b) = (s[0], s[1]);
        if touches(z, a, b) {
            let at_end = (i == last && b == z && a != z) || (i == 0 && a == z && b != z);
            if at_end {
                continue;
            }
            return Err(UstError::OnCurve);
        }
        total += turn_angle(sub(a, z), sub(b, z));
    }
    Ok(total)
}

/// Total turning: the sum of signed exterior angles at interior vertices.
pub fn winding_intrinsic(p: &[[f64; 2]]) -> Result<f64> {
    if p.len() < 3 {
        return Err(UstError::TooFewSegments(2));
    }
    if let Some(i) = p.windows(2).position(|s| s[0] == s[1]) {
        return Err(UstError::DegenerateSegment(i));
    }
    if !is_simple(p) {
        return Err(UstError::SelfIntersecting);
    }
    Ok(p.windows(3).map(|s| turn_angle(sub(s[1], s[0]), sub(s[2], s[1]))).sum())
}

/// Right-hand side of the intrinsic identity, from endpoint windings.
pub fn winding_from_endpoints(p: &[[f64; 2]]) -> Result<f64> {
    Ok(winding_topological(p, p[p.len() - 1])? + winding_topological(p, p[0])?)
}

/// No two segments meet except consecutive ones at their shared vertex.
pub fn is_simple(p: &[[f64; 2]]) -> bool {
    let n = p.len();
    if n < 2 {
        return true;
    }
    let longest = p.windows(2).map(|s| dist_sq(s[0], s[1]).sqrt()).fold(0.0, f64::max);
    if longest == 0.0 {
        return false;
    }
    let cell = |q: [f64; 2]| ((q[0] / longest).floor() as i64, (q[1] / longest).floor() as i64);
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for i in 0..n - 1 {
        let (c0, c1) = (cell(p[i]), cell(p[i + 1]));
        for x in c0.0.min(c1.0)..=c0.0.max(c1.0) {
            for y in c0.1.min(c1.1)..=c0.1.max(c1.1) {
                grid.entry((x, y)).or_default().push(i);
            }
        }
    }
    for bucket in grid.values() {
        for (k, &i) in bucket.iter().enumerate() {
            for &j in &bucket[k + 1..] {
                let (i, j) = (i.min(j), i.max(j));
                if j == i + 1 {
                    // consecutive: reject only a fold back along the segment
                    let (a, b, c) = (p[i], p[j], p[j + 1]);
                    if cross(a, b, c).abs() <= 1e-12 * (1.0 + dist_sq(a, c))
                        && (a[0] - b[0]) * (c[0] - b[0]) + (a[1] - b[1]) * (c[1] - b[1]) > 0.0
                    {
                        return false;
                    }
                } else if segments_meet(p[i], p[i + 1], p[j], p[j + 1]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Number of full turns, rounded, for closed polylines.
pub fn turns(w: f64) -> i64 {
    (w / (2.0 * PI)).round() as i64
}
