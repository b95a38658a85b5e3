//! Crossing times of a walk through the circles `C_i` of radius `e^i`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, ScalesError};

/// One entry of the crossing sequence.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub k: usize,
    /// Step index into the walk.
    pub time: usize,
    pub scale: i32,
    /// Distance from the origin at that step.
    pub radius: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossingTrace {
    pub i_min: i32,
    pub i_max: i32,
    pub origin: [f64; 2],
    pub crossings: Vec<Crossing>,
}

pub fn circle_radius(i: i32) -> f64 {
    (i as f64).exp()
}

/// Scale range for a mesh-`delta` grid whose domain contains the open disc
/// of radius `inradius`: `i_min = ceil(ln delta) + c0` and `i_max - 1` is
/// the largest `i` with `e^i < inradius`.
pub fn scale_range(delta: f64, inradius: f64, c0: i32) -> (i32, i32) {
    let i_min = delta.ln().ceil() as i32 + c0;
    let i_max = inradius.ln().ceil() as i32;
    (i_min, i_max)
}

fn dist(p: [f64; 2], o: [f64; 2]) -> f64 {
    (p[0] - o[0]).hypot(p[1] - o[1])
}

/// Splits a walk at its successive circle crossings.
///
/// A step crosses `C_j` outward when its endpoint has `|x| >= e^j` and
/// inward when `|x| < e^j`. From scale `i` the next crossing is of
/// `C_{i-1}` or `C_{i+1}`, except that the bottom scale only looks up and
/// the outermost circle is replaced by the end of the walk.
pub fn crossing_decomposition(points: &[[f64; 2]], i_min: i32, i_max: i32, origin: [f64; 2]) -> Result<CrossingTrace> {
    if i_min >= i_max {
        return Err(ScalesError::BadRange(i_min, i_max));
    }
    if points.is_empty() {
        return Err(ScalesError::EmptyCurve);
    }
    let rho: Vec<f64> = points.iter().map(|&p| dist(p, origin)).collect();
    if rho[0] >= circle_radius(i_min) {
        return Err(ScalesError::StartOutside(rho[0]));
    }
    let mut crossings = vec![Crossing { k: 0, time: 0, scale: i_min - 1, radius: rho[0] }];
    let mut i = i_min - 1;
    let mut t = 0;
    loop {
        let up = if i + 1 < i_max { Some(circle_radius(i + 1)) } else { None };
        let down = if i > i_min { Some(circle_radius(i - 1)) } else { None };
        let hit = (t..rho.len()).find_map(|s| {
            if up.is_some_and(|r| rho[s] >= r) {
                Some((s, i + 1))
            } else if down.is_some_and(|r| rho[s] < r) {
                Some((s, i - 1))
            } else {
                None
            }
        });
        match hit {
            Some((s, j)) => {
                t = s;
                i = j;
            }
            None if up.is_none() => {
                t = rho.len() - 1;
                i = i_max;
            }
            None => return Err(ScalesError::NoExit),
        }
        crossings.push(Crossing { k: crossings.len(), time: t, scale: i, radius: rho[t] });
        if i == i_max {
            break;
        }
    }
    Ok(CrossingTrace { i_min, i_max, origin, crossings })
}

/// Convenience wrapper over graph positions.
pub fn crossing_decomposition_on(
    g: &ust::PlanarGraph,
    x: &ust::WalkPath,
    i_min: i32,
    i_max: i32,
    origin: [f64; 2],
) -> Result<CrossingTrace> {
    crossing_decomposition(&x.polyline(g), i_min, i_max, origin)
}

impl CrossingTrace {
    pub fn k_max(&self) -> usize {
        self.crossings.len() - 1
    }

    pub fn times(&self) -> Vec<usize> {
        self.crossings.iter().map(|c| c.time).collect()
    }

    pub fn scales(&self) -> Vec<i32> {
        self.crossings.iter().map(|c| c.scale).collect()
    }

    /// All `k` with `i(k) = j`.
    pub fn visits(&self, j: i32) -> Vec<usize> {
        self.crossings.iter().filter(|c| c.scale == j).map(|c| c.k).collect()
    }

    /// Last `k` with `i(k) = i`.
    pub fn last_visit(&self, i: i32) -> Option<usize> {
        self.crossings.iter().rev().find(|c| c.scale == i).map(|c| c.k)
    }

    /// Walk indices `tau_a..=tau_b`.
    pub fn piece(&self, a: usize, b: usize) -> Result<std::ops::RangeInclusive<usize>> {
        let get = |k: usize| self.crossings.get(k).map(|c| c.time).ok_or(ScalesError::MissingPiece(k));
        Ok(get(a)?..=get(b)?)
    }

    /// Largest gap between a recorded radius and its circle, ignoring the
    /// start and the terminal exit.
    pub fn max_radius_error(&self) -> f64 {
        let k_max = self.k_max();
        self.crossings[1..k_max]
            .iter()
            .map(|c| (c.radius - circle_radius(c.scale)).abs())
            .fold(0.0, f64::max)
    }

    /// Index steps are +-1 and never go below the bottom scale. Times are
    /// nondecreasing, since one long step may cross several circles.
    pub fn steps_are_valid(&self) -> bool {
        self.crossings.windows(2).all(|w| {
            let d = w[1].scale - w[0].scale;
            let in_range = (self.i_min - 1..=self.i_max).contains(&w[1].scale);
            in_range && (d == 1 || (d == -1 && w[1].scale >= self.i_min)) && w[1].time >= w[0].time
        })
    }

    /// CSV with columns `k, tau, scale, radius`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["k", "tau", "scale", "radius"]).map_err(|e| ScalesError::Io(e.to_string()))?;
        for c in &self.crossings {
            w.write_record([c.k.to_string(), c.time.to_string(), c.scale.to_string(), c.radius.to_string()])
                .map_err(|e| ScalesError::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| ScalesError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| ScalesError::Io(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn radial(rs: &[f64]) -> Vec<[f64; 2]> {
        rs.iter().map(|&r| [r, 0.0]).collect()
    }

    #[test]
    fn monotone_path_crosses_each_circle_once() {
        let pts: Vec<[f64; 2]> = (0..=400).map(|s| [s as f64 * 0.01, 0.0]).collect();
        let tr = crossing_decomposition(&pts, -2, 1, [0.0, 0.0]).unwrap();
        assert_eq!(tr.scales(), vec![-3, -2, -1, 0, 1]);
        for c in &tr.crossings[1..tr.k_max()] {
            assert_eq!(c.scale, -2 + c.k as i32 - 1);
        }
        assert!(tr.max_radius_error() <= 0.01);
        assert!(tr.steps_are_valid());
        assert_eq!(tr.crossings[tr.k_max()].time, 400);
    }

    #[test]
    fn out_and_back_visits_twice() {
        // out through C_0, back inside C_{-1}, out again
        let pts = radial(&[0.0, 0.2, 0.5, 1.1, 0.5, 0.3, 0.5, 1.2, 3.0, 4.0]);
        let tr = crossing_decomposition(&pts, -2, 2, [0.0, 0.0]).unwrap();
        assert_eq!(tr.scales(), vec![-3, -2, -1, 0, -1, 0, 1, 2]);
        assert_eq!(tr.visits(0), vec![3, 5]);
        assert!(tr.last_visit(-1).unwrap() > tr.visits(0)[0]);
        assert!(tr.steps_are_valid());
    }

    #[test]
    fn bottom_scale_only_looks_up() {
        let pts = radial(&[0.0, 0.5, 0.01, 0.5, 1.5, 3.0]);
        let tr = crossing_decomposition(&pts, -1, 1, [0.0, 0.0]).unwrap();
        assert_eq!(tr.scales(), vec![-2, -1, 0, 1]);
        assert_eq!(tr.times(), vec![0, 1, 4, 5]);
    }

    #[test]
    fn errors() {
        let pts = radial(&[0.0, 0.5]);
        assert_eq!(crossing_decomposition(&pts, 0, 0, [0.0, 0.0]).unwrap_err(), ScalesError::BadRange(0, 0));
        assert_eq!(crossing_decomposition(&pts, -1, 2, [0.0, 0.0]).unwrap_err(), ScalesError::NoExit);
        assert!(matches!(
            crossing_decomposition(&radial(&[5.0]), -1, 2, [0.0, 0.0]),
            Err(ScalesError::StartOutside(_))
        ));
    }

    #[test]
    fn range_from_mesh() {
        assert_eq!(scale_range(1.0 / 16.0, 1.0, 2), (0, 0));
        assert_eq!(scale_range(1.0 / 128.0, 1.0, 0), (-4, 0));
        assert_eq!(scale_range(0.01, 30.0, 2), (-2, 4));
    }

    #[test]
    fn csv_rows() {
        let pts = radial(&[0.0, 0.5, 1.5, 3.0]);
        let tr = crossing_decomposition(&pts, -1, 1, [0.0, 0.0]).unwrap();
        let s = tr.to_csv().unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "k,tau,scale,radius");
        assert_eq!(lines.len(), tr.crossings.len() + 1);
        assert_eq!(lines[2], "1,1,-1,0.5");
    }
}
