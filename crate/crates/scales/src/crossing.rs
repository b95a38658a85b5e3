//! Monte Carlo lower bounds for the probability that a walk started near one
//! end of a 3:1 rectangle reaches the other end before leaving it.

use rand::Rng;
use serde::{Deserialize, Serialize};
use ust::PlanarGraph;

use crate::error::{Result, ScalesError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    LeftToRight,
    RightToLeft,
    BottomToTop,
    TopToBottom,
}

impl Orientation {
    pub const ALL: [Orientation; 4] =
        [Orientation::LeftToRight, Orientation::RightToLeft, Orientation::BottomToTop, Orientation::TopToBottom];

    /// Rectangle size and the start and target centres, in units of `n`,
    /// relative to the lower-left corner.
    fn layout(self) -> ([f64; 2], [f64; 2], [f64; 2]) {
        match self {
            Orientation::LeftToRight => ([3.0, 1.0], [0.5, 0.5], [2.5, 0.5]),
            Orientation::RightToLeft => ([3.0, 1.0], [2.5, 0.5], [0.5, 0.5]),
            Orientation::BottomToTop => ([1.0, 3.0], [0.5, 0.5], [0.5, 2.5]),
            Orientation::TopToBottom => ([1.0, 3.0], [0.5, 2.5], [0.5, 0.5]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellEstimate {
    pub offset: [f64; 2],
    pub orientation: Orientation,
    pub successes: usize,
    pub trials: usize,
}

impl CellEstimate {
    pub fn p_hat(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    /// Wilson score interval at 99%.
    pub fn interval(&self) -> (f64, f64) {
        let z = 2.575_829_303_548_901;
        let (n, p) = (self.trials as f64, self.p_hat());
        let denom = 1.0 + z * z / n;
        let centre = (p + z * z / (2.0 * n)) / denom;
        let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
        ((centre - half).max(0.0), (centre + half).min(1.0))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossingEstimate {
    pub n: f64,
    /// Smallest cell estimate.
    pub alpha_hat: f64,
    /// 99% interval of the minimizing cell.
    pub ci: (f64, f64),
    pub cells: Vec<CellEstimate>,
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Offsets `(a, b) * n / 2` for `a, b` in `{0, 1}`, applied to the rectangle
/// centred on the graph's bounding box.
pub fn default_offsets(n: f64) -> Vec<[f64; 2]> {
    vec![[0.0, 0.0], [n / 2.0, 0.0], [0.0, n / 2.0], [n / 2.0, n / 2.0]]
}

pub fn uniform_crossing_estimate<R: Rng + ?Sized>(
    g: &PlanarGraph,
    n: f64,
    trials: usize,
    rng: &mut R,
) -> Result<CrossingEstimate> {
    uniform_crossing_estimate_at(g, n, trials, &default_offsets(n), rng)
}

pub fn uniform_crossing_estimate_at<R: Rng + ?Sized>(
    g: &PlanarGraph,
    n: f64,
    trials: usize,
    offsets: &[[f64; 2]],
    rng: &mut R,
) -> Result<CrossingEstimate> {
    if trials == 0 {
        return Err(ScalesError::NoTrials);
    }
    let pos = g.positions();
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in pos {
        for d in 0..2 {
            lo[d] = lo[d].min(p[d]);
            hi[d] = hi[d].max(p[d]);
        }
    }
    let mid = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
    let radius = n / 4.0;
    let mut cells = Vec::with_capacity(offsets.len() * 4);
    for &z in offsets {
        for o in Orientation::ALL {
            let (size, s, t) = o.layout();
            let corner = [mid[0] - size[0] * n / 2.0 + z[0], mid[1] - size[1] * n / 2.0 + z[1]];
            let far = [corner[0] + size[0] * n, corner[1] + size[1] * n];
            let start_c = [corner[0] + s[0] * n, corner[1] + s[1] * n];
            let target_c = [corner[0] + t[0] * n, corner[1] + t[1] * n];
            let starts: Vec<usize> = (0..pos.len()).filter(|&v| dist(pos[v], start_c) < radius).collect();
            if starts.is_empty() {
                return Err(ScalesError::EmptyStartBall);
            }
            let inside = |p: [f64; 2]| p[0] >= corner[0] && p[0] <= far[0] && p[1] >= corner[1] && p[1] <= far[1];
            let mut successes = 0;
            for _ in 0..trials {
                let mut v = starts[rng.gen_range(0..starts.len())];
                loop {
                    let p = pos[v];
                    if dist(p, target_c) < radius {
                        successes += 1;
                        break;
                    }
                    if !inside(p) {
                        break;
                    }
                    v = g.step(v, rng);
                }
            }
            cells.push(CellEstimate { offset: z, orientation: o, successes, trials });
        }
    }
    let worst = cells
        .iter()
        .min_by(|a, b| a.p_hat().total_cmp(&b.p_hat()))
        .expect("at least one offset");
    Ok(CrossingEstimate { n, alpha_hat: worst.p_hat(), ci: worst.interval(), cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn start_ball_below_the_mesh_is_empty() {
        let g = PlanarGraph::square_grid(20, 20, 1.0, [0.5, 0.5]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let err = uniform_crossing_estimate_at(&g, 0.5, 10, &[[0.0, 0.0]], &mut rng).unwrap_err();
        assert_eq!(err, ScalesError::EmptyStartBall);
    }

    #[test]
    fn wilson_interval_brackets_the_estimate() {
        let c = CellEstimate { offset: [0.0, 0.0], orientation: Orientation::LeftToRight, successes: 30, trials: 100 };
        let (a, b) = c.interval();
        assert!(a < 0.3 && 0.3 < b);
        assert!(a > 0.18 && b < 0.44);
    }

    #[test]
    fn small_grid_gives_a_positive_bound() {
        let g = PlanarGraph::square_grid(80, 80, 1.0, [0.0, 0.0]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let est = uniform_crossing_estimate(&g, 16.0, 3000, &mut rng).unwrap();
        assert_eq!(est.cells.len(), 16);
        assert!(est.alpha_hat > 0.0 && est.ci.0 > 0.0);
        assert!(est.cells.iter().all(|c| c.p_hat() >= est.alpha_hat));
    }
}
