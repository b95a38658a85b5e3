//! Total variation between two empirical laws on a finite alphabet.

use std::collections::HashMap;
use std::hash::Hash;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

pub const BOOTSTRAP_RESAMPLES: usize = 1000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TvEstimate {
    /// Plug-in distance between the empirical laws.
    pub tv_hat: f64,
    /// Bootstrap bias-corrected value, clamped to `[0, 1]`.
    pub corrected: f64,
    /// 95% percentile bootstrap interval of the plug-in value.
    pub ci: (f64, f64),
    pub samples: (usize, usize),
}

impl TvEstimate {
    pub fn half_width(&self) -> f64 {
        (self.ci.1 - self.ci.0) / 2.0
    }
}

fn encode<T: Hash + Eq + Clone>(a: &[T], b: &[T]) -> (Vec<usize>, Vec<usize>, usize) {
    let mut ids: HashMap<T, usize> = HashMap::new();
    let mut id = |t: &T| {
        let n = ids.len();
        *ids.entry(t.clone()).or_insert(n)
    };
    let ea: Vec<usize> = a.iter().map(&mut id).collect();
    let eb: Vec<usize> = b.iter().map(&mut id).collect();
    (ea, eb, ids.len())
}

fn plug_in(a: &[usize], b: &[usize], k: usize) -> f64 {
    let mut ca = vec![0.0; k];
    let mut cb = vec![0.0; k];
    for &x in a {
        ca[x] += 1.0;
    }
    for &x in b {
        cb[x] += 1.0;
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    0.5 * ca.iter().zip(&cb).map(|(x, y)| (x / na - y / nb).abs()).sum::<f64>()
}

fn summarize(tv_hat: f64, mut boot: Vec<f64>, samples: (usize, usize)) -> TvEstimate {
    boot.sort_by(f64::total_cmp);
    let q = |p: f64| boot[((p * (boot.len() - 1) as f64).round() as usize).min(boot.len() - 1)];
    let mean = boot.iter().sum::<f64>() / boot.len() as f64;
    TvEstimate { tv_hat, corrected: (2.0 * tv_hat - mean).clamp(0.0, 1.0), ci: (q(0.025), q(0.975)), samples }
}

/// Two independent samples, resampled independently.
pub fn tv_windows<T: Hash + Eq + Clone, R: Rng + ?Sized>(a: &[T], b: &[T], rng: &mut R) -> Result<TvEstimate> {
    if a.is_empty() || b.is_empty() {
        return Err(LabError::Empty);
    }
    let (ea, eb, k) = encode(a, b);
    let tv_hat = plug_in(&ea, &eb, k);
    let mut ra = vec![0; ea.len()];
    let mut rb = vec![0; eb.len()];
    let boot = (0..BOOTSTRAP_RESAMPLES)
        .map(|_| {
            for x in ra.iter_mut() {
                *x = ea[rng.gen_range(0..ea.len())];
            }
            for x in rb.iter_mut() {
                *x = eb[rng.gen_range(0..eb.len())];
            }
            plug_in(&ra, &rb, k)
        })
        .collect();
    Ok(summarize(tv_hat, boot, (a.len(), b.len())))
}

/// Samples observed in pairs; indices are resampled jointly.
pub fn tv_windows_paired<T: Hash + Eq + Clone, R: Rng + ?Sized>(
    a: &[T],
    b: &[T],
    rng: &mut R,
) -> Result<TvEstimate> {
    if a.is_empty() || a.len() != b.len() {
        return Err(LabError::Empty);
    }
    let (ea, eb, k) = encode(a, b);
    let tv_hat = plug_in(&ea, &eb, k);
    let n = ea.len();
    let mut ra = vec![0; n];
    let mut rb = vec![0; n];
    let boot = (0..BOOTSTRAP_RESAMPLES)
        .map(|_| {
            for s in 0..n {
                let i = rng.gen_range(0..n);
                ra[s] = ea[i];
                rb[s] = eb[i];
            }
            plug_in(&ra, &rb, k)
        })
        .collect();
    Ok(summarize(tv_hat, boot, (n, n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn identical_and_disjoint() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let a = vec![1, 2, 3, 1];
        let t = tv_windows(&a, &a, &mut rng).unwrap();
        assert_eq!(t.tv_hat, 0.0);
        assert_eq!(t.corrected, 0.0);
        let t = tv_windows(&[7], &[8], &mut rng).unwrap();
        assert_eq!(t.tv_hat, 1.0);
        assert_eq!(t.corrected, 1.0);
        assert_eq!(t.ci, (1.0, 1.0));
        assert!(matches!(tv_windows::<i32, _>(&[], &[1], &mut rng), Err(LabError::Empty)));
    }

    #[test]
    fn paired_resampling_keeps_agreement() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let a: Vec<u8> = (0..100).map(|i| (i % 4) as u8).collect();
        let t = tv_windows_paired(&a, &a, &mut rng).unwrap();
        assert_eq!(t.ci, (0.0, 0.0));
    }

    #[test]
    fn uniform_calibration() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let a: Vec<u32> = (0..10_000).map(|_| rng.gen_range(0..20)).collect();
        let b: Vec<u32> = (0..10_000).map(|_| rng.gen_range(0..20)).collect();
        let t = tv_windows(&a, &b, &mut rng).unwrap();
        assert!(t.tv_hat <= 0.05, "{}", t.tv_hat);
        assert!(t.corrected <= t.tv_hat);
        assert!(t.ci.0 <= t.tv_hat && t.tv_hat <= t.ci.1 + 0.02);
    }
}
