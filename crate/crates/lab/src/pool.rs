//! Deterministic parallel maps over task indices.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{LabError, Result};

/// Random stream for task `task` of schedule point `block`.
pub fn task_rng(seed: u64, block: u64, task: u64) -> ChaCha8Rng {
    tiling_sampler::chain_rng(seed, (block << 32) | task)
}

/// Runs `f(0..tasks)` on `workers` threads and returns results in task
/// order, so the output does not depend on scheduling.
pub fn ordered_map<T, F>(workers: usize, tasks: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| LabError::Config(e.to_string()))?;
    pool.install(|| (0..tasks).into_par_iter().map(&f).collect())
}

/// Splits `total` into chunks of at most `size`.
pub fn chunks(total: usize, size: usize) -> Vec<usize> {
    let mut out = vec![size; total / size];
    if !total.is_multiple_of(size) {
        out.push(total % size);
    }
    out
}
