//! Monotone coupling from the past.
//!
//! A sweep applies one heat-bath move with a fresh coin at every moving
//! face, class by class (see [`crate::kernel`] for the coin order).
//! Time is cut into blocks: block 0 is the last sweep before time 0 and
//! block `k >= 1` covers sweeps `[-2^k, -2^(k-1))`. Each block owns a seed
//! drawn from the caller's rng (one `gen::<u64>`) the first time it is
//! needed, so every epoch replays the same coins. Epoch `k` starts the top
//! and bottom chains at time `-2^k` sweeps and stops once they agree at
//! time 0.

use std::sync::Arc;

use hexlattice::{domain_extremal_heights, DimerConfig, HexDomain};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SamplerError};
use crate::batch::{BatchGrid, LANES};
use crate::kernel::PairGrid;
use crate::state::{matching_from_heights, FlipTable};

pub const DEFAULT_MAX_EPOCHS: usize = 40;

/// Sandwich between two height functions on a fixed flip table.
#[derive(Clone, Debug)]
pub struct Cftp {
    table: FlipTable,
    grid: PairGrid,
    bottom: Vec<i32>,
    top: Vec<i32>,
    max_epochs: usize,
}

impl Cftp {
    pub fn new(table: FlipTable, bottom: Vec<i32>, top: Vec<i32>) -> Cftp {
        let grid = PairGrid::new(&table);
        Cftp { table, grid, bottom, top, max_epochs: DEFAULT_MAX_EPOCHS }
    }

    /// Sandwich between the extremal tilings of `d`.
    pub fn for_domain(d: &Arc<HexDomain>) -> Result<Cftp> {
        let ex = domain_extremal_heights(d)?;
        let free = (0..d.num_faces()).filter(|&f| d.is_interior(f) && ex.min[f] != ex.max[f]).collect();
        let table = FlipTable::new(d.clone(), free);
        Ok(Cftp::new(table, to_i32(&ex.min), to_i32(&ex.max)))
    }

    pub fn with_max_epochs(mut self, max_epochs: usize) -> Cftp {
        self.max_epochs = max_epochs;
        self
    }

    pub fn domain(&self) -> &Arc<HexDomain> {
        self.table.domain()
    }

    pub fn num_free(&self) -> usize {
        self.table.num_free()
    }

    /// Heights of an exact sample.
    pub fn sample_heights<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<i32>> {
        if self.table.num_free() == 0 {
            return Ok(self.bottom.clone());
        }
        let mut seeds: Vec<u64> = Vec::new();
        for epoch in 0..self.max_epochs {
            while seeds.len() <= epoch {
                seeds.push(rng.gen());
            }
            let mut lo = self.grid.load(&self.bottom);
            let mut hi = self.grid.load(&self.top);
            for k in (0..=epoch).rev() {
                let sweeps = if k == 0 { 1 } else { 1usize << (k - 1) };
                let mut block = ChaCha8Rng::seed_from_u64(seeds[k]);
                for _ in 0..sweeps {
                    self.grid.sweep(&mut lo, &mut hi, &mut block);
                }
            }
            if self.grid.coalesced(&lo, &hi) {
                return Ok(self.grid.unload(&lo));
            }
        }
        Err(SamplerError::NoCoalescence(self.max_epochs))
    }

    /// Heights of [`LANES`] independent exact samples.
    ///
    /// Lanes share block seeds (one `gen::<u64>` per block, drawn in block
    /// order) and read disjoint coin bits. All lanes run the same epochs
    /// until every lane has coalesced; running a coalesced lane from
    /// further back leaves its output unchanged.
    pub fn sample_heights_batch<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<Vec<i32>>> {
        if self.table.num_free() == 0 {
            return Ok(vec![self.bottom.clone(); LANES]);
        }
        let batch = BatchGrid::new(self.grid.clone());
        let mut seeds: Vec<u64> = Vec::new();
        let mut buf = Vec::new();
        for epoch in 0..self.max_epochs {
            while seeds.len() <= epoch {
                seeds.push(rng.gen());
            }
            let mut lo = batch.load(&self.bottom);
            let mut hi = batch.load(&self.top);
            for k in (0..=epoch).rev() {
                let sweeps = if k == 0 { 1 } else { 1usize << (k - 1) };
                let mut block = ChaCha8Rng::seed_from_u64(seeds[k]);
                for _ in 0..sweeps {
                    batch.sweep(&mut lo, &mut hi, &mut buf, &mut block);
                }
            }
            if batch.coalesced(&lo, &hi) == (1 << LANES) - 1 {
                return Ok((0..LANES).map(|j| batch.unload(&lo, j)).collect());
            }
        }
        Err(SamplerError::NoCoalescence(self.max_epochs))
    }

    /// `count` exact samples, drawn batch by batch.
    pub fn sample_many<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Result<Vec<DimerConfig>> {
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            for h in self.sample_heights_batch(rng)? {
                if out.len() < count {
                    out.push(matching_from_heights(self.table.domain(), &h));
                }
            }
        }
        Ok(out)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<DimerConfig> {
        let h = self.sample_heights(rng)?;
        Ok(matching_from_heights(self.table.domain(), &h))
    }
}

pub(crate) fn to_i32(h: &[i64]) -> Vec<i32> {
    h.iter().map(|&x| i32::try_from(x).expect("height fits in i32")).collect()
}

/// An exactly uniform tiling of `d`.
pub fn cftp_sample<R: Rng + ?Sized>(d: &Arc<HexDomain>, rng: &mut R) -> Result<DimerConfig> {
    Cftp::for_domain(d)?.sample(rng)
}
