//! Sixteen independent coupled pairs advanced in lockstep.
//!
//! Same packed geometry as [`crate::kernel::PairGrid`], with one `i16`
//! height per lane. For every span cell a class sweep reads a 16-bit coin
//! mask (bit `j` for lane `j`, `1` = raise attempt); four consecutive
//! cells share one `next_u64` word, lowest 16 bits first.

use rand::RngCore;

use crate::kernel::PairGrid;

pub const LANES: usize = 16;

pub type Lanes = [i16; LANES];

/// Heights of one chain for every lane in packed form.
pub type PackedLanes = [Vec<Lanes>; 3];

/// Byte to eight `+3` / `-3` steps.
const STEP_TABLE: [[i16; 8]; 256] = {
    let mut t = [[0i16; 8]; 256];
    let mut b = 0;
    while b < 256 {
        let mut j = 0;
        while j < 8 {
            t[b][j] = if (b >> j) & 1 == 1 { 3 } else { -3 };
            j += 1;
        }
        b += 1;
    }
    t
};

#[derive(Clone, Debug)]
pub struct BatchGrid {
    grid: PairGrid,
}

impl BatchGrid {
    pub fn new(grid: PairGrid) -> BatchGrid {
        BatchGrid { grid }
    }

    /// Copies one face-indexed height vector into every lane.
    pub fn load(&self, h: &[i32]) -> PackedLanes {
        let g = &self.grid;
        let mut out: PackedLanes = std::array::from_fn(|_| vec![[0; LANES]; g.rows * g.len]);
        for (f, c) in g.cell_of.iter().enumerate() {
            let x = i16::try_from(h[f]).expect("height fits in i16");
            out[c.class][c.row * g.len + c.col] = [x; LANES];
        }
        out
    }

    pub fn unload(&self, g: &PackedLanes, lane: usize) -> Vec<i32> {
        let len = self.grid.len;
        self.grid.cell_of.iter().map(|c| g[c.class][c.row * len + c.col][lane] as i32).collect()
    }

    /// Bit `j` set iff lane `j` has coalesced.
    pub fn coalesced(&self, a: &PackedLanes, b: &PackedLanes) -> u32 {
        let len = self.grid.len;
        let mut all = (1u32 << LANES) - 1;
        for c in &self.grid.moving {
            let i = c.row * len + c.col;
            let (x, y) = (&a[c.class][i], &b[c.class][i]);
            for j in 0..LANES {
                if x[j] != y[j] {
                    all &= !(1 << j);
                }
            }
            if all == 0 {
                break;
            }
        }
        all
    }

    fn draw<R: RngCore + ?Sized>(rng: &mut R, steps: &mut [Lanes]) {
        for quad in steps.chunks_mut(4) {
            let word = rng.next_u64();
            for (k, s) in quad.iter_mut().enumerate() {
                let m = (word >> (16 * k)) as u16;
                s[..8].copy_from_slice(&STEP_TABLE[(m & 0xff) as usize]);
                s[8..].copy_from_slice(&STEP_TABLE[(m >> 8) as usize]);
            }
        }
    }

    pub fn sweep<R: RngCore + ?Sized>(&self, a: &mut PackedLanes, b: &mut PackedLanes, steps: &mut Vec<Lanes>, rng: &mut R) {
        for class in 0..3 {
            steps.resize(self.grid.coins[class], [0; LANES]);
            Self::draw(rng, steps);
            self.update_class(a, class, steps);
            self.update_class(b, class, steps);
        }
    }

    fn update_class(&self, g: &mut PackedLanes, class: usize, steps: &[Lanes]) {
        let [g0, g1, g2] = g;
        let (h, hn, hp) = match class {
            0 => (g0, &*g1, &*g2),
            1 => (g1, &*g2, &*g0),
            _ => (g2, &*g0, &*g1),
        };
        let mask = &self.grid.mask[class];
        let mut offset = 0;
        for job in &self.grid.jobs[class] {
            let m = job.len;
            let [n0, n1, n2] = job.next.map(|i| &hn[i..i + m]);
            let [p0, p1, p2] = job.prev.map(|i| &hp[i..i + m]);
            let st = &steps[offset..offset + m];
            let mk = &mask[job.start..job.start + m];
            let out = &mut h[job.start..job.start + m];
            for k in 0..m {
                let mk = mk[k] as i16;
                let cell = &mut out[k];
                for j in 0..LANES {
                    let sum = n0[k][j] + n1[k][j] + n2[k][j] + p0[k][j] + p1[k][j] + p2[k][j];
                    let t = st[k][j];
                    let ok = -((sum == 6 * cell[j] + 3 * t) as i16);
                    cell[j] += t & ok & mk;
                }
            }
            offset += m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::FlipTable;
    use hexlattice::{domain_extremal_heights, HexDomain};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    #[test]
    fn every_lane_matches_the_scalar_rule() {
        let d = Arc::new(HexDomain::hexagon(4, 3, 5).unwrap());
        let ex = domain_extremal_heights(&d).unwrap();
        let free = (0..d.num_faces()).filter(|&f| d.is_interior(f)).collect();
        let t = FlipTable::new(d.clone(), free);
        let grid = PairGrid::new(&t);
        let b = BatchGrid::new(grid.clone());
        let lo: Vec<i32> = ex.min.iter().map(|&x| x as i32).collect();
        let hi: Vec<i32> = ex.max.iter().map(|&x| x as i32).collect();
        let (mut pa, mut pb) = (b.load(&lo), b.load(&hi));
        let mut plain: Vec<[Vec<i32>; 2]> = (0..LANES).map(|_| [lo.clone(), hi.clone()]).collect();
        let mut r1 = ChaCha8Rng::seed_from_u64(4);
        let mut r2 = ChaCha8Rng::seed_from_u64(4);
        let mut buf = Vec::new();
        for _ in 0..30 {
            b.sweep(&mut pa, &mut pb, &mut buf, &mut r1);
            for class in 0..3 {
                let n = grid.coins[class];
                let masks: Vec<u16> = (0..n.div_ceil(4))
                    .flat_map(|_| {
                        let w = r2.next_u64();
                        (0..4).map(move |k| (w >> (16 * k)) as u16)
                    })
                    .take(n)
                    .collect();
                let mut coin = std::collections::HashMap::new();
                let mut k = 0;
                for job in &grid.jobs[class] {
                    for cell in job.start..job.start + job.len {
                        coin.insert(cell, masks[k]);
                        k += 1;
                    }
                }
                for i in 0..t.num_free() {
                    let c = grid.cell_of[t.face(i)];
                    if c.class == class {
                        let m = coin[&(c.row * grid.len + c.col)];
                        for (j, p) in plain.iter_mut().enumerate() {
                            let up = (m >> j) & 1 == 1;
                            t.update(&mut p[0], i, up);
                            t.update(&mut p[1], i, up);
                        }
                    }
                }
            }
            for (j, p) in plain.iter().enumerate() {
                assert_eq!(b.unload(&pa, j), p[0]);
                assert_eq!(b.unload(&pb, j), p[1]);
            }
        }
    }
}
