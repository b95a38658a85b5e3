//! Sweep kernel for a coupled pair of height functions.
//!
//! Faces split into three classes by `(u - v) mod 3`; faces of one class
//! are never adjacent, so a class can be updated all at once. Each class is
//! stored row by row with stride-3 columns packed together, which turns a
//! class update into straight loops over contiguous rows.
//!
//! A sweep updates class 0, then 1, then 2. A class is a list of row
//! spans covering its moving faces; the span cells of a class, taken in
//! order, read one coin each from a stream of `next_u64` words, least
//! significant bit first (`1` = raise attempt). Cells inside a span that
//! are not moving faces consume a coin and never change.

use rand::RngCore;

use crate::state::FlipTable;

/// Location of a face inside the packed class arrays.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Cell {
    pub(crate) class: usize,
    pub(crate) row: usize,
    pub(crate) col: usize,
}

#[derive(Clone, Debug)]
pub struct PairGrid {
    pub(crate) rows: usize,
    pub(crate) len: usize,
    pub(crate) cell_of: Vec<Cell>,
    /// Per class, `-1` (all bits set) at moving faces and `0` elsewhere.
    pub(crate) mask: [Vec<i32>; 3],
    pub(crate) jobs: [Vec<RowJob>; 3],
    /// Number of span cells per class.
    pub(crate) coins: [usize; 3],
    pub(crate) moving: Vec<Cell>,
}

/// A run of cells in one row of one class, with the starting index of each
/// neighbour run in the two other class arrays.
#[derive(Clone, Copy, Debug)]
pub(crate) struct RowJob {
    pub(crate) start: usize,
    pub(crate) len: usize,
    pub(crate) next: [usize; 3],
    pub(crate) prev: [usize; 3],
}

/// Heights of one chain in packed form.
pub type Packed = [Vec<i32>; 3];

impl PairGrid {
    pub fn new(table: &FlipTable) -> PairGrid {
        let d = table.domain();
        let faces = d.faces();
        let umin = faces.iter().map(|f| f.u).min().unwrap_or(0);
        let umax = faces.iter().map(|f| f.u).max().unwrap_or(0);
        let vmin = faces.iter().map(|f| f.v).min().unwrap_or(0);
        let vmax = faces.iter().map(|f| f.v).max().unwrap_or(0);
        // shifted coordinates start at 3 so every neighbour column is >= 0
        let rows = (vmax - vmin + 3) as usize;
        let len = ((umax - umin + 7) / 3 + 2) as usize;
        let cell_of: Vec<Cell> = faces
            .iter()
            .map(|f| locate((f.u - umin + 3) as usize, (f.v - vmin + 1) as usize))
            .collect();
        let mut mask: Packed = std::array::from_fn(|_| vec![0; rows * len]);
        let mut span: [Vec<(usize, usize)>; 3] = std::array::from_fn(|_| vec![(usize::MAX, 0); rows]);
        let mut moving = Vec::with_capacity(table.num_free());
        for i in 0..table.num_free() {
            let c = cell_of[table.face(i)];
            mask[c.class][c.row * len + c.col] = -1;
            let s = &mut span[c.class][c.row];
            *s = (s.0.min(c.col), s.1.max(c.col));
            moving.push(c);
        }
        let mut jobs: [Vec<RowJob>; 3] = Default::default();
        for class in 0..3 {
            let (next, prev) = ((class + 1) % 3, (class + 2) % 3);
            for (row, &(lo, hi)) in span[class].iter().enumerate() {
                if lo > hi {
                    continue;
                }
                let r = (class + row) % 3;
                // neighbour (du, dv) sits in class (class + du - dv) mod 3,
                // row + dv, column col + (r + du - r') / 3
                let shift = |du: i32, dv: i32, target: usize| -> usize {
                    let r2 = (target as i32 + row as i32 + dv).rem_euclid(3);
                    let delta = (r as i32 + du - r2).div_euclid(3);
                    ((row as i32 + dv) as usize) * len + (lo as i32 + delta) as usize
                };
                jobs[class].push(RowJob {
                    start: row * len + lo,
                    len: hi + 1 - lo,
                    next: [shift(1, 0, next), shift(0, -1, next), shift(-1, 1, next)],
                    prev: [shift(-1, 0, prev), shift(0, 1, prev), shift(1, -1, prev)],
                });
            }
        }
        let coins = std::array::from_fn(|c| jobs[c].iter().map(|j| j.len).sum());
        PairGrid { rows, len, cell_of, mask, jobs, coins, moving }
    }

    fn zeros(&self) -> Packed {
        std::array::from_fn(|_| vec![0; self.rows * self.len])
    }

    pub fn load(&self, h: &[i32]) -> Packed {
        let mut g = self.zeros();
        for (f, c) in self.cell_of.iter().enumerate() {
            g[c.class][c.row * self.len + c.col] = h[f];
        }
        g
    }

    pub fn unload(&self, g: &Packed) -> Vec<i32> {
        self.cell_of.iter().map(|c| g[c.class][c.row * self.len + c.col]).collect()
    }

    pub fn coalesced(&self, a: &Packed, b: &Packed) -> bool {
        self.moving.iter().all(|c| {
            let i = c.row * self.len + c.col;
            a[c.class][i] == b[c.class][i]
        })
    }

    /// Draws `steps.len()` coins as `+3` / `-3` steps.
    fn draw<R: RngCore + ?Sized>(rng: &mut R, steps: &mut [i32]) {
        for word_cells in steps.chunks_mut(64) {
            let bits = rng.next_u64();
            for (k, s) in word_cells.iter_mut().enumerate() {
                *s = 6 * ((bits >> k) & 1) as i32 - 3;
            }
        }
    }

    /// One sweep of both chains with shared coins.
    pub fn sweep<R: RngCore + ?Sized>(&self, a: &mut Packed, b: &mut Packed, rng: &mut R) {
        let mut steps = [0i32; 4096];
        let mut heap = Vec::new();
        for class in 0..3 {
            let n = self.coins[class];
            let buf: &mut [i32] = if n <= steps.len() {
                &mut steps[..n]
            } else {
                heap.resize(n, 0);
                &mut heap[..]
            };
            Self::draw(rng, buf);
            self.update_class(a, class, buf);
            self.update_class(b, class, buf);
        }
    }

    fn update_class(&self, g: &mut Packed, class: usize, steps: &[i32]) {
        let [g0, g1, g2] = g;
        let (h, hn, hp) = match class {
            0 => (g0, &*g1, &*g2),
            1 => (g1, &*g2, &*g0),
            _ => (g2, &*g0, &*g1),
        };
        let mask = &self.mask[class];
        let mut offset = 0;
        for job in &self.jobs[class] {
            let m = job.len;
            let [n0, n1, n2] = job.next.map(|i| window(hn, i, m));
            let [p0, p1, p2] = job.prev.map(|i| window(hp, i, m));
            let st = &steps[offset..offset + m];
            let mk = &mask[job.start..job.start + m];
            let out = &mut h[job.start..job.start + m];
            for k in 0..m {
                let sum = n0[k] + n1[k] + n2[k] + p0[k] + p1[k] + p2[k];
                let ok = -((sum - 6 * out[k] == 3 * st[k]) as i32);
                out[k] += st[k] & ok & mk[k];
            }
            offset += m;
        }
    }
}

fn window(src: &[i32], start: usize, len: usize) -> &[i32] {
    &src[start..start + len]
}

fn locate(u: usize, v: usize) -> Cell {
    let class = (u + 3 * v - v) % 3;
    let r = (class + v) % 3;
    Cell { class, row: v, col: (u - r) / 3 }
}
