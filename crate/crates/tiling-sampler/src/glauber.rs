//! Single-site cube-flip dynamics.
//!
//! A move picks an interior face uniformly (canonical face order, one
//! `gen_range` draw) and a direction (one `gen::<bool>` draw, `true` = up).

use std::sync::Arc;

use hexlattice::{DimerConfig, FaceCoord, HexDomain};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::state::{heights_of, matching_from_heights, FlipTable};

/// A cube rotation at one face, raising or lowering its height by 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlipSite {
    pub face: FaceCoord,
    pub up: bool,
}

fn interior_table(d: &Arc<HexDomain>) -> FlipTable {
    let free = (0..d.num_faces()).filter(|&f| d.is_interior(f)).collect();
    FlipTable::new(d.clone(), free)
}

/// Applies the flip if the three lozenges around the face form a cube in
/// the right orientation.
pub fn flip(m: &DimerConfig, site: FlipSite) -> Result<Option<DimerConfig>> {
    let d = m.domain();
    let f = d.face(site.face)?;
    if !d.is_interior(f) {
        return Ok(None);
    }
    let table = FlipTable::new(d.clone(), vec![f]);
    let mut h = heights_of(m);
    let ok = if site.up { table.can_raise(&h, 0) } else { table.can_lower(&h, 0) };
    if !ok {
        return Ok(None);
    }
    h[f] += if site.up { 3 } else { -3 };
    Ok(Some(matching_from_heights(d, &h)))
}

/// All admissible flips of `m`, in canonical face order, up before down.
pub fn admissible_flips(m: &DimerConfig) -> Vec<FlipSite> {
    let d = m.domain();
    let table = interior_table(d);
    let h = heights_of(m);
    let mut out = Vec::new();
    for i in 0..table.num_free() {
        let face = d.face_at(table.face(i));
        if table.can_raise(&h, i) {
            out.push(FlipSite { face, up: true });
        }
        if table.can_lower(&h, i) {
            out.push(FlipSite { face, up: false });
        }
    }
    out
}

/// One Glauber move from `m`.
pub fn glauber_step<R: Rng + ?Sized>(m: &DimerConfig, rng: &mut R) -> DimerConfig {
    let mut chain = GlauberChain::new(m);
    chain.step(rng);
    chain.config()
}

/// Glauber chain kept in height form for long runs.
#[derive(Clone, Debug)]
pub struct GlauberChain {
    table: FlipTable,
    heights: Vec<i32>,
}

impl GlauberChain {
    pub fn new(m: &DimerConfig) -> GlauberChain {
        GlauberChain { table: interior_table(m.domain()), heights: heights_of(m) }
    }

    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let n = self.table.num_free();
        if n == 0 {
            return;
        }
        let i = rng.gen_range(0..n);
        let up = rng.gen::<bool>();
        self.table.update(&mut self.heights, i, up);
    }

    pub fn run<R: Rng + ?Sized>(&mut self, moves: usize, rng: &mut R) {
        for _ in 0..moves {
            self.step(rng);
        }
    }

    pub fn heights(&self) -> &[i32] {
        &self.heights
    }

    pub fn config(&self) -> DimerConfig {
        matching_from_heights(self.table.domain(), &self.heights)
    }
}

/// Runs `sweeps * (#interior faces)` moves from the minimal tiling.
pub fn glauber_sample<R: Rng + ?Sized>(d: &Arc<HexDomain>, sweeps: usize, rng: &mut R) -> Result<DimerConfig> {
    let ex = hexlattice::domain_extremal_heights(d)?;
    let start: Vec<i32> = ex.min.iter().map(|&x| x as i32).collect();
    let m = matching_from_heights(d, &start);
    let mut chain = GlauberChain::new(&m);
    let n = chain.table.num_free();
    chain.run(sweeps.saturating_mul(n), rng);
    Ok(chain.config())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_tilings;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unit_hexagon_has_one_flip_each_way() {
        let d = Arc::new(HexDomain::hexagon(1, 1, 1).unwrap());
        let all = enumerate_tilings(&d, 10).unwrap();
        for m in &all {
            let fl = admissible_flips(m);
            assert_eq!(fl.len(), 1);
            let other = flip(m, fl[0]).unwrap().unwrap();
            assert_ne!(&other, m);
            assert!(all.contains(&other));
            let back = flip(&other, FlipSite { up: !fl[0].up, ..fl[0] }).unwrap().unwrap();
            assert_eq!(&back, m);
        }
    }

    #[test]
    fn inadmissible_leaves_matching_alone() {
        let d = Arc::new(HexDomain::hexagon(1, 1, 1).unwrap());
        let m = enumerate_tilings(&d, 10).unwrap().remove(0);
        let fl = admissible_flips(&m)[0];
        assert!(flip(&m, FlipSite { up: !fl.up, ..fl }).unwrap().is_none());
        let boundary = FlipSite { face: d.face_at(d.reference_face()), up: true };
        assert!(flip(&m, boundary).unwrap().is_none());
    }

    #[test]
    fn step_moves_with_half_probability() {
        let d = Arc::new(HexDomain::hexagon(1, 1, 1).unwrap());
        let m = enumerate_tilings(&d, 10).unwrap().remove(0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let n = 20_000;
        let moved = (0..n).filter(|_| glauber_step(&m, &mut rng) != m).count();
        let p = moved as f64 / n as f64;
        assert!((p - 0.5).abs() < 3.0 * (0.25 / n as f64).sqrt() * 1.5, "{p}");
    }
}
