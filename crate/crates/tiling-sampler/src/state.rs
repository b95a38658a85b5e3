//! Height-function state shared by the Markov samplers.
//!
//! Only faces listed as free move. A free face has all six surrounding
//! triangles in play, so each of its six steps constrains it:
//! `h(q) - h(p) <= 1` across a step with white on the left and `<= 2`
//! otherwise. Allowed values at a free face are therefore `x` or `x + 3`.

use std::sync::Arc;

use hexlattice::height::step_cost;
use hexlattice::{DimerConfig, FaceCoord, HexDomain, Kind};

/// Flip neighbourhoods of the free faces.
#[derive(Clone, Debug)]
pub struct FlipTable {
    pub(crate) domain: Arc<HexDomain>,
    pub(crate) free: Vec<usize>,
    nbr: Vec<[u32; 6]>,
    up: Vec<[i32; 6]>,
    down: Vec<[i32; 6]>,
}

impl FlipTable {
    /// `free` must list faces that are interior to the domain.
    pub fn new(domain: Arc<HexDomain>, free: Vec<usize>) -> FlipTable {
        let mut nbr = Vec::with_capacity(free.len());
        let mut up = Vec::with_capacity(free.len());
        let mut down = Vec::with_capacity(free.len());
        for &p in &free {
            assert!(domain.is_interior(p), "free faces must be interior");
            let steps = domain.steps(p);
            let s: [_; 6] = std::array::from_fn(|e| steps[e].expect("interior face has six steps"));
            nbr.push(s.map(|s| s.to as u32));
            // h(p) <= h(q) + cost(q -> p) and h(p) >= h(q) - cost(p -> q).
            up.push(s.map(|s| step_cost(-s.sign) as i32));
            down.push(s.map(|s| step_cost(s.sign) as i32));
        }
        FlipTable { domain, free, nbr, up, down }
    }

    pub fn domain(&self) -> &Arc<HexDomain> {
        &self.domain
    }

    pub fn num_free(&self) -> usize {
        self.free.len()
    }

    /// Face index of the `i`-th free face.
    pub fn face(&self, i: usize) -> usize {
        self.free[i]
    }

    #[inline]
    pub fn can_raise(&self, h: &[i32], i: usize) -> bool {
        let t = h[self.free[i]] + 3;
        let (n, c) = (&self.nbr[i], &self.up[i]);
        (0..6).all(|k| t <= h[n[k] as usize] + c[k])
    }

    #[inline]
    pub fn can_lower(&self, h: &[i32], i: usize) -> bool {
        let t = h[self.free[i]] - 3;
        let (n, c) = (&self.nbr[i], &self.down[i]);
        (0..6).all(|k| t >= h[n[k] as usize] - c[k])
    }

    /// Heat-bath move: raise if `up` and allowed, lower if `!up` and allowed.
    #[inline]
    pub fn update(&self, h: &mut [i32], i: usize, up: bool) {
        if up {
            if self.can_raise(h, i) {
                h[self.free[i]] += 3;
            }
        } else if self.can_lower(h, i) {
            h[self.free[i]] -= 3;
        }
    }
}

/// Matching whose height function is `h` (indexed like the domain faces).
pub fn matching_from_heights(d: &Arc<HexDomain>, h: &[i32]) -> DimerConfig {
    let at = |u: i32, v: i32| h[d.face_index(FaceCoord::new(u, v)).expect("corner is a face")];
    let kinds = (0..d.num_whites())
        .map(|i| {
            let w = d.white(i);
            let (u, v) = (w.u, w.v);
            let base = at(u, v);
            if (at(u + 1, v) - base).abs() == 2 {
                Kind::C
            } else if (at(u, v + 1) - base).abs() == 2 {
                Kind::B
            } else {
                Kind::A
            }
        })
        .collect();
    DimerConfig::from_kinds(d.clone(), kinds).expect("valid heights encode a perfect matching")
}

/// Heights of `m` as `i32`, pinned at the reference face.
pub fn heights_of(m: &DimerConfig) -> Vec<i32> {
    let d = m.domain();
    hexlattice::heights(m, d.reference_face()).into_iter().map(|x| x as i32).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use hexlattice::domain_extremal_heights;

    #[test]
    fn extremes_admit_only_one_direction() {
        let d = Arc::new(HexDomain::hexagon(2, 2, 2).unwrap());
        let ex = domain_extremal_heights(&d).unwrap();
        let free: Vec<usize> = (0..d.num_faces()).filter(|&f| d.is_interior(f)).collect();
        let t = FlipTable::new(d.clone(), free);
        let top: Vec<i32> = ex.max.iter().map(|&x| x as i32).collect();
        let bot: Vec<i32> = ex.min.iter().map(|&x| x as i32).collect();
        for i in 0..t.num_free() {
            assert!(!t.can_raise(&top, i));
            assert!(!t.can_lower(&bot, i));
        }
        let m = matching_from_heights(&d, &top);
        assert_eq!(heights_of(&m), top);
    }
}
