//! Height functions on faces.
//!
//! Crossing a honeycomb edge with its white endpoint on the left changes
//! the height by `+1` if the edge is unmatched and by `-2` if it is matched.
//! Segments with a single triangle in the domain count as unmatched.

use std::collections::{BinaryHeap, HashMap, VecDeque};
use std::cmp::Reverse;

use crate::coords::{FaceCoord, Rational, DIRECTIONS};
use crate::dimer::DimerConfig;
use crate::domain::{HexDomain, Step};
use crate::error::{HexError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightField {
    faces: Vec<FaceCoord>,
    values: Vec<i64>,
    pin: FaceCoord,
    index: HashMap<FaceCoord, usize>,
}

impl HeightField {
    pub fn new(faces: Vec<FaceCoord>, values: Vec<i64>, pin: FaceCoord) -> Result<HeightField> {
        if faces.is_empty() {
            return Err(HexError::EmptyField);
        }
        if faces.len() != values.len() {
            return Err(HexError::InconsistentField("faces and values differ in length".into()));
        }
        let index: HashMap<_, _> = faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        if !index.contains_key(&pin) {
            return Err(HexError::UnknownFace(pin));
        }
        Ok(HeightField { faces, values, pin, index })
    }

    pub fn faces(&self) -> &[FaceCoord] {
        &self.faces
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn pin(&self) -> FaceCoord {
        self.pin
    }

    pub fn get(&self, f: FaceCoord) -> Option<i64> {
        self.index.get(&f).map(|&i| self.values[i])
    }
}

/// Height change along one face step for a given matching.
pub fn increment(step: &Step, m: &DimerConfig) -> i64 {
    match step.edge {
        Some(e) if m.contains_ref(e.white, e.kind) => -2 * step.sign,
        _ => step.sign,
    }
}

/// Integrates step increments from `pin`, checking path independence.
pub fn integrate(d: &HexDomain, pin: usize, inc: impl Fn(&Step) -> i64) -> Result<Vec<i64>> {
    let mut h: Vec<Option<i64>> = vec![None; d.num_faces()];
    h[pin] = Some(0);
    let mut queue = VecDeque::from([pin]);
    while let Some(f) = queue.pop_front() {
        let hf = h[f].expect("visited");
        for s in d.steps(f).iter().flatten() {
            let want = hf + inc(s);
            match h[s.to] {
                None => {
                    h[s.to] = Some(want);
                    queue.push_back(s.to);
                }
                Some(x) if x != want => {
                    return Err(HexError::InconsistentField(format!(
                        "height at {:?} is path dependent",
                        d.face_at(s.to)
                    )))
                }
                _ => {}
            }
        }
    }
    h.into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| HexError::InconsistentField(format!("face {:?} unreachable", d.face_at(i)))))
        .collect()
}

/// Height function of `m`, zero at `pin`.
pub fn height_field(m: &DimerConfig, pin: FaceCoord) -> Result<HeightField> {
    let d = m.domain();
    let p = d.face(pin)?;
    let values = integrate(d, p, |s| increment(s, m))?;
    HeightField::new(d.faces().to_vec(), values, pin)
}

/// Heights of `m` as a plain vector indexed like the domain faces.
pub fn heights(m: &DimerConfig, pin: usize) -> Vec<i64> {
    integrate(m.domain(), pin, |s| increment(s, m)).expect("perfect matchings have consistent heights")
}

/// Smallest `C` with `|h(f) - h(g)| <= C d(f, g) + C` over all face pairs,
/// `d` being the graph distance between lattice-adjacent faces of the field.
pub fn lipschitz_bound(h: &HeightField) -> Result<Rational> {
    if h.faces.is_empty() {
        return Err(HexError::EmptyField);
    }
    let n = h.faces.len();
    let adj: Vec<Vec<usize>> = h
        .faces
        .iter()
        .map(|f| DIRECTIONS.iter().filter_map(|&(du, dv)| h.index.get(&FaceCoord::new(f.u + du, f.v + dv)).copied()).collect())
        .collect();
    let mut best = Rational::from_integer(0);
    let mut dist = vec![usize::MAX; n];
    for src in 0..n {
        dist.fill(usize::MAX);
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(f) = queue.pop_front() {
            for &g in &adj[f] {
                if dist[g] == usize::MAX {
                    dist[g] = dist[f] + 1;
                    queue.push_back(g);
                }
            }
        }
        for g in 0..n {
            if dist[g] == usize::MAX {
                return Err(HexError::InconsistentField("face set is not connected".into()));
            }
            let c = Rational::new((h.values[src] - h.values[g]).abs(), dist[g] as i64 + 1);
            if c > best {
                best = c;
            }
        }
    }
    Ok(best)
}

/// Heights on the boundary walk, which do not depend on the tiling.
///
/// Returns `(face, height)` pairs along the counter-clockwise walk starting
/// at the reference face with height 0, or `Untileable` when the walk does
/// not close up.
pub fn boundary_heights(d: &HexDomain) -> Result<Vec<(usize, i64)>> {
    let mut out = Vec::with_capacity(d.boundary_segments().len());
    let mut h = 0i64;
    for &(f, e) in d.boundary_segments() {
        out.push((f, h));
        h += d.steps(f)[e].expect("boundary step").sign;
    }
    if h != 0 {
        return Err(HexError::Untileable(format!("boundary heights do not close (winding {h})")));
    }
    let mut seen: HashMap<usize, i64> = HashMap::new();
    for &(f, x) in &out {
        if let Some(&y) = seen.get(&f) {
            if x != y {
                return Err(HexError::Untileable("boundary heights disagree at a pinch point".into()));
            }
        }
        seen.insert(f, x);
    }
    Ok(out)
}

/// Minimal and maximal height functions among all tilings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremal {
    pub min: Vec<i64>,
    pub max: Vec<i64>,
}

/// Upper bound on `h(q) - h(p)` along a step: `1` if white is on the left,
/// `2` otherwise.
pub fn step_cost(sign: i64) -> i64 {
    if sign > 0 {
        1
    } else {
        2
    }
}

/// Extremal heights given fixed values on `fixed` faces, constrained only
/// through steps between two triangles that are both in the domain.
///
/// `free` marks faces whose height may move. Returns `Untileable` when no
/// height function agrees with the fixed values.
pub fn extremal_heights(d: &HexDomain, fixed: &[(usize, i64)], free: &[bool]) -> Result<Extremal> {
    let max = dijkstra(d, fixed, |s| step_cost(s.sign));
    let neg: Vec<(usize, i64)> = fixed.iter().map(|&(f, h)| (f, -h)).collect();
    let min: Vec<i64> = dijkstra(d, &neg, |s| step_cost(-s.sign)).into_iter().map(|x| -x).collect();
    for &(f, h) in fixed {
        if max[f] != h || min[f] != h {
            return Err(HexError::Untileable(format!("fixed height at {:?} is not attainable", d.face_at(f))));
        }
    }
    for f in 0..d.num_faces() {
        if max[f] == i64::MAX || min[f] == -i64::MAX {
            return Err(HexError::Untileable(format!("face {:?} is unconstrained", d.face_at(f))));
        }
        if min[f] > max[f] {
            return Err(HexError::Untileable(format!("height bounds cross at {:?}", d.face_at(f))));
        }
        if !free[f] && min[f] != max[f] {
            return Err(HexError::Untileable(format!("face {:?} should be fixed", d.face_at(f))));
        }
    }
    Ok(Extremal { min, max })
}

/// Extremal heights of the whole domain, pinned at the reference face.
pub fn domain_extremal_heights(d: &HexDomain) -> Result<Extremal> {
    if !d.is_balanced() {
        return Err(HexError::Untileable(format!(
            "{} white and {} black vertices",
            d.num_whites(),
            d.num_blacks()
        )));
    }
    let bd = boundary_heights(d)?;
    let free: Vec<bool> = (0..d.num_faces()).map(|f| d.is_interior(f)).collect();
    extremal_heights(d, &bd, &free)
}

fn dijkstra(d: &HexDomain, sources: &[(usize, i64)], cost: impl Fn(&Step) -> i64) -> Vec<i64> {
    let mut best = vec![i64::MAX; d.num_faces()];
    let mut heap = BinaryHeap::new();
    for &(f, h) in sources {
        if h < best[f] {
            best[f] = h;
            heap.push(Reverse((h, f)));
        }
    }
    while let Some(Reverse((h, f))) = heap.pop() {
        if h > best[f] {
            continue;
        }
        for s in d.steps(f).iter().flatten() {
            if s.edge.is_none() {
                continue;
            }
            let nh = h + cost(s);
            if nh < best[s.to] {
                best[s.to] = nh;
                heap.push(Reverse((nh, s.to)));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::Kind;
    use std::sync::Arc;

    fn unit() -> Arc<HexDomain> {
        Arc::new(HexDomain::hexagon(1, 1, 1).unwrap())
    }

    #[test]
    fn pin_is_zero() {
        let d = unit();
        let m = DimerConfig::from_kinds(d.clone(), vec![Kind::C, Kind::A, Kind::B]).unwrap();
        for &f in d.faces() {
            assert_eq!(height_field(&m, f).unwrap().get(f), Some(0));
        }
    }

    #[test]
    fn two_adjacent_faces_give_one() {
        let h = HeightField::new(vec![FaceCoord::new(0, 0), FaceCoord::new(1, 0)], vec![0, -2], FaceCoord::new(0, 0)).unwrap();
        assert_eq!(lipschitz_bound(&h).unwrap(), Rational::from_integer(1));
    }

    #[test]
    fn constant_field_gives_zero() {
        let faces: Vec<FaceCoord> = (0..4).map(|u| FaceCoord::new(u, 0)).collect();
        let h = HeightField::new(faces, vec![7; 4], FaceCoord::new(0, 0)).unwrap();
        assert_eq!(lipschitz_bound(&h).unwrap(), Rational::from_integer(0));
    }

    #[test]
    fn empty_field_is_rejected() {
        assert_eq!(HeightField::new(vec![], vec![], FaceCoord::new(0, 0)).unwrap_err(), HexError::EmptyField);
    }

    #[test]
    fn unit_hexagon_extremes_differ_by_one_flip_at_the_center() {
        let d = unit();
        let ex = domain_extremal_heights(&d).unwrap();
        let o = d.origin_index();
        assert_eq!(ex.max[o] - ex.min[o], 3);
        for f in 0..d.num_faces() {
            if f != o {
                assert_eq!(ex.max[f], ex.min[f]);
            }
        }
    }

    #[test]
    fn boundary_increments_alternate_on_the_unit_hexagon() {
        let d = unit();
        let bd = boundary_heights(&d).unwrap();
        let hs: Vec<i64> = bd.iter().map(|&(_, h)| h).collect();
        assert_eq!(hs.len(), 6);
        assert!(hs.iter().all(|h| (-1..=1).contains(h)));
    }
}
