//! The double-dimer height `(h_{m2} - h_m) / 3` on faces common to both
//! domains, in level-line units.
//!
//! It is computed from edge membership alone: crossing a segment changes it
//! by `-sign * ([e in m2] - [e in m])`, where `sign` is `+1` when the white
//! triangle is on the left. It is pinned to 0 at [`common_reference_face`].

use std::collections::{HashSet, VecDeque};

use hexlattice::{domain_extremal_heights, Color, Edge, FaceCoord, HeightField, HexDomain, Vertex};

use crate::decomposition::{edge_of, LoopDecomposition};
use crate::error::{DdError, Result};

/// Double-dimer height on the common faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DDHeight {
    field: HeightField,
}

impl DDHeight {
    pub fn get(&self, f: FaceCoord) -> Option<i64> {
        self.field.get(f)
    }

    pub fn faces(&self) -> &[FaceCoord] {
        self.field.faces()
    }

    pub fn values(&self) -> &[i64] {
        self.field.values()
    }

    pub fn pin(&self) -> FaceCoord {
        self.field.pin()
    }

    /// Same function in single-height units (level lines are jumps of 3).
    pub fn lattice_units(&self) -> HeightField {
        let v = self.field.values().iter().map(|x| 3 * x).collect();
        HeightField::new(self.field.faces().to_vec(), v, self.field.pin()).expect("same faces")
    }
}

/// Smallest face lying on the boundary of both domains, or the smallest
/// common face when there is none.
pub fn common_reference_face(d: &HexDomain, d2: &HexDomain) -> Result<FaceCoord> {
    let common: Vec<(FaceCoord, bool)> = d
        .faces()
        .iter()
        .enumerate()
        .filter_map(|(i, &f)| d2.face_index(f).map(|j| (f, !d.is_interior(i) && !d2.is_interior(j))))
        .collect();
    common
        .iter()
        .find(|(_, both)| *both)
        .or_else(|| common.first())
        .map(|&(f, _)| f)
        .ok_or(DdError::Disjoint)
}

fn contains(d: &HexDomain, t: Vertex) -> bool {
    match t.color {
        Color::White => d.white_index(t.u, t.v).is_some(),
        Color::Black => d.black_index(t.u, t.v).is_some(),
    }
}

/// Whether `d` has a step from `p` in direction `e` (the crossed segment
/// borders at least one triangle of `d` and both faces belong to it).
fn has_step(d: &HexDomain, p: FaceCoord, e: usize) -> bool {
    d.face_index(p.step(e)).is_some() && (contains(d, p.sector(e)) || contains(d, p.sector((e + 5) % 6)))
}

pub fn dd_height(dec: &LoopDecomposition) -> Result<DDHeight> {
    let (d, d2) = (dec.first_domain(), dec.second_domain());
    let mut in1: HashSet<Edge> = dec.doubled.iter().copied().collect();
    let mut in2 = in1.clone();
    for (i, c) in dec.components().enumerate() {
        for (e, first) in c.edges() {
            match first {
                Some(true) => in1.insert(e),
                Some(false) => in2.insert(e),
                None => return Err(DdError::Unoriented(i)),
            };
        }
    }
    let pin = common_reference_face(d, d2)?;
    let mut faces = vec![pin];
    let mut values = vec![0i64];
    let mut index = std::collections::HashMap::from([(pin, 0usize)]);
    let mut queue = VecDeque::from([pin]);
    while let Some(p) = queue.pop_front() {
        let hp = values[index[&p]];
        for e in 0..6 {
            if !has_step(d, p, e) || !has_step(d2, p, e) {
                continue;
            }
            let q = p.step(e);
            let sign = if e % 2 == 0 { 1 } else { -1 };
            let edge = edge_of(p.sector(e), p.sector((e + 5) % 6)).expect("sectors are adjacent");
            let delta = -sign * (in2.contains(&edge) as i64 - in1.contains(&edge) as i64);
            let want = hp + delta;
            match index.get(&q) {
                Some(&j) if values[j] != want => {
                    return Err(DdError::Malformed(format!("double-dimer height is path dependent at {q:?}")));
                }
                Some(_) => {}
                None => {
                    index.insert(q, faces.len());
                    faces.push(q);
                    values.push(want);
                    queue.push_back(q);
                }
            }
        }
    }
    Ok(DDHeight { field: HeightField::new(faces, values, pin)? })
}

/// Largest possible gap, in level-line units, between the heights of a
/// tiling of `d` and a tiling of `d2` on faces of the common region that
/// lie on the boundary of either domain. Both are pinned at
/// [`common_reference_face`].
pub fn boundary_discrepancy(d: &HexDomain, d2: &HexDomain) -> Result<i64> {
    let pin = common_reference_face(d, d2)?;
    let (x1, x2) = (domain_extremal_heights(d)?, domain_extremal_heights(d2)?);
    let (p1, p2) = (d.face(pin)?, d2.face(pin)?);
    let (s1, s2) = (x1.max[p1], x2.max[p2]);
    let mut worst = 0;
    for (i, &f) in d.faces().iter().enumerate() {
        let Some(j) = d2.face_index(f) else { continue };
        if d.is_interior(i) && d2.is_interior(j) {
            continue;
        }
        let (lo1, hi1) = (x1.min[i] - s1, x1.max[i] - s1);
        let (lo2, hi2) = (x2.min[j] - s2, x2.max[j] - s2);
        worst = worst.max((hi2 - lo1).abs()).max((hi1 - lo2).abs());
    }
    Ok((worst + 2) / 3)
}
