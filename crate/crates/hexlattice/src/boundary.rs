//! Boundary curves lifted to the cubic lattice.

use serde::{Deserialize, Serialize};

use crate::domain::HexDomain;
use crate::error::Result;
use crate::height::domain_extremal_heights;

/// Closed lattice path in `Z^3`; the last point repeats the first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoundaryCurve {
    pub points: Vec<[i64; 3]>,
}

impl BoundaryCurve {
    /// Number of unit steps.
    pub fn len(&self) -> usize {
        self.points.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.points).expect("integer triples serialize")
    }
}

/// Unit vector of `Z^3` for a boundary step in lattice direction `dir`.
///
/// `+x` projects to direction 0, `+y` to direction 2 and `+z` to direction
/// 4; the height of a point is the sum of its coordinates.
pub fn lift(dir: usize) -> [i64; 3] {
    match dir % 6 {
        0 => [1, 0, 0],
        1 => [0, 0, -1],
        2 => [0, 1, 0],
        3 => [-1, 0, 0],
        4 => [0, 0, 1],
        _ => [0, -1, 0],
    }
}

/// The stepped-surface rim of a tileable domain.
pub fn boundary_curve(d: &HexDomain) -> Result<BoundaryCurve> {
    domain_extremal_heights(d)?;
    let mut p = [0i64; 3];
    let mut points = vec![p];
    for &(_, e) in d.boundary_segments() {
        let s = lift(e);
        for k in 0..3 {
            p[k] += s[k];
        }
        points.push(p);
    }
    Ok(BoundaryCurve { points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::HexError;
    use crate::height::boundary_heights;

    #[test]
    fn unit_cube_rim() {
        let d = HexDomain::hexagon(1, 1, 1).unwrap();
        let c = boundary_curve(&d).unwrap();
        assert_eq!(c.len(), 6);
        assert_eq!(c.points.first(), c.points.last());
        let mut seen = c.points[..6].to_vec();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 6);
        assert!(c.points.iter().all(|p| p.iter().all(|&x| x == 0 || x.abs() == 1)));
    }

    #[test]
    fn lifted_height_matches_boundary_heights() {
        let d = HexDomain::hexagon(2, 3, 4).unwrap();
        let c = boundary_curve(&d).unwrap();
        let bd = boundary_heights(&d).unwrap();
        for (k, &(_, h)) in bd.iter().enumerate() {
            assert_eq!(c.points[k].iter().sum::<i64>(), h);
        }
    }

    #[test]
    fn unbalanced_domain_is_untileable() {
        let d = HexDomain::hexagon(2, 2, 2).unwrap();
        let w = d.vertices().find(|&t| d.without_vertex(t).is_ok() && t.color == crate::Color::White).unwrap();
        let cut = d.without_vertex(w).unwrap();
        assert!(matches!(boundary_curve(&cut), Err(HexError::Untileable(_))));
    }

    #[test]
    fn json_is_an_array_of_triples() {
        let d = HexDomain::hexagon(1, 1, 1).unwrap();
        let s = boundary_curve(&d).unwrap().to_json();
        let v: Vec<[i64; 3]> = serde_json::from_str(&s).unwrap();
        assert_eq!(v.len(), 7);
    }
}
