//! Pre-isolated, even and isolated scales of a crossing trace.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ScalesError};
use crate::trace::CrossingTrace;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaleClassification {
    pub pre_isolated: Vec<i32>,
    /// Even members of `pre_isolated`.
    pub even: Vec<i32>,
    pub isolated: Vec<i32>,
}

impl ScaleClassification {
    pub fn is_nested(&self) -> bool {
        self.isolated.iter().all(|i| self.even.contains(i))
            && self.even.iter().all(|i| i.rem_euclid(2) == 0 && self.pre_isolated.contains(i))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

/// Scales `i` in `i_min..i_max` with `kappa_{i-1} = kappa_i - 1 = kappa_{i+1} - 2`,
/// where `kappa_i` is the last crossing index at scale `i`.
pub fn classify_scales(tr: &CrossingTrace) -> ScaleClassification {
    let pre_isolated: Vec<i32> = (tr.i_min..tr.i_max)
        .filter(|&i| match (tr.last_visit(i - 1), tr.last_visit(i), tr.last_visit(i + 1)) {
            (Some(a), Some(b), Some(c)) => a + 1 == b && b + 1 == c,
            _ => false,
        })
        .collect();
    let even = pre_isolated.iter().copied().filter(|i| i.rem_euclid(2) == 0).collect();
    ScaleClassification { pre_isolated, even, isolated: Vec::new() }
}

/// Promotes even pre-isolated scales whose piece ending at the last crossing
/// of `C_i` surrounds the origin and whose piece two crossings later stays
/// outside `B(0, e^{i+6/7})`. A scale whose later piece runs past the end of
/// the trace is not promoted.
pub fn isolated_scales(tr: &CrossingTrace, points: &[[f64; 2]]) -> Result<ScaleClassification> {
    let last_time = tr.crossings[tr.k_max()].time;
    if points.len() <= last_time {
        return Err(ScalesError::MissingPiece(tr.k_max()));
    }
    let mut cls = classify_scales(tr);
    let mut isolated = Vec::new();
    for &i in &cls.even {
        let kappa = tr.last_visit(i).expect("pre-isolated scales are visited");
        if kappa + 2 > tr.k_max() {
            continue;
        }
        let around = points[tr.piece(kappa - 1, kappa)?].to_vec();
        let later = &points[tr.piece(kappa + 1, kappa + 2)?];
        let radius = (i as f64 + 6.0 / 7.0).exp();
        if separates(&around, tr.origin) && min_distance(later, tr.origin) >= radius {
            isolated.push(i);
        }
    }
    cls.isolated = isolated;
    Ok(cls)
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn segment_distance(a: [f64; 2], b: [f64; 2], z: [f64; 2]) -> f64 {
    let (ab, az) = (sub(b, a), sub(z, a));
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let s = if len2 == 0.0 { 0.0 } else { ((az[0] * ab[0] + az[1] * ab[1]) / len2).clamp(0.0, 1.0) };
    (az[0] - s * ab[0]).hypot(az[1] - s * ab[1])
}

/// Distance from `z` to the polyline, segments included.
pub fn min_distance(p: &[[f64; 2]], z: [f64; 2]) -> f64 {
    match p {
        [] => f64::INFINITY,
        [a] => segment_distance(*a, *a, z),
        _ => p.windows(2).map(|s| segment_distance(s[0], s[1], z)).fold(f64::INFINITY, f64::min),
    }
}

/// The polyline contains a cycle avoiding `z` that winds around it.
///
/// Each segment is labelled by the parity of its crossings with a fixed ray
/// from `z`. A cycle winds an odd number of times exactly when its label sum
/// is odd, and a simple cycle winds at most once, so the test reduces to
/// whether the labels fail to be a coboundary on the segment graph.
/// Segments through `z` are dropped.
pub fn separates(p: &[[f64; 2]], z: [f64; 2]) -> bool {
    let dir = [1.0f64.cos(), 1.0f64.sin()];
    let side = |q: [f64; 2]| {
        let r = sub(q, z);
        dir[0] * r[1] - dir[1] * r[0] > 0.0
    };
    let along = |q: [f64; 2]| {
        let r = sub(q, z);
        dir[0] * r[0] + dir[1] * r[1]
    };
    let mut ids: HashMap<(u64, u64), usize> = HashMap::new();
    let mut id = |q: [f64; 2]| {
        let n = ids.len();
        *ids.entry((q[0].to_bits(), q[1].to_bits())).or_insert(n)
    };
    let mut edges = Vec::new();
    for s in p.windows(2) {
        let (a, b) = (s[0], s[1]);
        if a == b || segment_distance(a, b, z) == 0.0 {
            continue;
        }
        let odd = side(a) != side(b) && {
            // signed distances to the ray line locate the crossing point
            let (ra, rb) = (sub(a, z), sub(b, z));
            let (ca, cb) = (dir[0] * ra[1] - dir[1] * ra[0], dir[0] * rb[1] - dir[1] * rb[0]);
            let s = ca / (ca - cb);
            along(a) + s * (along(b) - along(a)) > 0.0
        };
        edges.push((id(a), id(b), odd));
    }
    let n = ids.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut parity = vec![false; n];
    fn find(parent: &mut [usize], parity: &mut [bool], v: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut r = v;
        while parent[r] != r {
            path.push(r);
            r = parent[r];
        }
        // compress: parity to root is the xor along the path
        let mut acc = false;
        for &u in path.iter().rev() {
            acc ^= parity[u];
            parity[u] = acc;
            parent[u] = r;
        }
        (r, if path.is_empty() { false } else { parity[v] })
    }
    for (a, b, odd) in edges {
        let (ra, pa) = find(&mut parent, &mut parity, a);
        let (rb, pb) = find(&mut parent, &mut parity, b);
        if ra == rb {
            if pa ^ pb != odd {
                return true;
            }
        } else {
            parent[ra] = rb;
            parity[ra] = pa ^ pb ^ odd;
        }
    }
    false
}
