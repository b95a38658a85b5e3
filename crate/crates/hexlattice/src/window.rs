//! Local windows around the origin and the induced local distance.

use serde::{Deserialize, Serialize};

use crate::coords::{Edge, Rational};
use crate::dimer::DimerConfig;
use crate::error::{HexError, Result};

/// Matched edges meeting the open ball `B(0, r)`, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WindowPattern(pub Vec<Edge>);

/// Window at an exact squared radius.
pub fn local_window_sq(m: &DimerConfig, r_sq: Rational) -> Result<WindowPattern> {
    let d = m.domain();
    let limit = d.radius_sq();
    if r_sq > limit {
        return Err(HexError::RadiusTooLarge { requested: r_sq.to_string(), limit: limit.to_string() });
    }
    let o = d.origin();
    let mut edges: Vec<Edge> = m.edges().into_iter().filter(|e| e.dist_sq_to(o) < r_sq).collect();
    edges.sort_unstable();
    Ok(WindowPattern(edges))
}

/// Window at a real radius.
pub fn local_window(m: &DimerConfig, r: f64) -> Result<WindowPattern> {
    let d = m.domain();
    let limit = d.radius_sq();
    let lim = *limit.numer() as f64 / *limit.denom() as f64;
    if r * r > lim {
        return Err(HexError::RadiusTooLarge { requested: format!("{}", r * r), limit: limit.to_string() });
    }
    let o = d.origin();
    let r_sq = r * r;
    let mut edges: Vec<Edge> = m
        .edges()
        .into_iter()
        .filter(|e| {
            let q = e.dist_sq_to(o);
            (*q.numer() as f64 / *q.denom() as f64) < r_sq
        })
        .collect();
    edges.sort_unstable();
    Ok(WindowPattern(edges))
}

/// Squared radius `R*` of the largest open ball on which two matchings of
/// the same region agree; `None` when they are equal. The local distance is
/// `exp(-R*)`.
pub fn local_distance_sq(m: &DimerConfig, other: &DimerConfig) -> Option<Rational> {
    let o = m.domain().origin();
    let a = m.edges();
    let b = other.edges();
    let in_a: std::collections::HashSet<Edge> = a.iter().copied().collect();
    let in_b: std::collections::HashSet<Edge> = b.iter().copied().collect();
    a.iter()
        .filter(|e| !in_b.contains(e))
        .chain(b.iter().filter(|e| !in_a.contains(e)))
        .map(|e| e.dist_sq_to(o))
        .min()
}
