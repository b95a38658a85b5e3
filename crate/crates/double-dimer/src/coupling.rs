//! The matching M'' of the second domain: the second matching with every
//! loop flipped to the first matching's edges.

use std::collections::HashSet;

use hexlattice::{DimerConfig, Edge, Rational};

use crate::decomposition::{superimpose, ComponentKind, LoopDecomposition};
use crate::error::{DdError, Result};

/// `e` is kept when it is in the second matching and on no loop, or when it
/// lies on a loop and is in the first matching.
pub fn m_double_prime(dec: &LoopDecomposition) -> Result<DimerConfig> {
    let mut edges = dec.doubled.clone();
    for (i, c) in dec.components().enumerate() {
        for (e, first) in c.edges() {
            let first = first.ok_or(DdError::Unoriented(i))?;
            let keep = match c.kind {
                ComponentKind::Loop => first,
                ComponentKind::Path => !first,
            };
            if keep {
                edges.push(e);
            }
        }
    }
    Ok(DimerConfig::from_edges(dec.second_domain().clone(), &edges)?)
}

pub fn build_m_double_prime(m: &DimerConfig, m2: &DimerConfig) -> Result<DimerConfig> {
    m_double_prime(&superimpose(m, m2)?)
}

/// Whether some open path comes within closed distance `sqrt(r_sq)` of the
/// origin face centre.
pub fn paths_hit_ball_sq(dec: &LoopDecomposition, r_sq: Rational) -> bool {
    let o = dec.origin();
    dec.paths.iter().any(|p| p.edges().iter().any(|(e, _)| e.dist_sq_to(o) <= r_sq))
}

pub fn paths_hit_ball(dec: &LoopDecomposition, r: f64) -> bool {
    match Rational::approximate_float(r * r) {
        Some(r_sq) if r > 0.0 => paths_hit_ball_sq(dec, r_sq),
        _ => false,
    }
}

/// Vertices of the common region off every path, and how many of them have
/// the same partner in `m` and `mpp`.
pub fn off_path_agreement(m: &DimerConfig, mpp: &DimerConfig, dec: &LoopDecomposition) -> (usize, usize) {
    let on_path: HashSet<_> = dec.paths.iter().flat_map(|p| p.vertices.iter().copied()).collect();
    let second = mpp.domain();
    let (mut agree, mut total) = (0, 0);
    for t in m.domain().vertices() {
        if on_path.contains(&t) || !second.contains_vertex(t) {
            continue;
        }
        total += 1;
        let e: Option<Edge> = m.edge_at(t);
        if e.is_some() && e == mpp.edge_at(t) {
            agree += 1;
        }
    }
    (agree, total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hexlattice::{HexDomain, Kind};
    use std::sync::Arc;

    #[test]
    fn same_matching_gives_itself() {
        let d = Arc::new(HexDomain::hexagon(1, 1, 1).unwrap());
        let x = [Edge::new(0, 0, Kind::A), Edge::new(0, 1, Kind::B), Edge::new(-1, 1, Kind::C)];
        let x = DimerConfig::from_edges(d, &x).unwrap();
        assert_eq!(build_m_double_prime(&x, &x).unwrap(), x);
    }

    #[test]
    fn single_loop_takes_the_first_matching() {
        let d = Arc::new(HexDomain::hexagon(1, 1, 1).unwrap());
        let x = [Edge::new(0, 0, Kind::A), Edge::new(0, 1, Kind::B), Edge::new(-1, 1, Kind::C)];
        let y = [Edge::new(0, 0, Kind::B), Edge::new(0, 1, Kind::C), Edge::new(-1, 1, Kind::A)];
        let x = DimerConfig::from_edges(d.clone(), &x).unwrap();
        let y = DimerConfig::from_edges(d, &y).unwrap();
        assert_eq!(build_m_double_prime(&x, &y).unwrap(), x);
        let dec = superimpose(&x, &y).unwrap();
        assert!(!paths_hit_ball(&dec, 10.0));
    }
}
