//! Exhaustive enumeration of perfect matchings.

use std::sync::Arc;

use hexlattice::{DimerConfig, Edge, HexDomain, Kind};

use crate::error::{Result, SamplerError};

/// All tilings of `d`, ordered lexicographically by the kind of each white
/// vertex in canonical white order (`A < B < C`).
pub fn enumerate_tilings(d: &Arc<HexDomain>, cap: usize) -> Result<Vec<DimerConfig>> {
    if !d.is_balanced() {
        return Ok(Vec::new());
    }
    let options: Vec<Vec<(Kind, usize)>> = (0..d.num_whites())
        .map(|i| {
            let w = d.white(i);
            Kind::ALL
                .iter()
                .filter_map(|&k| {
                    let b = Edge { u: w.u, v: w.v, kind: k }.black();
                    d.black_index(b.u, b.v).map(|j| (k, j))
                })
                .collect()
        })
        .collect();
    let mut used = vec![false; d.num_blacks()];
    let mut current = Vec::with_capacity(d.num_whites());
    let mut out = Vec::new();
    search(&options, &mut used, &mut current, &mut out, cap)?;
    Ok(out
        .into_iter()
        .map(|kinds| DimerConfig::from_kinds(d.clone(), kinds).expect("enumerated matching is perfect"))
        .collect())
}

fn search(
    options: &[Vec<(Kind, usize)>],
    used: &mut [bool],
    current: &mut Vec<Kind>,
    out: &mut Vec<Vec<Kind>>,
    cap: usize,
) -> Result<()> {
    let i = current.len();
    if i == options.len() {
        if out.len() == cap {
            return Err(SamplerError::CapExceeded(cap));
        }
        out.push(current.clone());
        return Ok(());
    }
    for &(k, j) in &options[i] {
        if used[j] {
            continue;
        }
        used[j] = true;
        current.push(k);
        let r = search(options, used, current, out, cap);
        current.pop();
        used[j] = false;
        r?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_hexagons() {
        let d = Arc::new(HexDomain::hexagon(1, 1, 1).unwrap());
        assert_eq!(enumerate_tilings(&d, 10).unwrap().len(), 2);
        let d = Arc::new(HexDomain::hexagon(2, 2, 2).unwrap());
        let all = enumerate_tilings(&d, 100).unwrap();
        assert_eq!(all.len(), 20);
        for w in all.windows(2) {
            assert!(w[0].kinds() < w[1].kinds());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let d = Arc::new(HexDomain::hexagon(2, 2, 2).unwrap());
        assert!(matches!(enumerate_tilings(&d, 19), Err(SamplerError::CapExceeded(19))));
        assert_eq!(enumerate_tilings(&d, 20).unwrap().len(), 20);
    }

    #[test]
    fn unbalanced_is_empty() {
        let d = HexDomain::hexagon(2, 2, 2).unwrap();
        let w = d.white(0);
        let d = Arc::new(d.without_vertex(w).unwrap());
        assert!(enumerate_tilings(&d, 100).unwrap().is_empty());
    }
}
