//! Boundary perturbations of hexagonal domains, registered by name.

use std::collections::BTreeMap;

use double_dimer::boundary_discrepancy;
use hexlattice::{HexDomain, Vertex};

use crate::config::PerturbationSpec;
use crate::error::{LabError, Result};

pub trait Perturbation: Send + Sync {
    fn name(&self) -> &str;
    fn apply(&self, d: &HexDomain, spec: &PerturbationSpec) -> Result<HexDomain>;
}

/// Leaves the domain unchanged.
pub struct NoPerturbation;

impl Perturbation for NoPerturbation {
    fn name(&self) -> &str {
        "none"
    }

    fn apply(&self, d: &HexDomain, _: &PerturbationSpec) -> Result<HexDomain> {
        Ok(d.clone())
    }
}

/// The `count` boundary lozenges `U(k, v0) D(k-1, v0)` centred on the
/// bottom row, where `v0` is the lowest row.
fn bottom_lozenges(d: &HexDomain, count: usize) -> Result<Vec<Vertex>> {
    let v0 = d.vertices().map(|t| t.v).min().ok_or_else(|| LabError::BadPerturbation("empty domain".into()))?;
    let mut us: Vec<i32> = d.vertices().filter(|t| t.v == v0 && t.color == hexlattice::Color::White).map(|t| t.u).collect();
    us.sort_unstable();
    if us.len() < count + 1 {
        return Err(LabError::BadPerturbation("bottom side too short".into()));
    }
    let start = us[(us.len() - count) / 2];
    let mut out = Vec::with_capacity(2 * count);
    for k in start..start + count as i32 {
        let (w, b) = (Vertex::white(k, v0), Vertex::black(k - 1, v0));
        if !d.contains_vertex(w) || !d.contains_vertex(b) {
            return Err(LabError::BadPerturbation(format!("no boundary lozenge at u = {k}")));
        }
        out.extend([w, b]);
    }
    Ok(out)
}

/// Removes one boundary lozenge in the middle of the bottom side, which
/// moves the boundary height function as adding or removing one cube.
pub struct SingleCube;

impl Perturbation for SingleCube {
    fn name(&self) -> &str {
        "single-cube"
    }

    fn apply(&self, d: &HexDomain, _: &PerturbationSpec) -> Result<HexDomain> {
        Ok(d.without_vertices(&bottom_lozenges(d, 1)?)?)
    }
}

/// Removes `amplitude` consecutive boundary lozenges, giving a notched
/// boundary whose height deviates by up to the amplitude.
pub struct Zigzag;

impl Perturbation for Zigzag {
    fn name(&self) -> &str {
        "zigzag"
    }

    fn apply(&self, d: &HexDomain, spec: &PerturbationSpec) -> Result<HexDomain> {
        Ok(d.without_vertices(&bottom_lozenges(d, spec.amplitude.max(1))?)?)
    }
}

/// Shifts the domain by a lattice vector, keeping the origin.
pub struct Translate;

impl Perturbation for Translate {
    fn name(&self) -> &str {
        "translate"
    }

    fn apply(&self, d: &HexDomain, spec: &PerturbationSpec) -> Result<HexDomain> {
        Ok(d.translated(spec.shift[0], spec.shift[1])?)
    }
}

#[derive(Default)]
pub struct PerturbationRegistry {
    entries: BTreeMap<String, Box<dyn Perturbation>>,
}

impl PerturbationRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_defaults() -> Self {
        let mut r = Self::new();
        r.register(Box::new(NoPerturbation));
        r.register(Box::new(SingleCube));
        r.register(Box::new(Zigzag));
        r.register(Box::new(Translate));
        r
    }

    pub fn register(&mut self, p: Box<dyn Perturbation>) {
        self.entries.insert(p.name().to_string(), p);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Perturbation> {
        self.entries.get(name).map(|b| b.as_ref()).ok_or_else(|| LabError::UnknownPerturbation(name.to_string()))
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.keys().map(String::as_str).collect()
    }

    /// Applies the named perturbation and enforces the discrepancy bound.
    pub fn perturb(&self, d: &HexDomain, spec: &PerturbationSpec) -> Result<(HexDomain, i64)> {
        let d2 = self.get(&spec.name)?.apply(d, spec)?;
        let k = boundary_discrepancy(d, &d2)?;
        if k > spec.k_bound {
            return Err(LabError::KViolated { found: k, bound: spec.k_bound });
        }
        Ok((d2, k))
    }
}

/// The `n x n x n` hexagon with its origin at the central face.
pub fn centred_hexagon(n: i64) -> Result<HexDomain> {
    let d = HexDomain::hexagon(n, n, n)?;
    Ok(d.with_origin(hexlattice::FaceCoord::new(0, n as i32))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(name: &str, k: i64) -> PerturbationSpec {
        PerturbationSpec { name: name.into(), k_bound: k, ..Default::default() }
    }

    #[test]
    fn registry_names() {
        let r = PerturbationRegistry::with_defaults();
        assert_eq!(r.names(), vec!["none", "single-cube", "translate", "zigzag"]);
        assert!(matches!(r.get("swirl"), Err(LabError::UnknownPerturbation(_))));
    }

    #[test]
    fn single_cube_removes_one_lozenge_and_respects_the_bound() {
        let d = centred_hexagon(4).unwrap();
        let r = PerturbationRegistry::with_defaults();
        let (d2, k) = r.perturb(&d, &spec("single-cube", 1)).unwrap();
        assert_eq!(d2.num_whites() + 1, d.num_whites());
        assert_eq!(d2.num_blacks() + 1, d.num_blacks());
        assert!(k <= 1);
        assert_eq!(d2.origin(), d.origin());
        let (same, k0) = r.perturb(&d, &spec("none", 0)).unwrap();
        assert_eq!((same.num_whites(), k0), (d.num_whites(), 0));
    }

    #[test]
    fn bound_violations_are_reported() {
        let d = centred_hexagon(6).unwrap();
        let r = PerturbationRegistry::with_defaults();
        let mut s = spec("zigzag", 0);
        s.amplitude = 3;
        assert!(matches!(r.perturb(&d, &s), Err(LabError::KViolated { .. })));
    }
}
