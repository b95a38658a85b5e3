//! Walk paths on a graph.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, UstError};
use crate::graph::PlanarGraph;

/// A finite vertex sequence whose consecutive entries are adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WalkPath(Vec<usize>);

impl WalkPath {
    /// Checks every step against the graph.
    pub fn new(g: &PlanarGraph, vertices: Vec<usize>) -> Result<WalkPath> {
        if vertices.is_empty() {
            return Err(UstError::EmptyPath);
        }
        for &v in &vertices {
            if v >= g.num_vertices() {
                return Err(UstError::NoVertex(v));
            }
        }
        for w in vertices.windows(2) {
            if g.arc(w[0], w[1]).is_none() {
                return Err(UstError::NoEdge(w[0], w[1]));
            }
        }
        Ok(WalkPath(vertices))
    }

    /// A path over abstract vertex labels, without a graph to check against.
    pub fn from_vertices(vertices: Vec<usize>) -> Result<WalkPath> {
        if vertices.is_empty() {
            return Err(UstError::EmptyPath);
        }
        Ok(WalkPath(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        self.0[self.0.len() - 1]
    }

    /// Index of the final vertex.
    pub fn final_index(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.0.len());
        self.0.iter().all(|v| seen.insert(*v))
    }

    pub fn reversed(&self) -> WalkPath {
        WalkPath(self.0.iter().rev().copied().collect())
    }

    pub fn polyline(&self, g: &PlanarGraph) -> Vec<[f64; 2]> {
        self.0.iter().map(|&v| g.position(v)).collect()
    }
}

/// Runs the weighted walk from `start` until `stop` holds, including the
/// stopping vertex. `start` itself is tested first.
pub fn random_walk<R, F>(g: &PlanarGraph, start: usize, mut stop: F, rng: &mut R) -> WalkPath
where
    R: Rng + ?Sized,
    F: FnMut(usize) -> bool,
{
    let mut path = vec![start];
    let mut v = start;
    while !stop(v) {
        v = g.step(v, rng);
        path.push(v);
    }
    WalkPath(path)
}

/// Walk from `start` until it is absorbed by the wired boundary.
pub fn walk_to_boundary<R: Rng + ?Sized>(g: &PlanarGraph, start: usize, rng: &mut R) -> WalkPath {
    random_walk(g, start, |v| g.is_boundary(v), rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn walks_end_on_the_boundary_with_valid_steps() {
        let g = PlanarGraph::square_grid(4, 4, 1.0, [0.0, 0.0]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let w = walk_to_boundary(&g, 12, &mut rng);
            assert!(g.is_boundary(w.last()));
            assert!(w.vertices()[..w.final_index()].iter().all(|&v| !g.is_boundary(v)));
            assert!(WalkPath::new(&g, w.vertices().to_vec()).is_ok());
        }
    }

    #[test]
    fn rejects_missing_edges() {
        let g = PlanarGraph::square_grid(2, 2, 1.0, [0.0, 0.0]).unwrap();
        assert_eq!(WalkPath::new(&g, vec![0, 4]).unwrap_err(), UstError::NoEdge(0, 4));
        assert_eq!(WalkPath::new(&g, vec![]).unwrap_err(), UstError::EmptyPath);
    }
}
