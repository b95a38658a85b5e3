//! Wired spanning trees and Wilson's algorithm.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::erase::LoopEraser;
use crate::error::{Result, UstError};
use crate::graph::{dist_sq, PlanarGraph};
use crate::walk::random_walk;

/// Every interior vertex points to one neighbour; following the pointers
/// always ends on the boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WiredTree {
    next: Vec<Option<usize>>,
}

/// Trees serialize as parent arrays, `null` on the boundary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeDoc {
    pub parent: Vec<Option<usize>>,
}

impl WiredTree {
    pub fn new(g: &PlanarGraph, next: Vec<Option<usize>>) -> Result<WiredTree> {
        if next.len() != g.num_vertices() {
            return Err(UstError::NotTree(format!("{} pointers for {} vertices", next.len(), g.num_vertices())));
        }
        for (v, p) in next.iter().enumerate() {
            match (*p, g.is_boundary(v)) {
                (Some(_), true) => return Err(UstError::NotTree(format!("boundary vertex {v} has a parent"))),
                (None, false) => return Err(UstError::NotTree(format!("vertex {v} has no parent"))),
                (Some(w), false) if g.arc(v, w).is_none() => return Err(UstError::NoEdge(v, w)),
                _ => {}
            }
        }
        // 0 unseen, 1 on the current chain, 2 known to reach the boundary
        let mut state = vec![0u8; next.len()];
        for v in 0..next.len() {
            let mut chain = Vec::new();
            let mut u = v;
            while state[u] == 0 {
                state[u] = 1;
                chain.push(u);
                match next[u] {
                    Some(w) => u = w,
                    None => break,
                }
            }
            if state[u] == 1 && next[u].is_some() {
                return Err(UstError::NotTree(format!("cycle through {u}")));
            }
            for c in chain {
                state[c] = 2;
            }
        }
        Ok(WiredTree { next })
    }

    pub fn next(&self, v: usize) -> Option<usize> {
        self.next[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.next
    }

    /// Oriented edges `(v, next(v))`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.next.iter().enumerate().filter_map(|(v, p)| p.map(|w| (v, w))).collect()
    }

    pub fn num_edges(&self) -> usize {
        self.next.iter().filter(|p| p.is_some()).count()
    }

    /// The branch from `v` to the boundary, both ends included.
    pub fn branch(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut u = v;
        while let Some(w) = self.next[u] {
            out.push(w);
            u = w;
        }
        out
    }

    /// Product of the oriented edge weights.
    pub fn weight(&self, g: &PlanarGraph) -> f64 {
        self.edges().iter().map(|&(v, w)| g.weight(v, w).unwrap_or(0.0)).product()
    }

    pub fn to_doc(&self) -> TreeDoc {
        TreeDoc { parent: self.next.clone() }
    }

    pub fn from_doc(g: &PlanarGraph, doc: &TreeDoc) -> Result<WiredTree> {
        WiredTree::new(g, doc.parent.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("tree documents serialize")
    }

    pub fn from_json(g: &PlanarGraph, s: &str) -> Result<WiredTree> {
        let doc: TreeDoc = serde_json::from_str(s).map_err(|e| UstError::Json(e.to_string()))?;
        WiredTree::from_doc(g, &doc)
    }
}

fn check_order(g: &PlanarGraph, order: &[usize]) -> Result<()> {
    let mut covered = g.boundary_flags().to_vec();
    for &v in order {
        *covered.get_mut(v).ok_or(UstError::NoVertex(v))? = true;
    }
    match covered.iter().position(|c| !c) {
        Some(v) => Err(UstError::OrderIncomplete(v)),
        None => Ok(()),
    }
}

/// Grows the tree from `in_tree` by loop-erased walks started in `order`.
fn grow<R: Rng + ?Sized>(
    g: &PlanarGraph,
    order: &[usize],
    in_tree: &mut [bool],
    next: &mut [Option<usize>],
    rng: &mut R,
) {
    for &v in order {
        let mut u = v;
        // overwriting pointers on revisits erases loops in the order they close
        while !in_tree[u] {
            let w = g.step(u, rng);
            next[u] = Some(w);
            u = w;
        }
        u = v;
        while !in_tree[u] {
            in_tree[u] = true;
            u = next[u].expect("walked vertices have a pointer");
        }
    }
}

/// Exact sample of the weighted wired spanning tree, with walks started at
/// the vertices of `order` in turn.
pub fn wilson_ust<R: Rng + ?Sized>(g: &PlanarGraph, order: &[usize], rng: &mut R) -> Result<WiredTree> {
    check_order(g, order)?;
    let mut in_tree = g.boundary_flags().to_vec();
    let mut next = vec![None; g.num_vertices()];
    grow(g, order, &mut in_tree, &mut next, rng);
    Ok(WiredTree { next })
}

/// Wilson's algorithm with explicit walks and a pluggable loop eraser.
pub fn wilson_ust_with<R: Rng + ?Sized>(
    g: &PlanarGraph,
    order: &[usize],
    eraser: &dyn LoopEraser,
    rng: &mut R,
) -> Result<WiredTree> {
    check_order(g, order)?;
    let mut in_tree = g.boundary_flags().to_vec();
    let mut next = vec![None; g.num_vertices()];
    for &v in order {
        if in_tree[v] {
            continue;
        }
        let walk = random_walk(g, v, |u| in_tree[u], rng);
        let branch = eraser.erase(&walk);
        for w in branch.vertices().windows(2) {
            next[w[0]] = Some(w[1]);
            in_tree[w[0]] = true;
        }
    }
    Ok(WiredTree { next })
}

/// Branches of a wired tree, as an edge set with its vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Subtree {
    pub edges: Vec<(usize, usize)>,
    pub vertices: Vec<usize>,
}

impl Subtree {
    fn from_pointers(next: &[Option<usize>], reached: &[bool]) -> Subtree {
        let vertices: Vec<usize> = (0..next.len()).filter(|&v| reached[v]).collect();
        let edges = vertices.iter().filter_map(|&v| next[v].map(|w| (v, w))).collect();
        Subtree { edges, vertices }
    }

    /// Distance from a plane point to the drawn subtree.
    pub fn distance_to(&self, g: &PlanarGraph, p: [f64; 2]) -> f64 {
        let mut best = self.vertices.iter().map(|&v| dist_sq(g.position(v), p)).fold(f64::INFINITY, f64::min);
        for &(v, w) in &self.edges {
            best = best.min(segment_dist_sq(p, g.position(v), g.position(w)));
        }
        best.sqrt()
    }
}

fn segment_dist_sq(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len = d[0] * d[0] + d[1] * d[1];
    if len == 0.0 {
        return dist_sq(p, a);
    }
    let t = (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len).clamp(0.0, 1.0);
    dist_sq(p, [a[0] + t * d[0], a[1] + t * d[1]])
}

/// Union of the branches from `vset` to the boundary.
pub fn subtree_spanning(t: &WiredTree, vset: &[usize]) -> Subtree {
    let mut reached = vec![false; t.next.len()];
    for &v in vset {
        let mut u = v;
        while !std::mem::replace(&mut reached[u], true) {
            match t.next[u] {
                Some(w) => u = w,
                None => break,
            }
        }
    }
    Subtree::from_pointers(&t.next, &reached)
}

/// Samples only the branches from `starts`; its law is that of
/// `subtree_spanning` applied to a full sample.
pub fn wilson_subtree<R: Rng + ?Sized>(g: &PlanarGraph, starts: &[usize], rng: &mut R) -> Subtree {
    let mut in_tree = g.boundary_flags().to_vec();
    let mut next = vec![None; g.num_vertices()];
    grow(g, starts, &mut in_tree, &mut next, rng);
    let mut reached = vec![false; g.num_vertices()];
    for &v in starts {
        let mut u = v;
        while !std::mem::replace(&mut reached[u], true) {
            match next[u] {
                Some(w) => u = w,
                None => break,
            }
        }
    }
    Subtree::from_pointers(&next, &reached)
}

/// All wired spanning trees, by trying every pointer choice.
pub fn enumerate_wired_trees(g: &PlanarGraph, cap: usize) -> Result<Vec<WiredTree>> {
    let interior: Vec<usize> = g.interior().collect();
    let mut choice = vec![0usize; interior.len()];
    let mut out = Vec::new();
    loop {
        let mut next = vec![None; g.num_vertices()];
        for (k, &v) in interior.iter().enumerate() {
            next[v] = Some(g.arcs(v)[choice[k]].to);
        }
        if let Ok(t) = WiredTree::new(g, next) {
            if out.len() == cap {
                return Err(UstError::CapExceeded(cap));
            }
            out.push(t);
        }
        let mut k = 0;
        loop {
            if k == interior.len() {
                return Ok(out);
            }
            choice[k] += 1;
            if choice[k] < g.arcs(interior[k]).len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphEdge;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn triangle() -> PlanarGraph {
        let pos = vec![[0.0, 0.0], [1.0, 0.0], [0.5, 1.0]];
        let e = vec![GraphEdge::unit(0, 1), GraphEdge::unit(1, 2), GraphEdge::unit(2, 0)];
        PlanarGraph::new(pos, vec![true, false, false], e).unwrap()
    }

    #[test]
    fn rejects_cycles_and_missing_pointers() {
        let g = triangle();
        assert!(WiredTree::new(&g, vec![None, Some(2), Some(1)]).is_err());
        assert!(WiredTree::new(&g, vec![None, None, Some(1)]).is_err());
        assert!(WiredTree::new(&g, vec![Some(1), Some(0), Some(1)]).is_err());
        let t = WiredTree::new(&g, vec![None, Some(2), Some(0)]).unwrap();
        assert_eq!(t.branch(1), vec![1, 2, 0]);
        assert_eq!(WiredTree::from_json(&g, &t.to_json()).unwrap(), t);
    }

    #[test]
    fn triangle_has_three_trees_and_grid_192() {
        assert_eq!(enumerate_wired_trees(&triangle(), 10).unwrap().len(), 3);
        let g = PlanarGraph::square_grid(3, 3, 1.0, [0.0, 0.0]).unwrap();
        assert_eq!(enumerate_wired_trees(&g, 500).unwrap().len(), 192);
        assert!(matches!(enumerate_wired_trees(&g, 100), Err(UstError::CapExceeded(100))));
    }

    #[test]
    fn wilson_output_is_a_tree() {
        let g = PlanarGraph::square_grid(6, 5, 1.0, [0.0, 0.0]).unwrap();
        let order: Vec<usize> = g.interior().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..50 {
            let t = wilson_ust(&g, &order, &mut rng).unwrap();
            assert_eq!(WiredTree::new(&g, t.parents().to_vec()).unwrap(), t);
            assert_eq!(t.num_edges(), order.len());
        }
        assert_eq!(wilson_ust(&g, &order[1..], &mut rng).unwrap_err(), UstError::OrderIncomplete(order[0]));
    }

    #[test]
    fn subtree_of_everything_is_the_tree() {
        let g = PlanarGraph::square_grid(4, 4, 1.0, [0.0, 0.0]).unwrap();
        let order: Vec<usize> = g.interior().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let t = wilson_ust(&g, &order, &mut rng).unwrap();
        let all: Vec<usize> = (0..g.num_vertices()).collect();
        let s = subtree_spanning(&t, &all);
        assert_eq!(s.edges, t.edges());
        let one = subtree_spanning(&t, &[order[3]]);
        let b = t.branch(order[3]);
        assert_eq!(one.edges.len(), b.len() - 1);
        assert!(s.distance_to(&g, [2.0, 2.0]) < 1e-12);
    }
}
