//! Splitting `m ∪ m2` into doubled edges, alternating loops and open paths.
//!
//! Loops are stored clockwise from their smallest vertex (always white), so
//! the first edge runs white to black. A loop is positive when the edges
//! traversed white to black in clockwise order belong to the first matching.
//! Paths run from their smaller endpoint; the same rule along that direction
//! gives their tag.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use hexlattice::{Color, DimerConfig, Edge, FaceCoord, HexDomain, Vertex};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{DdError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Loop,
    Path,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Positive,
    Negative,
}

/// One loop or path of the superposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub kind: ComponentKind,
    pub vertices: Vec<Vertex>,
    /// Whether the edge from `vertices[0]` to `vertices[1]` is in the first
    /// matching. Membership alternates along the component.
    pub lead_in_first: Option<bool>,
}

impl Component {
    /// Edges in traversal order with membership in the first matching.
    pub fn edges(&self) -> Vec<(Edge, Option<bool>)> {
        let n = self.vertices.len();
        let count = match self.kind {
            ComponentKind::Loop => n,
            ComponentKind::Path => n - 1,
        };
        (0..count)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                let e = edge_of(a, b).expect("consecutive vertices are adjacent");
                (e, self.lead_in_first.map(|f| f == (i % 2 == 0)))
            })
            .collect()
    }

    /// Tag read off the membership; `None` when unassigned.
    pub fn orientation(&self) -> Option<Orientation> {
        let lead = self.lead_in_first?;
        // edge 0 runs white to black iff the first vertex is white
        let white_first = self.vertices[0].color == Color::White;
        Some(if lead == white_first { Orientation::Positive } else { Orientation::Negative })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

pub(crate) fn edge_of(a: Vertex, b: Vertex) -> Option<Edge> {
    match a.color {
        Color::White => Edge::between(a, b),
        Color::Black => Edge::between(b, a),
    }
}

/// Superposition of a matching of `first` and a matching of `second`.
#[derive(Clone, Debug)]
pub struct LoopDecomposition {
    first: Arc<HexDomain>,
    second: Arc<HexDomain>,
    pub doubled: Vec<Edge>,
    pub loops: Vec<Component>,
    pub paths: Vec<Component>,
}

fn partners(m: &DimerConfig) -> HashMap<Vertex, Vertex> {
    let mut p = HashMap::with_capacity(2 * m.kinds().len());
    for e in m.edges() {
        p.insert(e.white(), e.black());
        p.insert(e.black(), e.white());
    }
    p
}

/// Twice the signed area of the polygon through the centroids, in thirds.
fn signed_area(vs: &[Vertex]) -> i64 {
    let pt = |t: &Vertex| -> (i64, i64) {
        let off = if t.color == Color::White { 1 } else { 2 };
        (3 * t.u as i64 + off, 3 * t.v as i64 + off)
    };
    let n = vs.len();
    (0..n)
        .map(|i| {
            let (a, b) = (pt(&vs[i]), pt(&vs[(i + 1) % n]));
            a.0 * b.1 - a.1 * b.0
        })
        .sum()
}

pub fn superimpose(m: &DimerConfig, m2: &DimerConfig) -> Result<LoopDecomposition> {
    let (d, d2) = (m.domain().clone(), m2.domain().clone());
    let (p1, p2) = (partners(m), partners(m2));
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    let mut doubled = Vec::new();
    let mut loops = Vec::new();
    let mut paths = Vec::new();

    // walk from `start`, first along `first_step` (true = first matching)
    let walk = |start: Vertex, mut use_first: bool, seen: &mut BTreeSet<Vertex>| -> (Vec<Vertex>, bool) {
        let mut vs = vec![start];
        seen.insert(start);
        let mut cur = start;
        loop {
            let next = if use_first { p1.get(&cur) } else { p2.get(&cur) };
            match next {
                Some(&n) if n == start => return (vs, true),
                Some(&n) => {
                    vs.push(n);
                    seen.insert(n);
                    cur = n;
                    use_first = !use_first;
                }
                None => return (vs, false),
            }
        }
    };

    let mut all: Vec<Vertex> = d.vertices().chain(d2.vertices()).collect();
    all.sort();
    all.dedup();
    // paths start at vertices covered by one matching only
    for &t in &all {
        if seen.contains(&t) {
            continue;
        }
        let (a, b) = (p1.get(&t), p2.get(&t));
        if a.is_some() && b.is_some() {
            continue;
        }
        let use_first = a.is_some();
        let (vs, closed) = walk(t, use_first, &mut seen);
        if closed {
            return Err(DdError::Malformed("path closed on itself".into()));
        }
        if vs.len() < 2 {
            return Err(DdError::Malformed(format!("isolated vertex {t:?}")));
        }
        // `t` is the smallest unseen endpoint, so the walk already runs
        // from the smaller end.
        paths.push(Component { kind: ComponentKind::Path, vertices: vs, lead_in_first: Some(use_first) });
    }
    for &t in &all {
        if seen.contains(&t) {
            continue;
        }
        let (a, b) = (p1[&t], p2[&t]);
        if a == b {
            seen.insert(t);
            seen.insert(a);
            doubled.push(edge_of(t, a).expect("matched pair is adjacent"));
            continue;
        }
        let (mut vs, closed) = walk(t, true, &mut seen);
        if !closed {
            return Err(DdError::Malformed("loop did not close".into()));
        }
        // `t` is the smallest vertex; `vs[1]` is its first-matching partner
        let mut lead = true;
        if signed_area(&vs) > 0 {
            // counter-clockwise: reverse, keeping `t` first
            vs[1..].reverse();
            lead = false;
        }
        loops.push(Component { kind: ComponentKind::Loop, vertices: vs, lead_in_first: Some(lead) });
    }
    doubled.sort();
    Ok(LoopDecomposition { first: d, second: d2, doubled, loops, paths })
}

/// Serialized form: component kind, vertex list, orientation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub origin: FaceCoord,
    pub doubled: Vec<Edge>,
    pub components: Vec<ComponentDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub kind: ComponentKind,
    pub vertices: Vec<Vertex>,
    pub orientation: Option<Orientation>,
}

impl LoopDecomposition {
    pub fn first_domain(&self) -> &Arc<HexDomain> {
        &self.first
    }

    pub fn second_domain(&self) -> &Arc<HexDomain> {
        &self.second
    }

    /// Origin of the first domain.
    pub fn origin(&self) -> FaceCoord {
        self.first.origin()
    }

    pub fn components(&self) -> impl Iterator<Item = &Component> {
        self.loops.iter().chain(&self.paths)
    }

    /// Edges of the first and second matching carried by the decomposition.
    pub fn matchings(&self) -> Result<(DimerConfig, DimerConfig)> {
        let mut e1 = self.doubled.clone();
        let mut e2 = self.doubled.clone();
        for (i, c) in self.components().enumerate() {
            for (e, first) in c.edges() {
                match first {
                    Some(true) => e1.push(e),
                    Some(false) => e2.push(e),
                    None => return Err(DdError::Unoriented(i)),
                }
            }
        }
        Ok((DimerConfig::from_edges(self.first.clone(), &e1)?, DimerConfig::from_edges(self.second.clone(), &e2)?))
    }

    /// Copy with loop orientations set from `bits` (`true` = positive).
    pub fn with_loop_orientations(&self, bits: &[bool]) -> Result<LoopDecomposition> {
        if bits.len() != self.loops.len() {
            return Err(DdError::BitCount { expected: self.loops.len(), got: bits.len() });
        }
        let mut out = self.clone();
        for (c, &positive) in out.loops.iter_mut().zip(bits) {
            // loops start at a white vertex, so positive means edge 0 in m
            c.lead_in_first = Some(positive);
        }
        Ok(out)
    }

    pub fn to_doc(&self) -> DecompositionDoc {
        DecompositionDoc {
            origin: self.origin(),
            doubled: self.doubled.clone(),
            components: self
                .components()
                .map(|c| ComponentDoc { kind: c.kind, vertices: c.vertices.clone(), orientation: c.orientation() })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("decomposition serializes")
    }
}

/// Fresh fair orientation bits for every loop (one `gen::<bool>` per loop,
/// in stored order); paths keep the orientation forced by their endpoints.
pub fn resample_orientations<R: Rng + ?Sized>(
    dec: &LoopDecomposition,
    rng: &mut R,
) -> Result<(DimerConfig, DimerConfig)> {
    let bits: Vec<bool> = (0..dec.loops.len()).map(|_| rng.gen()).collect();
    dec.with_loop_orientations(&bits)?.matchings()
}
