//! Embedded planar graphs with a wired boundary.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, UstError};

/// An undirected edge with one weight per orientation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub a: usize,
    pub b: usize,
    /// Weight of `a -> b`.
    pub w_ab: f64,
    /// Weight of `b -> a`.
    pub w_ba: f64,
}

impl GraphEdge {
    pub fn unit(a: usize, b: usize) -> Self {
        GraphEdge { a, b, w_ab: 1.0, w_ba: 1.0 }
    }
}

/// An outgoing half-edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arc {
    pub to: usize,
    pub edge: usize,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub x: f64,
    pub y: f64,
    #[serde(default)]
    pub boundary: bool,
}

/// JSON adjacency document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<GraphEdge>,
}

/// A straight-line planar graph with a wired boundary set.
///
/// Half-edges at each vertex are stored in counter-clockwise order, which
/// is the combinatorial embedding of the drawing.
#[derive(Clone, Debug)]
pub struct PlanarGraph {
    pos: Vec<[f64; 2]>,
    boundary: Vec<bool>,
    edges: Vec<GraphEdge>,
    arcs: Vec<Vec<Arc>>,
    out_weight: Vec<f64>,
    uniform: Vec<bool>,
}

impl PlanarGraph {
    pub fn new(pos: Vec<[f64; 2]>, boundary: Vec<bool>, edges: Vec<GraphEdge>) -> Result<PlanarGraph> {
        let n = pos.len();
        if boundary.len() != n {
            return Err(UstError::Json(format!("{} boundary flags for {n} vertices", boundary.len())));
        }
        if !boundary.iter().any(|&b| b) {
            return Err(UstError::EmptyBoundary);
        }
        let mut seen = HashSet::new();
        let mut arcs = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            if e.a >= n || e.b >= n {
                return Err(UstError::NoVertex(e.a.max(e.b)));
            }
            if e.a == e.b {
                return Err(UstError::BadEdge(e.a, e.b, "self loop".into()));
            }
            if !(e.w_ab > 0.0 && e.w_ba > 0.0 && e.w_ab.is_finite() && e.w_ba.is_finite()) {
                return Err(UstError::BadEdge(e.a, e.b, "weights must be positive".into()));
            }
            if !seen.insert((e.a.min(e.b), e.a.max(e.b))) {
                return Err(UstError::BadEdge(e.a, e.b, "duplicate".into()));
            }
            arcs[e.a].push(Arc { to: e.b, edge: i, weight: e.w_ab });
            arcs[e.b].push(Arc { to: e.a, edge: i, weight: e.w_ba });
        }
        for (v, list) in arcs.iter_mut().enumerate() {
            let p = pos[v];
            list.sort_by(|x, y| {
                let ax = (pos[x.to][1] - p[1]).atan2(pos[x.to][0] - p[0]);
                let ay = (pos[y.to][1] - p[1]).atan2(pos[y.to][0] - p[0]);
                ax.total_cmp(&ay)
            });
        }
        let out_weight = arcs.iter().map(|l| l.iter().map(|a| a.weight).sum()).collect();
        let uniform = arcs.iter().map(|l| l.windows(2).all(|w| w[0].weight == w[1].weight)).collect();
        let g = PlanarGraph { pos, boundary, edges, arcs, out_weight, uniform };
        g.check_reaches_boundary()?;
        g.check_planar()?;
        Ok(g)
    }

    /// Grid of `(nx+1) x (ny+1)` vertices with the outer ring wired.
    ///
    /// Vertex `(i, j)` has index `j * (nx + 1) + i` and sits at
    /// `origin + spacing * (i, j)`.
    pub fn square_grid(nx: usize, ny: usize, spacing: f64, origin: [f64; 2]) -> Result<PlanarGraph> {
        let w = nx + 1;
        let mut pos = Vec::with_capacity(w * (ny + 1));
        let mut boundary = Vec::with_capacity(pos.capacity());
        for j in 0..=ny {
            for i in 0..=nx {
                pos.push([origin[0] + spacing * i as f64, origin[1] + spacing * j as f64]);
                boundary.push(i == 0 || j == 0 || i == nx || j == ny);
            }
        }
        let mut edges = Vec::new();
        for j in 0..=ny {
            for i in 0..=nx {
                let v = j * w + i;
                if i < nx {
                    edges.push(GraphEdge::unit(v, v + 1));
                }
                if j < ny {
                    edges.push(GraphEdge::unit(v, v + w));
                }
            }
        }
        PlanarGraph::new(pos, boundary, edges)
    }

    /// The mesh-`delta` grid on `[-half*delta, half*delta]^2`, wired on its rim.
    pub fn centered_grid(half: usize, delta: f64) -> Result<PlanarGraph> {
        let h = half as f64 * delta;
        PlanarGraph::square_grid(2 * half, 2 * half, delta, [-h, -h])
    }

    pub fn from_doc(doc: &GraphDoc) -> Result<PlanarGraph> {
        let pos = doc.vertices.iter().map(|v| [v.x, v.y]).collect();
        let boundary = doc.vertices.iter().map(|v| v.boundary).collect();
        PlanarGraph::new(pos, boundary, doc.edges.clone())
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            vertices: self
                .pos
                .iter()
                .zip(&self.boundary)
                .map(|(p, &b)| VertexDoc { x: p[0], y: p[1], boundary: b })
                .collect(),
            edges: self.edges.clone(),
        }
    }

    pub fn from_json(s: &str) -> Result<PlanarGraph> {
        let doc: GraphDoc = serde_json::from_str(s).map_err(|e| UstError::Json(e.to_string()))?;
        PlanarGraph::from_doc(&doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("graph documents serialize")
    }

    pub fn num_vertices(&self) -> usize {
        self.pos.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn position(&self, v: usize) -> [f64; 2] {
        self.pos[v]
    }

    pub fn positions(&self) -> &[[f64; 2]] {
        &self.pos
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.boundary[v]
    }

    pub fn boundary_flags(&self) -> &[bool] {
        &self.boundary
    }

    pub fn interior(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.pos.len()).filter(|&v| !self.boundary[v])
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    /// Outgoing half-edges in counter-clockwise order.
    pub fn arcs(&self, v: usize) -> &[Arc] {
        &self.arcs[v]
    }

    pub fn arc(&self, from: usize, to: usize) -> Option<Arc> {
        self.arcs.get(from)?.iter().copied().find(|a| a.to == to)
    }

    pub fn weight(&self, from: usize, to: usize) -> Option<f64> {
        self.arc(from, to).map(|a| a.weight)
    }

    /// One step of the walk with transition probabilities proportional to
    /// outgoing weights.
    pub fn step<R: Rng + ?Sized>(&self, v: usize, rng: &mut R) -> usize {
        let list = &self.arcs[v];
        if self.uniform[v] {
            return list[rng.gen_range(0..list.len())].to;
        }
        let mut x = rng.gen::<f64>() * self.out_weight[v];
        for a in list {
            x -= a.weight;
            if x < 0.0 {
                return a.to;
            }
        }
        list[list.len() - 1].to
    }

    /// Transition probability of one walk step.
    pub fn transition(&self, from: usize, to: usize) -> f64 {
        self.weight(from, to).map_or(0.0, |w| w / self.out_weight[from])
    }

    /// Closest vertex to a plane point.
    pub fn nearest_vertex(&self, p: [f64; 2]) -> usize {
        (0..self.pos.len())
            .min_by(|&a, &b| dist_sq(self.pos[a], p).total_cmp(&dist_sq(self.pos[b], p)))
            .expect("graphs have a boundary vertex")
    }

    fn check_reaches_boundary(&self) -> Result<()> {
        let mut seen = self.boundary.clone();
        let mut queue: VecDeque<usize> = (0..self.pos.len()).filter(|&v| seen[v]).collect();
        while let Some(v) = queue.pop_front() {
            for a in &self.arcs[v] {
                if !std::mem::replace(&mut seen[a.to], true) {
                    queue.push_back(a.to);
                }
            }
        }
        match seen.iter().position(|&s| !s) {
            Some(v) => Err(UstError::Unreachable(v)),
            None => Ok(()),
        }
    }

    /// Rejects pairs of straight edges that meet away from a shared endpoint.
    fn check_planar(&self) -> Result<()> {
        let longest = self
            .edges
            .iter()
            .map(|e| dist_sq(self.pos[e.a], self.pos[e.b]).sqrt())
            .fold(0.0, f64::max);
        if self.edges.is_empty() || longest == 0.0 {
            return Ok(());
        }
        let cell = |p: [f64; 2]| ((p[0] / longest).floor() as i64, (p[1] / longest).floor() as i64);
        let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            let (c0, c1) = (cell(self.pos[e.a]), cell(self.pos[e.b]));
            for x in c0.0.min(c1.0)..=c0.0.max(c1.0) {
                for y in c0.1.min(c1.1)..=c0.1.max(c1.1) {
                    grid.entry((x, y)).or_default().push(i);
                }
            }
        }
        for bucket in grid.values() {
            for (k, &i) in bucket.iter().enumerate() {
                for &j in &bucket[k + 1..] {
                    let (e, f) = (self.edges[i], self.edges[j]);
                    let shared = [e.a, e.b].iter().filter(|v| **v == f.a || **v == f.b).count();
                    let (p, q, r, s) = (self.pos[e.a], self.pos[e.b], self.pos[f.a], self.pos[f.b]);
                    let bad = if shared == 0 {
                        segments_meet(p, q, r, s)
                    } else {
                        // sharing an endpoint: only collinear overlap is a crossing
                        overlap_at_shared(e, f, &self.pos)
                    };
                    if bad {
                        return Err(UstError::NotPlanar(i.min(j), i.max(j)));
                    }
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn dist_sq(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)
}

pub(crate) fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn on_segment(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> bool {
    cross(a, b, p).abs() <= 1e-12 * (1.0 + dist_sq(a, b))
        && p[0] >= a[0].min(b[0]) - 1e-12
        && p[0] <= a[0].max(b[0]) + 1e-12
        && p[1] >= a[1].min(b[1]) - 1e-12
        && p[1] <= a[1].max(b[1]) + 1e-12
}

/// Closed segments `pq` and `rs` share a point.
pub(crate) fn segments_meet(p: [f64; 2], q: [f64; 2], r: [f64; 2], s: [f64; 2]) -> bool {
    let (d1, d2) = (cross(r, s, p), cross(r, s, q));
    let (d3, d4) = (cross(p, q, r), cross(p, q, s));
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    on_segment(p, r, s) || on_segment(q, r, s) || on_segment(r, p, q) || on_segment(s, p, q)
}

fn overlap_at_shared(e: GraphEdge, f: GraphEdge, pos: &[[f64; 2]]) -> bool {
    let common = if e.a == f.a || e.a == f.b { e.a } else { e.b };
    let x = if e.a == common { e.b } else { e.a };
    let y = if f.a == common { f.b } else { f.a };
    let (o, p, q) = (pos[common], pos[x], pos[y]);
    let dot = (p[0] - o[0]) * (q[0] - o[0]) + (p[1] - o[1]) * (q[1] - o[1]);
    cross(o, p, q).abs() <= 1e-12 * (1.0 + dist_sq(o, p) + dist_sq(o, q)) && dot > 0.0
}
