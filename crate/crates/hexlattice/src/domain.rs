//! Finite simply connected domains of the honeycomb.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::coords::{face_dist_sq, Color, Edge, FaceCoord, Kind, Rational, Vertex};
use crate::error::{HexError, Result};

/// Reference from a face step to the honeycomb edge it crosses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeRef {
    pub white: usize,
    pub kind: Kind,
}

/// A step from one face to a neighbouring face along a lattice segment.
///
/// `sign` is `+1` when the white triangle of the segment lies on the left.
/// `edge` is `None` when only one of the two triangles is in the domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub to: usize,
    pub sign: i64,
    pub edge: Option<EdgeRef>,
}

#[derive(Clone, Debug)]
pub struct HexDomain {
    whites: Vec<(i32, i32)>,
    blacks: Vec<(i32, i32)>,
    white_index: HashMap<(i32, i32), usize>,
    black_index: HashMap<(i32, i32), usize>,
    faces: Vec<FaceCoord>,
    face_index: HashMap<FaceCoord, usize>,
    interior: Vec<bool>,
    steps: Vec<[Option<Step>; 6]>,
    boundary: Vec<(usize, usize)>,
    origin: FaceCoord,
    sides: Option<[i64; 3]>,
}

/// Serialized form: hexagon sides or an explicit face list, plus removals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sides: Option<[i64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<FaceCoord>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub removed: Vec<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<FaceCoord>,
}

impl HexDomain {
    /// The `a × b × c` hexagon with corners `(0,0), (a,0), (a,b),
    /// (a-c,b+c), (-c,b+c), (-c,c)`.
    pub fn hexagon(a: i64, b: i64, c: i64) -> Result<HexDomain> {
        if a < 1 || b < 1 || c < 1 {
            return Err(HexError::NonPositiveSide(a, b, c));
        }
        let inside = |f: FaceCoord| {
            let (u, v) = (f.u as i64, f.v as i64);
            (0..=b + c).contains(&v) && (-c..=a).contains(&u) && (0..=a + b).contains(&(u + v))
        };
        let mut tris = Vec::new();
        for v in -1..=(b + c) as i32 {
            for u in -(c as i32) - 1..=a as i32 {
                for t in [Vertex::white(u, v), Vertex::black(u, v)] {
                    if t.corners().iter().all(|&f| inside(f)) {
                        tris.push(t);
                    }
                }
            }
        }
        let mut d = HexDomain::from_vertices(tris, None)?;
        d.sides = Some([a, b, c]);
        Ok(d)
    }

    /// Domain made of every triangle whose three corners are listed faces.
    pub fn from_faces(faces: &[FaceCoord], origin: Option<FaceCoord>) -> Result<HexDomain> {
        let set: HashSet<FaceCoord> = faces.iter().copied().collect();
        let mut tris = Vec::new();
        for f in &set {
            for t in [Vertex::white(f.u, f.v), Vertex::black(f.u - 1, f.v)] {
                if t.corners().iter().all(|c| set.contains(c)) {
                    tris.push(t);
                }
            }
        }
        HexDomain::from_vertices(tris, origin)
    }

    /// Domain with the given honeycomb vertices; faces are their corners.
    pub fn from_vertices(vertices: Vec<Vertex>, origin: Option<FaceCoord>) -> Result<HexDomain> {
        let mut whites: Vec<(i32, i32)> = Vec::new();
        let mut blacks: Vec<(i32, i32)> = Vec::new();
        for t in &vertices {
            match t.color {
                Color::White => whites.push((t.u, t.v)),
                Color::Black => blacks.push((t.u, t.v)),
            }
        }
        whites.sort_unstable();
        whites.dedup();
        blacks.sort_unstable();
        blacks.dedup();
        if whites.is_empty() && blacks.is_empty() {
            return Err(HexError::EmptyDomain);
        }
        let white_index: HashMap<_, _> = whites.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let black_index: HashMap<_, _> = blacks.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let has = |t: Vertex| match t.color {
            Color::White => white_index.contains_key(&(t.u, t.v)),
            Color::Black => black_index.contains_key(&(t.u, t.v)),
        };
        let all: Vec<Vertex> = whites
            .iter()
            .map(|&(u, v)| Vertex::white(u, v))
            .chain(blacks.iter().map(|&(u, v)| Vertex::black(u, v)))
            .collect();
        for &t in &all {
            if !t.edges().iter().any(|e| has(other_end(e, t))) {
                return Err(HexError::IsolatedVertex(t));
            }
        }
        check_topology(&all, &has)?;

        let mut faces: Vec<FaceCoord> = all.iter().flat_map(|t| t.corners()).collect();
        faces.sort_unstable();
        faces.dedup();
        let face_index: HashMap<_, _> = faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let interior = faces.iter().map(|f| (0..6).all(|s| has(f.sector(s)))).collect();
        let steps = faces
            .iter()
            .map(|f| {
                std::array::from_fn(|e| {
                    let to = *face_index.get(&f.step(e))?;
                    let left = f.sector(e);
                    let right = f.sector(e + 5);
                    let sign = if e % 2 == 0 { 1 } else { -1 };
                    match (has(left), has(right)) {
                        (false, false) => None,
                        (true, true) => {
                            let (w, b) = if left.color == Color::White { (left, right) } else { (right, left) };
                            let edge = Edge::between(w, b).expect("adjacent sectors");
                            let white = white_index[&(edge.u, edge.v)];
                            Some(Step { to, sign, edge: Some(EdgeRef { white, kind: edge.kind }) })
                        }
                        _ => Some(Step { to, sign, edge: None }),
                    }
                })
            })
            .collect();
        let mut d = HexDomain {
            whites,
            blacks,
            white_index,
            black_index,
            faces,
            face_index,
            interior,
            steps,
            boundary: Vec::new(),
            origin: FaceCoord::new(0, 0),
            sides: None,
        };
        d.boundary = d.trace_boundary()?;
        d.origin = match origin {
            Some(o) => {
                d.face(o)?;
                o
            }
            None => d.central_face(),
        };
        Ok(d)
    }

    pub fn from_doc(doc: &DomainDoc) -> Result<HexDomain> {
        let mut d = match (&doc.sides, &doc.faces) {
            (Some([a, b, c]), None) => HexDomain::hexagon(*a, *b, *c)?,
            (None, Some(faces)) => HexDomain::from_faces(faces, None)?,
            _ => return Err(HexError::Document("exactly one of `sides` or `faces` is required".into())),
        };
        if !doc.removed.is_empty() {
            d = d.without_vertices(&doc.removed)?;
        }
        if let Some(o) = doc.origin {
            d = d.with_origin(o)?;
        }
        Ok(d)
    }

    pub fn to_doc(&self) -> DomainDoc {
        if let Some(sides) = self.sides {
            return DomainDoc { sides: Some(sides), faces: None, removed: Vec::new(), origin: Some(self.origin) };
        }
        let induced = HexDomain::from_faces(&self.faces, None);
        let removed = match induced {
            Ok(ind) => ind.vertices().filter(|&t| !self.contains_vertex(t)).collect(),
            Err(_) => Vec::new(),
        };
        DomainDoc { sides: None, faces: Some(self.faces.clone()), removed, origin: Some(self.origin) }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("domain document serializes")
    }

    pub fn from_json(s: &str) -> Result<HexDomain> {
        let doc: DomainDoc = serde_json::from_str(s).map_err(|e| HexError::Document(e.to_string()))?;
        HexDomain::from_doc(&doc)
    }

    pub fn with_origin(&self, origin: FaceCoord) -> Result<HexDomain> {
        self.face(origin)?;
        let mut d = self.clone();
        d.origin = origin;
        Ok(d)
    }

    /// The same domain with `vertex` deleted.
    pub fn without_vertex(&self, vertex: Vertex) -> Result<HexDomain> {
        self.without_vertices(&[vertex])
    }

    pub fn without_vertices(&self, removed: &[Vertex]) -> Result<HexDomain> {
        for &t in removed {
            if !self.contains_vertex(t) {
                return Err(HexError::UnknownVertex(t));
            }
        }
        let keep = self.vertices().filter(|t| !removed.contains(t)).collect();
        let d = HexDomain::from_vertices(keep, None)?;
        match d.face_index(self.origin) {
            Some(_) => d.with_origin(self.origin),
            None => Ok(d),
        }
    }

    /// The domain shifted by a lattice vector; the origin stays put.
    pub fn translated(&self, du: i32, dv: i32) -> Result<HexDomain> {
        let moved = self.vertices().map(|t| Vertex { u: t.u + du, v: t.v + dv, ..t }).collect();
        HexDomain::from_vertices(moved, Some(self.origin))
    }

    pub fn sides(&self) -> Option<[i64; 3]> {
        self.sides
    }

    pub fn origin(&self) -> FaceCoord {
        self.origin
    }

    pub fn origin_index(&self) -> usize {
        self.face_index[&self.origin]
    }

    pub fn num_whites(&self) -> usize {
        self.whites.len()
    }

    pub fn num_blacks(&self) -> usize {
        self.blacks.len()
    }

    pub fn white(&self, i: usize) -> Vertex {
        let (u, v) = self.whites[i];
        Vertex::white(u, v)
    }

    pub fn black(&self, i: usize) -> Vertex {
        let (u, v) = self.blacks[i];
        Vertex::black(u, v)
    }

    pub fn white_index(&self, u: i32, v: i32) -> Option<usize> {
        self.white_index.get(&(u, v)).copied()
    }

    pub fn black_index(&self, u: i32, v: i32) -> Option<usize> {
        self.black_index.get(&(u, v)).copied()
    }

    pub fn contains_vertex(&self, t: Vertex) -> bool {
        match t.color {
            Color::White => self.white_index.contains_key(&(t.u, t.v)),
            Color::Black => self.black_index.contains_key(&(t.u, t.v)),
        }
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.contains_vertex(e.white()) && self.contains_vertex(e.black())
    }

    /// Whites first, then blacks, each in coordinate order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.whites.len()).map(|i| self.white(i)).chain((0..self.blacks.len()).map(|i| self.black(i)))
    }

    /// Edges of the domain in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.whites.iter().flat_map(move |&(u, v)| {
            Kind::ALL.into_iter().map(move |k| Edge::new(u, v, k)).filter(|&e| self.contains_edge(e))
        })
    }

    /// Canonical index `3 * white_index + kind` of an edge.
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        if !self.contains_edge(e) {
            return None;
        }
        Some(3 * self.white_index(e.u, e.v)? + e.kind.index())
    }

    pub fn edge_from_index(&self, i: usize) -> Option<Edge> {
        let (u, v) = *self.whites.get(i / 3)?;
        let e = Edge::new(u, v, Kind::from_index(i % 3)?);
        self.contains_edge(e).then_some(e)
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[FaceCoord] {
        &self.faces
    }

    pub fn face_at(&self, i: usize) -> FaceCoord {
        self.faces[i]
    }

    pub fn face(&self, f: FaceCoord) -> Result<usize> {
        self.face_index.get(&f).copied().ok_or(HexError::UnknownFace(f))
    }

    pub fn face_index(&self, f: FaceCoord) -> Option<usize> {
        self.face_index.get(&f).copied()
    }

    /// True when all six triangles around the face are in the domain.
    pub fn is_interior(&self, i: usize) -> bool {
        self.interior[i]
    }

    pub fn steps(&self, i: usize) -> &[Option<Step>; 6] {
        &self.steps[i]
    }

    /// Counter-clockwise boundary segments `(face, direction)`, domain on the left.
    pub fn boundary_segments(&self) -> &[(usize, usize)] {
        &self.boundary
    }

    /// First face of the boundary walk; heights are pinned here by default.
    pub fn reference_face(&self) -> usize {
        self.boundary[0].0
    }

    pub fn boundary_faces(&self) -> Vec<usize> {
        (0..self.faces.len()).filter(|&i| !self.interior[i]).collect()
    }

    /// Squared distance from the origin to the nearest non-interior face.
    pub fn radius_sq(&self) -> Rational {
        (0..self.faces.len())
            .filter(|&i| !self.interior[i])
            .map(|i| face_dist_sq(self.origin, self.faces[i]))
            .min()
            .unwrap_or_else(|| Rational::from_integer(0))
    }

    pub fn is_balanced(&self) -> bool {
        self.whites.len() == self.blacks.len()
    }

    fn central_face(&self) -> FaceCoord {
        let n = (self.whites.len() + self.blacks.len()) as i64;
        let (mut sp, mut sq) = (0i64, 0i64);
        for t in self.vertices() {
            let (p, q) = t.thirds();
            sp += p;
            sq += q;
        }
        *self
            .faces
            .iter()
            .min_by_key(|f| {
                let x = 3 * f.u as i64 * n - sp;
                let y = 3 * f.v as i64 * n - sq;
                (x * x + x * y + y * y, **f)
            })
            .expect("non-empty domain")
    }

    fn trace_boundary(&self) -> Result<Vec<(usize, usize)>> {
        let is_bd = |f: usize, e: usize| -> bool {
            let face = self.faces[f];
            self.face_index.contains_key(&face.step(e))
                && self.contains_vertex(face.sector(e))
                && !self.contains_vertex(face.sector(e + 5))
        };
        let mut all = Vec::new();
        for f in 0..self.faces.len() {
            for e in 0..6 {
                if is_bd(f, e) {
                    all.push((f, e));
                }
            }
        }
        let start = *all.first().ok_or(HexError::EmptyDomain)?;
        let mut walk = vec![start];
        let (mut f, mut e) = start;
        loop {
            let q = self.face_index[&self.faces[f].step(e)];
            let next = (1..6).map(|k| (e + 9 - k) % 6).find(|&c| is_bd(q, c)).ok_or(HexError::NotSimplyConnected)?;
            if (q, next) == start {
                break;
            }
            walk.push((q, next));
            if walk.len() > all.len() {
                return Err(HexError::NotSimplyConnected);
            }
            (f, e) = (q, next);
        }
        if walk.len() != all.len() {
            return Err(HexError::NotSimplyConnected);
        }
        Ok(walk)
    }
}

fn other_end(e: &Edge, t: Vertex) -> Vertex {
    if t.color == Color::White {
        e.black()
    } else {
        e.white()
    }
}

/// Present triangles must be edge-connected, absent ones around them too.
fn check_topology(all: &[Vertex], has: &dyn Fn(Vertex) -> bool) -> Result<()> {
    let mut seen: HashSet<Vertex> = HashSet::new();
    let mut queue = VecDeque::from([all[0]]);
    seen.insert(all[0]);
    while let Some(t) = queue.pop_front() {
        for e in t.edges() {
            let s = other_end(&e, t);
            if has(s) && seen.insert(s) {
                queue.push_back(s);
            }
        }
    }
    if seen.len() != all.len() {
        return Err(HexError::NotConnected);
    }
    let umin = all.iter().map(|t| t.u).min().unwrap() - 2;
    let umax = all.iter().map(|t| t.u).max().unwrap() + 2;
    let vmin = all.iter().map(|t| t.v).min().unwrap() - 2;
    let vmax = all.iter().map(|t| t.v).max().unwrap() + 2;
    let in_box = |t: Vertex| (umin..=umax).contains(&t.u) && (vmin..=vmax).contains(&t.v);
    let mut absent = 0usize;
    for u in umin..=umax {
        for v in vmin..=vmax {
            absent += [Vertex::white(u, v), Vertex::black(u, v)].iter().filter(|&&t| !has(t)).count();
        }
    }
    let start = Vertex::white(umin, vmin);
    let mut seen: HashSet<Vertex> = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for e in t.edges() {
            let s = other_end(&e, t);
            if in_box(s) && !has(s) && seen.insert(s) {
                queue.push_back(s);
            }
        }
    }
    if seen.len() != absent {
        return Err(HexError::NotSimplyConnected);
    }
    Ok(())
}
