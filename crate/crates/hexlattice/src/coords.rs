//! Lattice coordinates.
//!
//! Faces of the honeycomb are points of the triangular lattice, written in
//! axial coordinates `(u, v)` with plane position `(u + v/2, v·√3/2)`.
//! Honeycomb vertices are the lattice triangles: the up triangle `U(u, v)`
//! with corners `(u,v), (u+1,v), (u,v+1)` is white, the down triangle
//! `D(u, v)` with corners `(u+1,v), (u,v+1), (u+1,v+1)` is black.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// Exact squared lengths and plane coordinates.
pub type Rational = Ratio<i64>;

/// Axial offsets of the six lattice directions, counter-clockwise from `+x`.
pub const DIRECTIONS: [(i32, i32); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceCoord {
    pub u: i32,
    pub v: i32,
}

impl FaceCoord {
    pub const fn new(u: i32, v: i32) -> Self {
        FaceCoord { u, v }
    }

    /// Plane position as `(x, y / √3)`, both exact.
    pub fn center(&self) -> (Rational, Rational) {
        (
            Rational::new(2 * self.u as i64 + self.v as i64, 2),
            Rational::new(self.v as i64, 2),
        )
    }

    pub fn center_f64(&self) -> [f64; 2] {
        [self.u as f64 + self.v as f64 / 2.0, self.v as f64 * 3f64.sqrt() / 2.0]
    }

    pub fn step(&self, dir: usize) -> FaceCoord {
        let (du, dv) = DIRECTIONS[dir];
        FaceCoord::new(self.u + du, self.v + dv)
    }

    pub fn neighbors(&self) -> [FaceCoord; 6] {
        std::array::from_fn(|d| self.step(d))
    }

    /// Triangle filling the sector between directions `s` and `s + 1`.
    pub fn sector(&self, s: usize) -> Vertex {
        let (u, v) = (self.u, self.v);
        match s % 6 {
            0 => Vertex::white(u, v),
            1 => Vertex::black(u - 1, v),
            2 => Vertex::white(u - 1, v),
            3 => Vertex::black(u - 1, v - 1),
            4 => Vertex::white(u, v - 1),
            _ => Vertex::black(u, v - 1),
        }
    }

    /// Position in thirds of axial units.
    pub(crate) fn thirds(&self) -> (i64, i64) {
        (3 * self.u as i64, 3 * self.v as i64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

/// A honeycomb vertex, i.e. a lattice triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub color: Color,
    pub u: i32,
    pub v: i32,
}

impl Vertex {
    pub const fn white(u: i32, v: i32) -> Self {
        Vertex { color: Color::White, u, v }
    }

    pub const fn black(u: i32, v: i32) -> Self {
        Vertex { color: Color::Black, u, v }
    }

    pub fn corners(&self) -> [FaceCoord; 3] {
        let (u, v) = (self.u, self.v);
        match self.color {
            Color::White => [FaceCoord::new(u, v), FaceCoord::new(u + 1, v), FaceCoord::new(u, v + 1)],
            Color::Black => [
                FaceCoord::new(u + 1, v),
                FaceCoord::new(u, v + 1),
                FaceCoord::new(u + 1, v + 1),
            ],
        }
    }

    /// Centroid in thirds of axial units.
    pub(crate) fn thirds(&self) -> (i64, i64) {
        let off = match self.color {
            Color::White => 1,
            Color::Black => 2,
        };
        (3 * self.u as i64 + off, 3 * self.v as i64 + off)
    }

    pub fn centroid_f64(&self) -> [f64; 2] {
        let (p, q) = self.thirds();
        thirds_to_plane(p, q)
    }

    /// The three honeycomb edges at this vertex.
    pub fn edges(&self) -> [Edge; 3] {
        let (u, v) = (self.u, self.v);
        match self.color {
            Color::White => [Kind::A, Kind::B, Kind::C].map(|k| Edge::new(u, v, k)),
            Color::Black => [
                Edge::new(u, v, Kind::A),
                Edge::new(u + 1, v, Kind::B),
                Edge::new(u, v + 1, Kind::C),
            ],
        }
    }
}

/// Lozenge orientation class of an edge, named by the black partner of
/// `U(u, v)`: `A` is `D(u, v)`, `B` is `D(u-1, v)`, `C` is `D(u, v-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    A = 0,
    B = 1,
    C = 2,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::A, Kind::B, Kind::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Kind> {
        Kind::ALL.get(i).copied()
    }
}

/// A honeycomb edge, i.e. a lozenge, keyed by its white endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: i32,
    pub v: i32,
    pub kind: Kind,
}

impl Edge {
    pub const fn new(u: i32, v: i32, kind: Kind) -> Self {
        Edge { u, v, kind }
    }

    pub fn white(&self) -> Vertex {
        Vertex::white(self.u, self.v)
    }

    pub fn black(&self) -> Vertex {
        match self.kind {
            Kind::A => Vertex::black(self.u, self.v),
            Kind::B => Vertex::black(self.u - 1, self.v),
            Kind::C => Vertex::black(self.u, self.v - 1),
        }
    }

    /// The edge joining two triangles, if they are adjacent.
    pub fn between(white: Vertex, black: Vertex) -> Option<Edge> {
        if white.color != Color::White || black.color != Color::Black {
            return None;
        }
        let kind = match (black.u - white.u, black.v - white.v) {
            (0, 0) => Kind::A,
            (-1, 0) => Kind::B,
            (0, -1) => Kind::C,
            _ => return None,
        };
        Some(Edge::new(white.u, white.v, kind))
    }

    /// Squared distance from `p` to the segment joining the two centroids.
    pub fn dist_sq_to(&self, p: FaceCoord) -> Rational {
        segment_dist_sq(p.thirds(), self.white().thirds(), self.black().thirds())
    }

    /// The lattice segment crossed by this edge, as its two face endpoints.
    pub fn dual_segment(&self) -> (FaceCoord, FaceCoord) {
        let (u, v) = (self.u, self.v);
        match self.kind {
            Kind::A => (FaceCoord::new(u + 1, v), FaceCoord::new(u, v + 1)),
            Kind::B => (FaceCoord::new(u, v), FaceCoord::new(u, v + 1)),
            Kind::C => (FaceCoord::new(u, v), FaceCoord::new(u + 1, v)),
        }
    }
}

pub(crate) fn thirds_to_plane(p: i64, q: i64) -> [f64; 2] {
    let (p, q) = (p as f64 / 3.0, q as f64 / 3.0);
    [p + q / 2.0, q * 3f64.sqrt() / 2.0]
}

/// Twice the plane inner product of two axial vectors.
fn dot2(a: (i64, i64), b: (i64, i64)) -> i64 {
    2 * a.0 * b.0 + a.0 * b.1 + a.1 * b.0 + 2 * a.1 * b.1
}

/// Squared plane distance between a point and a segment, inputs in thirds.
pub(crate) fn segment_dist_sq(p: (i64, i64), a: (i64, i64), b: (i64, i64)) -> Rational {
    let d = (b.0 - a.0, b.1 - a.1);
    let w = (p.0 - a.0, p.1 - a.1);
    let num = dot2(w, d);
    let den = dot2(d, d);
    // |w - t d|^2 with t clamped to [0, 1]; all in thirds, so divide by 9.
    let half = |x: i64| Rational::new(x, 2);
    if num <= 0 {
        half(dot2(w, w)) / 9
    } else if num >= den {
        let e = (p.0 - b.0, p.1 - b.1);
        half(dot2(e, e)) / 9
    } else {
        let t = Rational::new(num, den);
        half(dot2(w, w)) / 9 - t * t * half(den) / 9
    }
}

/// Squared plane distance between two faces.
pub fn face_dist_sq(a: FaceCoord, b: FaceCoord) -> Rational {
    let w = ((a.u - b.u) as i64, (a.v - b.v) as i64);
    Rational::from_integer(w.0 * w.0 + w.0 * w.1 + w.1 * w.1)
}

/// Squared plane distance from a face center to a triangle centroid.
pub fn vertex_dist_sq(f: FaceCoord, t: Vertex) -> Rational {
    let (p, q) = f.thirds();
    let (a, b) = t.thirds();
    let w = (a - p, b - q);
    Rational::new(dot2(w, w), 18)
}
