//! SVG pictures of tilings, double-dimer superpositions and wired trees.

use std::fmt::Write as _;
use std::path::Path;

use double_dimer::LoopDecomposition;
use hexlattice::{DimerConfig, Edge, FaceCoord, Kind, Vertex};
use ust::{PlanarGraph, WiredTree};

use crate::error::Result;

const SCALE: f64 = 20.0;
const MARGIN: f64 = 10.0;

pub enum Picture<'a> {
    Tiling(&'a DimerConfig),
    Decomposition(&'a LoopDecomposition),
    Tree(&'a PlanarGraph, &'a WiredTree),
}

fn kind_color(k: Kind) -> &'static str {
    match k {
        Kind::A => "#e3b448",
        Kind::B => "#4a7ab5",
        Kind::C => "#b5524a",
    }
}

/// Lattice point to SVG user units, y pointing down.
fn to_svg(p: [f64; 2]) -> [f64; 2] {
    [p[0] * SCALE, -p[1] * SCALE]
}

/// The four corners of a lozenge in cyclic order.
pub fn lozenge_corners(e: Edge) -> [FaceCoord; 4] {
    let w = e.white().corners();
    let b = e.black().corners();
    let w_only = *w.iter().find(|c| !b.contains(c)).expect("triangles share one side");
    let b_only = *b.iter().find(|c| !w.contains(c)).expect("triangles share one side");
    let shared: Vec<FaceCoord> = w.iter().copied().filter(|c| b.contains(c)).collect();
    [w_only, shared[0], b_only, shared[1]]
}

struct Canvas {
    body: String,
    lo: [f64; 2],
    hi: [f64; 2],
}

impl Canvas {
    fn new() -> Canvas {
        Canvas { body: String::new(), lo: [f64::INFINITY; 2], hi: [f64::NEG_INFINITY; 2] }
    }

    fn point(&mut self, p: [f64; 2]) -> String {
        let q = to_svg(p);
        for d in 0..2 {
            self.lo[d] = self.lo[d].min(q[d]);
            self.hi[d] = self.hi[d].max(q[d]);
        }
        format!("{:.3},{:.3}", q[0], q[1])
    }

    fn points(&mut self, ps: &[[f64; 2]]) -> String {
        ps.iter().map(|&p| self.point(p)).collect::<Vec<_>>().join(" ")
    }

    fn line(&mut self, a: [f64; 2], b: [f64; 2], attrs: &str) {
        let (pa, pb) = (self.point(a), self.point(b));
        let (a, b) = (pa.split_once(',').expect("pair"), pb.split_once(',').expect("pair"));
        writeln!(self.body, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" {attrs}/>"#, a.0, a.1, b.0, b.1).expect("string");
    }

    fn finish(self, defs: &str) -> String {
        let (lo, hi) = if self.lo[0].is_finite() { (self.lo, self.hi) } else { ([0.0; 2], [0.0; 2]) };
        let (x, y) = (lo[0] - MARGIN, lo[1] - MARGIN);
        let (w, h) = (hi[0] - lo[0] + 2.0 * MARGIN, hi[1] - lo[1] + 2.0 * MARGIN);
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x:.3} {y:.3} {w:.3} {h:.3}\" width=\"{w:.0}\" height=\"{h:.0}\">\n{defs}{}</svg>\n",
            self.body
        )
    }
}

fn centroid(t: Vertex) -> [f64; 2] {
    t.centroid_f64()
}

fn tiling(m: &DimerConfig) -> String {
    let mut c = Canvas::new();
    let mut edges = m.edges();
    edges.sort_unstable();
    for e in edges {
        let corners: Vec<[f64; 2]> = lozenge_corners(e).iter().map(|f| f.center_f64()).collect();
        let pts = c.points(&corners);
        writeln!(c.body, r##"<polygon points="{pts}" fill="{}" stroke="#222" stroke-width="0.8"/>"##, kind_color(e.kind))
            .expect("string");
    }
    c.finish("")
}

fn decomposition(dec: &LoopDecomposition) -> String {
    let mut c = Canvas::new();
    for e in &dec.doubled {
        c.line(centroid(e.white()), centroid(e.black()), r##"stroke="#999" stroke-width="2""##);
    }
    for l in &dec.loops {
        let pts: Vec<[f64; 2]> = l.vertices.iter().map(|&t| centroid(t)).collect();
        let pts = c.points(&pts);
        writeln!(c.body, r##"<polygon points="{pts}" fill="none" stroke="#2a6f3a" stroke-width="2"/>"##).expect("string");
    }
    for p in &dec.paths {
        let pts: Vec<[f64; 2]> = p.vertices.iter().map(|&t| centroid(t)).collect();
        let pts = c.points(&pts);
        writeln!(c.body, r##"<polyline points="{pts}" fill="none" stroke="#c02f1d" stroke-width="2.5"/>"##)
            .expect("string");
    }
    let o = c.point(dec.origin().center_f64());
    let (x, y) = o.split_once(',').expect("pair");
    writeln!(c.body, r##"<circle cx="{x}" cy="{y}" r="3" fill="#000"/>"##).expect("string");
    c.finish("")
}

fn tree(g: &PlanarGraph, t: &WiredTree) -> String {
    let mut c = Canvas::new();
    let mut edges = t.edges();
    edges.sort_unstable();
    for (v, w) in edges {
        c.line(g.position(v), g.position(w), r##"stroke="#1d4f8c" stroke-width="1" marker-end="url(#arrow)""##);
    }
    let defs = concat!(
        r##"<defs><marker id="arrow" viewBox="0 0 6 6" refX="6" refY="3" markerWidth="4" markerHeight="4" orient="auto">"##,
        r##"<path d="M0,0 L6,3 L0,6 z" fill="#1d4f8c"/></marker></defs>"##,
        "\n"
    );
    c.finish(defs)
}

pub fn render_svg(p: &Picture) -> String {
    match p {
        Picture::Tiling(m) => tiling(m),
        Picture::Decomposition(d) => decomposition(d),
        Picture::Tree(g, t) => tree(g, t),
    }
}

pub fn write_svg(p: &Picture, path: &Path) -> Result<()> {
    std::fs::write(path, render_svg(p))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use hexlattice::HexDomain;
    use std::sync::Arc;

    #[test]
    fn lozenge_corners_form_a_rhombus() {
        let d = HexDomain::hexagon(1, 1, 1).unwrap();
        for e in d.edges() {
            let q: Vec<[f64; 2]> = lozenge_corners(e).iter().map(|f| f.center_f64()).collect();
            let side = |a: [f64; 2], b: [f64; 2]| (a[0] - b[0]).hypot(a[1] - b[1]);
            let sides: Vec<f64> = (0..4).map(|i| side(q[i], q[(i + 1) % 4])).collect();
            assert!(sides.iter().all(|s| (s - sides[0]).abs() < 1e-9), "{sides:?}");
            // diagonals differ, so the order is cyclic rather than crossed
            assert!((side(q[0], q[2]) - side(q[1], q[3])).abs() > 1e-3);
        }
    }

    #[test]
    fn hexagon_of_side_one_has_three_colours() {
        let d = Arc::new(HexDomain::hexagon(1, 1, 1).unwrap());
        for m in tiling_sampler::enumerate_tilings(&d, 10).unwrap() {
            let svg = render_svg(&Picture::Tiling(&m));
            assert_eq!(svg.matches("<polygon").count(), 3);
            for k in Kind::ALL {
                assert_eq!(svg.matches(kind_color(k)).count(), 1);
            }
            assert_eq!(svg, render_svg(&Picture::Tiling(&m)));
        }
    }
}
