//! Temperley's bijection on square-lattice patches.
//!
//! The primal graph is the `n x m` block of interior vertices of a grid whose
//! outer ring is wired. On the doubled grid, primal vertices sit at even
//! coordinates, dual vertices (faces) at odd coordinates and edge midpoints
//! at mixed ones. The dimer graph is the box `[1, 2n+1] x [1, 2m+1]` of the
//! doubled grid with the corner dual vertex `(1, 1)` removed; that corner
//! is the root of the dual tree.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet, VecDeque};
use std::f64::consts::PI;

use num_rational::Ratio;

use crate::error::{Result, UstError};
use crate::graph::PlanarGraph;
use crate::tree::WiredTree;
use crate::winding::{winding_intrinsic, winding_topological};

/// A point of the doubled grid.
pub type Fine = (i32, i32);

/// A primal patch and its dimer graph.
#[derive(Clone, Debug)]
pub struct TemperleyPatch {
    n: usize,
    m: usize,
    primal: PlanarGraph,
    points: Vec<Fine>,
    index: HashMap<Fine, usize>,
}

/// A perfect matching of the dimer graph, as a partner array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SquareMatching {
    partner: Vec<usize>,
}

impl SquareMatching {
    pub fn partner(&self, i: usize) -> usize {
        self.partner[i]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }
}

/// Dimer heights on the unit squares of the doubled grid, in quarters.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareHeights {
    quarters: HashMap<Fine, i64>,
}

impl SquareHeights {
    /// Height of the square with lower-left corner `f`.
    pub fn get(&self, f: Fine) -> Option<Ratio<i64>> {
        self.quarters.get(&f).map(|&q| Ratio::new(q, 4))
    }

    pub fn faces(&self) -> impl Iterator<Item = Fine> + '_ {
        self.quarters.keys().copied()
    }
}

impl TemperleyPatch {
    pub fn new(n: usize, m: usize) -> Result<TemperleyPatch> {
        if n == 0 || m == 0 {
            return Err(UstError::EmptyBoundary);
        }
        let primal = PlanarGraph::square_grid(n + 1, m + 1, 1.0, [0.0, 0.0])?;
        let mut points = Vec::new();
        for y in 1..=2 * m as i32 + 1 {
            for x in 1..=2 * n as i32 + 1 {
                if (x, y) != (1, 1) {
                    points.push((x, y));
                }
            }
        }
        let index = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        Ok(TemperleyPatch { n, m, primal, points, index })
    }

    pub fn size(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    /// The wired primal grid; vertex `(i, j)` has index `j * (n + 2) + i`.
    pub fn primal(&self) -> &PlanarGraph {
        &self.primal
    }

    pub fn primal_index(&self, i: i32, j: i32) -> usize {
        j as usize * (self.n + 2) + i as usize
    }

    pub fn primal_coords(&self, v: usize) -> (i32, i32) {
        ((v % (self.n + 2)) as i32, (v / (self.n + 2)) as i32)
    }

    fn fine_of(&self, v: usize) -> Fine {
        let (i, j) = self.primal_coords(v);
        (2 * i, 2 * j)
    }

    /// Vertices of the dimer graph.
    pub fn points(&self) -> &[Fine] {
        &self.points
    }

    pub fn point_index(&self, p: Fine) -> Option<usize> {
        self.index.get(&p).copied()
    }

    /// Unit squares of the doubled grid bounded by dimer-graph edges,
    /// named by their lower-left corner.
    pub fn faces(&self) -> Vec<Fine> {
        let mut out = Vec::new();
        for y in 1..=2 * self.m as i32 {
            for x in 1..=2 * self.n as i32 {
                if (x, y) != (1, 1) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    fn is_face(&self, f: Fine) -> bool {
        f != (1, 1) && f.0 >= 1 && f.1 >= 1 && f.0 <= 2 * self.n as i32 && f.1 <= 2 * self.m as i32
    }

    pub fn matching(&self, partner: Vec<usize>) -> Result<SquareMatching> {
        if partner.len() != self.points.len() {
            return Err(UstError::NotMatching(format!("{} entries for {} vertices", partner.len(), self.points.len())));
        }
        for (i, &j) in partner.iter().enumerate() {
            let (p, q) = (self.points[i], *self.points.get(j).ok_or(UstError::NoVertex(j))?);
            if partner[j] != i || (p.0 - q.0).abs() + (p.1 - q.1).abs() != 1 {
                return Err(UstError::NotMatching(format!("{p:?} and {q:?}")));
            }
        }
        Ok(SquareMatching { partner })
    }

    fn pair(&self, partner: &mut [usize], a: Fine, b: Fine) -> Result<()> {
        let (i, j) = (self.index[&a], self.index[&b]);
        if partner[i] != usize::MAX || partner[j] != usize::MAX {
            return Err(UstError::NotTree(format!("{a:?} or {b:?} matched twice")));
        }
        partner[i] = j;
        partner[j] = i;
        Ok(())
    }

    fn primal_in_patch(&self, t: &WiredTree) -> Result<()> {
        if t.parents().len() != self.primal.num_vertices() {
            return Err(UstError::NotTree("tree is not on this patch".into()));
        }
        Ok(())
    }

    /// Dual vertices adjacent across primal edges missing from the tree.
    fn dual_tree_parents(&self, t: &WiredTree) -> Result<HashMap<Fine, Fine>> {
        self.primal_in_patch(t)?;
        let in_tree: HashSet<(usize, usize)> =
            t.edges().into_iter().flat_map(|(a, b)| [(a, b), (b, a)]).collect();
        let (n, m) = (self.n as i32, self.m as i32);
        let mut parent = HashMap::new();
        let mut queue = VecDeque::from([(1, 1)]);
        let mut seen = HashSet::from([(1, 1)]);
        while let Some(f) = queue.pop_front() {
            for (dx, dy) in [(2, 0), (-2, 0), (0, 2), (0, -2)] {
                let g = (f.0 + dx, f.1 + dy);
                if g.0 < 1 || g.1 < 1 || g.0 > 2 * n + 1 || g.1 > 2 * m + 1 || seen.contains(&g) {
                    continue;
                }
                // the primal edge crossed runs through the midpoint
                let mid = ((f.0 + g.0) / 2, (f.1 + g.1) / 2);
                let (a, b) = if dx != 0 { ((mid.0, mid.1 - 1), (mid.0, mid.1 + 1)) } else { ((mid.0 - 1, mid.1), (mid.0 + 1, mid.1)) };
                let (pa, pb) = (self.primal_index(a.0 / 2, a.1 / 2), self.primal_index(b.0 / 2, b.1 / 2));
                if in_tree.contains(&(pa, pb)) {
                    continue;
                }
                seen.insert(g);
                parent.insert(g, f);
                queue.push_back(g);
            }
        }
        let faces = (self.n + 1) * (self.m + 1);
        if parent.len() + 1 != faces {
            return Err(UstError::NotTree("complement is not a dual spanning tree".into()));
        }
        Ok(parent)
    }

    /// Orientation of the dual edge between two adjacent dual vertices, as
    /// `(from, to)`, read off the two primal branches at the crossed edge.
    pub fn dual_arrow(&self, t: &WiredTree, f: Fine, g: Fine) -> Result<(Fine, Fine)> {
        self.primal_in_patch(t)?;
        let mid = ((f.0 + g.0) / 2, (f.1 + g.1) / 2);
        let (a, b) = if f.1 == g.1 { ((mid.0, mid.1 - 1), (mid.0, mid.1 + 1)) } else { ((mid.0 - 1, mid.1), (mid.0 + 1, mid.1)) };
        let (pa, pb) = (self.primal_index(a.0 / 2, a.1 / 2), self.primal_index(b.0 / 2, b.1 / 2));
        if t.next(pa) == Some(pb) || t.next(pb) == Some(pa) {
            return Err(UstError::NotTree("the crossed primal edge is in the tree".into()));
        }
        let (ba, bb) = (t.branch(pa), t.branch(pb));
        let to_xy = |v: usize| {
            let (i, j) = self.fine_of(v);
            [i as f64, j as f64]
        };
        let on_b: HashMap<usize, usize> = bb.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let meet = ba.iter().position(|v| on_b.contains_key(v) && !self.primal.is_boundary(*v));
        let mut poly: Vec<[f64; 2]> = Vec::new();
        match meet {
            Some(k) => {
                // closed loop a -> meet <- b -> a
                poly.extend(ba[..=k].iter().map(|&v| to_xy(v)));
                poly.extend(bb[..on_b[&ba[k]]].iter().rev().map(|&v| to_xy(v)));
                poly.push(to_xy(pa));
            }
            None => {
                // boundary to boundary through a, b, closed far outside
                poly.extend(ba.iter().rev().map(|&v| to_xy(v)));
                poly.extend(bb.iter().map(|&v| to_xy(v)));
                let c = [self.n as f64 + 1.0, self.m as f64 + 1.0];
                let c = [2.0 * c[0], 2.0 * c[1]];
                let far = 8.0 * (self.n + self.m + 2) as f64;
                let ang = |p: [f64; 2]| (p[1] - c[1]).atan2(p[0] - c[0]);
                let (start, end) = (poly[poly.len() - 1], poly[0]);
                let (a0, mut a1) = (ang(start), ang(end));
                while a1 <= a0 {
                    a1 += 2.0 * PI;
                }
                let steps = 64;
                for s in 0..=steps {
                    let th = a0 + (a1 - a0) * s as f64 / steps as f64;
                    poly.push([c[0] + far * th.cos(), c[1] + far * th.sin()]);
                }
                poly.push(end);
            }
        }
        let side = |p: Fine| winding_topological(&poly, [p.0 as f64, p.1 as f64]).map(crate::winding::turns);
        let root = side((1, 1))?;
        let (sf, sg) = (side(f)?, side(g)?);
        if sf == sg {
            return Err(UstError::NotTree("branches do not separate the two faces".into()));
        }
        Ok(if sg == root { (f, g) } else { (g, f) })
    }

    /// The matching carried by a wired tree: each primal vertex takes the
    /// half-edge to its parent, each non-root dual vertex the half-edge to
    /// its parent in the dual tree oriented towards the root.
    pub fn temperley_dimers(&self, t: &WiredTree) -> Result<SquareMatching> {
        let dual = self.dual_tree_parents(t)?;
        let mut partner = vec![usize::MAX; self.points.len()];
        for v in self.primal.interior() {
            let w = t.next(v).expect("interior vertices have parents");
            let (p, q) = (self.fine_of(v), self.fine_of(w));
            self.pair(&mut partner, p, ((p.0 + q.0) / 2, (p.1 + q.1) / 2))?;
        }
        for (&f, &g) in &dual {
            self.pair(&mut partner, f, ((f.0 + g.0) / 2, (f.1 + g.1) / 2))?;
        }
        self.matching(partner)
    }

    /// Inverse of [`Self::temperley_dimers`].
    pub fn tree_from_dimers(&self, d: &SquareMatching) -> Result<WiredTree> {
        let mut next = vec![None; self.primal.num_vertices()];
        for v in self.primal.interior() {
            let p = self.fine_of(v);
            let q = self.points[d.partner(self.index[&p])];
            let w = (2 * q.0 - p.0, 2 * q.1 - p.1);
            next[v] = Some(self.primal_index(w.0 / 2, w.1 / 2));
        }
        WiredTree::new(&self.primal, next)
    }

    /// Neighbouring square across one side and the height change, in
    /// quarters, when moving there. Crossing an edge changes the height by
    /// `1/4 - [matched]` when its even endpoint is on the right of the
    /// crossing, and by the opposite amount otherwise.
    pub fn crossing(&self, d: &SquareMatching, f: Fine, dir: usize) -> Option<(Fine, i64)> {
        // direction of travel and the corners left and right of it
        let ((dx, dy), l, r) = match dir % 4 {
            0 => ((1, 0), (f.0 + 1, f.1 + 1), (f.0 + 1, f.1)),
            1 => ((0, 1), (f.0, f.1 + 1), (f.0 + 1, f.1 + 1)),
            2 => ((-1, 0), (f.0, f.1), (f.0, f.1 + 1)),
            _ => ((0, -1), (f.0 + 1, f.1), (f.0, f.1)),
        };
        let g = (f.0 + dx, f.1 + dy);
        if !self.is_face(f) || !self.is_face(g) {
            return None;
        }
        let (li, ri) = (*self.index.get(&l)?, *self.index.get(&r)?);
        let step = 1 - 4 * (d.partner(li) == ri) as i64;
        Some((g, if (r.0 + r.1) % 2 == 0 { step } else { -step }))
    }

    /// Dimer heights pinned to 0 at the top-right square.
    pub fn heights(&self, d: &SquareMatching) -> SquareHeights {
        let start = (2 * self.n as i32, 2 * self.m as i32);
        let mut quarters = HashMap::from([(start, 0i64)]);
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            let h = quarters[&f];
            for dir in 0..4 {
                if let Some((g, step)) = self.crossing(d, f, dir) {
                    if let Entry::Vacant(e) = quarters.entry(g) {
                        e.insert(h + step);
                        queue.push_back(g);
                    }
                }
            }
        }
        SquareHeights { quarters }
    }

    fn face_anchor(&self, f: Fine) -> Result<(usize, [f64; 2])> {
        if !self.is_face(f) {
            return Err(UstError::NoFace(f));
        }
        let px = if f.0 % 2 == 0 { f.0 } else { f.0 + 1 };
        let py = if f.1 % 2 == 0 { f.1 } else { f.1 + 1 };
        Ok((self.primal_index(px / 2, py / 2), [f.0 as f64 + 0.5, f.1 as f64 + 0.5]))
    }

    fn xy(&self, v: usize) -> [f64; 2] {
        let (x, y) = self.fine_of(v);
        [x as f64, y as f64]
    }

    /// Branches from the primal corners of two squares, cut at the vertex
    /// where they merge.
    fn branches_to_junction(&self, t: &WiredTree, x: Fine, y: Fine) -> Result<(Vec<usize>, Vec<usize>)> {
        let (vx, _) = self.face_anchor(x)?;
        let (vy, _) = self.face_anchor(y)?;
        let (bx, by) = (t.branch(vx), t.branch(vy));
        let on_y: HashMap<usize, usize> = by.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let k = bx
            .iter()
            .position(|v| on_y.contains_key(v))
            .filter(|&k| !self.primal.is_boundary(bx[k]))
            .ok_or(UstError::NoTreePath(x, y))?;
        let j = on_y[&bx[k]];
        Ok((bx[..=k].to_vec(), by[..=j].to_vec()))
    }

    /// The tree path between two squares: from the centre of `x` to its
    /// primal corner, through the tree, and out to the centre of `y`.
    pub fn tree_path(&self, t: &WiredTree, x: Fine, y: Fine) -> Result<Vec<[f64; 2]>> {
        self.primal_in_patch(t)?;
        let (bx, by) = self.branches_to_junction(t, x, y)?;
        let mut poly = vec![self.face_anchor(x)?.1];
        poly.extend(bx.iter().map(|&v| self.xy(v)));
        poly.extend(by[..by.len() - 1].iter().rev().map(|&v| self.xy(v)));
        poly.push(self.face_anchor(y)?.1);
        Ok(poly)
    }

    /// Winding of a square's branch up to the junction, continued one step
    /// along the junction's own tree edge.
    fn branch_winding(&self, t: &WiredTree, centre: [f64; 2], branch: &[usize]) -> Result<f64> {
        let z = *branch.last().expect("branches are nonempty");
        let mut poly = vec![centre];
        poly.extend(branch.iter().map(|&v| self.xy(v)));
        poly.push(self.xy(t.next(z).expect("junctions are interior")));
        winding_intrinsic(&poly)
    }

    /// `W_int` of the tree path between two squares over `2 pi`, after the
    /// local surgery at the junction: both branches are continued along the
    /// junction's parent edge instead of turning into each other. The result
    /// is a multiple of `1/8`.
    pub fn height_from_winding(&self, t: &WiredTree, x: Fine, y: Fine) -> Result<Ratio<i64>> {
        self.primal_in_patch(t)?;
        if x == y {
            self.face_anchor(x)?;
            return Ok(Ratio::from_integer(0));
        }
        let (bx, by) = self.branches_to_junction(t, x, y)?;
        let wx = self.branch_winding(t, self.face_anchor(x)?.1, &bx)?;
        let wy = self.branch_winding(t, self.face_anchor(y)?.1, &by)?;
        let eighths = ((wx - wy) / (2.0 * PI) * 8.0).round() as i64;
        Ok(Ratio::new(eighths, 8))
    }

    /// Surgery term at the junction: `2 pi * height_from_winding - W_int(tree_path)`.
    pub fn junction_correction(&self, t: &WiredTree, x: Fine, y: Fine) -> Result<f64> {
        let h = self.height_from_winding(t, x, y)?;
        let w = if x == y { 0.0 } else { winding_intrinsic(&self.tree_path(t, x, y)?)? };
        Ok(2.0 * PI * (*h.numer() as f64 / *h.denom() as f64) - w)
    }
}

/// All perfect matchings of the dimer graph, by backtracking.
pub fn enumerate_square_matchings(p: &TemperleyPatch, cap: usize) -> Result<Vec<SquareMatching>> {
    let n = p.points.len();
    let nbrs: Vec<Vec<usize>> = p
        .points
        .iter()
        .map(|&(x, y)| {
            [(x + 1, y), (x, y + 1), (x - 1, y), (x, y - 1)]
                .iter()
                .filter_map(|q| p.index.get(q).copied())
                .collect()
        })
        .collect();
    let mut partner = vec![usize::MAX; n];
    let mut out = Vec::new();
    fn rec(
        i: usize,
        nbrs: &[Vec<usize>],
        partner: &mut [usize],
        out: &mut Vec<SquareMatching>,
        cap: usize,
    ) -> Result<()> {
        let Some(i) = (i..partner.len()).find(|&k| partner[k] == usize::MAX) else {
            if out.len() == cap {
                return Err(UstError::CapExceeded(cap));
            }
            out.push(SquareMatching { partner: partner.to_vec() });
            return Ok(());
        };
        for &j in &nbrs[i] {
            if partner[j] == usize::MAX {
                partner[i] = j;
                partner[j] = i;
                rec(i + 1, nbrs, partner, out, cap)?;
                partner[i] = usize::MAX;
                partner[j] = usize::MAX;
            }
        }
        Ok(())
    }
    rec(0, &nbrs, &mut partner, &mut out, cap)?;
    Ok(out)
}
