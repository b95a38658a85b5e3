use std::collections::HashSet;
use std::sync::Arc;

use hexlattice::*;
use proptest::prelude::*;

/// Backtracking over white vertices in coordinate order.
fn all_matchings(d: &Arc<HexDomain>) -> Vec<DimerConfig> {
    fn go(d: &HexDomain, i: usize, used: &mut Vec<bool>, cur: &mut Vec<Kind>, out: &mut Vec<Vec<Kind>>) {
        if i == d.num_whites() {
            out.push(cur.clone());
            return;
        }
        let w = d.white(i);
        for k in Kind::ALL {
            let b = Edge::new(w.u, w.v, k).black();
            if let Some(j) = d.black_index(b.u, b.v) {
                if !used[j] {
                    used[j] = true;
                    cur.push(k);
                    go(d, i + 1, used, cur, out);
                    cur.pop();
                    used[j] = false;
                }
            }
        }
    }
    if !d.is_balanced() {
        return Vec::new();
    }
    let mut out = Vec::new();
    go(d, 0, &mut vec![false; d.num_blacks()], &mut Vec::new(), &mut out);
    out.into_iter().map(|k| DimerConfig::from_kinds(d.clone(), k).unwrap()).collect()
}

fn macmahon(a: i64, b: i64, c: i64) -> u128 {
    let (mut num, mut den) = (1u128, 1u128);
    for i in 1..=a {
        for j in 1..=b {
            for k in 1..=c {
                num *= (i + j + k - 1) as u128;
                den *= (i + j + k - 2) as u128;
                let g = gcd(num, den);
                num /= g;
                den /= g;
            }
        }
    }
    num / den
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn unit_hexagon_has_two_tilings() {
    let d = Arc::new(HexDomain::hexagon(1, 1, 1).unwrap());
    assert_eq!(d.num_whites() + d.num_blacks(), 6);
    assert_eq!(all_matchings(&d).len(), 2);
}

#[test]
fn two_hexagon_has_twenty_tilings() {
    let d = Arc::new(HexDomain::hexagon(2, 2, 2).unwrap());
    assert_eq!(all_matchings(&d).len(), 20);
}

#[test]
fn counts_follow_the_box_formula() {
    for (a, b, c) in [(1, 1, 1), (2, 2, 2), (1, 2, 3), (3, 2, 2), (2, 3, 1)] {
        let d = Arc::new(HexDomain::hexagon(a, b, c).unwrap());
        assert_eq!(all_matchings(&d).len() as u128, macmahon(a, b, c), "({a},{b},{c})");
    }
}

#[test]
fn unit_hexagon_heights_by_hand() {
    let d = Arc::new(HexDomain::hexagon(1, 1, 1).unwrap());
    let pin = FaceCoord::new(0, 0);
    let rim = [((0, 0), 0), ((1, 0), 1), ((1, 1), 0), ((0, 2), 1), ((-1, 2), 0), ((-1, 1), 1)];
    let mut centers = Vec::new();
    for m in all_matchings(&d) {
        let h = height_field(&m, pin).unwrap();
        for ((u, v), want) in rim {
            assert_eq!(h.get(FaceCoord::new(u, v)), Some(want));
        }
        centers.push(h.get(FaceCoord::new(0, 1)).unwrap());
    }
    centers.sort();
    assert_eq!(centers, vec![-1, 2]);
}

#[test]
fn boundary_heights_do_not_depend_on_the_tiling() {
    let d = Arc::new(HexDomain::hexagon(2, 3, 2).unwrap());
    let pin = d.face_at(d.reference_face());
    let all = all_matchings(&d);
    let first = height_field(&all[0], pin).unwrap();
    for m in &all {
        let h = height_field(m, pin).unwrap();
        for f in d.boundary_faces() {
            assert_eq!(h.values()[f], first.values()[f]);
        }
    }
}

#[test]
fn vertex_sums_vanish_around_every_triangle() {
    let d = Arc::new(HexDomain::hexagon(2, 2, 2).unwrap());
    for m in all_matchings(&d) {
        let h = heights(&m, 0);
        for t in d.vertices() {
            let [a, b, c] = t.corners().map(|f| h[d.face(f).unwrap()]);
            assert_eq!((b - a) + (c - b) + (a - c), 0);
            // Each triangle has exactly one matched side: one jump of size 2.
            let jumps = [(a, b), (b, c), (c, a)].iter().filter(|(x, y)| (x - y).abs() == 2).count();
            assert_eq!(jumps, 1);
        }
    }
}

#[test]
fn heights_stay_between_the_extremes_which_are_tilings() {
    let d = Arc::new(HexDomain::hexagon(2, 2, 3).unwrap());
    let ex = domain_extremal_heights(&d).unwrap();
    let mut hit_min = false;
    let mut hit_max = false;
    for m in all_matchings(&d) {
        let h = heights(&m, d.reference_face());
        assert!(h.iter().zip(&ex.min).all(|(x, y)| x >= y));
        assert!(h.iter().zip(&ex.max).all(|(x, y)| x <= y));
        hit_min |= h == ex.min;
        hit_max |= h == ex.max;
    }
    assert!(hit_min && hit_max);
}

#[test]
fn boundary_curve_length_is_twice_the_perimeter_sides() {
    for (a, b, c) in [(1, 1, 1), (2, 5, 3), (4, 4, 1)] {
        let d = HexDomain::hexagon(a, b, c).unwrap();
        let curve = boundary_curve(&d).unwrap();
        assert_eq!(curve.len() as i64, 2 * (a + b + c));
        assert_eq!(curve.points.first(), curve.points.last());
        for w in curve.points.windows(2) {
            let diff: i64 = (0..3).map(|k| (w[1][k] - w[0][k]).abs()).sum();
            assert_eq!(diff, 1);
        }
        // Projection of the rim is the planar boundary walk.
        let mut pos = d.face_at(d.reference_face());
        for (k, &(f, e)) in d.boundary_segments().iter().enumerate() {
            assert_eq!(d.face_at(f), pos);
            let p = curve.points[k];
            let q = curve.points[k + 1];
            let step = [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
            assert_eq!(step, hexlattice::boundary::lift(e));
            pos = pos.step(e);
        }
    }
}

#[test]
fn domain_missing_one_white_is_untileable() {
    let d = Arc::new(HexDomain::hexagon(2, 2, 2).unwrap());
    let w = d.vertices().filter(|t| t.color == Color::White).find(|&t| d.without_vertex(t).is_ok()).unwrap();
    let cut = Arc::new(d.without_vertex(w).unwrap());
    assert!(matches!(boundary_curve(&cut), Err(HexError::Untileable(_))));
    assert!(all_matchings(&cut).is_empty());
}

#[test]
fn windows_agree_exactly_up_to_the_local_distance() {
    let d = Arc::new(HexDomain::hexagon(2, 2, 2).unwrap());
    let all = all_matchings(&d);
    let limit = d.radius_sq();
    let radii: Vec<Rational> = (1..=16).map(|k| Rational::new(k, 16) * limit).chain([Rational::new(1, 4)]).collect();
    for x in &all {
        for y in &all {
            let rstar = local_distance_sq(x, y);
            for &r in &radii {
                let same = local_window_sq(x, r).unwrap() == local_window_sq(y, r).unwrap();
                let expect = rstar.is_none_or(|s| r <= s);
                assert_eq!(same, expect);
            }
        }
    }
}

#[test]
fn single_flip_at_the_center_is_seen_beyond_half_an_edge() {
    let d = Arc::new(HexDomain::hexagon(2, 2, 2).unwrap());
    let all = all_matchings(&d);
    let o = d.origin_index();
    let mut pairs = 0;
    for x in &all {
        for y in &all {
            let hx = heights(x, 0);
            let hy = heights(y, 0);
            let diff: Vec<usize> = (0..hx.len()).filter(|&f| hx[f] != hy[f]).collect();
            if diff == vec![o] {
                pairs += 1;
                assert_eq!(local_distance_sq(x, y), Some(Rational::new(1, 4)));
                assert_eq!(local_window_sq(x, Rational::new(1, 4)).unwrap(), local_window_sq(y, Rational::new(1, 4)).unwrap());
                assert_ne!(local_window_sq(x, Rational::new(1, 3)).unwrap(), local_window_sq(y, Rational::new(1, 3)).unwrap());
            }
        }
    }
    assert!(pairs > 0);
}

#[test]
fn tiling_lipschitz_constant_is_at_most_two() {
    let d = Arc::new(HexDomain::hexagon(2, 2, 2).unwrap());
    for m in all_matchings(&d) {
        let h = height_field(&m, d.origin()).unwrap();
        assert!(lipschitz_bound(&h).unwrap() <= Rational::from_integer(2));
    }
}

proptest! {
    #[test]
    fn centers_are_injective(a in (-50i32..50, -50i32..50), b in (-50i32..50, -50i32..50)) {
        let (fa, fb) = (FaceCoord::new(a.0, a.1), FaceCoord::new(b.0, b.1));
        prop_assert_eq!(fa == fb, fa.center() == fb.center());
    }

    #[test]
    fn adjacency_is_symmetric_with_six_neighbours(u in -100i32..100, v in -100i32..100) {
        let f = FaceCoord::new(u, v);
        let ns = f.neighbors();
        let distinct: HashSet<_> = ns.iter().collect();
        prop_assert_eq!(distinct.len(), 6);
        for n in ns {
            prop_assert!(n.neighbors().contains(&f));
            prop_assert_eq!(face_dist_sq(f, n), Rational::from_integer(1));
        }
    }

    #[test]
    fn heights_are_path_independent(a in 1i64..3, b in 1i64..3, c in 1i64..3, pick in any::<prop::sample::Index>()) {
        let d = Arc::new(HexDomain::hexagon(a, b, c).unwrap());
        let all = all_matchings(&d);
        let m = &all[pick.index(all.len())];
        let h = heights(m, 0);
        for f in 0..d.num_faces() {
            for s in d.steps(f).iter().flatten() {
                prop_assert_eq!(h[s.to] - h[f], increment(s, m));
            }
        }
    }

    #[test]
    fn matchings_round_trip_through_json_indices(a in 1i64..3, b in 1i64..3, c in 1i64..3, pick in any::<prop::sample::Index>()) {
        let d = Arc::new(HexDomain::hexagon(a, b, c).unwrap());
        let all = all_matchings(&d);
        let m = &all[pick.index(all.len())];
        let json = serde_json::to_string(&m.edge_indices()).unwrap();
        let idx: Vec<usize> = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&DimerConfig::from_edge_indices(d.clone(), &idx).unwrap(), m);
    }
}
