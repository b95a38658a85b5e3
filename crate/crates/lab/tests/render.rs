use std::sync::Arc;

use double_dimer::superimpose;
use hexlattice::HexDomain;
use lab::{render_svg, Picture};
use rand::SeedableRng;
use tiling_sampler::enumerate_tilings;
use ust::{wilson_ust, PlanarGraph};

#[test]
fn one_loop_is_one_polygon() {
    let d = Arc::new(HexDomain::hexagon(1, 1, 1).unwrap());
    let t = enumerate_tilings(&d, 10).unwrap();
    let dec = superimpose(&t[0], &t[1]).unwrap();
    assert_eq!(dec.loops.len(), 1);
    let svg = render_svg(&Picture::Decomposition(&dec));
    assert_eq!(svg.matches("<polygon").count(), 1);
    assert_eq!(svg.matches("<polyline").count(), 0);
    assert_eq!(svg.matches("<circle").count(), 1);
}

#[test]
fn tree_pictures_are_deterministic() {
    let g = PlanarGraph::square_grid(4, 4, 1.0, [0.0, 0.0]).unwrap();
    let order: Vec<usize> = g.interior().collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    let t = wilson_ust(&g, &order, &mut rng).unwrap();
    let svg = render_svg(&Picture::Tree(&g, &t));
    assert_eq!(svg.matches("<line").count(), order.len());
    assert_eq!(svg, render_svg(&Picture::Tree(&g, &t)));
}
