use std::collections::HashMap;
use std::sync::Arc;

use hexlattice::{
    domain_extremal_heights, height_field, lipschitz_bound, vertex_dist_sq, DimerConfig, HexDomain, Rational, Vertex,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use tiling_sampler::{
    admissible_flips, chain_rng, conditional_sample, enumerate_tilings, flip, glauber_step, spread_out_statistic,
    Cftp, ConditionalRegion, ConditionalSpec, FlipSite, FlipTable, GlauberChain,
};

fn chi_square_p(counts: &[usize], probs: &[f64]) -> f64 {
    let n: usize = counts.iter().sum();
    let stat: f64 = counts
        .iter()
        .zip(probs)
        .map(|(&c, &p)| {
            let e = p * n as f64;
            (c as f64 - e).powi(2) / e
        })
        .sum();
    1.0 - ChiSquared::new((counts.len() - 1) as f64).unwrap().cdf(stat)
}

fn uniform_p(all: &[DimerConfig], samples: &[DimerConfig]) -> f64 {
    let index: HashMap<Vec<usize>, usize> = all.iter().enumerate().map(|(i, m)| (m.edge_indices(), i)).collect();
    let mut counts = vec![0; all.len()];
    for s in samples {
        counts[index[&s.edge_indices()]] += 1;
    }
    chi_square_p(&counts, &vec![1.0 / all.len() as f64; all.len()])
}

fn corner_cut(a: i64, b: i64, c: i64) -> Arc<HexDomain> {
    let d = HexDomain::hexagon(a, b, c).unwrap();
    Arc::new(d.without_vertices(&[Vertex::white(0, 0), Vertex::black(-1, 0)]).unwrap())
}

#[test]
fn cftp_batches_are_uniform_on_small_domains() {
    let domains = [
        Arc::new(HexDomain::hexagon(2, 2, 2).unwrap()),
        Arc::new(HexDomain::hexagon(1, 2, 3).unwrap()),
        Arc::new(HexDomain::hexagon(2, 2, 3).unwrap()),
        Arc::new(HexDomain::hexagon(1, 3, 3).unwrap()),
        corner_cut(2, 2, 3),
    ];
    for (i, d) in domains.iter().enumerate() {
        let all = enumerate_tilings(d, 200).unwrap();
        assert!(all.len() > 2);
        let c = Cftp::for_domain(d).unwrap();
        let samples = c.sample_many(100_000, &mut chain_rng(100, i as u64)).unwrap();
        let p = uniform_p(&all, &samples);
        assert!(p > 1e-3, "domain {i}: p = {p}");
    }
}

#[test]
fn single_cftp_samples_are_uniform() {
    let d = Arc::new(HexDomain::hexagon(2, 2, 2).unwrap());
    let all = enumerate_tilings(&d, 100).unwrap();
    let c = Cftp::for_domain(&d).unwrap();
    let mut rng = chain_rng(7, 0);
    let samples: Vec<_> = (0..20_000).map(|_| c.sample(&mut rng).unwrap()).collect();
    assert!(uniform_p(&all, &samples) > 1e-3);
}

#[test]
fn unit_hexagon_is_a_fair_coin() {
    let d = Arc::new(HexDomain::hexagon(1, 1, 1).unwrap());
    let all = enumerate_tilings(&d, 10).unwrap();
    let c = Cftp::for_domain(&d).unwrap();
    let n = 100_000;
    let samples = c.sample_many(n, &mut chain_rng(3, 0)).unwrap();
    let first = samples.iter().filter(|m| **m == all[0]).count() as f64 / n as f64;
    assert!((first - 0.5).abs() < 3.0 * (0.25 / n as f64).sqrt(), "{first}");
}

/// Transition counts in units of 1 / (2 * #interior faces).
fn glauber_matrix(all: &[DimerConfig]) -> Vec<Vec<usize>> {
    let d = all[0].domain();
    let index: HashMap<Vec<usize>, usize> = all.iter().enumerate().map(|(i, m)| (m.edge_indices(), i)).collect();
    let interior: Vec<_> = (0..d.num_faces()).filter(|&f| d.is_interior(f)).map(|f| d.face_at(f)).collect();
    let mut p = vec![vec![0; all.len()]; all.len()];
    for (i, m) in all.iter().enumerate() {
        for &face in &interior {
            for up in [true, false] {
                let j = match flip(m, FlipSite { face, up }).unwrap() {
                    Some(next) => index[&next.edge_indices()],
                    None => i,
                };
                p[i][j] += 1;
            }
        }
    }
    p
}

#[test]
fn glauber_is_reversible_for_uniform() {
    for d in [
        Arc::new(HexDomain::hexagon(2, 2, 2).unwrap()),
        Arc::new(HexDomain::hexagon(1, 2, 3).unwrap()),
        Arc::new(HexDomain::hexagon(2, 2, 3).unwrap()),
        corner_cut(2, 2, 2),
    ] {
        let all = enumerate_tilings(&d, 50).unwrap();
        let p = glauber_matrix(&all);
        for i in 0..all.len() {
            for j in 0..all.len() {
                assert_eq!(p[i][j], p[j][i]);
            }
        }
        // irreducible: every tiling reaches every other
        let mut seen = vec![false; all.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..all.len() {
                if p[i][j] > 0 && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        assert!(seen.iter().all(|&x| x));
        // aperiodic: some tiling has a self-loop
        assert!((0..all.len()).any(|i| p[i][i] > 0));
    }
}

#[test]
fn glauber_long_run_is_uniform() {
    let d = Arc::new(HexDomain::hexagon(2, 2, 2).unwrap());
    let all = enumerate_tilings(&d, 100).unwrap();
    let mut chain = GlauberChain::new(&all[0]);
    let mut rng = chain_rng(5, 0);
    chain.run(10_000, &mut rng);
    // thin by 200 moves (about 28 sweeps) between records
    let samples: Vec<_> = (0..20_000)
        .map(|_| {
            chain.run(200, &mut rng);
            chain.config()
        })
        .collect();
    assert!(uniform_p(&all, &samples) > 1e-3);
}

#[test]
fn glauber_step_on_unit_hexagon() {
    let d = Arc::new(HexDomain::hexagon(1, 1, 1).unwrap());
    let all = enumerate_tilings(&d, 10).unwrap();
    let mut rng = chain_rng(2, 0);
    let n = 40_000;
    for m in &all {
        let moved = (0..n).filter(|_| glauber_step(m, &mut rng) != *m).count() as f64 / n as f64;
        assert!((moved - 0.5).abs() < 3.0 * (0.25 / n as f64).sqrt());
    }
}

/// Tilings containing every edge of `m` whose two triangles lie outside
/// the open ball of squared radius `r2`.
fn completions(all: &[DimerConfig], m: &DimerConfig, r2: Rational) -> Vec<DimerConfig> {
    let o = m.domain().origin();
    let frozen: Vec<_> =
        m.edges().into_iter().filter(|e| vertex_dist_sq(o, e.white()) >= r2 && vertex_dist_sq(o, e.black()) >= r2).collect();
    all.iter().filter(|t| frozen.iter().all(|&e| t.contains(e))).cloned().collect()
}

#[test]
fn conditional_law_matches_enumerated_completions() {
    let d = Arc::new(HexDomain::hexagon(3, 3, 3).unwrap());
    let all = enumerate_tilings(&d, 1000).unwrap();
    let mut rng = chain_rng(11, 0);
    let mut checked = 0;
    for (k, r) in [(0usize, 1.5), (250, 2.0), (613, 2.5), (977, 1.2)] {
        let m = &all[k];
        let spec = ConditionalSpec::new(r, m.clone()).unwrap();
        let oracle = completions(&all, m, spec.radius_sq());
        if oracle.len() < 2 {
            continue;
        }
        let reg = ConditionalRegion::new(&spec).unwrap();
        let mut samples = Vec::new();
        while samples.len() < 20_000 {
            for h in reg.sample_heights_batch(&mut rng).unwrap() {
                samples.push(tiling_sampler::matching_from_heights(&d, &h));
            }
        }
        assert!(uniform_p(&oracle, &samples) > 1e-3, "tiling {k}, R = {r}");
        checked += 1;
    }
    assert!(checked >= 3);
}

/// A tiling and radius whose frozen part leaves exactly two completions.
fn two_completion_case() -> (Vec<DimerConfig>, ConditionalSpec) {
    let d = Arc::new(HexDomain::hexagon(3, 3, 3).unwrap());
    let all = enumerate_tilings(&d, 1000).unwrap();
    for m in &all {
        let spec = ConditionalSpec::new(1.0, m.clone()).unwrap();
        let oracle = completions(&all, m, spec.radius_sq());
        if oracle.len() == 2 {
            return (oracle, spec);
        }
    }
    panic!("no two-completion case");
}

#[test]
fn two_completions_are_equally_likely() {
    let (oracle, spec) = two_completion_case();
    let mut rng = chain_rng(13, 0);
    let n = 10_000;
    let first = (0..n).filter(|_| conditional_sample(&spec, &mut rng).unwrap() == oracle[0]).count() as f64 / n as f64;
    assert!((first - 0.5).abs() < 3.0 * (0.25 / n as f64).sqrt(), "{first}");
}

#[test]
fn spread_statistic_splits_between_two_heights() {
    let (oracle, spec) = two_completion_case();
    let d = spec.domain();
    let pin = d.face_at(d.reference_face());
    let h: Vec<i64> = oracle.iter().map(|m| height_field(m, pin).unwrap().get(d.origin()).unwrap()).collect();
    let mut rng = chain_rng(17, 0);
    let s = spread_out_statistic(&spec, 20_000, &mut rng).unwrap();
    if h[0] != h[1] {
        assert!((s.statistic - 0.5).abs() < 3.0 * (0.25 / 20_000f64).sqrt() + 1e-9, "{}", s.statistic);
    } else {
        assert_eq!(s.statistic, 1.0);
    }
}

#[test]
fn forced_completion_has_statistic_one() {
    let d = Arc::new(HexDomain::hexagon(4, 4, 4).unwrap());
    let m = Cftp::for_domain(&d).unwrap().sample(&mut chain_rng(1, 1)).unwrap();
    let spec = ConditionalSpec::new(0.5, m).unwrap();
    let s = spread_out_statistic(&spec, 100, &mut chain_rng(1, 2)).unwrap();
    assert_eq!(s.statistic, 1.0);
}

#[test]
fn samples_on_the_eight_hexagon_are_two_lipschitz() {
    let d = Arc::new(HexDomain::hexagon(8, 8, 8).unwrap());
    let c = Cftp::for_domain(&d).unwrap();
    let pin = d.face_at(d.reference_face());
    for m in c.sample_many(64, &mut chain_rng(19, 0)).unwrap() {
        let l = lipschitz_bound(&height_field(&m, pin).unwrap()).unwrap();
        assert!(l <= Rational::from_integer(2));
    }
}

#[test]
fn sample_heights_stay_between_extremes() {
    let d = Arc::new(HexDomain::hexagon(5, 4, 6).unwrap());
    let ex = domain_extremal_heights(&d).unwrap();
    let c = Cftp::for_domain(&d).unwrap();
    for h in c.sample_heights_batch(&mut chain_rng(23, 0)).unwrap() {
        for f in 0..d.num_faces() {
            assert!(ex.min[f] <= h[f] as i64 && h[f] as i64 <= ex.max[f]);
        }
    }
}

fn random_heights(d: &Arc<HexDomain>, seed: u64) -> Vec<i32> {
    let ex = domain_extremal_heights(d).unwrap();
    let start: Vec<i32> = ex.min.iter().map(|&x| x as i32).collect();
    let mut chain = GlauberChain::new(&tiling_sampler::matching_from_heights(d, &start));
    chain.run(2_000, &mut ChaCha8Rng::seed_from_u64(seed));
    chain.heights().to_vec()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn heat_bath_preserves_order(seed_a in any::<u64>(), seed_b in any::<u64>(), moves in proptest::collection::vec((any::<u32>(), any::<bool>()), 1..400)) {
        let d = Arc::new(HexDomain::hexagon(4, 3, 3).unwrap());
        let a = random_heights(&d, seed_a);
        let b = random_heights(&d, seed_b);
        // pointwise min and max of height functions are height functions
        let mut lo: Vec<i32> = a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect();
        let mut hi: Vec<i32> = a.iter().zip(&b).map(|(x, y)| *x.max(y)).collect();
        let free = (0..d.num_faces()).filter(|&f| d.is_interior(f)).collect();
        let t = FlipTable::new(d.clone(), free);
        for (site, up) in moves {
            let i = site as usize % t.num_free();
            t.update(&mut lo, i, up);
            t.update(&mut hi, i, up);
            prop_assert!(lo.iter().zip(&hi).all(|(x, y)| x <= y));
        }
    }

    #[test]
    fn flips_change_one_face_by_three(seed in any::<u64>()) {
        let d = Arc::new(HexDomain::hexagon(3, 3, 2).unwrap());
        let m = tiling_sampler::matching_from_heights(&d, &random_heights(&d, seed));
        let pin = d.face_at(d.reference_face());
        let before = height_field(&m, pin).unwrap();
        let flips = admissible_flips(&m);
        let pick = flips[ChaCha8Rng::seed_from_u64(seed).gen_range(0..flips.len())];
        let after = height_field(&flip(&m, pick).unwrap().unwrap(), pin).unwrap();
        let diffs: Vec<i64> = before.values().iter().zip(after.values()).map(|(x, y)| y - x).filter(|&x| x != 0).collect();
        prop_assert_eq!(diffs, vec![if pick.up { 3 } else { -3 }]);
    }
}
