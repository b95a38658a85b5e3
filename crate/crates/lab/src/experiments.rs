//! Experiment runners. Each one turns a config into a [`Report`].

use std::f64::consts::TAU;
use std::sync::Arc;
use std::time::Instant;

use double_dimer::{m_double_prime, off_path_agreement, paths_hit_ball, superimpose};
use hexlattice::{local_window, DimerConfig, WindowPattern};
use scales::{crossing_decomposition, isolated_scales, scale_range, uniform_crossing_estimate};
use tiling_sampler::{Cftp, ConditionalRegion, ConditionalSpec, SpreadOut};
use ust::{forward_loop_erase, walk_to_boundary, wilson_subtree, winding_topological, PlanarGraph};

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::Result;
use crate::perturb::{centred_hexagon, PerturbationRegistry};
use crate::pool::{chunks, ordered_map, task_rng};
use crate::report::{Direction, Invariant, Report, Row, Stat, Trend};
use crate::stats::{
    mann_kendall, max_unit_window, mean, ols, proportion_half_width, quantile_with_band, variance,
    variance_half_width, Z95,
};
use crate::tv::tv_windows_paired;

const CHUNK: usize = 16;
const WALK_CHUNK: usize = 64;

/// Stream block reserved for bootstrap resampling.
const BOOTSTRAP_BLOCK: u64 = 0xffff;

pub fn run(cfg: &ExperimentConfig) -> Result<Report> {
    run_with(cfg, &PerturbationRegistry::with_defaults())
}

pub fn run_with(cfg: &ExperimentConfig, registry: &PerturbationRegistry) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let mut report = match cfg.kind {
        ExperimentKind::Robustness => run_robustness(cfg, registry)?,
        ExperimentKind::SpreadOut => run_spread_out(cfg)?,
        ExperimentKind::Nonconcentration => run_nonconcentration(cfg)?,
        ExperimentKind::Decoupling => run_decoupling(cfg)?,
        ExperimentKind::CrossingEstimate => run_crossing_estimate(cfg)?,
    };
    report.wall_clock_s = start.elapsed().as_secs_f64();
    Ok(report)
}

fn indicator(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

fn proportion(name: &str, hits: usize, n: usize) -> Stat {
    let p = hits as f64 / n as f64;
    Stat::new(name, p, proportion_half_width(p, n), n)
}

/// One coupled pair of tilings.
struct PairSample {
    hit: bool,
    agree: usize,
    total: usize,
    window: WindowPattern,
    window_pp: WindowPattern,
}

fn pair_sample(m: &DimerConfig, m2: &DimerConfig, r: f64) -> Result<PairSample> {
    let dec = superimpose(m, m2)?;
    let mpp = m_double_prime(&dec)?;
    let (agree, total) = off_path_agreement(m, &mpp, &dec);
    Ok(PairSample {
        hit: paths_hit_ball(&dec, r),
        agree,
        total,
        window: local_window(m, r)?,
        window_pp: local_window(&mpp, r)?,
    })
}

/// Boundary robustness: couples uniform tilings of a hexagon and of its
/// perturbation and measures how often the open paths reach the window.
pub fn run_robustness(cfg: &ExperimentConfig, registry: &PerturbationRegistry) -> Result<Report> {
    let workers = cfg.worker_count();
    let r = cfg.window_radius;
    let mut report = Report::new(cfg);
    let (mut xs, mut hits, mut differs) = (Vec::new(), Vec::new(), Vec::new());
    let mut all_agree = true;
    let mut densities_ok = true;
    let mut tvs = Vec::new();
    for (block, &n) in cfg.sizes.iter().enumerate() {
        let d = centred_hexagon(n)?;
        let (d2, k) = registry.perturb(&d, &cfg.perturbation)?;
        let c1 = Cftp::for_domain(&Arc::new(d))?;
        let c2 = Cftp::for_domain(&Arc::new(d2))?;
        let sizes = chunks(cfg.samples, CHUNK);
        let batches = ordered_map(workers, sizes.len(), |t| {
            let mut rng = task_rng(cfg.seed, block as u64, t as u64);
            let a = c1.sample_many(sizes[t], &mut rng)?;
            let b = c2.sample_many(sizes[t], &mut rng)?;
            a.iter().zip(&b).map(|(m, m2)| pair_sample(m, m2, r)).collect::<Result<Vec<_>>>()
        })?;
        let samples: Vec<PairSample> = batches.into_iter().flatten().collect();
        let count = samples.len();

        let hit_count = samples.iter().filter(|s| s.hit).count();
        let diff_count = samples.iter().filter(|s| s.window != s.window_pp).count();
        let (agree, total) = samples.iter().fold((0, 0), |(a, t), s| (a + s.agree, t + s.total));
        all_agree &= agree == total;
        let mut kinds = [0usize; 3];
        for s in &samples {
            for e in &s.window.0 {
                kinds[e.kind.index()] += 1;
            }
        }
        let edges: usize = kinds.iter().sum();
        let dens: Vec<f64> = kinds.iter().map(|&c| c as f64 / edges as f64).collect();
        densities_ok &= (dens.iter().sum::<f64>() - 1.0).abs() < 1e-12;

        let a: Vec<&WindowPattern> = samples.iter().map(|s| &s.window).collect();
        let b: Vec<&WindowPattern> = samples.iter().map(|s| &s.window_pp).collect();
        let mut boot_rng = task_rng(cfg.seed, BOOTSTRAP_BLOCK, block as u64);
        let tv = tv_windows_paired(&a, &b, &mut boot_rng)?;
        tvs.push(tv.tv_hat);

        let mut stats = vec![
            proportion("hit_probability", hit_count, count),
            proportion("window_disagreement", diff_count, count),
            Stat::new("tv_window", tv.tv_hat, tv.half_width(), count),
            Stat::new("tv_window_corrected", tv.corrected, tv.half_width(), count),
            Stat::new("off_path_agreement", if total == 0 { 1.0 } else { agree as f64 / total as f64 }, 0.0, count),
            Stat::new("boundary_discrepancy", k as f64, 0.0, 1),
        ];
        for (name, p) in ["p_a", "p_b", "p_c"].iter().zip(&dens) {
            stats.push(Stat::new(name, *p, proportion_half_width(*p, edges), edges));
        }
        report.rows.push(Row { label: format!("N={n}"), param: n as f64, stats });
        for s in &samples {
            xs.push(n as f64);
            hits.push(indicator(s.hit));
            differs.push(indicator(s.window != s.window_pp));
        }
    }
    if cfg.sizes.len() >= 2 && xs.len() >= 3 {
        let hp = report.series("hit_probability");
        report.trends.push(Trend::new(
            "hit_probability",
            Direction::Decreasing,
            mann_kendall(&xs, &hits)?,
            &hp,
            false,
        ));
        let wd = report.series("window_disagreement");
        report.trends.push(Trend::new(
            "window_disagreement",
            Direction::Decreasing,
            mann_kendall(&xs, &differs)?,
            &wd,
            false,
        ));
    }
    report.invariants.push(Invariant {
        name: "off_path_agreement".into(),
        held: all_agree,
        detail: "M and M'' agree at every vertex off the open paths".into(),
    });
    report.invariants.push(Invariant {
        name: "densities_sum_to_one".into(),
        held: densities_ok,
        detail: "p_a + p_b + p_c = 1 in the window".into(),
    });
    let tv_bounded = report
        .rows
        .iter()
        .all(|row| match (row.get("tv_window"), row.get("window_disagreement")) {
            (Some(tv), Some(dis)) => tv.value <= dis.value + 1e-12,
            _ => false,
        });
    report.invariants.push(Invariant {
        name: "tv_below_coupling_disagreement".into(),
        held: tv_bounded,
        detail: format!("plug-in TV never exceeds the coupled disagreement rate; TV = {tvs:?}"),
    });
    Ok(report)
}

/// Spread-out: for each conditioning radius, the largest probability that
/// the origin height falls in an open unit window, given the tiling outside
/// the ball. Each radius uses its own outer samples.
pub fn run_spread_out(cfg: &ExperimentConfig) -> Result<Report> {
    let workers = cfg.worker_count();
    let n = cfg.sizes[0];
    let cftp = Cftp::for_domain(&Arc::new(centred_hexagon(n)?))?;
    let mut report = Report::new(cfg);
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    let mut quantiles = Vec::new();
    for (block, &radius) in cfg.radii.iter().enumerate() {
        let sizes = chunks(cfg.samples, CHUNK);
        let batches = ordered_map(workers, sizes.len(), |t| {
            let mut rng = task_rng(cfg.seed, block as u64, t as u64);
            let outer = cftp.sample_many(sizes[t], &mut rng)?;
            outer
                .into_iter()
                .map(|m| {
                    let region = ConditionalRegion::new(&ConditionalSpec::new(radius, m)?)?;
                    let h = region.sample_origin_heights(cfg.inner_samples, &mut rng)?;
                    Ok(SpreadOut::from_heights(&h)?.statistic)
                })
                .collect::<Result<Vec<f64>>>()
        })?;
        let stat: Vec<f64> = batches.into_iter().flatten().collect();
        let (q, q_band) = quantile_with_band(&stat, 1.0 - cfg.epsilon);
        quantiles.push(q);
        let m = mean(&stat);
        let sd = if stat.len() > 1 { variance(&stat).sqrt() } else { 0.0 };
        report.rows.push(Row {
            label: format!("R={radius}"),
            param: radius,
            stats: vec![
                Stat::new("max_window_quantile", q, q_band, stat.len()),
                Stat::new("max_window_mean", m, Z95 * sd / (stat.len() as f64).sqrt(), stat.len()),
                Stat::new("inner_samples", cfg.inner_samples as f64, 0.0, stat.len()),
            ],
        });
        xs.extend(std::iter::repeat_n(radius, stat.len()));
        ys.extend(stat);
    }
    if xs.len() >= 3 && cfg.radii.len() >= 2 {
        report.trends.push(Trend::new(
            "max_window",
            Direction::Decreasing,
            mann_kendall(&xs, &ys)?,
            &quantiles,
            false,
        ));
    }
    report.invariants.push(Invariant {
        name: "probabilities_in_unit_interval".into(),
        held: ys.iter().all(|p| (0.0..=1.0).contains(p)),
        detail: "every window statistic is a probability".into(),
    });
    Ok(report)
}

/// Per-walk quantities for the winding experiment.
struct WalkSample {
    winding: f64,
    pre_isolated: usize,
    even: usize,
    isolated: usize,
}

fn walk_sample<R: rand::Rng>(g: &PlanarGraph, o: usize, range: (i32, i32), rng: &mut R) -> Result<WalkSample> {
    let x = walk_to_boundary(g, o, rng);
    let y = forward_loop_erase(&x);
    let z = g.position(o);
    let winding = winding_topological(&y.polyline(g), z)?;
    let (mut pre_isolated, mut even, mut isolated) = (0, 0, 0);
    if range.0 < range.1 {
        let pts = x.polyline(g);
        let tr = crossing_decomposition(&pts, range.0, range.1, z)?;
        let cls = isolated_scales(&tr, &pts)?;
        pre_isolated = cls.pre_isolated.len();
        even = cls.even.len();
        isolated = cls.isolated.len();
    }
    Ok(WalkSample { winding, pre_isolated, even, isolated })
}

/// Winding non-concentration of the loop-erased walk from the centre of
/// `[-1, 1]^2`, against the number of available scales.
pub fn run_nonconcentration(cfg: &ExperimentConfig) -> Result<Report> {
    let workers = cfg.worker_count();
    let mut report = Report::new(cfg);
    let (mut scale_x, mut iso_y, mut even_y, mut sq_y) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let mut maxima = Vec::new();
    for (block, &k) in cfg.mesh_exponents.iter().enumerate() {
        let half = 1usize << k;
        let delta = 1.0 / half as f64;
        let g = PlanarGraph::centered_grid(half, delta)?;
        let o = g.nearest_vertex([0.0, 0.0]);
        let range = scale_range(delta, 1.0, cfg.scale_offset);
        let n_scales = (range.1 - range.0).max(0) as f64;
        let sizes = chunks(cfg.samples, WALK_CHUNK);
        let batches = ordered_map(workers, sizes.len(), |t| {
            let mut rng = task_rng(cfg.seed, block as u64, t as u64);
            (0..sizes[t]).map(|_| walk_sample(&g, o, range, &mut rng)).collect::<Result<Vec<_>>>()
        })?;
        let samples: Vec<WalkSample> = batches.into_iter().flatten().collect();
        let count = samples.len();
        let w: Vec<f64> = samples.iter().map(|s| s.winding).collect();
        let turns: Vec<f64> = w.iter().map(|x| x / TAU).collect();
        let window_max = max_unit_window(&turns);
        maxima.push(window_max);
        let mw = mean(&w);
        let column = |f: fn(&WalkSample) -> usize| -> Vec<f64> { samples.iter().map(|s| f(s) as f64).collect() };
        let (pre, even, iso) = (column(|s| s.pre_isolated), column(|s| s.even), column(|s| s.isolated));
        let mean_stat = |name: &str, v: &[f64]| {
            let sd = if v.len() > 1 { variance(v).sqrt() } else { 0.0 };
            Stat::new(name, mean(v), Z95 * sd / (v.len() as f64).sqrt(), v.len())
        };
        report.rows.push(Row {
            label: format!("delta=2^-{k}"),
            param: delta,
            stats: vec![
                Stat::new("n_scales", n_scales, 0.0, count),
                Stat::new("max_unit_window", window_max, proportion_half_width(window_max, count), count),
                Stat::new("winding_variance", variance(&w), variance_half_width(&w), count),
                mean_stat("pre_isolated", &pre),
                mean_stat("even_pre_isolated", &even),
                mean_stat("isolated", &iso),
            ],
        });
        for (s, x) in samples.iter().zip(&w) {
            scale_x.push(n_scales);
            iso_y.push(s.isolated as f64);
            even_y.push(s.even as f64);
            sq_y.push((x - mw).powi(2));
        }
    }
    let distinct = {
        let mut v = scale_x.clone();
        v.dedup();
        v.len()
    };
    if distinct >= 2 {
        report.slopes.push(ols("isolated_vs_scales", &scale_x, &iso_y)?);
        report.slopes.push(ols("even_pre_isolated_vs_scales", &scale_x, &even_y)?);
        report.slopes.push(ols("winding_sq_vs_scales", &scale_x, &sq_y)?);
    }
    if cfg.mesh_exponents.len() >= 3 {
        let ks: Vec<f64> = cfg.mesh_exponents.iter().map(|&k| k as f64).collect();
        report.trends.push(Trend::new(
            "max_unit_window",
            Direction::Decreasing,
            mann_kendall(&ks, &maxima)?,
            &maxima,
            false,
        ));
    }
    report.invariants.push(Invariant {
        name: "isolated_within_even".into(),
        held: iso_y.iter().zip(&even_y).all(|(a, b)| a <= b),
        detail: "isolated scales are a subset of even pre-isolated scales".into(),
    });
    Ok(report)
}

/// Decoupling: probability that the wired-tree branches from every vertex
/// outside `B(0, R)` come within distance 1 of the origin.
pub fn run_decoupling(cfg: &ExperimentConfig) -> Result<Report> {
    let workers = cfg.worker_count();
    let mut report = Report::new(cfg);
    let k = cfg.mesh_exponents[0];
    let delta = 1.0 / (1u64 << k) as f64;
    let r_max = cfg.radii.iter().copied().fold(0.0, f64::max);
    let half = ((r_max + 2.0) / delta).ceil() as usize;
    let g = PlanarGraph::centered_grid(half, delta)?;
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (block, &radius) in cfg.radii.iter().enumerate() {
        let starts: Vec<usize> = g
            .interior()
            .filter(|&v| {
                let p = g.position(v);
                p[0].hypot(p[1]) >= radius
            })
            .collect();
        let sizes = chunks(cfg.samples, WALK_CHUNK);
        let batches = ordered_map(workers, sizes.len(), |t| {
            let mut rng = task_rng(cfg.seed, block as u64, t as u64);
            Ok((0..sizes[t]).map(|_| wilson_subtree(&g, &starts, &mut rng).distance_to(&g, [0.0, 0.0]) < 1.0).collect::<Vec<bool>>())
        })?;
        let hits: Vec<bool> = batches.into_iter().flatten().collect();
        let count = hits.len();
        let h = hits.iter().filter(|&&b| b).count();
        report.rows.push(Row {
            label: format!("R={radius}"),
            param: radius,
            stats: vec![proportion("hit_probability", h, count), Stat::new("starts", starts.len() as f64, 0.0, 1)],
        });
        xs.extend(std::iter::repeat_n(radius, count));
        ys.extend(hits.into_iter().map(indicator));
    }
    if cfg.radii.len() >= 2 {
        let hp = report.series("hit_probability");
        report.trends.push(Trend::new(
            "hit_probability",
            Direction::Decreasing,
            mann_kendall(&xs, &ys)?,
            &hp,
            false,
        ));
    }
    report.invariants.push(Invariant {
        name: "grid_contains_schedule".into(),
        held: (half as f64) * delta >= r_max + 1.0,
        detail: format!("grid half-width {} covers radius {r_max}", half as f64 * delta),
    });
    Ok(report)
}

/// Uniform crossing estimate on a `4n x 4n` unit grid for each `n`.
pub fn run_crossing_estimate(cfg: &ExperimentConfig) -> Result<Report> {
    let workers = cfg.worker_count();
    let mut report = Report::new(cfg);
    let estimates = ordered_map(workers, cfg.sizes.len(), |i| {
        let n = cfg.sizes[i] as usize;
        let g = PlanarGraph::square_grid(4 * n, 4 * n, 1.0, [0.0, 0.0])?;
        let mut rng = task_rng(cfg.seed, i as u64, 0);
        Ok(uniform_crossing_estimate(&g, n as f64, cfg.samples, &mut rng)?)
    })?;
    for est in &estimates {
        report.rows.push(Row {
            label: format!("n={}", est.n),
            param: est.n,
            stats: vec![
                Stat::new("alpha_hat", est.alpha_hat, (est.ci.1 - est.ci.0) / 2.0, cfg.samples),
                Stat::new("alpha_lower", est.ci.0, 0.0, cfg.samples),
            ],
        });
    }
    report.invariants.push(Invariant {
        name: "positive_lower_bound".into(),
        held: estimates.iter().all(|e| e.ci.0 > 0.0),
        detail: "the 99% lower bound of the worst cell is positive at every scale".into(),
    });
    Ok(report)
}
