use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lab::{
    parse_domain, render_svg, run, sample_set, worker_count, ExperimentConfig, ExperimentKind, LabError, Picture, Report, Result,
    SampleSet,
};

#[derive(Parser)]
#[command(name = "tilelab", about = "Lozenge tiling and spanning tree experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON config; flags given on the command line override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory for report.json and report.csv.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Exact uniform tilings of a hexagon.
    Sample {
        #[arg(long, default_value = "hex:4,4,4")]
        domain: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value = "tilings.json")]
        out: PathBuf,
    },
    Robustness {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<i64>>,
        #[arg(long)]
        radius: Option<f64>,
        /// none, single-cube, zigzag or translate.
        #[arg(long)]
        perturbation: Option<String>,
        #[arg(long)]
        k_bound: Option<i64>,
        #[arg(long)]
        amplitude: Option<usize>,
    },
    Spreadout {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        size: Option<i64>,
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<f64>>,
        #[arg(long)]
        inner: Option<usize>,
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Winding non-concentration, or subtree decoupling with --decoupling.
    Winding {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        meshes: Option<Vec<u32>>,
        #[arg(long)]
        scale_offset: Option<i32>,
        #[arg(long)]
        decoupling: bool,
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<f64>>,
    },
    CrossingEstimate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        scales: Option<Vec<i64>>,
    },
    /// Draws one tiling of a sample set.
    Render {
        #[arg(long)]
        tilings: PathBuf,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, default_value = "tiling.svg")]
        out: PathBuf,
    },
}

fn base_config(common: &Common, kind: ExperimentKind) -> Result<ExperimentConfig> {
    let mut cfg = match &common.config {
        Some(p) => {
            let cfg: ExperimentConfig = serde_json::from_str(&std::fs::read_to_string(p)?)?;
            if cfg.kind != kind {
                return Err(LabError::Config(format!("config is for {:?}, not {kind:?}", cfg.kind)));
            }
            cfg
        }
        None => ExperimentConfig::new(kind, 100, 0),
    };
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    if let Some(n) = common.samples {
        cfg.samples = n;
    }
    if common.workers.is_some() {
        cfg.workers = common.workers;
    }
    Ok(cfg)
}

fn finish(report: &Report, out: &Path) -> Result<bool> {
    report.write(out)?;
    for row in &report.rows {
        let cells: Vec<String> =
            row.stats.iter().map(|s| format!("{}={:.4}±{:.4}", s.name, s.value, s.ci_half_width)).collect();
        println!("{}: {}", row.label, cells.join(" "));
    }
    for t in &report.trends {
        println!("trend {} {:?}: S={} p={:.3e} monotone={}", t.name, t.direction, t.test.s, t.p_value, t.monotone);
    }
    for s in &report.slopes {
        println!("slope {}: {:.4} ci=({:.4}, {:.4})", s.name, s.slope, s.ci.0, s.ci.1);
    }
    for i in &report.invariants {
        println!("invariant {}: {}", i.name, if i.held { "held" } else { "VIOLATED" });
    }
    eprintln!("wall clock {:.1} s, report in {}", report.wall_clock_s, out.display());
    Ok(report.invariants_hold())
}

fn execute(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Sample { domain, n, seed, workers, out } => {
            let d = parse_domain(&domain)?;
            let set = sample_set(&d, n, seed, worker_count(workers))?;
            std::fs::write(&out, set.to_json())?;
            Ok(true)
        }
        Command::Robustness { common, sizes, radius, perturbation, k_bound, amplitude } => {
            let mut cfg = base_config(&common, ExperimentKind::Robustness)?;
            if let Some(v) = sizes {
                cfg.sizes = v;
            }
            if let Some(r) = radius {
                cfg.window_radius = r;
            }
            if let Some(p) = perturbation {
                cfg.perturbation.name = p;
            }
            if let Some(k) = k_bound {
                cfg.perturbation.k_bound = k;
            }
            if let Some(a) = amplitude {
                cfg.perturbation.amplitude = a;
            }
            finish(&run(&cfg)?, &common.out)
        }
        Command::Spreadout { common, size, radii, inner, epsilon } => {
            let mut cfg = base_config(&common, ExperimentKind::SpreadOut)?;
            if let Some(n) = size {
                cfg.sizes = vec![n];
            }
            if let Some(r) = radii {
                cfg.radii = r;
            }
            if let Some(m) = inner {
                cfg.inner_samples = m;
            }
            if let Some(e) = epsilon {
                cfg.epsilon = e;
            }
            finish(&run(&cfg)?, &common.out)
        }
        Command::Winding { common, meshes, scale_offset, decoupling, radii } => {
            let kind = if decoupling { ExperimentKind::Decoupling } else { ExperimentKind::Nonconcentration };
            let mut cfg = base_config(&common, kind)?;
            if let Some(m) = meshes {
                cfg.mesh_exponents = m;
            }
            if let Some(c) = scale_offset {
                cfg.scale_offset = c;
            }
            if let Some(r) = radii {
                cfg.radii = r;
            }
            finish(&run(&cfg)?, &common.out)
        }
        Command::CrossingEstimate { common, scales } => {
            let mut cfg = base_config(&common, ExperimentKind::CrossingEstimate)?;
            if let Some(s) = scales {
                cfg.sizes = s;
            }
            finish(&run(&cfg)?, &common.out)
        }
        Command::Render { tilings, index, out } => {
            let set = SampleSet::from_json(&std::fs::read_to_string(&tilings)?)?;
            let ms = set.configs()?;
            let m = ms.get(index).ok_or_else(|| LabError::Config(format!("no tiling at index {index}")))?;
            std::fs::write(&out, render_svg(&Picture::Tiling(m)))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
