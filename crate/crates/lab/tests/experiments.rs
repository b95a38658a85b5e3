use lab::{run, ExperimentConfig, ExperimentKind, PerturbationSpec, Report};

fn robustness(perturbation: &str, workers: usize) -> Report {
    let mut cfg = ExperimentConfig::new(ExperimentKind::Robustness, 24, 5);
    cfg.sizes = vec![4, 6];
    cfg.perturbation = PerturbationSpec { name: perturbation.into(), k_bound: 1, ..Default::default() };
    cfg.workers = Some(workers);
    run(&cfg).unwrap()
}

#[test]
fn null_perturbation_never_moves_the_window() {
    let r = robustness("none", 1);
    for row in &r.rows {
        assert_eq!(row.get("hit_probability").unwrap().value, 0.0);
        assert_eq!(row.get("window_disagreement").unwrap().value, 0.0);
        assert_eq!(row.get("tv_window").unwrap().value, 0.0);
        assert_eq!(row.get("boundary_discrepancy").unwrap().value, 0.0);
    }
    assert!(r.invariants_hold());
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let a = robustness("single-cube", 1);
    let b = robustness("single-cube", 3);
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(Report::from_json(&a.to_json()).unwrap().to_json(), a.to_json());
}

#[test]
fn densities_sum_to_one() {
    let r = robustness("translate", 2);
    for row in &r.rows {
        let s: f64 = ["p_a", "p_b", "p_c"].iter().map(|n| row.get(n).unwrap().value).sum();
        assert!((s - 1.0).abs() < 1e-12, "{s}");
    }
    assert!(r.invariants.iter().any(|i| i.name == "densities_sum_to_one" && i.held));
}

#[test]
fn winding_report_has_slopes_and_csv() {
    let mut cfg = ExperimentConfig::new(ExperimentKind::Nonconcentration, 40, 2);
    cfg.mesh_exponents = vec![4, 5];
    cfg.scale_offset = 0;
    let r = run(&cfg).unwrap();
    assert_eq!(r.rows.len(), 2);
    assert!(r.slope("winding_sq_vs_scales").is_some());
    assert!(r.invariants_hold());
    let csv = r.to_csv().unwrap();
    assert!(csv.starts_with("label,param,stat,value,ci_half_width,samples"));
}

#[test]
fn decoupling_hits_fall_with_distance() {
    let mut cfg = ExperimentConfig::new(ExperimentKind::Decoupling, 200, 3);
    cfg.mesh_exponents = vec![2];
    cfg.radii = vec![2.0, 8.0];
    let r = run(&cfg).unwrap();
    let h = r.series("hit_probability");
    assert!(h[0] > h[1], "{h:?}");
}

#[test]
fn invalid_configs_are_rejected() {
    let cfg = ExperimentConfig::new(ExperimentKind::Robustness, 10, 0);
    assert!(run(&cfg).is_err());
    let mut cfg = ExperimentConfig::new(ExperimentKind::SpreadOut, 10, 0);
    cfg.sizes = vec![8];
    cfg.radii = vec![4.0, 2.0];
    assert!(run(&cfg).is_err());
}
