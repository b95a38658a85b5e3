use std::process::Command;

fn tilelab(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_tilelab")).args(args).output().unwrap()
}

#[test]
fn sample_then_render() {
    let dir = std::env::temp_dir().join(format!("tilelab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let tilings = dir.join("tilings.json");
    let svg = dir.join("t.svg");
    let out = tilelab(&["sample", "--domain", "hex:2,3,2", "--n", "3", "--seed", "4", "--out", tilings.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = tilelab(&["render", "--tilings", tilings.to_str().unwrap(), "--index", "2", "--out", svg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<polygon").count(), 2 * 3 + 3 * 2 + 2 * 2);
    let out = tilelab(&["render", "--tilings", tilings.to_str().unwrap(), "--index", "3"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn robustness_writes_reports() {
    let dir = std::env::temp_dir().join(format!("tilelab-rob-{}", std::process::id()));
    let out = tilelab(&[
        "robustness",
        "--sizes",
        "4,6",
        "--samples",
        "10",
        "--perturbation",
        "single-cube",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("invariant off_path_agreement: held"), "{stdout}");
    assert!(dir.join("report.json").exists() && dir.join("report.csv").exists());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_arguments_fail() {
    let out = tilelab(&["sample", "--domain", "square:3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tilelab(&["robustness", "--perturbation", "nonsense", "--sizes", "4", "--samples", "2"]);
    assert_eq!(out.status.code(), Some(2));
}
