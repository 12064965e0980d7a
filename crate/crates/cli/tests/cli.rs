use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_floquet-exciton"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn out_dir(dir: &Path) -> &str {
    dir.to_str().unwrap()
}

#[test]
fn resonance_scenario_writes_three_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["run", "resonance", "--grid", "128", "--out", out_dir(dir.path())]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["resonance.csv", "resonance.json", "resonance.meta.json"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let csv = fs::read_to_string(dir.path().join("resonance.csv")).unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    let i = header.iter().position(|h| *h == "omega_ex").unwrap();
    assert!((row[i] - 2.71).abs() <= 0.02, "{}", row[i]);
    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("resonance.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["grid_l"], 128);
    assert_eq!(meta["params"]["u11"], 1.6);
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# flat band\nt1 = -0.15\nu12 = 0.5\n").unwrap();
    let o = run(&[
        "run",
        "resonance",
        "--config",
        cfg.to_str().unwrap(),
        "--set",
        "u12=0.2",
        "--grid",
        "16",
        "--out",
        out_dir(dir.path()),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("resonance.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["params"]["u12"], 0.2);
    assert_eq!(meta["params"]["t1"], -0.15);
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "u11 = 1.6\nu12 = banana\n").unwrap();
    let o = run(&["run", "resonance", "--config", cfg.to_str().unwrap(), "--out", out_dir(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("u12") && err.contains("line 2"), "{err}");

    let o = run(&["run", "fig9", "--out", out_dir(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["run", "resonance", "--set", "colour=red", "--out", out_dir(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solver_failure_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["run", "resonance", "--set", "u12=1e-12", "--grid", "8", "--out", out_dir(dir.path())]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn thread_count_does_not_change_output() {
    for scenario in ["fig2", "fig3c", "absorbance"] {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        for (dir, threads) in [(&a, "1"), (&b, "8")] {
            let o = run(&["run", scenario, "--grid", "32", "--threads", threads, "--out", out_dir(dir.path())]);
            assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        }
        let name = format!("{scenario}.csv");
        assert_eq!(
            fs::read(a.path().join(&name)).unwrap(),
            fs::read(b.path().join(&name)).unwrap(),
            "{scenario}"
        );
    }
}

#[test]
fn list_names_every_scenario() {
    let o = run(&["list"]);
    let s = String::from_utf8_lossy(&o.stdout);
    for name in ["fig1a", "fig3c", "oracle"] {
        assert!(s.lines().any(|l| l == name));
    }
}
