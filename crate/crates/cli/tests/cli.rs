//! End-to-end tests of the command surface: exit codes, golden outputs,
//! file formats, and report determinism.

use std::path::Path;
use std::process::{Command, Output};

fn covol(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covol"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad json ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn check_lorentzian_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(
        dir.path(),
        "good.txt",
        "t0^2*t1 + t0^2*t2 + t0^2*t3 + t0*t1*t2 + t0*t1*t3 + 4*t0*t2*t3 + t1*t2*t3",
    );
    let out = covol(&["check", "lorentzian", &good], dir.path());
    assert_eq!(out.status.code(), Some(0), "{out:?}");

    // failing witness: the normalized multidegree polynomial
    let bad = write(
        dir.path(),
        "bad.txt",
        "1/5040*t0^7*t1^2 + 1/2160*t0^6*t1^3 + 1/720*t0^6*t1^2*t2 + 1/1440*t0^5*t1^4 + 1/180*t0^5*t1^3*t2 + 1/96*t0^4*t1^4*t2",
    );
    let out = covol(&["check", "lorentzian", &bad], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"]["witness"]["HessianTooPositive"]["alpha"][0], 5);

    // non-homogeneous input is a usage error
    let ugly = write(dir.path(), "ugly.txt", "1 + t0");
    let out = covol(&["check", "lorentzian", &ugly], dir.path());
    assert_eq!(out.status.code(), Some(2));

    let out = covol(&["check", "lorentzian", "no-such-file"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_mconvex_witness_pair() {
    let dir = tempfile::tempdir().unwrap();
    let poly = write(
        dir.path(),
        "p.txt",
        "t0*t1 + t1^2 + t1*t2 + t1*t3 + t2*t3",
    );
    let out = covol(&["check", "mconvex", &poly], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["witness"]["alpha"], serde_json::json!([1, 1, 0, 0]));
    assert_eq!(v["witness"]["beta"], serde_json::json!([0, 0, 1, 1]));
}

#[test]
fn check_logconcave_on_coefficient_list() {
    let dir = tempfile::tempdir().unwrap();
    let list = write(
        dir.path(),
        "seq.txt",
        "1, 40, 720, 7680, 53760, 258000, 858720, 1946790, 2807100, 2053600",
    );
    let out = covol(&["check", "logconcave", &list], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let bad = write(dir.path(), "bad.txt", "5, 2, 1");
    let out = covol(&["check", "logconcave", &bad], dir.path());
    assert_eq!(out.status.code(), Some(1));
    // ultra-log-concavity is strictly stronger
    let ultra = write(dir.path(), "ultra.txt", "1, 3, 3");
    assert_eq!(covol(&["check", "logconcave", &ultra], dir.path()).status.code(), Some(0));
    assert_eq!(covol(&["check", "ultralc", &ultra], dir.path()).status.code(), Some(1));
}

#[test]
fn check_sectional_and_covol2() {
    let dir = tempfile::tempdir().unwrap();
    let poly = write(
        dir.path(),
        "p.txt",
        "t0*t1 + t1^2 + t1*t2 + t1*t3 + t2*t3",
    );
    let out = covol(
        &["check", "sectional", &poly, "--trials", "40", "--seed", "5"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"]["status"], "CounterexampleFound");

    let biv = write(dir.path(), "biv.txt", "t0^2 + 3*t0*t1 + 3*t1^2");
    assert_eq!(covol(&["check", "covol2", &biv], dir.path()).status.code(), Some(0));
    let bad = write(dir.path(), "bad2.txt", "5*t0^2 + 2*t0*t1 + t1^2");
    assert_eq!(covol(&["check", "covol2", &bad], dir.path()).status.code(), Some(1));
}

#[test]
fn transform_commands_match_goldens() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "class.txt",
        "2*t0^7*t1^2 + 2*t0^6*t1^3 + 2*t0^6*t1^2*t2 + 2*t0^5*t1^4 + 4*t0^5*t1^3*t2 + 6*t0^4*t1^4*t2",
    );
    let out = covol(&["transform", "flip", &p, "--degrees", "7,4,1"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "6*t0^3 + 4*t0^2*t1 + 2*t0^2*t2 + 2*t0*t1^2 + 2*t0*t1*t2 + 2*t1^2*t2"
    );

    let c = write(dir.path(), "c.txt", "7");
    let out = covol(&["transform", "normalize", &c], dir.path());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "7");

    let matrix = write(
        dir.path(),
        "m.json",
        r#"{"rows": [["4","0"],["1","0"],["0","1"],["0","1"]]}"#,
    );
    let pc = write(
        dir.path(),
        "pc.txt",
        "t0*t1 + t1^2 + t1*t2 + t1*t3 + t2*t3",
    );
    let out = covol(&["transform", "subst", &pc, "--matrix", &matrix], dir.path());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "5*t0^2 + 2*t0*t1 + t1^2"
    );

    // contract violations exit 2
    let out = covol(&["transform", "flip", &p, "--degrees", "1,1,1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = covol(&["transform", "homogenize", &p, "--degree", "3"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn adjoint_command_square_cone() {
    let dir = tempfile::tempdir().unwrap();
    let cone = write(
        dir.path(),
        "square.json",
        r#"{"ambient_dim": 3, "rays": [["1","0","0"],["1","-1","0"],["1","0","-1"],["1","-1","-1"]]}"#,
    );
    let out = covol(&["adjoint", &cone], dir.path());
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v = stdout_json(&out);
    assert_eq!(v["adjoint_text"], "2*t0 - t1 - t2");
    assert_eq!(v["num_vertex_rays"], 4);
    assert_eq!(v["piece_count"], 2);
    assert_eq!(v["total_volume"], "2");

    let flat = write(
        dir.path(),
        "flat.json",
        r#"{"ambient_dim": 3, "rays": [["1","0","0"],["0","1","0"]]}"#,
    );
    assert_eq!(covol(&["adjoint", &flat], dir.path()).status.code(), Some(2));
    let line = write(
        dir.path(),
        "line.json",
        r#"{"ambient_dim": 2, "rays": [["1","0"],["-1","0"],["0","1"]]}"#,
    );
    assert_eq!(covol(&["adjoint", &line], dir.path()).status.code(), Some(2));
}

#[test]
fn segre_command_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let ci = write(
        dir.path(),
        "ci.json",
        r#"{"num_factors": 3, "exponents": [[1,0,0],[0,1,0],[0,0,1]]}"#,
    );
    let out = covol(&["segre", &ci, "--series-order", "4"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v = stdout_json(&out);
    assert_eq!(v["r_text"], "1 + t0 + t1 + t2 + t0*t1 + t0*t2 + t1*t2");
    assert_eq!(v["p_text"], "t0*t1*t2");
    assert_eq!(v["diagonal"]["r"], "1 + 3*t0 + 3*t0^2");

    // monomial text form, reducible ideal
    let red = write(dir.path(), "red.txt", "x1*x2, x1*x3");
    let out = covol(&["segre", &red], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["p_text"], "t0 + t0^2 + t0*t1 + t0*t2 + t1*t2");

    // single monomial: trivial reduced numerator
    let single = write(dir.path(), "single.txt", "x1^2*x2^3");
    let out = covol(&["segre", &single], dir.path());
    let v = stdout_json(&out);
    assert_eq!(v["r_text"], "1");
    assert_eq!(v["p_text"], "2*t0 + 3*t1");

    let bad = write(dir.path(), "bad.json", r#"{"num_factors": 2, "exponents": [[0,0]]}"#);
    assert_eq!(covol(&["segre", &bad], dir.path()).status.code(), Some(2));
}

#[test]
fn segre_oracle_flag() {
    let dir = tempfile::tempdir().unwrap();
    let single = write(dir.path(), "single.txt", "x1");
    let out = covol(
        &["segre", &single, "--oracle", "--oracle-samples", "4000"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v = stdout_json(&out);
    let rel = v["oracle"]["relative_error"].as_f64().unwrap();
    assert!(rel < 1e-2, "relative error {rel}");
}

#[test]
fn scan_reports_are_deterministic_and_worker_independent() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, workers: &str| -> serde_json::Value {
        let out_path = dir.path().join(name);
        let out = covol(
            &[
                "scan",
                "--count",
                "10",
                "--master-seed",
                "99",
                "--workers",
                workers,
                "--out",
                out_path.to_str().unwrap(),
            ],
            dir.path(),
        );
        assert_eq!(out.status.code(), Some(0), "{out:?}");
        let mut v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("generated_at_unix");
        for inst in v["instances"].as_array_mut().unwrap() {
            inst.as_object_mut().unwrap().remove("wall_time_ms");
        }
        v
    };
    let a = run("a.json", "1");
    let b = run("b.json", "4");
    let c = run("c.json", "1");
    assert_eq!(a, b, "worker count changed the report");
    assert_eq!(a, c, "repeat run changed the report");
    assert_eq!(a["summary"]["count"], 10);
    assert_eq!(a["summary"]["suite_passes"], 10);
    assert_eq!(a["schema"], 1);
}

#[test]
fn scan_env_var_overrides_workers() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("env.json");
    let out = Command::new(env!("CARGO_BIN_EXE_covol"))
        .args([
            "scan",
            "--count",
            "4",
            "--master-seed",
            "99",
            "--workers",
            "1",
            "--out",
            out_path.to_str().unwrap(),
        ])
        .env("COVOL_WORKERS", "2")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let out = Command::new(env!("CARGO_BIN_EXE_covol"))
        .args(["scan", "--count", "1"])
        .env("COVOL_WORKERS", "zebra")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fixtures_command_is_green() {
    let dir = tempfile::tempdir().unwrap();
    let out = covol(&["fixtures"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().count() >= 14);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn check_reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let poly = write(
        dir.path(),
        "p.txt",
        "t0*t1 + t1^2 + t1*t2 + t1*t3 + t2*t3",
    );
    let a = covol(
        &["check", "sectional", &poly, "--trials", "30", "--seed", "7"],
        dir.path(),
    );
    let b = covol(
        &["check", "sectional", &poly, "--trials", "30", "--seed", "7"],
        dir.path(),
    );
    assert_eq!(a.stdout, b.stdout);
}
