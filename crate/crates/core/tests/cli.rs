// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const SINGLE_SPIN: &str = r#"{
    "n": 2,
    "drift": [[[0,0],[0.25,-0.25]],[[0.25,0.25],[0,0]]],
    "gate": [[[0,0],[-1,0]],[[1,0],[0,0]]],
    "constraint": {"type": "killing", "kappa": 1.0}
}"#;

fn zqoc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zqoc")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: {}{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn synthesize_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "spin.json", SINGLE_SPIN);
    let prefix = dir.path().join("spin");
    let out = zqoc(&["synthesize", s(&cfg), "--out", s(&prefix)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    assert!((report["T_opt"].as_f64().unwrap() - 1.654_266_570_4).abs() < 1e-8);
    assert!(report["endpoint_residual"].as_f64().unwrap() < 1e-6);
    assert_eq!(report["constant_control_optimal"], Value::Bool(false));

    let schedule = dir.path().join("spin.schedule.csv");
    let text = std::fs::read_to_string(&schedule).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,f_sx,f_sy,f_sz,constraint_check"));
    assert_eq!(lines.count(), 2001);
    let on_disk: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("spin.report.json")).unwrap()).unwrap();
    assert_eq!(on_disk, report);

    let out = zqoc(&["verify", s(&cfg), s(&schedule)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert!(v["endpoint_residual"].as_f64().unwrap() < 1e-6);
    assert!(v["constraint_max_violation"].as_f64().unwrap() < 1e-8);
    assert!((v["traversal_time"].as_f64().unwrap() - 1.654_266_570_4).abs() < 1e-4);
}

#[test]
fn verify_rejects_wrong_schedule() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "spin.json", SINGLE_SPIN);
    // Constant σ_y field for half the needed time.
    let sched = write(
        dir.path(),
        "bad.csv",
        "t,f_sx,f_sy,f_sz\n0,0,0.7071067811865476,0\n0.5,0,0.7071067811865476,0\n",
    );
    let out = zqoc(&["verify", s(&cfg), s(&sched)]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("verification failed"));

    let bad_header = write(dir.path(), "hdr.csv", "t,f_sy,f_sx,f_sz\n0,0,0,0\n");
    assert_eq!(zqoc(&["verify", s(&cfg), s(&bad_header)]).status.code(), Some(2));
}

#[test]
fn identity_gate_takes_no_time() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "id.json",
        &SINGLE_SPIN.replace(r#"[[[0,0],[-1,0]],[[1,0],[0,0]]]"#, r#"[[[1,0],[0,0]],[[0,0],[1,0]]]"#),
    );
    let prefix = dir.path().join("id");
    let out = zqoc(&["synthesize", s(&cfg), "--out", s(&prefix)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["T_opt"].as_f64(), Some(0.0));

    let empty = write(dir.path(), "empty.csv", "t,f_sx,f_sy,f_sz,constraint_check\n");
    let out = zqoc(&["verify", s(&cfg), s(&empty)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["endpoint_residual"].as_f64(), Some(0.0));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("x");

    let strong = write(dir.path(), "strong.json", &SINGLE_SPIN.replace("0.25", "0.75"));
    assert_eq!(
        zqoc(&["synthesize", s(&strong), "--out", s(&prefix)]).status.code(),
        Some(3)
    );

    let short = write(
        dir.path(),
        "short.json",
        &SINGLE_SPIN.replace(r#""constraint""#, r#""solver": {"t_max": 0.5}, "constraint""#),
    );
    assert_eq!(
        zqoc(&["synthesize", s(&short), "--out", s(&prefix)]).status.code(),
        Some(4)
    );

    let broken = write(dir.path(), "broken.json", "{\"n\": 2");
    assert_eq!(
        zqoc(&["synthesize", s(&broken), "--out", s(&prefix)]).status.code(),
        Some(2)
    );

    let missing = dir.path().join("missing.json");
    assert_eq!(
        zqoc(&["synthesize", s(&missing), "--out", s(&prefix)]).status.code(),
        Some(2)
    );
    assert!(!dir.path().join("x.schedule.csv").exists());

    assert_eq!(zqoc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "spin.json", SINGLE_SPIN);
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    assert!(zqoc(&["synthesize", s(&cfg), "--out", s(&a)]).status.success());
    assert!(zqoc(&["synthesize", s(&cfg), "--out", s(&b)]).status.success());
    let read = |p: &Path, suffix: &str| std::fs::read(format!("{}{suffix}", p.display())).unwrap();
    assert_eq!(read(&a, ".schedule.csv"), read(&b, ".schedule.csv"));

    let s1 = dir.path().join("s1.csv");
    let s2 = dir.path().join("s2.csv");
    let run = |out: &Path, threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_zqoc"))
            .env("ZQOC_THREADS", threads)
            .args([
                "sweep",
                s(&cfg),
                "--param",
                "b",
                "--range",
                "0:0.3:0.05",
                "--out",
                s(out),
            ])
            .output()
            .unwrap()
    };
    assert!(run(&s1, "1").status.success());
    assert!(run(&s2, "4").status.success());
    assert_eq!(std::fs::read(&s1).unwrap(), std::fs::read(&s2).unwrap());
}

#[test]
fn sweep_single_spin() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "spin.json", SINGLE_SPIN);
    let out = dir.path().join("sweep.csv");
    let run = zqoc(&[
        "sweep",
        s(&cfg),
        "--param",
        "b",
        "--range",
        "-0.3:0.3:0.1",
        "--out",
        s(&out),
    ]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let summary = json(&run);
    assert_eq!(summary["points"], 7);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("param,t_dep,t_indep,dep_le_indep,status\n"));
    assert_eq!(text.lines().count(), 8);

    let bad = zqoc(&[
        "sweep",
        s(&cfg),
        "--param",
        "J",
        "--range",
        "0:0.1:0.05",
        "--out",
        s(&out),
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn traverse_pure_drift() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "spin.json", SINGLE_SPIN);
    // W = −iĤ₀ = −i(σ_x + σ_y)/4 has generator components (−1/4, −1/4, 0).
    let mut curve = String::from("t,v_sx,v_sy,v_sz\n");
    for k in 0..=20 {
        curve.push_str(&format!("{},-0.25,-0.25,0\n", k as f64 * 0.15));
    }
    let curve = write(dir.path(), "curve.csv", &curve);
    let out = zqoc(&["traverse", s(&cfg), s(&curve)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let t = json(&out)["traversal_time"].as_f64().unwrap();
    assert!((t - 1.0).abs() < 1e-9, "{t}");
}

#[test]
fn ep_tracks_geodesic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "spin.json", SINGLE_SPIN);
    let out = dir.path().join("ep.csv");
    let run = zqoc(&["ep", s(&cfg), "--out", s(&out), "--steps", "1000"]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let report = json(&run);
    assert!(report["endpoint_residual"].as_f64().unwrap() < 1e-6);
    assert!(report["unit_speed_max_violation"].as_f64().unwrap() < 1e-7);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("t,xi_sx,xi_sy,xi_sz,endpoint_residual\n"));
    assert_eq!(text.lines().count(), 1002);
}

#[test]
fn ep_with_forbidden_direction() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = SINGLE_SPIN.replace(
        r#""constraint""#,
        r#""ep": {"xi0": [0.4, -0.25, 0.6], "t_end": 2.0, "steps": 500, "forbidden": ["sz"]}, "constraint""#,
    );
    let cfg = write(dir.path(), "ep.json", &cfg);
    let out = dir.path().join("ep.csv");
    let run = zqoc(&["ep", s(&cfg), "--out", s(&out)]);
    assert_eq!(run.status.code(), Some(2), "ξ₀ has a control component along σ_z");

    let cfg2 = std::fs::read_to_string(&cfg)
        .unwrap()
        .replace("[0.4, -0.25, 0.6]", "[0.4, -0.25, 0.0]");
    let cfg2 = write(dir.path(), "ep2.json", &cfg2);
    let run = zqoc(&["ep", s(&cfg2), "--out", s(&out)]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(json(&run)["constraint_max_violation"].as_f64().unwrap() < 1e-10);
    assert!(std::fs::read_to_string(&out)
        .unwrap()
        .starts_with("t,xi_sx,xi_sy,xi_sz,omega_0,endpoint_residual\n"));
}

#[test]
fn geovec_classifies() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "spin.json", SINGLE_SPIN);
    let out = zqoc(&["geovec", s(&cfg), "--x", "-0.1,0.2,0.3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["is_geodesic"], Value::Bool(false));

    let free = write(dir.path(), "free.json", &SINGLE_SPIN.replace("0.25", "0"));
    let out = zqoc(&["geovec", s(&free), "--x", "-0.1,0.2,0.3"]);
    assert_eq!(json(&out)["is_geodesic"], Value::Bool(true));

    assert_eq!(zqoc(&["geovec", s(&cfg), "--x", "1,2"]).status.code(), Some(2));
}
