//! Acceptance: the gen -> analyze pipelines reproduce the library verdicts
//! through documents on disk, with the documented exit-code discipline.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::Instant;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_vvframe")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn workdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("vvframe-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn criterion_11_cli_pipelines() {
    let started = Instant::now();
    let dir = workdir();

    // --- criterion 1 verdicts through the CLI ---
    for (l, invertible, rank) in [(1u32, true, 4), (3, true, 4), (2, false, 2)] {
        let out = run(&["dmatrix", "--N", "4", "--l", &l.to_string()]);
        assert!(out.status.success());
        let report = json_of(&out);
        assert_eq!(report["invertible"], invertible, "l = {}", l);
        assert_eq!(report["rank"], rank, "l = {}", l);
        if invertible {
            assert!(report["smallest_singular_value"].as_f64().unwrap() >= 1.0);
        }
    }

    // --- criterion 5: worked Z/4Z example through documents ---
    let z4_path = dir.join("z4.json");
    std::fs::write(
        &z4_path,
        r#"{"kind":"frame","d":2,"vectors":[[[1,1],[1,-1]],[[0,0],[2,0]],[[1,-1],[1,1]],[[2,0],[0,0]]]}"#,
    )
    .unwrap();
    let group_path = dir.join("z4-group.json");
    let table_path = dir.join("z4-table.json");
    let out = run(&[
        "gen",
        "group-table",
        "--cyclic",
        "4",
        "--group-out",
        group_path.to_str().unwrap(),
        "--out",
        table_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = run(&["gramian", "--frame", z4_path.to_str().unwrap()]);
    let gram = json_of(&out);
    let expect = [
        [[4.0, 0.0], [2.0, 2.0], [0.0, 0.0], [2.0, -2.0]],
        [[2.0, -2.0], [4.0, 0.0], [2.0, 2.0], [0.0, 0.0]],
        [[0.0, 0.0], [2.0, -2.0], [4.0, 0.0], [2.0, 2.0]],
        [[2.0, 2.0], [0.0, 0.0], [2.0, -2.0], [4.0, 0.0]],
    ];
    for j in 0..4 {
        for k in 0..4 {
            assert_eq!(gram["entries"][j][k][0], expect[j][k][0]);
            assert_eq!(gram["entries"][j][k][1], expect[j][k][1]);
        }
    }

    let out = run(&[
        "gmatrix",
        "--frame",
        z4_path.to_str().unwrap(),
        "--group",
        group_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_eq!(report["is_gmatrix"], true);
    let nu = report["nu"].as_array().unwrap();
    let nu_expect = [[4.0, 0.0], [2.0, -2.0], [0.0, 0.0], [2.0, 2.0]];
    for (got, want) in nu.iter().zip(&nu_expect) {
        assert!((got[0].as_f64().unwrap() - want[0]).abs() <= 1e-12);
        assert!((got[1].as_f64().unwrap() - want[1]).abs() <= 1e-12);
    }

    let out = run(&[
        "harmonic-equiv",
        "--frame",
        z4_path.to_str().unwrap(),
        "--group",
        group_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let cert = json_of(&out);
    let c = cert["c"].as_f64().unwrap();
    assert!((c - std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-9);
    assert!(cert["law_max_deviation"].as_f64().unwrap() <= 1e-9);

    // the group table is also a frame multiplication for the frame
    let out = run(&[
        "mult",
        "check",
        "--frame",
        z4_path.to_str().unwrap(),
        "--table",
        table_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    // --- criterion 6: cross-product frame pipeline ---
    let cross_frame_path = dir.join("cross-frame.json");
    let cross_table_path = dir.join("cross-table.json");
    let out = run(&[
        "gen",
        "cross-frame",
        "--frame-out",
        cross_frame_path.to_str().unwrap(),
        "--table-out",
        cross_table_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = run(&["frame-op", "--frame", cross_frame_path.to_str().unwrap()]);
    let s = json_of(&out);
    for p in 0..3 {
        for q in 0..3 {
            let expect = if p == q { 2.0 } else { 0.0 };
            assert!((s["entries"][p][q][0].as_f64().unwrap() - expect).abs() <= 1e-12);
            assert!(s["entries"][p][q][1].as_f64().unwrap().abs() <= 1e-12);
        }
    }

    let table: Value =
        serde_json::from_str(&std::fs::read_to_string(&cross_table_path).unwrap()).unwrap();
    assert_eq!(table["table"][1][2], 3);
    assert_eq!(table["table"][2][1], 6);

    let out = run(&[
        "mult",
        "check",
        "--frame",
        cross_frame_path.to_str().unwrap(),
        "--table",
        cross_table_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["accepted"], true);

    // extend-product verdict against the determinant cross product,
    // computed here as the independent oracle
    let mut state: u64 = 0xfeed;
    let mut next = move || {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^= z >> 31;
        (z >> 11) as f64 / (1u64 << 52) as f64 - 1.0
    };
    for trial in 0..10 {
        let u: Vec<(f64, f64)> = (0..3).map(|_| (next(), next())).collect();
        let v: Vec<(f64, f64)> = (0..3).map(|_| (next(), next())).collect();
        let vec_doc = |w: &[(f64, f64)]| {
            format!(
                "{{\"kind\":\"signal\",\"N\":1,\"d\":3,\"values\":[[{}]]}}",
                w.iter()
                    .map(|(re, im)| format!("[{:.17},{:.17}]", re, im))
                    .collect::<Vec<_>>()
                    .join(",")
            )
        };
        let x_path = dir.join("xvec.json");
        let y_path = dir.join("yvec.json");
        std::fs::write(&x_path, vec_doc(&u)).unwrap();
        std::fs::write(&y_path, vec_doc(&v)).unwrap();
        let out = run(&[
            "mult",
            "extend",
            "--frame",
            cross_frame_path.to_str().unwrap(),
            "--table",
            cross_table_path.to_str().unwrap(),
            "--x",
            x_path.to_str().unwrap(),
            "--y",
            y_path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        let got = json_of(&out);
        let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
        let sub = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0, a.1 - b.1);
        let cross = [
            sub(mul(u[1], v[2]), mul(u[2], v[1])),
            sub(mul(u[2], v[0]), mul(u[0], v[2])),
            sub(mul(u[0], v[1]), mul(u[1], v[0])),
        ];
        for p in 0..3 {
            let re = got["values"][0][p][0].as_f64().unwrap();
            let im = got["values"][0][p][1].as_f64().unwrap();
            assert!(
                (re - cross[p].0).abs() <= 1e-12 && (im - cross[p].1).abs() <= 1e-12,
                "trial {} component {}",
                trial,
                p
            );
        }
    }

    // --- criterion 7: empty multiplication set through the CLI ---
    let xab_path = dir.join("xab.json");
    std::fs::write(
        &xab_path,
        r#"{"kind":"frame","d":2,"vectors":[[[1,0],[0,0]],[[0,0],[1,0]],[[0.5,0],[0.25,0]]]}"#,
    )
    .unwrap();
    let out = run(&["mult", "enumerate", "--frame", xab_path.to_str().unwrap()]);
    assert!(out.status.success());
    let report = json_of(&out);
    assert_eq!(report["count"], 0, "mult(X) must be empty");

    // verdict-false exits 1: the Z/3Z addition table is rejected
    let t3_path = dir.join("t3.json");
    let out = run(&[
        "gen",
        "group-table",
        "--cyclic",
        "3",
        "--out",
        t3_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&[
        "mult",
        "check",
        "--frame",
        xab_path.to_str().unwrap(),
        "--table",
        t3_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1), "rejected table exits 1");
    assert_eq!(json_of(&out)["accepted"], false);

    // --- exit-code discipline ---
    let out = run(&["gen", "dft-frame", "--N", "4", "--s", "1,1"]);
    assert_eq!(out.status.code(), Some(2), "invalid params exit 2");
    let out = run(&["classify", "--frame", "/does/not/exist.json"]);
    assert_eq!(out.status.code(), Some(2), "unreadable input exits 2");

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "pipelines took {:?}", elapsed);
    println!(
        "acceptance 11 (CLI pipelines): PASS ({:.3} ms)",
        elapsed.as_secs_f64() * 1e3
    );
}
