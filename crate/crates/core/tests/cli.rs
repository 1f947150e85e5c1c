use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qecc_lab::{build_code, CodeName, PauliString};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qecc-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn simulate_decode_only_x1() {
    let o = run(&[
        "simulate",
        "--code",
        "shor9",
        "--error",
        "X1",
        "--policy",
        "decode-only",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.contains("t3 decoded: (a)|000110000> + (b)|100110000>"),
        "{out}"
    );
    assert!(out.contains("output error: X4X5"), "{out}");
    assert!(out.contains("syndrome: 10000000"), "{out}");
}

#[test]
fn simulate_no_error_round_trip() {
    let o = run(&["simulate", "--code", "bitflip3", "--error", "none"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("t1 encoded: (a)|000> + (b)|111>"), "{out}");
    assert!(out.contains("t3 decoded: (a)|000> + (b)|100>"), "{out}");
    assert!(out.contains("residual: I (phase 1)"), "{out}");
}

#[test]
fn simulate_arbitrary_error_mixes_ancilla_branches() {
    let o = run(&[
        "simulate",
        "--code",
        "shor9",
        "--error",
        "c:0.6,0,0.8,0",
        "--qubit",
        "1",
        "--policy",
        "decode-only",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    // 0.6 |psi>|0000 0000> + 0.8 i |psi>|1111 0000>
    assert!(
        out.contains("t3 decoded: (0.6a)|000000000> + ((0+0.8i)a)|011110000> + (0.6b)|100000000> + ((0+0.8i)b)|111110000>"),
        "{out}"
    );
}

#[test]
fn simulate_json_is_parseable() {
    let o = run(&[
        "simulate", "--code", "steane7", "--error", "X1 Z4", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["syndrome"], "100001");
    assert_eq!(v["residual"], "I");
}

#[test]
fn bad_specs_exit_2() {
    for args in [
        vec!["simulate", "--error", "Q1"],
        vec!["simulate", "--code", "hamming"],
        vec!["simulate", "--error", "c:0,0,0,0"],
        vec!["simulate", "--error", "X10"],
        vec!["curves", "--pgrid", "0:2:10"],
        vec!["verify", "--grid", "8x8"],
        vec!["tables", "--format", "xml"],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn io_failure_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let o = run(&[
        "tables",
        "--code",
        "bitflip3",
        "--out",
        blocker.join("sub").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
    let o = run(&["curves", "--out", blocker.join("c.csv").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

fn read_rows(path: &Path) -> Vec<csv::StringRecord> {
    let mut r = csv::Reader::from_path(path).unwrap();
    assert_eq!(
        r.headers().unwrap(),
        &csv::StringRecord::from(vec![
            "code",
            "error",
            "syndrome",
            "correction",
            "residual",
            "phase",
            "notes"
        ])
    );
    r.records().map(|x| x.unwrap()).collect()
}

#[test]
fn tables_are_deterministic_and_round_trip() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        let o = run(&["tables", "--out", d.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let mut names: Vec<_> = fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names.len(), 9);
    for name in &names {
        let (x, y) = (
            fs::read(a.path().join(name)).unwrap(),
            fs::read(b.path().join(name)).unwrap(),
        );
        assert_eq!(x, y, "{name:?} differs between runs");
        for row in read_rows(&a.path().join(name)) {
            let code = build_code(row[0].parse::<CodeName>().unwrap()).unwrap();
            assert_eq!(row[2].len(), code.generator_count());
            let e = PauliString::parse(code.n, &row[1]).unwrap();
            assert_eq!(
                code.syndrome_of(&e).unwrap().to_string(),
                &row[2],
                "{row:?}"
            );
        }
    }
}

#[test]
fn table_rows_and_notes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["tables", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let find = |file: &str, error: &str| {
        read_rows(&dir.path().join(file))
            .into_iter()
            .find(|r| &r[1] == error)
            .unwrap_or_else(|| panic!("{error} missing from {file}"))
    };
    let r = find("shor9_singles.csv", "X2");
    assert_eq!((&r[2], &r[3], &r[4]), ("11000000", "X2", "I"));
    let r = find("steane7_doubles.csv", "Z1 X4");
    assert_eq!((&r[2], &r[3], &r[4]), ("001100", "Z1 X4", "I"));
    let r = find("five5_doubles.csv", "X3 X4");
    assert_eq!((&r[2], &r[3], &r[4]), ("1101", "Y1", "Y"));
    let r = find("shor9_decode_only.csv", "Y9");
    assert_eq!(&r[6], "output=-iX3X9");

    let noted: Vec<String> = read_rows(&dir.path().join("steane7_doubles.csv"))
        .into_iter()
        .filter(|r| &r[6] == "not-listed-in-reference-table")
        .map(|r| r[1].to_string())
        .collect();
    assert_eq!(noted, ["Z4 X7", "Z5 X7", "Z6 X7"]);
}

#[test]
fn json_tables_mirror_csv() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert!(run(&["tables", "--code", "five5", "--out", d])
        .status
        .success());
    assert!(
        run(&["tables", "--code", "five5", "--out", d, "--format", "json"])
            .status
            .success()
    );
    let csv_rows = read_rows(&dir.path().join("five5_doubles.csv"));
    let json: Vec<serde_json::Value> =
        serde_json::from_str(&fs::read_to_string(dir.path().join("five5_doubles.json")).unwrap())
            .unwrap();
    assert_eq!(csv_rows.len(), json.len());
    for (c, j) in csv_rows.iter().zip(&json) {
        assert_eq!(&c[1], j["error"].as_str().unwrap());
        assert_eq!(&c[2], j["syndrome"].as_str().unwrap());
        assert_eq!(&c[4], j["residual"].as_str().unwrap());
    }
}

#[test]
fn doubles_prints_histograms() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["doubles", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.contains("shor9 full-xz-universe: N=144 {I:108, X:27, Z:9} f=5/6"),
        "{out}"
    );
    assert!(out.contains("steane7 reference-tables: N=81"), "{out}");
    assert!(out.contains("f=53/81"), "{out}");
    assert!(
        out.contains("five5 full-xz-universe: N=40 {X:15, Y:10, Z:15} f=1/3"),
        "{out}"
    );
}

#[test]
fn curves_endpoints_and_ordering() {
    let o = run(&["curves"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "P,C0=1-(2/3)P,C5=1-(2/3)P^2,C7_reference=1-(28/81)P^2,C7_full=1-(1/3)P^2,C9=1-(1/6)P^2"
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 101);
    assert!(rows[0][1..].iter().all(|&v| v == 1.0));
    let last = &rows[100];
    let want = [1.0, 1.0 / 3.0, 1.0 / 3.0, 53.0 / 81.0, 2.0 / 3.0, 5.0 / 6.0];
    for (got, want) in last.iter().zip(want) {
        assert!((got - want).abs() < 1e-11, "{last:?}");
    }
    for r in &rows {
        assert!(r[5] >= r[3] && r[3] >= r[2] && r[2] >= r[1], "{r:?}");
    }
}

#[test]
fn curves_json_and_custom_grid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let o = run(&[
        "curves",
        "--format",
        "json",
        "--pgrid",
        "0.5:1:2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["samples"].as_array().unwrap().len(), 3);
    assert_eq!(v["curves"][2]["coefficient"], "28/81");
}

#[test]
fn verify_passes_on_a_fresh_build() {
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(
        v["shor9_histogram"],
        serde_json::json!({"I": 108, "X": 27, "Z": 9})
    );
}

#[test]
fn verify_names_a_corrupted_syndrome() {
    let o = run(&["verify", "--corrupt", "steane7:001100"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("steane7 syndrome 001100"), "{err}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], false);
}
