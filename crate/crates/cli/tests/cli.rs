use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gridsight"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas")
}

fn assert_schema(v: &Value) {
    let tag = v["schema"].as_str().expect("schema tag");
    let name = tag.trim_start_matches("gridsight/").replace("/v", ".v");
    let path = schema_dir().join(format!("{name}.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{tag}: {errors:?}");
}

#[test]
fn hp_reports_height_six() {
    let v = json(&["hp", "--p", "11", "--d", "3", "--t", "10,10"]);
    assert_eq!(v["hp"], 6);
    assert_eq!(v["holds"], true);
    assert_schema(&v);
}

#[test]
fn width_of_the_small_fixture() {
    // four pairwise incomparable nonzero multiples above the zero element
    let v = json(&["width", "--p", "5", "--d", "3", "--t", "2,3"]);
    assert_eq!(v["width"], 4);
    assert_eq!(v["bruteforce"], 4);
    assert_schema(&v);
    let flipped = json(&["width", "--p", "5", "--t", "2,3", "--signs", "-+"]);
    assert_eq!(flipped["signs"], serde_json::json!(["-", "+"]));
}

#[test]
fn every_command_matches_its_schema() {
    let cases: &[&[&str]] = &[
        &["hp", "--p", "13"],
        &["antichain", "--p", "31", "--t", "5,12"],
        &["lll", "--p", "101", "--d", "4", "--t", "17,45,88"],
        &["cover", "--p", "11", "--t", "3,7"],
        &["cover", "--p", "11", "--t", "1,7"],
        &["fourier-check", "--p", "5", "--t", "2,3"],
        &["construct", "--p", "11"],
        &["construct", "--p", "11", "--d", "4"],
        &["scaling", "--primes", "11,13,17", "--format", "json"],
        &["verify-all", "--max-p", "7", "--format", "json"],
    ];
    for args in cases {
        assert_schema(&json(args));
    }
}

#[test]
fn simulate_reads_construct_output() {
    let dir = tempfile::tempdir().unwrap();
    let built = dir.path().join("built.json");
    let out = run(&["construct", "--p", "11", "--out", built.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&[
        "simulate",
        "--input",
        built.to_str().unwrap(),
        "--rays",
        "8",
    ]);
    assert_schema(&v);
    let planned: Value = serde_json::from_str(&std::fs::read_to_string(&built).unwrap()).unwrap();
    assert_eq!(v["sampled_count"], planned["family_total"]);
    assert_eq!(v["exact"], Value::Null);
}

#[test]
fn simulate_planar_scene() {
    let dir = tempfile::tempdir().unwrap();
    let scene = dir.path().join("scene.json");
    std::fs::write(
        &scene,
        r#"{"n": 6, "d": 2, "cubes": [[2,0],[2,1],[2,2],[4,1],[1,3]]}"#,
    )
    .unwrap();
    let v = json(&[
        "simulate",
        "--input",
        scene.to_str().unwrap(),
        "--rays",
        "512",
    ]);
    assert_schema(&v);
    let exact = v["exact"].as_array().unwrap();
    for q in v["sampled"]["visible"].as_array().unwrap() {
        assert!(exact.contains(q));
    }
    std::fs::write(&scene, r#"{"n": 6, "d": 2, "cubes": [[0,0]]}"#).unwrap();
    assert_eq!(
        run(&["simulate", "--input", scene.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["hp", "--p", "11", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        run(&["hp", "--p", "12", "--t", "1,1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["hp", "--p", "11", "--t", "1,1,1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["width", "--p", "11"]).status.code(), Some(2));
    assert_eq!(
        run(&["lll", "--p", "11", "--t", "0,3"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let ok = run(&["verify-all", "--max-p", "13"]);
    assert_eq!(ok.status.code(), Some(0));
    let table = String::from_utf8(ok.stdout).unwrap();
    assert!(
        table.lines().skip(1).all(|l| l.ends_with("PASS")),
        "{table}"
    );
}

#[test]
fn output_is_byte_identical() {
    let args = ["construct", "--p", "13", "--seed", "9"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let one = bin()
        .args([
            "scaling",
            "--primes",
            "11,13,17,19",
            "--mode",
            "geometric",
            "--rays",
            "4",
        ])
        .env("GRIDSIGHT_THREADS", "1")
        .output()
        .unwrap();
    let four = bin()
        .args([
            "scaling",
            "--primes",
            "11,13,17,19",
            "--mode",
            "geometric",
            "--rays",
            "4",
        ])
        .env("GRIDSIGHT_THREADS", "4")
        .output()
        .unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn config_file_with_flags_winning() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "p = 11\nd = 3\nt = [10, 10]\n").unwrap();
    let c = cfg.to_str().unwrap();
    assert_eq!(json(&["hp", "--config", c])["hp"], 6);
    // the flag overrides the file's t
    assert_eq!(json(&["hp", "--config", c, "--t", "1,1"])["hp"], 1);
    std::fs::write(&cfg, "p = 11\nunknown = 1\n").unwrap();
    assert_eq!(run(&["hp", "--config", c]).status.code(), Some(2));
}

#[test]
fn scaling_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scale.csv");
    let r = run(&[
        "scaling",
        "--primes",
        "11,13,17",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success());
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("p,families,predicted,sampled,slope"));
    assert_eq!(lines.count(), 3);
    let svg = std::fs::read_to_string(out.with_extension("svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("slope"));
}
