use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn fundpoly(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fundpoly"))
        .arg("--out")
        .arg(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = fundpoly(dir, args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn analyze_lists_vertices_and_minima() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["--code", "trivial3", "analyze"]);
    let a = read_json(&dir.path().join("analysis.json"));
    let v = a["vertices"].as_array().unwrap();
    assert_eq!(v.len(), 2);
    assert!(v.iter().any(|e| e["omega"] == serde_json::json!(["2/3", "2/3", "2/3"]) && e["integral"] == false));
    assert_eq!(a["minima"]["w_awgnc"]["value"], "3");
}

#[test]
fn sweep_outputs_are_reproducible() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["--code", "code_4_2", "sweep", "--plane", "axes:1,3", "--fix", "2=-0.5", "--res", "15", "--decoder", "msa"];
    ok(a.path(), &args);
    ok(b.path(), &[&["--threads", "1"], &args[..]].concat());
    for f in ["sweep.pgm", "sweep.csv", "sweep.json"] {
        assert_eq!(std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap(), "{f}");
    }
    let pgm = std::fs::read(a.path().join("sweep.pgm")).unwrap();
    assert!(pgm.starts_with(b"P5\n15 15\n255\n"));
    assert_eq!(read_json(&a.path().join("sweep.json"))["pixels"], 225);
}

#[test]
fn boundary_plane_reads_a_pseudocodeword_file() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.txt");
    std::fs::write(&w, "2/3 2/3 2/3 0\n").unwrap();
    let plane = format!("boundary:{}", w.display());
    ok(dir.path(), &["--code", "code_4_2", "sweep", "--plane", &plane, "--res", "9", "--decoder", "lpd", "--name", "b"]);
    let s = read_json(&dir.path().join("b.json"));
    assert_eq!(s["pseudocodeword"], serde_json::json!(["2/3", "2/3", "2/3", "0"]));
}

#[test]
fn lp_decoding_can_return_a_fractional_vertex() {
    let dir = tempfile::tempdir().unwrap();
    let stdout = ok(dir.path(), &["--code", "trivial3", "decode", "--decoder", "lpd", "--lambda", "-1,-1,-1"]);
    let r: Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(r["fractional"], true);
    assert_eq!(r["decision"], serde_json::json!(["2/3", "2/3", "2/3"]));
}

#[test]
fn noiseless_batch_has_no_errors() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["--code", "hamming7", "decode", "--decoder", "mld", "--channel", "bsc:eps=0", "--trials", "20"]);
    let b = read_json(&dir.path().join("decode.json"));
    assert_eq!((b["trials"].as_u64(), b["word_errors"].as_u64(), b["correct"].as_u64()), (Some(20), Some(0), Some(20)));
}

#[test]
fn batches_depend_only_on_the_seed() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["--code", "hamming7", "--seed", "9", "decode", "--decoder", "spa", "--channel", "awgnc:ebn0_db=1", "--trials", "100"];
    ok(a.path(), &args);
    ok(b.path(), &args);
    assert_eq!(read_json(&a.path().join("decode.json")), read_json(&b.path().join("decode.json")));
}

#[test]
fn cover_realizes_a_fractional_point() {
    let dir = tempfile::tempdir().unwrap();
    let stdout = ok(dir.path(), &["--code", "code_4_2", "cover", "--nu", "2/3,2/3,2/3,0"]);
    assert!(stdout.starts_with("M = 3\n"), "{stdout}");
    let c = read_json(&dir.path().join("cover.json"));
    assert_eq!(c["M"], 3);
    assert_eq!(c["codeword"].as_array().unwrap().len(), 12);
    assert_eq!(c["perms"].as_object().unwrap().len(), 6);
}

#[test]
fn cover_rejects_points_outside_the_polytope() {
    let dir = tempfile::tempdir().unwrap();
    let out = fundpoly(dir.path(), &["--code", "code_4_2", "cover", "--nu", "1,1,1,1"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not in the fundamental polytope"));
}

#[test]
fn bounds_on_a_regular_code() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("reg.txt");
    std::fs::write(&code, "6 8\n11100010\n01100101\n11010100\n00001111\n00111010\n10011001\n").unwrap();
    ok(dir.path(), &["--code", code.to_str().unwrap(), "bounds"]);
    let b = read_json(&dir.path().join("bounds.json"));
    assert_eq!((b["w_col"].as_u64(), b["w_row"].as_u64()), (Some(3), Some(4)));
    let ub = &b["upper_bound"];
    let beta = ub["beta"].as_f64().unwrap();
    assert!((beta - 4f64.ln() / 6f64.ln()).abs() < 1e-12);
    assert!(b["min_w_awgnc_f64"].as_f64().unwrap() <= ub["value"].as_f64().unwrap());
    let csv = std::fs::read_to_string(dir.path().join("bounds.csv")).unwrap();
    assert_eq!(csv.lines().count(), 9);
}

#[test]
fn bad_input_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["--code", "nonexistent", "analyze"][..],
        &["analyze"],
        &["--code", "trivial3", "decode", "--lambda", "1,2"],
        &["--code", "trivial3", "sweep", "--plane", "axes:1,4"],
        &["--code", "trivial3", "sweep", "--plane", "axes:1,2", "--fix", "1=3"],
        &["--code", "hamming7", "bounds"],
    ] {
        let out = fundpoly(dir.path(), args);
        if args.last() == Some(&"bounds") {
            // Non-regular codes still get per-root weights, only without the bound.
            assert!(out.status.success());
            assert!(read_json(&dir.path().join("bounds.json"))["upper_bound"].is_null());
        } else {
            assert!(!out.status.success(), "{args:?} should fail");
            assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "), "{args:?}");
        }
    }
}

#[test]
fn limits_file_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let limits = dir.path().join("limits.json");
    std::fs::write(&limits, r#"{"max_vertex_n": 2, "max_exhaustive_n": 2, "max_nullspace_dim": 1}"#).unwrap();
    let l = limits.to_str().unwrap();
    ok(dir.path(), &["--code", "code_4_2", "--limits", l, "analyze"]);
    let a = read_json(&dir.path().join("analysis.json"));
    assert!(a["vertices"].is_null());
    assert!(!a["notes"].as_array().unwrap().is_empty());
    let out = fundpoly(dir.path(), &["--code", "hamming7", "--limits", l, "decode", "--decoder", "mld", "--lambda", "1,1,1,1,1,1,1"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--limits"));
}
