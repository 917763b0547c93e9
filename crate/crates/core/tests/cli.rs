use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

struct Run {
    code: i32,
    out: Value,
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

fn nashkit(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_nashkit"))
        .args(args)
        .env_remove("NASHKIT_TOL")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    Run { code: out.status.code().unwrap(), out: serde_json::from_str(&text).unwrap_or(Value::Null) }
}

fn exact(rows: &[&[&str]]) -> Value {
    json!({ "mode": "exact", "entries": rows })
}

fn sl2() -> Value {
    json!({ "generators": [exact(&[&["0", "1"], &["0", "0"]]), exact(&[&["0", "0"], &["1", "0"]])] })
}

#[test]
fn jordan_of_identity() {
    let dir = TempDir::new().unwrap();
    let id = exact(&[&["1", "0"], &["0", "1"]]);
    let p = write(&dir, "id.json", &id);
    let r = nashkit(&["jordan", "--mode", "mul", p.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    for part in ["e", "h", "u"] {
        assert_eq!(r.out[part]["entries"], json!([["1/1", "0/1"], ["0/1", "1/1"]]));
    }
    assert_eq!(r.out["class"]["elliptic"], json!(true));
    assert_eq!(r.out["class"]["unipotent"], json!(true));
}

#[test]
fn reductive_sl2() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "sl2.json", &sl2());
    let r = nashkit(&["lie", "reductive", p.to_str().unwrap()]);
    assert_eq!((r.code, r.out), (0, json!({ "reductive": true })));
    let r = nashkit(&["lie", "trace-form", p.to_str().unwrap()]);
    assert_eq!(r.out["rank"], json!(3));
}

#[test]
fn kan_of_singular_matrix() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "s.json", &exact(&[&["1", "2"], &["2", "4"]]));
    let r = nashkit(&["cartan", "kan", p.to_str().unwrap()]);
    assert_eq!(r.code, 3);
    assert_eq!(r.out["error"], json!("NotInvertible"));
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", &json!({ "mode": "exact", "entries": [["x"]] }));
    let r = nashkit(&["classify", bad.to_str().unwrap()]);
    assert_eq!((r.code, r.out["error"].clone()), (2, json!("MalformedInput")));
    let ok = write(&dir, "ok.json", &exact(&[&["1"]]));
    let r = nashkit(&["--tol", "1e-6", "classify", ok.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    let r = nashkit(&["classify", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(r.code, 2);
    let ragged = write(&dir, "r.json", &json!({ "mode": "exact", "entries": [["1", "2"]] }));
    let r = nashkit(&["classify", ragged.to_str().unwrap()]);
    assert_eq!(r.out["error"], json!("DimensionMismatch"));
}

#[test]
fn numerical_errors_exit_4() {
    let dir = TempDir::new().unwrap();
    let m = json!({ "mode": "approx", "entries": [[1.0, 0.0], [0.0, 1.00000003]] });
    let p = write(&dir, "near.json", &m);
    let r = nashkit(&["classify", p.to_str().unwrap()]);
    assert_eq!((r.code, r.out["error"].clone()), (4, json!("ClusterAmbiguity")));
    let r = nashkit(&["--approx", "--tol", "1e-6", "classify", p.to_str().unwrap()]);
    assert_eq!(r.code, 0);
}

#[test]
fn exact_only_operations_reject_floats() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "sl2.json", &sl2());
    for op in ["radical", "unipotent-radical", "levi"] {
        let r = nashkit(&["--approx", "lie", op, p.to_str().unwrap()]);
        assert_eq!((r.code, r.out["error"].clone()), (3, json!("ExactRequired")), "{op}");
        assert_eq!(nashkit(&["lie", op, p.to_str().unwrap()]).code, 0, "{op}");
    }
}

#[test]
fn split_flag_falls_back_to_floats_for_irrational_spectra() {
    let dir = TempDir::new().unwrap();
    let g = json!({ "basis": [exact(&[&["0", "2"], &["1", "0"]])] });
    let p = write(&dir, "g.json", &g);
    let r = nashkit(&["flag", "split", p.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.out);
    assert_eq!(r.out["change_of_basis"]["mode"], json!("approx"));
    let r = nashkit(&["--exact", "flag", "split", p.to_str().unwrap()]);
    assert_eq!((r.code, r.out["error"].clone()), (3, json!("IrrationalSpectrum")));
    let so2 = write(&dir, "so2.json", &json!({ "basis": [exact(&[&["0", "-1"], &["1", "0"]])] }));
    assert_eq!(nashkit(&["flag", "split", so2.to_str().unwrap()]).out["error"], json!("NotSplit"));
}

#[test]
fn replica_output() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "d.json", &exact(&[&["2", "0", "0"], &["0", "4", "0"], &["0", "0", "8"]]));
    let r = nashkit(&["replica", p.to_str().unwrap()]);
    assert_eq!(r.out["kind"], json!("hyperbolic"));
    assert_eq!(r.out["dimension"], json!(1));
    assert_eq!(r.out["lattice"], json!([[1, 1, -1], [0, 3, -2]]));
}

#[test]
fn cartan_commands() {
    let dir = TempDir::new().unwrap();
    let alg = write(&dir, "sl2.json", &sl2());
    let r = nashkit(&["cartan", "split", "--algebra", alg.to_str().unwrap()]);
    assert_eq!((r.out["k"]["dim"].clone(), r.out["p"]["dim"].clone()), (json!(1), json!(2)));
    let r = nashkit(&["cartan", "roots", alg.to_str().unwrap()]);
    assert_eq!(r.out["roots"].as_array().unwrap().len(), 2);
    let x = write(&dir, "x.json", &json!({ "mode": "approx", "entries": [[2.0, 1.0], [0.0, 0.5]] }));
    let r = nashkit(&["cartan", "kak", x.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    let r = nashkit(&["cartan", "kan", "--algebra", alg.to_str().unwrap(), x.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    let m = |key: &str| -> Vec<Vec<f64>> { serde_json::from_value(r.out[key]["entries"].clone()).unwrap() };
    let mul = |a: &[Vec<f64>], b: &[Vec<f64>]| -> Vec<Vec<f64>> {
        (0..2).map(|i| (0..2).map(|j| (0..2).map(|l| a[i][l] * b[l][j]).sum()).collect()).collect()
    };
    let kan = mul(&mul(&m("k"), &m("a")), &m("n"));
    let want = [[2.0, 1.0], [0.0, 0.5]];
    for i in 0..2 {
        for j in 0..2 {
            assert!((kan[i][j] - want[i][j]).abs() < 1e-12);
        }
    }
}

#[test]
fn explog_and_snsplit() {
    let dir = TempDir::new().unwrap();
    let n = write(&dir, "n.json", &exact(&[&["0", "1"], &["0", "0"]]));
    let r = nashkit(&["explog", "exp", "--domain", "nilpotent", n.to_str().unwrap()]);
    assert_eq!(r.out["result"]["entries"], json!([["1/1", "1/1"], ["0/1", "1/1"]]));
    let r = nashkit(&["explog", "log", "--domain", "nilpotent", n.to_str().unwrap()]);
    assert_eq!(r.out["error"], json!("NotUnipotent"));
    let x = write(&dir, "x.json", &exact(&[&["2", "1"], &["0", "2"]]));
    let r = nashkit(&["snsplit", x.to_str().unwrap()]);
    assert_eq!(r.out["s"]["entries"], json!([["2/1", "0/1"], ["0/1", "2/1"]]));
    assert_eq!(r.out["n"]["entries"], json!([["0/1", "1/1"], ["0/1", "0/1"]]));
}

#[test]
fn results_reparse() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", &exact(&[&["3", "1"], &["-1", "1/2"]]));
    let r = nashkit(&["jordan", x.to_str().unwrap()]);
    for part in ["e", "h", "u"] {
        let again = write(&dir, "part.json", &r.out[part]);
        assert_eq!(nashkit(&["classify", again.to_str().unwrap()]).code, 0);
    }
    let alg = write(&dir, "sl2.json", &sl2());
    let closed = nashkit(&["lie", "close", alg.to_str().unwrap()]);
    let p = write(&dir, "closed.json", &closed.out);
    assert_eq!(nashkit(&["lie", "close", p.to_str().unwrap()]).out, closed.out);
}
