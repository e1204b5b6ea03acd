use std::process::{Command, Output};

use serde_json::{json, Value};

const ADJOINT: &str = r#"{"k":1,"nu":[{"plus":[1],"minus":[1]}]}"#;
const TRIVIAL2: &str = r#"{"k":2,"nu":[{"plus":[],"minus":[]},{"plus":[],"minus":[]}]}"#;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiver-harmonics"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

#[test]
fn stable_mult_adjoint() {
    let out = bin(&["stable-mult", "--ktype", ADJOINT, "--max-degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["coeffs"], json!([0, 1, 1, 1, 1]));
}

#[test]
fn ktype_from_file() {
    let dir = std::env::temp_dir().join(format!("qh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("adjoint.json");
    std::fs::write(&path, ADJOINT).unwrap();
    let out = bin(&["stable-mult", "--ktype", path.to_str().unwrap(), "--max-degree", "3"]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(stdout_json(&out)["coeffs"], json!([0, 1, 1, 1]));
}

#[test]
fn lr_agreement() {
    let out = bin(&["lr", "--lambda", "3,2,1", "--alpha", "2,1", "--nu", "2,1"]);
    let v = stdout_json(&out);
    assert_eq!((v["crystal"].clone(), v["classical"].clone(), v["agree"].clone()), (json!(2), json!(2), json!(true)));
}

#[test]
fn verify_modes_pass() {
    for args in [
        vec!["verify", "--mode", "separation", "--ktype", TRIVIAL2, "--max-degree", "6"],
        vec!["verify", "--mode", "definition", "--ktype", ADJOINT, "--max-degree", "5"],
        vec!["verify", "--mode", "hesselink", "--max-degree", "4"],
        vec!["verify", "--mode", "character", "--dims", "2,2", "--max-degree", "2"],
        vec!["verify", "--mode", "character", "--dims", "3", "--max-degree", "3"],
    ] {
        let out = bin(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout_json(&out)["pass"], json!(true), "{args:?}");
    }
}

#[test]
fn distinguished_rows() {
    let out = bin(&["distinguished", "--ktype", ADJOINT, "--max-degree", "3"]);
    let rows = stdout_json(&out)["tuples"].as_array().unwrap().clone();
    let degrees: Vec<u64> = rows.iter().map(|r| r["degree"].as_u64().unwrap()).collect();
    assert_eq!(degrees, vec![1, 2, 3]);
}

#[test]
fn exponents_and_oracle() {
    let out = bin(&["exponents", "--n", "3", "--weight", "1,0,-1", "--max-degree", "4"]);
    assert_eq!(stdout_json(&out)["coeffs"], json!([0, 1, 1, 0, 0]));
    let out = bin(&["oracle", "--dims", "1,1", "--k", "2", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout_json(&out)["ktypes"].as_array().unwrap().is_empty());
}

#[test]
fn error_objects_and_exit_codes() {
    let out = bin(&["stable-mult", "--ktype", "{bad", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["code"], json!("invalid_json"));

    let out = bin(&["stable-mult", "--ktype", r#"{"k":2,"nu":[{"plus":[1],"minus":[]}]}"#, "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["code"], json!("invalid_json"));

    let out = bin(&["lr", "--lambda", "1,2", "--alpha", "1", "--nu", "1"]);
    assert_eq!(stderr_json(&out)["error"]["code"], json!("invalid_partition"));

    let out = bin(&["oracle", "--dims", "4,4", "--max-degree", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_json(&out)["error"]["code"], json!("capacity"));

    let out = bin(&["verify", "--mode", "character", "--dims", "2,2", "--max-degree", "2", "--ktype", ADJOINT]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["code"], json!("stability"));
}

#[test]
fn deterministic_across_runs_and_threads() {
    let ktype = r#"{"k":2,"nu":[{"plus":[1],"minus":[1]},{"plus":[1],"minus":[1]}]}"#;
    let base = bin(&["distinguished", "--ktype", ktype, "--max-degree", "5"]).stdout;
    assert_eq!(bin(&["distinguished", "--ktype", ktype, "--max-degree", "5"]).stdout, base);
    assert_eq!(bin(&["--threads", "4", "distinguished", "--ktype", ktype, "--max-degree", "5"]).stdout, base);
}
