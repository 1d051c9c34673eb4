use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn example(name: &str) -> PathBuf {
    root().join("docs/schemas/examples").join(name)
}

fn schema(name: &str) -> jsonschema::Validator {
    let text = std::fs::read_to_string(root().join("docs/schemas").join(name)).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn locvol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locvol")).args(args).output().unwrap()
}

fn run_json(sub: &str, file: &str) -> Value {
    let out = locvol(&[sub, example(file).to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{sub} {file}: {}", String::from_utf8_lossy(&out.stdout));
    serde_json::from_slice(&out.stdout).unwrap()
}

const CASES: [(&str, &str, &str); 10] = [
    ("toric-volume", "wedge.json", r#"{"rational":"79/24"}"#),
    ("monomial-mult", "mon_x3xy3.json", r#"{"rational":"6/1"}"#),
    ("surface-volume", "a1.json", r#"{"rational":"0/1"}"#),
    ("surface-volume", "quartic_cone.json", r#"{"rational":"4/1"}"#),
    ("cone-gamma", "pspace.json", r#"{"rational":"1/4"}"#),
    ("cone-volume", "abelian_cover.json", r#"{"quadratic":{"a":"-9/1","b":"5/1","c":5}}"#),
    ("bdff-volume", "abelian_cover.json", r#"{"quadratic":{"a":"36/1","b":"16/1","c":5}}"#),
    ("bdff-volume", "p1xC.json", r#"{"rational":"16/1"}"#),
    ("cone-volume", "genus2_curve.json", r#"{"rational":"4/1"}"#),
    ("toric-volume", "wedge_fujita.json", r#"{"rational":"1/1"}"#),
];

#[test]
fn exact_values_from_the_fixtures() {
    for (sub, file, expect) in CASES {
        let sub = if file == "wedge_fujita.json" { "fujita-check" } else { sub };
        let v = run_json(sub, file);
        let expect: Value = serde_json::from_str(expect).unwrap();
        assert_eq!(v["exact_value"], expect, "{sub} {file}");
    }
}

#[test]
fn fixtures_and_outputs_match_the_schemas() {
    let problem = schema("problem.schema.json");
    let result = schema("result.schema.json");
    for entry in std::fs::read_dir(root().join("docs/schemas/examples")).unwrap() {
        let path = entry.unwrap().path();
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert!(problem.is_valid(&v), "{}", path.display());
    }
    let mut outputs: Vec<Value> = CASES
        .iter()
        .map(|(sub, file, _)| run_json(if *file == "wedge_fujita.json" { "fujita-check" } else { sub }, file))
        .collect();
    outputs.push(run_json("toric-h1", "wedge.json"));
    outputs.push(run_json("lambda-seq", "genus2_curve.json"));
    outputs.push(run_json("convexity-check", "wedge_convexity.json"));
    for v in &outputs {
        let errors: Vec<String> = result.iter_errors(v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{errors:?}\n{v}");
        let rec = locvol::cli::parse_record(&v.to_string()).unwrap();
        assert_eq!(serde_json::to_value(&rec).unwrap(), *v);
    }
}

#[test]
fn checks_report_their_status() {
    let conv = run_json("convexity-check", "wedge_convexity.json");
    assert_eq!(conv["check"]["status"], "fails");
    let fujita = run_json("fujita-check", "wedge_fujita.json");
    assert_eq!(fujita["check"]["status"], "holds");
    let tcomp = run_json("bdff-volume", "p1xC.json");
    assert_eq!(tcomp["check"]["status"], "holds");
}

#[test]
fn output_is_deterministic() {
    let a = locvol(&["toric-h1", "--m-max", "6", example("wedge.json").to_str().unwrap()]);
    let b = locvol(&["toric-h1", "--m-max", "6", example("wedge.json").to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn csv_headers() {
    let csv = |args: &[&str]| String::from_utf8(locvol(args).stdout).unwrap();
    let wedge = example("wedge.json");
    let mon = example("mon_x3xy3.json");
    let h1 = csv(&["toric-h1", "--output", "csv", "--m-max", "4", wedge.to_str().unwrap()]);
    assert_eq!(h1.lines().next(), Some("m,count,normalized"));
    assert_eq!(h1.lines().count(), 3);
    let vol = csv(&["toric-volume", "--output", "csv", wedge.to_str().unwrap()]);
    assert_eq!(vol.lines().collect::<Vec<_>>()[0], "exact,float");
    assert!(vol.lines().nth(1).unwrap().starts_with("79/24,"));
    let mult = csv(&["monomial-mult", "--output", "csv", "--p-max", "3", mon.to_str().unwrap()]);
    assert_eq!(mult.lines().next(), Some("p,mult,normalized"));
}

#[test]
fn meta_wrapper() {
    let out = locvol(&["toric-volume", "--meta", example("wedge.json").to_str().unwrap()]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["meta"]["version"].is_string());
    assert_eq!(v["record"]["exact_value"], json!({"rational": "79/24"}));
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join(format!("locvol-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, v: Value| {
        let p = dir.join(name);
        std::fs::write(&p, v.to_string()).unwrap();
        p
    };
    let unknown = write(
        "unknown.json",
        json!({"kind": "surface", "payload": {"vertices": [{"self_int": -2}], "extra": 1}}),
    );
    let out = locvol(&["surface-volume", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(err["error"]["kind"], "validation");

    let wrong_kind = locvol(&["surface-volume", example("wedge.json").to_str().unwrap()]);
    assert_eq!(wrong_kind.status.code(), Some(2));

    let missing = locvol(&["toric-volume", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));

    let unsupported = locvol(&["lambda-seq", example("abelian_cover.json").to_str().unwrap()]);
    assert_eq!(unsupported.status.code(), Some(3));

    let semidefinite = write(
        "semidefinite.json",
        json!({"kind": "surface", "payload": {"vertices": [{"self_int": -2}, {"self_int": -2}], "edges": [{"i": 0, "j": 1, "multiplicity": 2}]}}),
    );
    let out = locvol(&["surface-volume", semidefinite.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(err["error"]["name"], "NotNegativeDefinite");
    std::fs::remove_dir_all(&dir).ok();
}
