use std::io::Write;

use assert_cmd::Command;
use serde_json::Value;

fn logres() -> Command {
    Command::cargo_bin("logres").unwrap()
}

fn stdout_of(args: &[&str]) -> (i32, String) {
    let out = logres().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

#[test]
fn verify_ex433_reports_the_z_plane() {
    let (code, out) = stdout_of(&["verify", "--builtin", "ex433"]);
    assert_eq!(code, 0, "{out}");
    let z = out
        .lines()
        .find(|l| l.split_whitespace().nth(1) == Some("z"))
        .expect("row for z");
    let cols: Vec<&str> = z.split_whitespace().collect();
    // H, form, |A^H|, LP, exp, rho, pi, rho2
    assert_eq!(cols[2..], ["3", "2", "(3,3)", "2", "1", "2"]);
    assert!(out.trim_end().ends_with("=> PASS"));
}

#[test]
fn charpoly_prints_both_polynomials() {
    let (code, out) = stdout_of(&["charpoly", "--builtin", "ex45"]);
    assert_eq!(code, 0);
    assert!(out.contains("t^3 - 8t^2 + 18t - 11"));
    assert!(out.contains("t^2 - 7t + 11"));
}

#[test]
fn charpoly_json_is_machine_readable() {
    let (code, out) = stdout_of(&["charpoly", "--builtin", "ex45", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!([1, -8, 18, -11]));
    assert_eq!(v["arrangement"]["display"].as_array().unwrap().len(), 8);
}

#[test]
fn missing_file_is_an_input_error() {
    logres()
        .args(["analyze", "does-not-exist.json"])
        .assert()
        .code(2)
        .stderr(predicates::str::contains("does-not-exist.json"));
}

#[test]
fn unknown_builtin_is_an_input_error() {
    logres()
        .args(["charpoly", "--builtin", "nonesuch"])
        .assert()
        .code(2);
}

#[test]
fn expectations_pass_and_fail() {
    logres()
        .args(["verify", "--builtin", "ex433", "--expect", "rho[z]=2"])
        .args(["--expect", "lp[z]=2", "--expect", "free=no"])
        .assert()
        .code(0);
    logres()
        .args(["verify", "--builtin", "ex433", "--expect", "rho[z]=3"])
        .assert()
        .code(1)
        .stdout(predicates::str::contains("expected rho[z] = 3 but found 2"));
    logres()
        .args(["verify", "--builtin", "ex433", "--expect", "bogus=1"])
        .assert()
        .code(2)
        .stderr(predicates::str::contains("known keys"));
}

#[test]
fn verify_with_no_target_checks_every_builtin() {
    let (code, out) = stdout_of(&["verify"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.matches("=> PASS").count(), 7);
}

#[test]
fn list_builtins_names_the_registry() {
    let (code, out) = stdout_of(&["list-builtins"]);
    assert_eq!(code, 0);
    for name in [
        "generic4",
        "boolean",
        "braidA3",
        "ex433",
        "ex45",
        "ss7",
        "pentagon_f11",
    ] {
        assert!(out.contains(name), "{name} missing");
    }
}

#[test]
fn corpus_runs_are_byte_identical() {
    let args = ["verify", "--corpus", "5,6,6,3,1009", "--json"];
    let (c1, one) = stdout_of(&args);
    let (c2, two) = stdout_of(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(one, two);
    let v: Value = serde_json::from_str(&one).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 6);
}

#[test]
fn bad_corpus_spec_is_an_input_error() {
    logres()
        .args(["verify", "--corpus", "1,2,2"])
        .assert()
        .code(2);
}

#[test]
fn input_files_are_read_and_exported() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        r#"{{"name": "three", "forms": [[1, 0, 0], [0, 1, 0], [0, 0, "1/2"]]}}"#
    )
    .unwrap();
    let path = file.path().to_str().unwrap();
    let (code, out) = stdout_of(&["charpoly", path]);
    assert_eq!(code, 0);
    assert!(out.contains("t^3 - 3t^2 + 3t - 1"));

    let (code, exported) = stdout_of(&["export", path]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&exported).unwrap();
    assert_eq!(v["name"], "three");
}

#[test]
fn standard_input_is_accepted() {
    logres()
        .args(["freeness", "-"])
        .write_stdin(r#"{"forms": [[1,0,0],[0,1,0],[0,0,1],[1,1,1]]}"#)
        .assert()
        .code(0)
        .stdout(predicates::str::contains("not free"));
}

#[test]
fn duplicate_planes_name_their_lines() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        "{{\"forms\": [\n  [1, 0, 0],\n  [0, 1, 0],\n  [2, 0, 0]\n]}}"
    )
    .unwrap();
    logres()
        .arg("analyze")
        .arg(file.path())
        .assert()
        .code(2)
        .stderr(predicates::str::contains("lines 2 and 4"));
}

#[test]
fn coker_json_lists_every_plane() {
    let (code, out) = stdout_of(&["coker", "--builtin", "ss7", "--map", "rho", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let text = v.to_string();
    assert!(text.contains("\"total\":4"), "{text}");
}
