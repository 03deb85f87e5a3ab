use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn eikq(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eikq"))
        .args(args)
        .current_dir(dir)
        .env("EIKQ_COLOR", "0")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn construct_then_verify() {
    let dir = TempDir::new().unwrap();
    let made = eikq(
        dir.path(),
        &[
            "construct",
            "--type",
            "primitive",
            "--g",
            "4",
            "--n",
            "6",
            "--dimh",
            "2",
            "-o",
            "f.poly",
        ],
    );
    assert_eq!(code(&made), 0);
    assert!(fs::read_to_string(dir.path().join("f.poly"))
        .unwrap()
        .starts_with("n 6\n"));
    assert_eq!(
        code(&eikq(dir.path(), &["verify", "--g", "4", "f.poly"])),
        0
    );
    // Wrong degree is a negative answer.
    assert_eq!(
        code(&eikq(dir.path(), &["verify", "--g", "3", "f.poly"])),
        1
    );
}

#[test]
fn classify_canonical_json() {
    let dir = TempDir::new().unwrap();
    assert_eq!(
        code(&eikq(
            dir.path(),
            &[
                "construct",
                "--type",
                "canonical",
                "--n",
                "5",
                "--k",
                "1",
                "-o",
                "c.poly"
            ]
        )),
        0
    );
    let out = eikq(dir.path(), &["classify", "c.poly", "--json"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["schema"], "eikq-report-1");
    assert_eq!(report["verdict"], "primitive");
    assert_eq!(report["dimH"], 1);
    assert_eq!(report["arithmetic"], "exact");

    let again = eikq(dir.path(), &["classify", "c.poly", "--json"]);
    assert_eq!(out.stdout, again.stdout, "byte-identical reports");
    let keys: Vec<&str> = report
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(&keys[..3], ["schema", "verdict", "g"]);
}

#[test]
fn non_eikonal_input() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("b.poly"), "n 2\n4 0 1\n0 4 1\n").unwrap();
    let out = eikq(dir.path(), &["verify", "--g", "4", "b.poly"]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("not eikonal") && text.contains("residual"));
    assert!(!text.contains('\x1b'));

    let out = eikq(dir.path(), &["classify", "b.poly", "--json"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["verdict"], "not_eikonal");
}

#[test]
fn usage_and_io_errors() {
    let dir = TempDir::new().unwrap();
    assert_eq!(
        code(&eikq(dir.path(), &["classify", "--exact", "f.poly"])),
        2
    );
    assert_eq!(code(&eikq(dir.path(), &["frobnicate"])), 2);
    assert_eq!(code(&eikq(dir.path(), &["verify", "missing.poly"])), 4);
    fs::write(dir.path().join("bad.poly"), "n 2\n1 x 1\n").unwrap();
    let out = eikq(dir.path(), &["verify", "bad.poly"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));
    assert_eq!(
        code(&eikq(dir.path(), &["search-pencil", "4", "2", "1"])),
        2
    );
}

#[test]
fn exact_rotation_file() {
    let dir = TempDir::new().unwrap();
    eikq(
        dir.path(),
        &[
            "construct",
            "--type",
            "primitive",
            "--n",
            "4",
            "--dimh",
            "1",
            "-o",
            "h.poly",
        ],
    );
    fs::write(
        dir.path().join("swap.txt"),
        "4\n0 0 0 1\n0 1 0 0\n0 0 1 0\n1 0 0 0\n",
    )
    .unwrap();
    let out = eikq(
        dir.path(),
        &[
            "classify",
            "h.poly",
            "--exact",
            "--rotation",
            "swap.txt",
            "--json",
        ],
    );
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["q"], 3);

    let nf = eikq(
        dir.path(),
        &[
            "normalform",
            "h.poly",
            "--rotation",
            "swap.txt",
            "-o",
            "h.nf",
            "--json",
        ],
    );
    assert_eq!(code(&nf), 0);
    assert_eq!(json(&nf)["p"], 0);
    let rebuilt = eikq(
        dir.path(),
        &["construct", "--type", "normal-form", "--data", "h.nf"],
    );
    assert_eq!(code(&rebuilt), 0);
}

#[test]
fn congruence_verdicts() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&eikq(dir.path(), &["congruent", "7", "2", "5"])), 0);
    assert_eq!(code(&eikq(dir.path(), &["congruent", "7", "2", "4"])), 1);
    let out = eikq(dir.path(), &["congruent", "7", "3", "3", "--json"]);
    assert_eq!(json(&out)["congruent"], true);
}

#[test]
fn search_and_classify() {
    let dir = TempDir::new().unwrap();
    let out = eikq(
        dir.path(),
        &[
            "search-pencil",
            "3",
            "2",
            "1",
            "--max-hits",
            "1",
            "-o",
            "iso.poly",
            "--data-dir",
            "hits",
            "--json",
        ],
    );
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert!(report["found"].as_u64().unwrap() >= 1);
    assert!(dir.path().join("hits/hit-0000.txt").exists());
    let out = eikq(dir.path(), &["classify", "iso.poly", "--json"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["verdict"], "isoparametric");
    assert_eq!(
        (report["m1"].as_u64(), report["m2"].as_u64()),
        (Some(1), Some(1))
    );
    assert_eq!(report["laplacian_constant"], "0");
}

#[test]
fn float_classification() {
    let dir = TempDir::new().unwrap();
    eikq(
        dir.path(),
        &[
            "construct",
            "--type",
            "canonical",
            "--n",
            "4",
            "--k",
            "2",
            "-o",
            "c.poly",
        ],
    );
    let out = eikq(dir.path(), &["classify", "c.poly", "--float", "--json"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["arithmetic"], "float");
    assert_eq!(report["verdict"], "primitive");
}
