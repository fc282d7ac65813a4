use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tropfglm_cli::commands::{change_order_doc, echelon_doc, ChangeOrderArgs};
use tropfglm_cli::document::{MatrixDocument, SystemDocument, Tiebreak};
use tropfglm_core::{PAdicField, Scalar, Strategy};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropfglm")).args(args).output().expect("binary runs")
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn system(polys: &str, order: &str) -> String {
    format!(
        r#"{{"field": {{"kind": "p-adic", "p": 2, "precision": 30}}, "variables": ["x", "y"],
            "order": {order}, "polynomials": {polys}}}"#
    )
}

const W0: &str = r#"{"kind": "tropical", "weight": [0, 0], "tiebreak": "grevlex"}"#;

#[test]
fn documents_round_trip_byte_for_byte() {
    let text = std::fs::read_to_string(data("weight_change_q2.json")).unwrap();
    let doc = SystemDocument::parse(&text).unwrap();
    let once = doc.to_json();
    let twice = SystemDocument::parse(&once).unwrap().to_json();
    assert_eq!(once, twice);

    let m = MatrixDocument::parse(&std::fs::read_to_string(data("echelon_q3.json")).unwrap()).unwrap();
    let out = echelon_doc(&m, false).unwrap().to_json();
    assert_eq!(MatrixDocument::parse(&out).unwrap().to_json(), out);
}

#[test]
fn weight_change_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let r = run(&[
        "change-order",
        "--input",
        data("weight_change_q2.json").to_str().unwrap(),
        "--target-weight",
        "0,0",
        "--verify",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let doc = SystemDocument::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let f = PAdicField::new(2, 30).unwrap();
    let g = doc.basis::<tropfglm_core::PAdic>(&f).unwrap();
    let c = |i: usize, e: [u32; 2]| g.polys[i].coeff(&tropfglm_core::Monomial::new(e.to_vec())).cloned().unwrap();
    assert!(c(0, [1, 0]).agrees_with(&f.from_ints(2, 1)));
    assert!(c(1, [0, 0]).agrees_with(&f.from_ints(1, 4)));
    assert_eq!(doc.diagnostics.as_ref().unwrap().verified, Some(true));
}

#[test]
fn same_order_keeps_the_input() {
    let text = std::fs::read_to_string(data("weight_change_q2.json")).unwrap();
    let doc = SystemDocument::parse(&text).unwrap();
    let args = ChangeOrderArgs {
        input: data("weight_change_q2.json"),
        output: None,
        target_weight: Some(vec![0, 1]),
        target_tiebreak: Tiebreak::Grevlex,
        strategy: Strategy::Auto,
        verify: false,
    };
    let out = change_order_doc(&doc, &args).unwrap();
    assert_eq!(out.polynomials, doc.polynomials);
    assert_eq!(out.diagnostics.unwrap().observed_loss, 0);
}

#[test]
fn echelon_file() {
    let r = run(&["echelon", "--stable", "--input", data("echelon_q3.json").to_str().unwrap()]);
    assert!(r.status.success());
    let doc = MatrixDocument::parse(&String::from_utf8(r.stdout).unwrap()).unwrap();
    assert_eq!(doc.rank, Some(4));
    assert_eq!(doc.columns, vec![vec![4, 0], vec![2, 0], vec![3, 1], vec![1, 1], vec![0, 4], vec![0, 2]]);
    let f = PAdicField::new(3, 30).unwrap();
    let m = doc.matrix::<tropfglm_core::PAdic>(&f).unwrap();
    assert!(m.rows[1][5].agrees_with(&f.from_ints(-57, 35)));
    assert!(m.rows[3][5].agrees_with(&f.from_ints(-18, 1)));
}

#[test]
fn multmat_file() {
    let r = run(&["multmat", "--input", data("quadric_q2.json").to_str().unwrap()]);
    assert!(r.status.success());
    let v: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(v["basis"], serde_json::json!([[0, 0], [1, 0]]));
    assert_eq!(v["matrices"][0][0][1], "-1*p^2+O(p^30)");
}

#[test]
fn lex_target_through_the_shape_path() {
    let r = run(&[
        "change-order",
        "--input",
        data("quadric_q2.json").to_str().unwrap(),
        "--target-tiebreak",
        "lex",
        "--verify",
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let doc = SystemDocument::parse(&String::from_utf8(r.stdout).unwrap()).unwrap();
    assert_eq!(doc.polynomials[0][0].exp, vec![0, 2]);
    assert_eq!(doc.polynomials[1][0].exp, vec![1, 0]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = write(&dir, "garbage.json", "{ not json");
    assert_eq!(run(&["change-order", "--input", &garbage]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));

    // the tail x of y^2 + x is a leading monomial
    let not_reduced = write(
        &dir,
        "nr.json",
        &system(
            r#"[[{"coeff": "1", "exp": [1, 0]}, {"coeff": "1", "exp": [0, 1]}],
                [{"coeff": "1", "exp": [0, 2]}, {"coeff": "1", "exp": [1, 0]}]]"#,
            W0,
        ),
    );
    assert_eq!(run(&["change-order", "--input", &not_reduced]).status.code(), Some(2));

    let positive_dim = write(&dir, "pd.json", &system(r#"[[{"coeff": "1", "exp": [1, 0]}]]"#, W0));
    assert_eq!(run(&["change-order", "--input", &positive_dim]).status.code(), Some(4));

    // a claimed basis of a different ideal fails verification
    let wrong = write(
        &dir,
        "wrong.json",
        &system(
            r#"[[{"coeff": "1", "exp": [0, 1]}, {"coeff": "2", "exp": [1, 0]}],
                [{"coeff": "1", "exp": [2, 0]}, {"coeff": "1", "exp": [0, 0]}]]"#,
            W0,
        ),
    );
    let r = run(&["verify", "--input", &wrong, "--source", data("weight_change_q2.json").to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(6));
}

#[test]
fn experiment_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e.csv");
    let r = run(&[
        "experiment",
        "--prime",
        "3",
        "--degrees",
        "2,2",
        "--reps",
        "3",
        "--precision",
        "40",
        "--mode",
        "trop-to-trop",
        "--target-weight",
        "-2,4",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let csv = std::fs::read_to_string(out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "seed,d1,d2,d3,delta,time_s,loss_mean,loss_max,cond,xi");
    assert_eq!(lines.len(), 4);
    assert!(lines[1..].iter().all(|l| l.split(',').nth(4) == Some("4")));
}
