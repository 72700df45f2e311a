use std::process::{Command, Output};

use serde_json::Value;

fn hypforms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypforms"))
        .args(args)
        .env("HYPFORMS_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn check_reports_both_methods() {
    let out = hypforms(&["check", "x^3 - x*y^2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["hessian"]["verdict"], "hyperbolic");
    assert_eq!(v["polar"]["verdict"], "hyperbolic");

    let v = json(&hypforms(&["check", "(x^2-y^2)*(x^2+y^2)"]));
    assert_eq!(v["hessian"]["verdict"], "not_hyperbolic");
    assert!(v["hessian"]["witness"].is_array());
    assert_eq!(
        json(&hypforms(&["check", "x^2+y^2"]))["polar"]["verdict"],
        "not_hyperbolic"
    );
}

#[test]
fn bad_input_exits_with_two() {
    let out = hypforms(&["check", "x + y^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("different total degree"));
    assert_eq!(hypforms(&["index", "x^2+y^2"]).status.code(), Some(2));
    assert_eq!(
        hypforms(&["verify", "no_such_suite"]).status.code(),
        Some(2)
    );
    assert_eq!(
        hypforms(&["verify", "table1", "--d-max", "17"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn index_of_one_form_and_of_a_csv() {
    let v = json(&hypforms(&["index", "x*y*(x^2-y^2)"]));
    assert_eq!(v["index"], -2);
    assert_eq!(v["factor_count"], 4);

    let dir = std::env::temp_dir().join(format!("hypforms-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("forms.csv");
    std::fs::write(&path, "poly\nx^3-x*y^2\nx^2+y^2\n(x^2-y^2)*(x^4+y^4)\n").unwrap();
    let out = hypforms(&["index", "--file", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "poly,degree,hyperbolic,index,component_rank,factor_count,error"
    );
    assert_eq!(lines[1], "x^3-x*y^2,3,true,-1,0,3,");
    assert_eq!(lines[2], "x^2+y^2,2,false,,,,");
    assert_eq!(lines[3], "(x^2-y^2)*(x^4+y^4),6,true,0,0,2,");
}

#[test]
fn family_emits_json_lines() {
    let out = hypforms(&["family", "reps", "--degree", "9"]);
    assert!(out.status.success());
    let idx: Vec<i64> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| {
            serde_json::from_str::<Value>(l).unwrap()["expected_index"]
                .as_i64()
                .unwrap()
        })
        .collect();
    assert_eq!(idx, vec![-7, -5, -3, -1]);

    let v = json(&hypforms(&[
        "family", "arnold", "--degree", "5", "--m", "3",
    ]));
    assert_eq!(v["form"], "x^5 - 2*x^3*y^2 - 3*x*y^4");
    assert_eq!(
        hypforms(&["family", "g", "--n", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_reports_are_sorted_and_deterministic() {
    let a = json(&hypforms(&["verify", "hessian_expansion"]));
    let b = json(&hypforms(&["verify", "hessian_expansion"]));
    assert_eq!(a["cases"], b["cases"]);
    assert_eq!(a["failed"], 0);
    let ids: Vec<&str> = a["cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert_eq!(a["cases"][0]["comparison"], "exact");

    let eq = json(&hypforms(&["verify", "product_lemma", "--seed", "11"]));
    assert_eq!(eq["seed"], 11);
    assert_eq!(eq["failed"], 0);
}

#[test]
fn lemma1_range() {
    let out = hypforms(&["lemma1", "--n-min", "2", "--n-max", "12"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["passed"], 11);
    assert_eq!(
        v["cases"][0]["got"],
        "1 critical point, x^2 = 1/3, max 4/27"
    );
    assert_eq!(hypforms(&["lemma1", "--n-min", "1"]).status.code(), Some(2));
}

#[test]
fn curves_write_svg_and_csv() {
    let dir = std::env::temp_dir().join(format!("hypforms-curves-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let svg = dir.join("p3.svg");
    let out = hypforms(&[
        "curves",
        "--poly",
        "x^3 - x*y^2",
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    // three zero lines with two rays each, plus 12 ring seeds times two fields
    assert_eq!(text.matches("<path").count(), 6 + 24);

    let csv = dir.join("p3.csv");
    let out = hypforms(&[
        "curves",
        "--poly",
        "x^3 - x*y^2",
        "--out",
        csv.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("curve_id,field,x,y"));

    let bad = dir.join("bad.svg");
    let out = hypforms(&[
        "curves",
        "--poly",
        "x^2+y^2",
        "--out",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!bad.exists());
}
