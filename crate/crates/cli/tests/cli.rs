use std::process::{Command, Output};

use serde_json::Value;

const DATUM: [&str; 12] = [
    "--qo", "3", "--n", "3", "--e-ffo", "1", "--e", "1", "--f", "1", "--e-sigma", "1",
];

fn asai(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asai"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn with_datum<'a>(cmd: &'a str, extra: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![cmd];
    v.extend(DATUM);
    v.extend(extra);
    v
}

fn json(args: &[&str]) -> (Value, String) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = asai(&a);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    (serde_json::from_str(&s).unwrap(), s)
}

fn assert_round_trip(v: &Value, s: &str) {
    let again = format!("{}\n", serde_json::to_string_pretty(v).unwrap());
    assert_eq!(again, s);
}

#[test]
fn invariants_examples() {
    let (v, s) = json(&with_datum("invariants", &["--ell", "7", "--distinguished"]));
    assert_round_trip(&v, &s);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        ["N", "banal", "e_o", "q_Eo", "q_pow", "rel_banal", "xo_char0", "xo_kernel", "xo_modell"]
    );
    assert_eq!(v["rel_banal"], true);
    assert_eq!(v["xo_char0"], 3);
    assert_eq!(v["N"], 3);
    assert_eq!(v["q_pow"], "27");

    let (v, _) = json(&with_datum("invariants", &["--ell", "13"]));
    assert_eq!(v["rel_banal"], false);
    assert_eq!(v["xo_modell"], 3);
    assert_eq!(v["xo_kernel"], 1);
}

#[test]
fn invalid_datum_exits_2_with_violations() {
    let o = asai(&[
        "invariants", "--qo", "3", "--n", "3", "--e-ffo", "1", "--e", "1", "--f", "1", "--e-sigma", "2", "--ell", "7",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("RamifiedBase"), "{err}");
}

#[test]
fn malformed_flags_exit_1() {
    assert_eq!(asai(&with_datum("invariants", &["--ell", "seven"])).status.code(), Some(1));
    assert_eq!(asai(&["invariants", "--qo", "3"]).status.code(), Some(1));
    assert_eq!(asai(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(asai(&["--help"]).status.code(), Some(0));
    assert_eq!(asai(&["--version"]).status.code(), Some(0));
}

#[test]
fn lfactor_examples() {
    let (v, s) = json(&with_datum("lfactor", &["--char", "7"]));
    assert_round_trip(&v, &s);
    assert_eq!(v["factor"], "1/(1 - X^3)");
    assert_eq!(v["pole_order_at_one"], 1);
    assert_eq!(v["roots"].as_array().unwrap().len(), 3);

    let (v, _) = json(&with_datum("lfactor", &["--char", "13"]));
    assert_eq!(v["factor"], "1");
    assert_eq!(v["pole_order_at_one"], 0);

    let (v, _) = json(&[
        "lfactor", "--qo", "5", "--n", "6", "--e-ffo", "1", "--e", "2", "--f", "1", "--e-sigma", "1", "--char", "3",
    ]);
    assert_eq!(v["pole_order_at_one"], 3);
    assert_eq!(v["factor"], "1/(1 - X)^3");

    let (v, _) = json(&with_datum("lfactor", &["--char", "0"]));
    assert_eq!(v["factor"], "1/(1 - X^3)");
    assert!(v.get("period").is_none());
}

#[test]
fn lfactor_of_twist() {
    let (v, _) = json(&with_datum("lfactor", &["--twist-order", "2", "--twist-exponent", "1"]));
    assert_eq!(v["factor"], "1/(1 - zeta(2,1) X^3)");
    let o = asai(&with_datum("lfactor", &["--distinguished", "--twist-order", "2", "--twist-exponent", "1"]));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn text_output_lists_fields() {
    let o = asai(&with_datum("lfactor", &["--char", "7"]));
    let s = stdout(&o);
    assert!(s.contains("factor             1/(1 - X^3)"), "{s}");
    assert!(s.contains("pole_order_at_one  1"), "{s}");
}

#[test]
fn lifts_examples() {
    let (v, s) = json(&["lifts", "--qo", "3", "--n", "3", "--ell", "13", "--theta", "26", "--dual", "sigma"]);
    assert_round_trip(&v, &s);
    assert_eq!(v["total"], 13);
    assert_eq!(v["dual_count"], 1);
    assert_eq!(v["case"], "PlusCase");
    assert_eq!(v["closed_form"], "1");

    // lifts are counted up to Frobenius: 6 regular coset elements in 2 orbits
    let (v, _) = json(&["lifts", "--qo", "3", "--n", "3", "--ell", "7", "--theta", "26", "--dual", "sigma"]);
    assert_eq!(v["case"], "MinusCase");
    assert_eq!((v["total"].clone(), v["dual_count"].clone()), (2.into(), 2.into()));
    assert_eq!(v["supercuspidal_reduction"], false);

    let (v, _) = json(&["lifts", "--qo", "5", "--n", "3", "--ell", "7", "--theta", "1736", "--dual", "sigma"]);
    assert_eq!((v["total"].clone(), v["dual_count"].clone()), (7.into(), 7.into()));
    assert_eq!(v["closed_form"], "7");

    let (v, _) = json(&["lifts", "--q", "5", "--n", "2", "--ell", "3", "--theta", "4", "--dual", "self"]);
    assert_eq!(v["setting"], "SelfDual(q=5, n=2)");
}

#[test]
fn non_regular_theta_exits_2() {
    let o = asai(&["lifts", "--qo", "3", "--n", "3", "--ell", "7", "--theta", "0", "--dual", "sigma"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn scan_contains_invariant_rows_and_rejects() {
    let (v, s) = json(&["scan", "--qo-range", "3", "--n-range", "1..4", "--ell-set", "3,7,13"]);
    assert_round_trip(&v, &s);
    let rows = v["rows"].as_array().unwrap();
    let find = |ell: u64| {
        rows.iter()
            .find(|r| {
                r["n"] == 3 && r["e_ffo"] == 1 && r["e_ef"] == 1 && r["f_ef"] == 1 && r["e_sigma"] == 1 && r["ell"] == ell
            })
            .cloned()
            .unwrap()
    };
    assert_eq!(find(7)["rel_banal"], true);
    assert_eq!(find(7)["xo_char0"], 3);
    assert_eq!(find(13)["rel_banal"], false);
    // ell = 3 divides q_o: no rows
    assert!(rows.iter().all(|r| r["ell"] != 3));

    let rejects = v["rejects"].as_array().unwrap();
    let cras: Vec<&Value> = rejects
        .iter()
        .filter(|r| r["violations"].as_array().unwrap().iter().any(|x| x["tag"] == "CRASremark"))
        .collect();
    assert!(!cras.is_empty());
    for r in &cras {
        assert_eq!(r["e_sigma"], 2);
        assert!(!rows.iter().any(|x| {
            ["n", "e_ffo", "e_ef", "f_ef", "e_sigma"].iter().all(|k| x[k] == r[k])
        }));
    }
}

#[test]
fn scan_rows_are_sorted() {
    let o = asai(&["scan", "--qo-range", "3..9", "--n-range", "1..6", "--ell-set", "2,5,7"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let rows: Vec<Vec<u64>> = s
        .lines()
        .skip(2)
        .take_while(|l| !l.is_empty())
        .map(|l| l.split(',').take(7).map(|c| c.parse().unwrap()).collect())
        .collect();
    assert!(rows.len() > 50);
    assert!(rows.windows(2).all(|w| w[0] < w[1]));
    assert!(rows.iter().all(|r| [3, 5, 7, 9].contains(&r[0])));
}

#[test]
fn scan_markdown() {
    let o = asai(&["scan", "--qo-range", "3", "--n-range", "3", "--ell-set", "7", "--format", "md"]);
    let s = stdout(&o);
    assert!(s.starts_with("### rows\n\n| q_o | n |"), "{s}");
    assert!(s.contains("### rejects"));
}

#[test]
fn empty_scan_sets_exit_1() {
    for args in [
        ["scan", "--qo-range", "3", "--n-range", "1..4", "--ell-set", ""],
        ["scan", "--qo-range", "3", "--n-range", "4..1", "--ell-set", "7"],
        ["scan", "--qo-range", "4", "--n-range", "1..4", "--ell-set", "7"],
        ["scan", "--qo-range", "3", "--n-range", "1..4", "--ell-set", "6"],
    ] {
        assert_eq!(asai(&args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("asai-cli-test-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let o = asai(&with_datum("invariants", &["--ell", "7", "--format", "json", "--output", p]));
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let s = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let v: Value = serde_json::from_str(&s).unwrap();
    assert_round_trip(&v, &s);
}

#[test]
fn verify_default_passes() {
    let o = asai(&["verify", "--parallel"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn verify_small_bound_reports_skips() {
    let (v, s) = json(&["verify", "--max-modulus", "100"]);
    assert_round_trip(&v, &s);
    assert_eq!(v["passed"], true);
    assert!(v["skipped"].as_u64().unwrap() > 0);
}

#[test]
fn verify_injected_fault_exits_3() {
    let o = asai(&["verify", "--max-modulus", "1000", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("[closed-form-lift-count]"));
}
