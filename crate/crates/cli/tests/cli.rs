use std::process::{Command, Output};

use grothendieck::groth::{groth_poly, Kind};
use grothendieck::par::Execution;
use grothendieck::ring::{Params, Poly};
use grothendieck::shapes::SkewShape;
use serde_json::Value;

fn kgroth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kgroth")).args(args).output().expect("run kgroth")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn ordinary_single_box() {
    let o = kgroth(&["groth", "--shape", "1", "--n", "2", "--kind", "ordinary"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "x1 + x2 + b*x1*x2");
}

#[test]
fn pieri_suite_passes() {
    let o = kgroth(&["verify", "pieri", "--n", "2", "--max-part", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS pieri"));
}

#[test]
fn every_route_gives_beta() {
    let o = kgroth(&["coeff", "--theta", "1", "--mu", "1", "--nu", "2,1", "--n", "2", "--route", "all"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines, ["comb: b", "expand: b", "recur: b", "chain: b"]);
}

#[test]
fn skew_coefficient_with_witness() {
    let o = kgroth(&[
        "coeff",
        "--theta",
        "2,1/1",
        "--mu",
        "1",
        "--nu",
        "2,2",
        "--n",
        "3",
        "--route",
        "comb",
        "--witness",
        "--json",
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(Poly::from_json_value(v["values"]["comb"].clone()).unwrap(), Poly::beta());
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 1);
}

#[test]
fn polynomial_json_round_trips() {
    for (shape, skew, kind) in
        [("2,1", None, "factorial-a"), ("3,1", Some("1"), "factorial-b"), ("2,2", None, "ordinary")]
    {
        let mut args = vec!["groth", "--shape", shape, "--n", "3", "--kind", kind, "--json"];
        if let Some(s) = skew {
            args.extend(["--skew", s]);
        }
        let o = kgroth(&args);
        assert_eq!(code(&o), 0);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        let p = Poly::from_json_value(v["poly"].clone()).unwrap();
        let theta: SkewShape = v["shape"].as_str().unwrap().parse().unwrap();
        let expected = groth_poly(&theta, 3, kind.parse::<Kind>().unwrap(), &Params::symbolic(), Execution::Sequential);
        assert_eq!(p, expected);
        assert_eq!(Poly::from_json(&p.to_json()).unwrap(), p);
    }
}

#[test]
fn fixed_seed_is_byte_identical() {
    let groth =
        ["groth", "--shape", "2,1", "--n", "2", "--kind", "factorial-a", "--mode", "specialized", "--seed", "11"];
    assert_eq!(kgroth(&groth).stdout, kgroth(&groth).stdout);
    let mut other = groth;
    other[10] = "12";
    assert_ne!(kgroth(&groth).stdout, kgroth(&other).stdout);
    let verify =
        ["verify", "row-shape", "--n", "3", "--max-part", "2", "--mode", "specialized", "--seed", "5", "--json"];
    let a = kgroth(&verify);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, kgroth(&verify).stdout);
}

#[test]
fn insertion_prints_tableau_and_trace() {
    let t = r#"{"shape":"1","n":3,"cells":[{"r":1,"c":1,"set":[2]}]}"#;
    let o = kgroth(&["insert", "--set", "1,2", "--tableau", t, "--json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tableau"]["shape"], "2,1");
    assert_eq!(v["trace"][0]["inserted"], serde_json::json!([1, 2]));
    assert_eq!(v["trace"][0]["ejected"], serde_json::json!([2]));
}

#[test]
fn hecke_routes_and_final() {
    let o = kgroth(&["hecke", "gw", "--perm", "2,1", "--n", "1", "--route", "all"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "dd: x1 + y1 + b*x1*y1\ngen: x1 + y1 + b*x1*y1");
    let o = kgroth(&["hecke", "final", "--lambda", "2,1", "--p", "2", "--k", "2", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).trim_end().ends_with("equal"));
}

#[test]
fn usage_errors_exit_two() {
    let cases: [&[&str]; 6] = [
        &["groth", "--shape", "x", "--n", "2"],
        &["groth", "--n", "2"],
        &["coeff", "--theta", "1", "--mu", "1", "--nu", "2,1", "--n", "2", "--route", "fast"],
        &["verify", "nope"],
        &["hecke", "gw", "--perm", "3,1,2,4", "--n", "1"],
        &["insert", "--set", "1", "--tableau", "{}"],
    ];
    for args in cases {
        let o = kgroth(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}
