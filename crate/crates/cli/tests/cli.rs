use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn wf4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wf4")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = wf4(&a);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn config(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "configs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn hilbert_straight_u1() {
    let o = wf4(&["hilbert", "--mu", "0,0,0,0", "--u", "1", "--terms", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("series: (1 - 27t^2 + 78t^3"));
    let v = json(&["hilbert", "--mu", "0,0,0,0", "--u", "1", "--terms", "3"]);
    assert_eq!(v["coefficients"], serde_json::json!(["1", "26", "324"]));
    assert_eq!(v["series"]["dim"], 15);
}

#[test]
fn hilbert_u2_is_the_substituted_numerator() {
    let v = json(&["hilbert", "--mu", "0,0,0,0", "--u", "2"]);
    let n = v["numerator"].as_str().unwrap();
    assert!(n.starts_with("1 - 27t^4 + 78t^6"), "{n}");
    assert!(n.ends_with("- 27t^26 + t^30"), "{n}");
}

#[test]
fn hilbert_engines_agree() {
    let args = ["hilbert", "--mu", "4,1,-6,5", "--u", "9", "--terms", "12"];
    let compact = json(&args);
    let mut g = args.to_vec();
    g.extend(["--engine", "general", "--workers", "3"]);
    let general = json(&g);
    assert_eq!(compact["coefficients"], general["coefficients"]);
    assert_eq!(general["engine"], "general");
}

#[test]
fn positivity_violation_exits_2() {
    let o = wf4(&["hilbert", "--mu", "1,0,0,0", "--u", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("PositivityViolation"), "{err}");
    assert!(err.contains("= 0"), "{err}");
}

#[test]
fn malformed_arguments_exit_2() {
    assert_eq!(wf4(&["hilbert", "--mu", "1,0", "--u", "1"]).status.code(), Some(2));
    assert_eq!(wf4(&["build", "/nonexistent.cfg"]).status.code(), Some(2));
    assert_eq!(wf4(&["rep", "--hw", "0,0,0,-1"]).status.code(), Some(2));
}

#[test]
fn weights_command() {
    let v = json(&["weights", "--mu", "1,1,0,0", "--u", "2"]);
    assert_eq!(v["sum"], 52);
    assert_eq!(v["dim"], 15);
    assert_eq!(v["weights"].as_array().unwrap().len(), 26);
    let v = json(&["weights", "--mu", "0,0,0,0", "--u", "2"]);
    assert_eq!(v["wellformed"], false);
}

#[test]
fn build_f4st() {
    let v = json(&["build", &config("f4st.cfg")]);
    assert_eq!(v["report"]["canonical"], 1);
    assert_eq!(v["report"]["degree"], "78");
    assert_eq!(v["report"]["quasi_smooth"], "paper-asserted");
}

#[test]
fn build_nwf() {
    let v = json(&["build", &config("nwf.cfg")]);
    let r = &v["report"];
    assert_eq!(r["canonical"], 5);
    assert_eq!(r["degree"], "39");
    assert_eq!(r["orbifold"]["count"], "78");
    assert_eq!(r["orbifold"]["singularity"]["r"], 2);
    assert_eq!(r["orbifold"]["singularity"]["a"], serde_json::json!([1, 1, 1]));
    assert_eq!(r["orbifold"]["terminal"], true);
}

#[test]
fn build_ladder_k6() {
    let v = json(&["build", &config("ladder_k6.cfg")]);
    assert_eq!(v["report"]["canonical"], 6);
    assert_eq!(v["report"]["degree"], "78");
    assert_eq!(v["report"]["orbifold"]["count"], "0");
}

#[test]
fn search_examples() {
    let base = ["search", "--mu-bound", "0", "--u-max", "2", "--target-canonical", "-22,-11"];
    let v = json(&base);
    let found: Vec<i64> =
        v["candidates"].as_array().unwrap().iter().map(|c| c["u"].as_i64().unwrap()).collect();
    assert_eq!(found, vec![1, 2]);
    let mut wf = base.to_vec();
    wf.push("--require-wellformed");
    let v = json(&wf);
    assert_eq!(v["candidates"].as_array().unwrap().len(), 1);
    assert_eq!(v["candidates"][0]["u"], 1);
}

#[test]
fn search_is_deterministic() {
    let spec = config("search_threefolds.toml");
    let a = wf4(&["search", "--spec", &spec, "--workers", "1"]);
    let b = wf4(&["search", "--spec", &spec, "--workers", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&["search", "--spec", &spec]);
    for c in v["candidates"].as_array().unwrap() {
        assert_eq!(c["dim"], 3);
        let mu: Vec<i64> = c["mu"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
        assert!(mu.windows(2).all(|w| w[0] >= w[1]) && mu[3] >= 0, "{mu:?}");
    }
}

#[test]
fn check_commands() {
    for what in ["weyl", "reps", "equations"] {
        let o = wf4(&["check", what]);
        assert!(o.status.success(), "check {what}: {}", stdout(&o));
    }
    let v = json(&["check", "weyl"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["items"][0]["detail"], "1152");
    let v = json(&["check", "cross", "--samples", "5", "--terms", "30", "--seed", "7"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["items"].as_array().unwrap().len(), 5);
}

#[test]
fn rep_command() {
    let v = json(&["rep", "--hw", "0,0,0,1", "--character", "--sym2"]);
    assert_eq!(v["dim"], 26);
    let total: u64 =
        v["character"].as_array().unwrap().iter().map(|e| e[1].as_u64().unwrap()).sum();
    assert_eq!(total, 26);
    let dims: Vec<u64> = v["sym2"].as_array().unwrap().iter().map(|e| e[1].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 26, 324]);
}

#[test]
fn json_round_trips_byte_identically() {
    let cases: Vec<Vec<String>> = vec![
        vec!["hilbert".into(), "--mu".into(), "2,0,0,0".into(), "--u".into(), "3".into(), "--terms".into(), "40".into()],
        vec!["build".into(), config("nwf.cfg")],
        vec!["search".into(), "--spec".into(), config("search_threefolds.toml")],
        vec!["rep".into(), "--hw".into(), "1,0,0,0".into(), "--character".into()],
    ];
    for mut args in cases {
        args.extend(["--format".into(), "json".into()]);
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = stdout(&wf4(&a));
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", out, "{args:?}");
    }
}

#[test]
fn output_matches_library_calls() {
    let report = wf4::Recipe::nwf().build().unwrap().report().unwrap();
    let v = json(&["build", &config("nwf.cfg")]);
    assert_eq!(v["report"], serde_json::to_value(&report).unwrap());

    let p = wf4::HilbertParams::new(wf4::Coweight([2, 0, 0, 0]), 3).unwrap();
    let s = wf4::hilbert::hs_compact(&p).unwrap();
    let coeffs: Vec<String> = wf4::hilbert::expand(&s, 20).unwrap().iter().map(|c| c.to_string()).collect();
    let v = json(&["hilbert", "--mu", "2,0,0,0", "--u", "3", "--terms", "20"]);
    assert_eq!(v["coefficients"], serde_json::to_value(coeffs).unwrap());
    assert_eq!(v["series"], serde_json::to_value(s.to_json()).unwrap());
}
