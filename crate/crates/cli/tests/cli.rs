//! Runs the binary on every scenario and validates the JSON it emits.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ebbi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ebbi")).args(args).output().expect("binary runs")
}

fn validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

/// Runs, checks exit 0 and schema validity, returns the report.
fn report(args: &[&str]) -> Value {
    let out = ebbi(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let errors: Vec<String> = validator().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}");
    v
}

fn close(v: &Value, x: f64) -> bool {
    (v.as_f64().unwrap() - x).abs() < 1e-3
}

#[test]
fn every_scenario_validates() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("d.csv");
    std::fs::write(&csv, "s1,s2,s3\n+1,-1,+1\n-1,-1,+1\n").unwrap();
    let csv4 = dir.path().join("q.csv");
    std::fs::write(&csv4, "s1,s2,s3,s4\n+1,-1,+1,1\n-1,-1,+1,-1\n").unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["dataset", "check", "--input", csv.to_str().unwrap()],
        vec!["dataset", "check", "--input", csv4.to_str().unwrap()],
        vec!["dataset", "boole", "--f", "-0.5", "0.5", "-0.5", "--hypothesis", "anti"],
        vec!["dataset", "chsh", "--f", "1", "-1", "1", "1"],
        vec!["dataset", "pair-bound", "--f", "1", "1", "1"],
        vec!["ebbi", "check", "--e", "1", "-1", "-1", "-1"],
        vec!["ebbi", "construct", "--a", "1", "-1", "-1", "1"],
        vec!["ebbi", "expand", "--table", "1", "0", "0", "0", "0", "0", "0", "0"],
        vec!["theorem", "one", "--c", "1", "0", "0", "-1.5"],
        vec!["theorem", "three", "--e", "-1", "-1", "-1", "1"],
        vec!["theorem", "compatible", "--f", "0.25", "0.25", "0.25", "0.25", "--fhat", "0.25", "0.25", "0.25", "0.25", "--ftilde", "0.25", "0.25", "0.25", "0.25"],
        vec!["theorem", "reconstruct", "--f", "0", "0.5", "0.5", "0", "--fhat", "0", "0.5", "0.5", "0", "--ftilde", "0", "0.5", "0.5", "0"],
        vec!["theorem", "bell", "--weights", "0.5", "0.5", "--ea", "1", "-1", "--eb", "1", "-1", "--ec", "1", "1"],
        vec!["quantum", "correlation", "--a", "0", "--b", "60"],
        vec!["quantum", "pair-tables", "--a", "0", "--b", "60", "--c", "120", "--anticorrelated"],
        vec!["quantum", "filter", "--state", "0,0,1", "--a", "0.6,0,0.8", "--b", "90", "--c", "45"],
        vec!["quantum", "schwartz", "--a", "10", "--b", "40", "--c", "-70"],
        vec!["quantum", "separable", "--a", "0", "--b", "60", "--c", "120", "--component", "0.5:0,0,1", "0.5:0,0,-1"],
        vec!["quantum", "commutators", "--a", "0,0,1", "--b", "1,0,0", "--c", "0,1,0"],
        vec!["leggett-garg", "--omega", "1", "--dt", "0", "0.5", "0.5", "--samples", "1000", "--seed", "1", "--scan", "12"],
        vec!["extended-eprb", "--angles", "0", "45", "90"],
        vec!["extended-eprb", "--angles", "0", "45", "90", "135"],
        vec!["allergy", "--schedule", "random", "--seed", "4"],
        vec!["factorizable", "--mu", "equal", "--angles", "0", "30", "--samples", "20000", "--seed", "2", "--malus-bins", "12"],
        vec!["epr-pipeline", "--source", "pair:opposite", "--angles", "0", "90", "180", "--window", "0.3", "--jitter", "1", "--exponent", "2", "--samples", "3000", "--seed", "3"],
        vec!["sweep", "--mu", "opposite", "--grid", "8"],
    ];
    for args in &cases {
        report(args);
    }
}

#[test]
fn spec_examples() {
    // Every clause holds for these coefficients; see the decisions ledger.
    let v = report(&["ebbi", "check", "--e", "1", "-0.5", "0.5", "-0.5"]);
    assert_eq!(v["reports"]["ebbi"]["all_satisfied"], true);
    let v = report(&["ebbi", "check", "--e", "1", "-1", "-1", "-1"]);
    assert_eq!(v["reports"]["ebbi"]["all_satisfied"], false);
    assert!(v["findings"].as_array().unwrap().iter().any(|f| f.as_str().unwrap().contains("violated |E12 + E13|")));

    let v = report(&["leggett-garg", "--omega", "1", "--dt", "0", "0.5236", "0.5236", "--samples", "1000000", "--seed", "7"]);
    let t = &v["result"]["triple_correlations"];
    assert!(close(&t["e12"], 0.5) && close(&t["e13"], 0.25) && close(&t["e23"], 0.5));
    assert_eq!(v["reports"]["triple"]["all_satisfied"], true);
    assert_eq!(v["reports"]["pairs"]["all_satisfied"], false);

    let v = report(&["allergy", "--variant", "pairs"]);
    assert_eq!(v["result"]["gamma_pairs"], -3.0);
}

#[test]
fn singlet_pipeline_rejects_triples() {
    let v = report(&["epr-pipeline", "--source", "singlet", "--angles", "0", "60", "120", "--samples", "40000", "--seed", "5"]);
    assert_eq!(v["result"]["verdict"], "triples hypothesis rejected");
    assert_eq!(v["reports"]["boole_triple"]["all_satisfied"], false);
    assert_eq!(v["reports"]["pair_bound"]["all_satisfied"], true);
    let r = report(&["epr-pipeline", "--source", "singlet", "--angles", "0", "1.0471975511965976", "2.0943951023931953", "--radians", "--samples", "40000", "--seed", "5"]);
    assert_eq!(r["result"]["correlations"], v["result"]["correlations"]);
}

#[test]
fn randomized_scenarios_need_a_seed() {
    for args in [
        vec!["factorizable", "--mu", "uniform", "--angles", "0", "1", "--samples", "10"],
        vec!["epr-pipeline", "--source", "singlet", "--angles", "0", "1", "2", "--samples", "10"],
        vec!["leggett-garg", "--omega", "1", "--dt", "0", "1", "1", "--samples", "10"],
        vec!["allergy", "--schedule", "random"],
    ] {
        let out = ebbi(&args);
        assert!(!out.status.success());
        assert!(String::from_utf8_lossy(&out.stderr).contains("--seed"));
    }
}

#[test]
fn bad_input_fails_with_a_diagnostic() {
    for args in [
        vec!["no-such-command"],
        vec!["ebbi", "check", "--e", "1", "2"],
        vec!["ebbi", "check", "--e", "-1", "0", "0", "0"],
        vec!["ebbi", "construct", "--a", "1", "-1", "-1", "-1"],
        vec!["factorizable", "--mu", "cauchy", "--angles", "0", "1", "--samples", "10", "--seed", "1"],
        vec!["epr-pipeline", "--source", "triple", "--angles", "0", "1", "2", "--window", "-1", "--samples", "9", "--seed", "1"],
        vec!["dataset", "check", "--input", "/nonexistent/file.csv"],
    ] {
        let out = ebbi(&args);
        assert!(!out.status.success(), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = ebbi(&["allergy", "--out", "/nonexistent/dir/r.json"]);
    assert!(!out.status.success());
}

#[test]
fn outputs_are_deterministic_and_dumpable() {
    let dir = tempfile::tempdir().unwrap();
    let (e1, e2, d) = (dir.path().join("e1.csv"), dir.path().join("e2.csv"), dir.path().join("d.csv"));
    let run = |events: &Path| {
        report(&["epr-pipeline", "--source", "triple", "--angles", "0", "40", "80", "--samples", "999", "--seed", "11",
            "--jitter", "0.5", "--window", "0.2", "--events", events.to_str().unwrap()])
    };
    assert_eq!(run(&e1), run(&e2));
    let (a, b) = (std::fs::read(&e1).unwrap(), std::fs::read(&e2).unwrap());
    assert_eq!(a, b);
    assert!(a.starts_with(b"alpha,station,s,t,setting_id,angle\n"));

    report(&["factorizable", "--mu", "uniform", "--angles", "0", "0", "--samples", "100", "--seed", "1", "--dump", d.to_str().unwrap()]);
    let text = std::fs::read_to_string(&d).unwrap();
    assert_eq!(text.lines().count(), 101);
    assert_eq!(text.lines().next(), Some("s1,s2"));
}

#[test]
fn other_formats() {
    let out = ebbi(&["--format", "csv", "ebbi", "check", "--e", "1", "-1", "-1", "-1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("section,key,value\n"));
    assert!(text.contains("ebbi,|E12 + E13| <= E0 + E23,2,0,-2,false"));
    let out = ebbi(&["--format", "table", "allergy"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("gamma_triples") && text.contains("-1"));
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    assert!(ebbi(&["--out", p.to_str().unwrap(), "allergy"]).status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["scenario"], "allergy");
}

#[test]
fn help_lists_every_scenario() {
    let text = String::from_utf8(ebbi(&["--help"]).stdout).unwrap();
    for s in ["dataset", "ebbi", "theorem", "quantum", "leggett-garg", "extended-eprb", "allergy", "factorizable", "epr-pipeline", "sweep"] {
        assert!(text.contains(&format!("  {s} ")), "{s}");
    }
}
