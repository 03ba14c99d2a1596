use std::path::Path;
use std::process::{Command, Output};

use kzcover_cli::report::{Payload, ReportEnvelope};
use serde_json::Value;

fn kzcover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kzcover")).args(args).output().unwrap()
}

fn validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

/// Runs with `--json`, checks the schema and the typed round trip.
fn report(args: &[&str]) -> (ReportEnvelope, String) {
    let mut args = args.to_vec();
    args.push("--json");
    let out = kzcover(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap();
    let errors: Vec<String> = validator().iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
    let env: ReportEnvelope = serde_json::from_value(value.clone()).unwrap();
    assert_eq!(serde_json::to_value(&env).unwrap(), value);
    (env, text)
}

fn without_timestamp(text: &str) -> String {
    text.lines().filter(|l| !l.trim_start().starts_with("\"timestamp\"")).collect::<Vec<_>>().join("\n")
}

#[test]
fn analyze_genus_four_example() {
    let (env, _) = report(&["analyze", "6", "1,1,1,3"]);
    assert_eq!(env.command, "analyze");
    let Payload::Analysis(a) = env.payload else { panic!("wrong payload") };
    assert_eq!(a.genus, 4);
    assert_eq!(a.eigenspace_dims, vec![0, 0, 1, 1, 2]);
    assert_eq!(a.spectrum_exponents, Some(vec![0, 1, 2, 2]));
    let r = a.rank_bound.unwrap();
    assert_eq!(r.structural_rank, 1);
    assert_eq!(format!("{:?}", r.verdict), "TotallyDegenerate");
}

#[test]
fn analyze_non_orientable_cover_has_no_verdict() {
    let (env, _) = report(&["analyze", "3", "1,1,2,2"]);
    let Payload::Analysis(a) = env.payload else { panic!("wrong payload") };
    assert!(!a.orientable);
    assert!(a.rank_bound.is_none());
}

#[test]
fn usage_errors_exit_two() {
    let out = kzcover(&["analyze", "6", "1,1,1,2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("E_SUM") && err.contains("divisible"), "{err}");

    for args in [
        &["analyze", "6", "1,1,1"][..],
        &["analyze", "six", "1,1,1,3"],
        &["lyapunov"],
        &["lyapunov", "--cover", "6:1,1,1,3", "--origami", "x.txt"],
        &["lyapunov", "--cover", "6:1,1,1,3", "--samples", "1"],
        &["spectrum", "--kz", "1,a", "--sigma", "3"],
        &[],
    ] {
        assert_eq!(kzcover(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn domain_errors_exit_one() {
    let out = kzcover(&["lyapunov", "--cover", "3:1,1,2,2", "--steps", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("E_ORIENT"));
    let out = kzcover(&["spectrum", "--kz", "0.5,0", "--sigma", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = kzcover(&["lyapunov", "--origami", "/nonexistent/origami.txt", "--steps", "10"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn search_reports_the_two_families() {
    let (env, _) = report(&["search", "--nmax", "12"]);
    let Payload::Search(s) = env.payload else { panic!("wrong payload") };
    let hits: Vec<String> = s.hits.iter().map(|h| h.params.to_string()).collect();
    assert_eq!(hits, ["4:1,1,1,1", "6:1,1,1,3"]);
}

#[test]
fn spectrum_of_degenerate_genus_four() {
    let (env, _) = report(&["spectrum", "--kz", "1,0,0,0", "--sigma", "3"]);
    let Payload::Spectrum(s) = env.payload else { panic!("wrong payload") };
    assert_eq!(s.values.len(), 19);
    assert_eq!((s.values[0], s.values[18]), (2.0, -2.0));
}

#[test]
fn flat_file_feeds_lyapunov() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("m6.txt");
    let csv = dir.path().join("trace.csv");
    let (env, _) = report(&["flat", "6", "1,1,1,3", "--out", file.to_str().unwrap()]);
    let Payload::Flat(f) = env.payload else { panic!("wrong payload") };
    assert_eq!(f.abelian_orders, Some(vec![2, 2, 2]));
    let o = f.origami.unwrap();
    assert!(o.deck_ok);
    assert_eq!(std::fs::read_to_string(&file).unwrap(), o.text);

    let args = [
        "lyapunov",
        "--origami",
        file.to_str().unwrap(),
        "--steps",
        "2000",
        "--samples",
        "2",
        "--seed",
        "3",
        "--csv",
        csv.to_str().unwrap(),
    ];
    let (env, _) = report(&args);
    let Payload::Lyapunov(l) = env.payload else { panic!("wrong payload") };
    assert_eq!(l.estimate.lambdas.len(), 3);
    let trace = std::fs::read_to_string(&csv).unwrap();
    assert!(trace.starts_with("sample,step,lambda_2,lambda_3,lambda_4\n"));
    assert_eq!(trace.lines().count(), 1 + 2 * 1000);
}

#[test]
fn non_orientable_flat_has_no_origami() {
    let (env, _) = report(&["flat", "3", "1,1,2,2"]);
    let Payload::Flat(f) = env.payload else { panic!("wrong payload") };
    assert!(!f.orientable && f.origami.is_none());
    let dir = tempfile::tempdir().unwrap();
    let out = kzcover(&["flat", "3", "1,1,2,2", "--out", dir.path().join("x").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reruns_are_identical_apart_from_timestamp() {
    let args = ["lyapunov", "--cover", "4:1,1,1,1", "--steps", "3000", "--samples", "3", "--seed", "11"];
    let (_, first) = report(&args);
    let (_, second) = report(&args);
    assert_eq!(without_timestamp(&first), without_timestamp(&second));
    let mut sequential = args.to_vec();
    sequential.push("--sequential");
    let (_, third) = report(&sequential);
    assert_eq!(without_timestamp(&first), without_timestamp(&third));
    let (_, other_seed) = report(&["lyapunov", "--cover", "4:1,1,1,1", "--steps", "3000", "--samples", "3", "--seed", "12"]);
    assert_ne!(without_timestamp(&first), without_timestamp(&other_seed));
}
