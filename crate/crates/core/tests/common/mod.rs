#![allow(dead_code)]

use std::path::PathBuf;

use metallift::harness::{build_report, run_suites, sample_points, Manifest, PlanSummary, Report, SuiteId};
use metallift::verify::{Mode, Plan};

pub fn manifest_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("manifests/hyperbolic-h3.json")
}

pub fn schema(name: &str) -> serde_json::Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn h3() -> Manifest {
    Manifest::load(&manifest_path()).unwrap()
}

/// Validates, samples and runs `suites` (all when empty), as the CLI does.
pub fn verify(m: &Manifest, suites: &[SuiteId]) -> Report {
    let parsed = m.validate().unwrap();
    let pts = sample_points(&parsed, m.sample.count, m.sample.seed).unwrap();
    let plan = Plan::new(pts.clone(), m.sample.mode);
    let run = run_suites(&parsed.structure, &parsed.params, suites, &plan);
    let summary = PlanSummary {
        points: m.sample.count,
        seed: m.sample.seed,
        mode: m.sample.mode,
        pq: m.metallic.clone(),
        sample: pts.iter().map(|p| p.labels()).collect(),
    };
    build_report(m, summary, run)
}

pub fn with_points(mut m: Manifest, n: usize, mode: Mode) -> Manifest {
    m.sample.count = n;
    m.sample.mode = mode;
    m
}

pub fn schema_errors(schema: &serde_json::Value, doc: &serde_json::Value) -> Vec<String> {
    let v = jsonschema::validator_for(schema).unwrap();
    v.iter_errors(doc).map(|e| e.to_string()).collect()
}

pub type Mutation = (&'static str, fn(&mut Manifest));

/// One entry changed per family of structure data.
pub const MUTATIONS: [Mutation; 12] = [
    ("metric[1][1]", |m| m.metric[0][0] = "1/x3".into()),
    ("metric[2][2]", |m| m.metric[1][1] = "1".into()),
    ("metric[3][3]", |m| m.metric[2][2] = "1/x3".into()),
    ("phi[1][1]", |m| m.phi[0][0] = "1".into()),
    ("phi[1][2]", |m| m.phi[0][1] = "1".into()),
    ("phi[2][2]", |m| m.phi[1][1] = "-x3".into()),
    ("phi[3][3]", |m| m.phi[2][2] = "1".into()),
    ("phi[3][1]", |m| m.phi[2][0] = "x3".into()),
    ("eta[1]", |m| m.eta[0] = "x3".into()),
    ("eta[3]", |m| m.eta[2] = "2/x3".into()),
    ("xi[1]", |m| m.xi[0] = "1".into()),
    ("xi[3]", |m| m.xi[2] = "2*x3".into()),
];
