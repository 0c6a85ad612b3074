use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::verify::{Mode, Status};

use super::manifest::{Manifest, ParamSpec};
use super::suites::{SuiteOutcome, SuiteRun};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanSummary {
    pub points: usize,
    pub seed: u64,
    pub mode: Mode,
    pub pq: Vec<ParamSpec>,
    /// Sampled points as `name=value` labels.
    pub sample: Vec<Vec<String>>,
}

/// Conventions the results depend on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Conventions {
    /// Sign of the fiber part of the complete lift `X^c = (X, ± y^j ∂_j X)`.
    pub xc_sign: String,
    /// Factor in `dω(X,Y) = c (Xω(Y) − Yω(X) − ω([X,Y]))`.
    pub d1form: String,
    /// Measured sign `s` in `dΦ′(X^h,X^v,ξ^v) = s (2σ−p)/6 g(X,X)`.
    pub dphi_prime_sign: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub manifest: String,
    pub manifest_sha256: String,
    pub plan: PlanSummary,
    pub conventions: Conventions,
    pub status: Status,
    pub suites: Vec<SuiteOutcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Pretty JSON with a trailing newline; identical inputs give identical bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn build_report(manifest: &Manifest, plan: PlanSummary, run: SuiteRun) -> Report {
    let hash = Sha256::digest(manifest.canonical_json().as_bytes());
    let status = run
        .outcomes
        .iter()
        .map(|o| o.status)
        .max()
        .unwrap_or(Status::Pass);
    Report {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        manifest: manifest.name.clone(),
        manifest_sha256: hash.iter().map(|b| format!("{b:02x}")).collect(),
        plan,
        conventions: Conventions {
            xc_sign: "+".into(),
            d1form: "1/2".into(),
            dphi_prime_sign: run.dphi_prime_sign.unwrap_or("undetermined").into(),
        },
        status,
        suites: run.outcomes,
    }
}
