use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::manifold::ChartedManifold;
use crate::metallic::MetallicParams;
use crate::paracontact::ParacontactStructure;
use crate::symcore::{parse, parse_rational, Expr, Rational};
use crate::verify::Mode;

use super::HarnessError;

/// A P-Sasakian candidate on a single chart, as read from JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub name: String,
    pub dimension: usize,
    pub coordinates: Vec<String>,
    /// Expressions required to be strictly positive on the chart.
    #[serde(default)]
    pub domain: Vec<String>,
    pub metric: Vec<Vec<String>>,
    pub phi: Vec<Vec<String>>,
    pub eta: Vec<String>,
    pub xi: Vec<String>,
    pub metallic: Vec<ParamSpec>,
    pub sample: SampleSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamSpec {
    pub p: u32,
    pub q: u32,
    #[serde(default = "plus")]
    pub eps1: i8,
    #[serde(default = "plus")]
    pub eps2: i8,
}

fn plus() -> i8 {
    1
}

impl ParamSpec {
    pub fn params(&self) -> Result<MetallicParams, HarnessError> {
        MetallicParams::with_signs(self.p, self.q, self.eps1, self.eps2)
            .map_err(|e| HarnessError::Manifest(format!("metallic parameters: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleSpec {
    pub count: usize,
    pub seed: u64,
    pub mode: Mode,
    /// Closed rational interval `[lo, hi]` per base coordinate.
    pub base_ranges: Vec<[String; 2]>,
    /// Closed rational interval `[lo, hi]` per fiber coordinate.
    pub fiber_ranges: Vec<[String; 2]>,
}

/// Parsed, validated contents of a [`Manifest`].
#[derive(Clone, Debug)]
pub struct Parsed {
    pub structure: ParacontactStructure,
    pub domain: Vec<Expr>,
    pub params: Vec<MetallicParams>,
    pub base_ranges: Vec<(Rational, Rational)>,
    pub fiber_ranges: Vec<(Rational, Rational)>,
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        serde_json::from_str(text).map_err(|e| HarnessError::Manifest(format!("invalid JSON: {e}")))
    }

    /// Canonical JSON used for hashing.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("manifest serializes")
    }

    pub fn validate(&self) -> Result<Parsed, HarnessError> {
        let n = self.dimension;
        let bad = |m: String| HarnessError::Manifest(m);
        if n == 0 {
            return Err(bad("dimension must be at least 1".into()));
        }
        let expect_len = |what: &str, len: usize, want: usize| {
            if len == want {
                Ok(())
            } else {
                Err(bad(format!("{what}: expected {want} entries, found {len}")))
            }
        };
        expect_len("coordinates", self.coordinates.len(), n)?;
        expect_len("metric", self.metric.len(), n)?;
        expect_len("phi", self.phi.len(), n)?;
        for (i, (g, f)) in self.metric.iter().zip(&self.phi).enumerate() {
            expect_len(&format!("metric row {}", i + 1), g.len(), n)?;
            expect_len(&format!("phi row {}", i + 1), f.len(), n)?;
        }
        expect_len("eta", self.eta.len(), n)?;
        expect_len("xi", self.xi.len(), n)?;
        expect_len("sample.base_ranges", self.sample.base_ranges.len(), n)?;
        expect_len("sample.fiber_ranges", self.sample.fiber_ranges.len(), n)?;
        if self.metallic.is_empty() {
            return Err(bad("metallic: at least one parameter pair is required".into()));
        }
        if self.sample.count == 0 {
            return Err(bad("sample.count must be at least 1".into()));
        }

        let expr = |what: String, s: &str| parse(s, n).map_err(|e| bad(format!("{what} `{s}`: {e}")));
        let row = |what: &str, r: &[String]| -> Result<Vec<Expr>, HarnessError> {
            r.iter()
                .enumerate()
                .map(|(j, s)| expr(format!("{what}[{}]", j + 1), s))
                .collect()
        };
        let matrix = |what: &str, m: &[Vec<String>]| -> Result<Vec<Vec<Expr>>, HarnessError> {
            m.iter()
                .enumerate()
                .map(|(i, r)| row(&format!("{what}[{}]", i + 1), r))
                .collect()
        };
        let metric = matrix("metric", &self.metric)?;
        let phi = matrix("phi", &self.phi)?;
        let eta = row("eta", &self.eta)?;
        let xi = row("xi", &self.xi)?;
        let domain = row("domain", &self.domain)?;
        let all = metric.iter().chain(&phi).flatten().chain(&eta).chain(&xi).chain(&domain);
        for e in all {
            if e.contains_fiber() {
                return Err(bad(format!("`{e}` uses a fiber coordinate; base fields depend on x only")));
            }
            if self.sample.mode == Mode::Exact && !e.is_rational() {
                return Err(bad(format!("`{e}` is not rational; use float mode")));
            }
        }

        let range = |what: String, [lo, hi]: &[String; 2]| -> Result<(Rational, Rational), HarnessError> {
            let r = |s: &str| parse_rational(s).map_err(|e| bad(format!("{what} `{s}`: {e}")));
            let (lo, hi) = (r(lo)?, r(hi)?);
            if lo > hi {
                return Err(bad(format!("{what}: empty interval [{lo}, {hi}]")));
            }
            Ok((lo, hi))
        };
        let ranges = |what: &str, rs: &[[String; 2]]| -> Result<Vec<_>, HarnessError> {
            rs.iter()
                .enumerate()
                .map(|(i, r)| range(format!("{what}[{}]", i + 1), r))
                .collect()
        };
        let base_ranges = ranges("sample.base_ranges", &self.sample.base_ranges)?;
        let fiber_ranges = ranges("sample.fiber_ranges", &self.sample.fiber_ranges)?;
        let params = self.metallic.iter().map(ParamSpec::params).collect::<Result<_, _>>()?;

        let base = ChartedManifold::new(self.coordinates.clone(), domain.clone(), metric)
            .map_err(|e| bad(format!("metric: {e}")))?;
        let structure =
            ParacontactStructure::new(base, phi, eta, xi).map_err(|e| bad(format!("structure: {e}")))?;
        Ok(Parsed {
            structure,
            domain,
            params,
            base_ranges,
            fiber_ranges,
        })
    }
}
