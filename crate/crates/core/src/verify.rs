//! Pointwise comparison of symbolic identities and the verdicts they produce.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::manifold::TensorField;
use crate::symcore::{sigma, Assignment, EvalScalar, Evaluator, Expr, MetallicScalar, Rational, SymError};

/// Relative tolerance of float mode.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// A point of the tangent bundle chart: base coordinates and fiber coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplePoint {
    pub base: Vec<Rational>,
    pub fiber: Vec<Rational>,
}

impl SamplePoint {
    pub fn new(base: Vec<Rational>, fiber: Vec<Rational>) -> Self {
        Self { base, fiber }
    }

    /// Coordinates rendered as `x1=…, …, y1=…`.
    pub fn labels(&self) -> Vec<String> {
        let xs = self.base.iter().enumerate().map(|(i, v)| format!("x{}={v}", i + 1));
        let ys = self.fiber.iter().enumerate().map(|(i, v)| format!("y{}={v}", i + 1));
        xs.chain(ys).collect()
    }

    pub fn exact(&self, p: u32, q: u32) -> Result<Evaluator<MetallicScalar>, SymError> {
        let s = sigma(p.into(), q.into())?;
        let m = |r: &Rational| MetallicScalar::rational(r.clone(), p, q);
        Ok(Evaluator::new(Assignment {
            base: self.base.iter().map(m).collect(),
            fiber: self.fiber.iter().map(m).collect(),
            sigma: s,
        }))
    }

    pub fn float(&self, p: u32, q: u32) -> Result<Evaluator<f64>, SymError> {
        let s = sigma(p.into(), q.into())?.to_f64();
        let f = |r: &Rational| MetallicScalar::rational(r.clone(), p, q).to_f64();
        Ok(Evaluator::new(Assignment {
            base: self.base.iter().map(f).collect(),
            fiber: self.fiber.iter().map(f).collect(),
            sigma: s,
        }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    /// `lhs − rhs` vanishes at every point.
    Zero,
    /// `lhs − rhs` is nonzero at every point.
    NonZero,
    /// Evaluated and recorded as a witness; never affects the status.
    Report,
}

/// One identity `lhs = rhs` (componentwise) on a frame tuple.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub label: String,
    pub frame: Vec<String>,
    pub lhs: Vec<Expr>,
    pub rhs: Vec<Expr>,
    pub expect: Expect,
}

fn frame_labels(frame: &[&str]) -> Vec<String> {
    frame.iter().map(|s| s.to_string()).collect()
}

impl Comparison {
    pub fn scalar(label: &str, frame: &[&str], lhs: Expr, rhs: Expr) -> Self {
        Self {
            label: label.into(),
            frame: frame_labels(frame),
            lhs: vec![lhs],
            rhs: vec![rhs],
            expect: Expect::Zero,
        }
    }

    /// Componentwise equality of two fields of the same valence.
    pub fn fields(label: &str, frame: &[&str], lhs: &TensorField, rhs: &TensorField) -> Self {
        assert_eq!(lhs.valence(), rhs.valence(), "{label}: valence mismatch");
        assert_eq!(lhs.coords(), rhs.coords(), "{label}: chart mismatch");
        Self {
            label: label.into(),
            frame: frame_labels(frame),
            lhs: lhs.components().to_vec(),
            rhs: rhs.components().to_vec(),
            expect: Expect::Zero,
        }
    }

    /// Requires `field` to be nonzero (some component) at every point.
    pub fn nonzero_field(label: &str, frame: &[&str], field: &TensorField) -> Self {
        let zeros = vec![Expr::zero(); field.components().len()];
        Self {
            label: label.into(),
            frame: frame_labels(frame),
            lhs: field.components().to_vec(),
            rhs: zeros,
            expect: Expect::NonZero,
        }
    }

    /// A value shown in the verdict without being judged.
    pub fn report(label: &str, frame: &[&str], value: Expr) -> Self {
        Self {
            label: label.into(),
            frame: frame_labels(frame),
            lhs: vec![value],
            rhs: vec![Expr::zero()],
            expect: Expect::Report,
        }
    }

    pub fn nonzero_scalar(label: &str, frame: &[&str], value: Expr) -> Self {
        Self {
            label: label.into(),
            frame: frame_labels(frame),
            lhs: vec![value],
            rhs: vec![Expr::zero()],
            expect: Expect::NonZero,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub exact: String,
    pub float: f64,
}

impl Residual {
    pub fn zero() -> Self {
        Self {
            exact: "0".into(),
            float: 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub check: String,
    pub point: Vec<String>,
    pub frame: Vec<String>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub id: String,
    pub status: Status,
    pub max_residual: Residual,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

/// Witnesses kept per verdict.
const MAX_WITNESSES: usize = 4;

impl Verdict {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn skipped(id: &str, reason: &str) -> Self {
        Self {
            id: id.into(),
            status: Status::Skipped,
            max_residual: Residual::zero(),
            witnesses: Vec::new(),
            notes: vec![reason.into()],
        }
    }

    pub fn error(id: &str, message: String) -> Self {
        Self {
            id: id.into(),
            status: Status::Error,
            max_residual: Residual::zero(),
            witnesses: Vec::new(),
            notes: vec![message],
        }
    }

    /// Combines sub-verdicts: worst status, largest residual, all witnesses.
    pub fn merge(id: &str, parts: &[Verdict]) -> Self {
        let mut out = Self {
            id: id.into(),
            status: Status::Pass,
            max_residual: Residual::zero(),
            witnesses: Vec::new(),
            notes: Vec::new(),
        };
        for v in parts {
            out.status = out.status.max(v.status);
            if v.max_residual.float > out.max_residual.float {
                out.max_residual = v.max_residual.clone();
            }
            out.witnesses.extend(v.witnesses.iter().cloned());
            out.notes.extend(v.notes.iter().map(|n| format!("{}: {n}", v.id)));
        }
        out
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// Where and how comparisons are evaluated.
#[derive(Clone, Debug)]
pub struct Plan {
    pub points: Vec<SamplePoint>,
    pub mode: Mode,
    pub p: u32,
    pub q: u32,
}

impl Plan {
    pub fn new(points: Vec<SamplePoint>, mode: Mode) -> Self {
        Self {
            points,
            mode,
            p: 1,
            q: 1,
        }
    }

    pub fn with_params(&self, p: u32, q: u32) -> Self {
        Self {
            p,
            q,
            ..self.clone()
        }
    }

    /// Evaluates every comparison at every point.
    pub fn check(&self, id: &str, comparisons: &[Comparison]) -> Verdict {
        let result = match self.mode {
            Mode::Exact => self.run(id, comparisons, |pt| pt.exact(self.p, self.q)),
            Mode::Float => self.run(id, comparisons, |pt| pt.float(self.p, self.q)),
        };
        result.unwrap_or_else(|e| Verdict::error(id, e))
    }

    fn run<S: Judge>(
        &self,
        id: &str,
        comparisons: &[Comparison],
        evaluator: impl Fn(&SamplePoint) -> Result<Evaluator<S>, SymError>,
    ) -> Result<Verdict, String> {
        let mut verdict = Verdict {
            id: id.into(),
            status: Status::Pass,
            max_residual: Residual::zero(),
            witnesses: Vec::new(),
            notes: Vec::new(),
        };
        for (pi, pt) in self.points.iter().enumerate() {
            let ev = evaluator(pt).map_err(|e| e.to_string())?;
            for c in comparisons {
                let mut worst: Option<S> = None;
                let mut nonzero = false;
                for (l, r) in c.lhs.iter().zip(&c.rhs) {
                    let at = |e: &Expr| {
                        ev.eval(e).map_err(|err| {
                            format!("{} at ({}): {err}", c.label, pt.labels().join(", "))
                        })
                    };
                    let (lv, rv) = (at(l)?, at(r)?);
                    let diff = lv.add(&rv.mul(&rv.embed(&Rational::from_integer((-1).into()))));
                    if !S::negligible(&diff, &lv, &rv) {
                        nonzero = true;
                    }
                    if worst.as_ref().is_none_or(|w| diff.to_f64().abs() > w.to_f64().abs()) {
                        worst = Some(diff);
                    }
                }
                let Some(worst) = worst else { continue };
                if c.expect == Expect::Report {
                    // reported values are shown at the first point only
                    if pi > 0 {
                        continue;
                    }
                    verdict.notes.push(format!(
                        "{} [{}] at ({}) = {}",
                        c.label,
                        c.frame.join(", "),
                        pt.labels().join(", "),
                        render_residual(&ev, c)?
                    ));
                    continue;
                }
                let magnitude = worst.to_f64().abs();
                if magnitude > verdict.max_residual.float {
                    verdict.max_residual = Residual {
                        exact: worst.render(),
                        float: magnitude,
                    };
                }
                let failed = match c.expect {
                    Expect::Zero => nonzero,
                    Expect::NonZero => !nonzero,
                    Expect::Report => false,
                };
                if failed {
                    verdict.status = Status::Fail;
                }
                let wanted = failed || c.expect == Expect::NonZero;
                if wanted && verdict.witnesses.len() < MAX_WITNESSES {
                    verdict.witnesses.push(Witness {
                        check: c.label.clone(),
                        point: pt.labels(),
                        frame: c.frame.clone(),
                        value: render_residual(&ev, c)?,
                    });
                }
            }
        }
        Ok(verdict)
    }
}

fn render_residual<S: Judge>(ev: &Evaluator<S>, c: &Comparison) -> Result<String, String> {
    let mut parts = Vec::with_capacity(c.lhs.len());
    for (l, r) in c.lhs.iter().zip(&c.rhs) {
        let lv = ev.eval(l).map_err(|e| e.to_string())?;
        let rv = ev.eval(r).map_err(|e| e.to_string())?;
        let diff = lv.add(&rv.mul(&rv.embed(&Rational::from_integer((-1).into()))));
        parts.push(diff.render());
    }
    if parts.len() == 1 {
        return Ok(parts.pop().unwrap());
    }
    let mut s = String::from("(");
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{p}");
    }
    s.push(')');
    Ok(s)
}

/// Zero test and rendering for each evaluation mode.
trait Judge: EvalScalar {
    fn negligible(diff: &Self, lhs: &Self, rhs: &Self) -> bool;
    fn render(&self) -> String;
}

impl Judge for MetallicScalar {
    fn negligible(diff: &Self, _: &Self, _: &Self) -> bool {
        diff.is_zero()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Judge for f64 {
    fn negligible(diff: &Self, lhs: &Self, rhs: &Self) -> bool {
        diff.abs() <= FLOAT_TOLERANCE * 1f64.max(lhs.abs()).max(rhs.abs())
    }
    fn render(&self) -> String {
        format!("{self:e}")
    }
}
