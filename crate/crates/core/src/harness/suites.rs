use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bundle::LiftSample;
use crate::manifold::{ManifoldError, TensorField};
use crate::metallic::{
    check_compat, check_f_integrability_conditions, check_integrable, check_metallic, check_never_parallel,
    closedness_report, nj_table, phi_prime_probe, LiftedStructure, MetallicParams, StructureKind,
};
use crate::paracontact::ParacontactStructure;
use crate::symcore::Expr;
use crate::verify::{Comparison, Plan, Residual, Status, Verdict, Witness};

macro_rules! suites {
    ($($variant:ident => $name:literal, $summary:literal;)*) => {
        /// The proposition suites, in report order.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum SuiteId {
            $(#[serde(rename = $name)] $variant,)*
        }

        impl SuiteId {
            pub const ALL: &'static [SuiteId] = &[$(SuiteId::$variant,)*];

            pub fn name(self) -> &'static str {
                match self { $(SuiteId::$variant => $name,)* }
            }

            /// The statement the suite checks.
            pub fn summary(self) -> &'static str {
                match self { $(SuiteId::$variant => $summary,)* }
            }
        }

        impl FromStr for SuiteId {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                match s {
                    $($name => Ok(SuiteId::$variant),)*
                    _ => Err(format!(
                        "unknown suite `{s}` (expected one of: {})",
                        [$($name),*].join(", ")
                    )),
                }
            }
        }
    };
}

suites! {
    Axioms => "axioms", "(phi, eta, xi, g) is a P-Sasakian structure";
    Lifts => "lifts", "lift identities, bracket table and lifted connections";
    JMetallic => "J-metallic", "J^2 = pJ + qI";
    JCompat => "J-compat", "g^c is J-compatible";
    JIntegrable => "J-integrable", "N_J = 0, with the lifted-frame closed forms";
    JParallel => "J-parallel", "J is never parallel with respect to the complete lift connection";
    PhiClosedness => "Phi-closedness", "closedness of the fundamental form of (g^c, J), conditional report";
    FMetallic => "F-metallic", "F^2 = pF + qI";
    FCompat => "F-compat", "the Sasaki metric is F-compatible";
    FIntegrabilityConditions => "F-integrability-conditions", "N_F = 0 iff D-flat and the curvature condition";
    FParallel => "F-parallel", "F is never parallel with respect to the horizontal lift connection";
    PhiPrime => "Phi-prime", "the fundamental form of (G, F) is never closed";
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Status of one named check inside a suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub id: String,
    pub status: Status,
}

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub id: SuiteId,
    pub summary: String,
    pub status: Status,
    pub max_residual: Residual,
    pub checks: Vec<CheckSummary>,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl SuiteOutcome {
    fn from_verdicts(id: SuiteId, judged: &[Verdict]) -> Self {
        let merged = Verdict::merge(id.name(), judged);
        Self {
            id,
            summary: id.summary().into(),
            status: merged.status,
            max_residual: merged.max_residual,
            checks: judged
                .iter()
                .map(|v| CheckSummary {
                    id: v.id.clone(),
                    status: v.status,
                })
                .collect(),
            witnesses: merged.witnesses,
            notes: merged.notes,
        }
    }

    fn skipped(id: SuiteId, reason: &str) -> Self {
        Self::from_verdicts(id, &[Verdict::skipped(id.name(), reason)])
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Every suite outcome plus conventions measured while running.
#[derive(Clone, Debug)]
pub struct SuiteRun {
    pub outcomes: Vec<SuiteOutcome>,
    /// `"+"` or `"-"` when the Phi-prime suite determined the sign.
    pub dphi_prime_sign: Option<&'static str>,
}

/// Runs `selected` (all suites when empty) on `structure`. The axioms suite
/// always runs; when it fails every other selected suite is skipped.
pub fn run_suites(
    structure: &ParacontactStructure,
    params: &[MetallicParams],
    selected: &[SuiteId],
    plan: &Plan,
) -> SuiteRun {
    let mut wanted: Vec<SuiteId> = if selected.is_empty() { SuiteId::ALL.to_vec() } else { selected.to_vec() };
    wanted.sort();
    wanted.dedup();

    let axioms = axioms_suite(structure, plan);
    let gate_ok = axioms.passed();
    let mut out = Vec::with_capacity(wanted.len());
    let mut sign = None;
    let lifted = if gate_ok { Some(LiftedStructure::new(structure.clone())) } else { None };
    for id in wanted {
        let outcome = match (id, &lifted) {
            (SuiteId::Axioms, _) => axioms.clone(),
            (_, None) => SuiteOutcome::skipped(id, "skipped: the axioms suite failed"),
            (_, Some(Err(e))) => SuiteOutcome::from_verdicts(id, &[Verdict::error(id.name(), e.to_string())]),
            (_, Some(Ok(ls))) => {
                let (o, s) = structure_suite(id, ls, params, plan);
                sign = sign.or(s);
                o
            }
        };
        out.push(outcome);
    }
    SuiteRun {
        outcomes: out,
        dphi_prime_sign: sign,
    }
}

fn axioms_suite(s: &ParacontactStructure, plan: &Plan) -> SuiteOutcome {
    let mut v = s.check_almost_paracontact(plan);
    v.extend(s.check_metric_compat(plan));
    v.extend(s.check_p_sasakian(plan));
    SuiteOutcome::from_verdicts(SuiteId::Axioms, &v)
}

fn lift_sample(s: &ParacontactStructure) -> Result<LiftSample, ManifoldError> {
    let c = s.coords();
    let n = c.base_dim();
    let first = TensorField::coordinate(c, 0);
    let vectors = s
        .coordinate_frame()
        .into_iter()
        .chain([("xi".into(), s.xi().clone()), ("phi(d/dx1)".into(), s.phi().apply(&first)?)])
        .collect();
    let functions = (1..=n)
        .map(|i| (format!("x{i}"), Expr::x(i)))
        .chain([(format!("x1*x{n}"), &Expr::x(1) * &Expr::x(n))])
        .chain([("g(d/dx1,d/dx1)".into(), s.metric().get(&[0, 0]).clone())])
        .collect();
    let forms = std::iter::once(("eta".into(), s.eta().clone()))
        .chain((0..n).map(|i| {
            let mut comps = vec![Expr::zero(); n];
            comps[i] = Expr::one();
            TensorField::covector(c, comps).map(|w| (format!("dx{}", i + 1), w))
        }).collect::<Result<Vec<_>, _>>()?)
        .collect();
    let endos = vec![("phi".into(), s.phi().clone())];
    Ok(LiftSample {
        vectors,
        functions,
        forms,
        endos,
    })
}

fn try_verdicts(id: SuiteId, f: impl FnOnce() -> Result<Vec<Verdict>, ManifoldError>) -> Vec<Verdict> {
    f().unwrap_or_else(|e| vec![Verdict::error(id.name(), e.to_string())])
}

fn structure_suite(
    id: SuiteId,
    ls: &LiftedStructure,
    params: &[MetallicParams],
    plan: &Plan,
) -> (SuiteOutcome, Option<&'static str>) {
    let tm = ls.bundle();
    let s = ls.structure();
    let jframe = || ls.lifted_frame(StructureKind::CompleteJ);
    let fframe = || ls.lifted_frame(StructureKind::HorizontalF);
    let per_params = |f: &dyn Fn(MetallicParams) -> Result<Vec<Verdict>, ManifoldError>| -> Vec<Verdict> {
        params.iter().flat_map(|&m| try_verdicts(id, || f(m))).collect()
    };
    let verdicts = match id {
        SuiteId::Axioms => unreachable!("handled by run_suites"),
        SuiteId::Lifts => try_verdicts(id, || tm.check_lift_laws(&lift_sample(s)?, plan)),
        SuiteId::JMetallic => per_params(&|m| Ok(vec![check_metallic(&ls.build_j(m)?, plan)])),
        SuiteId::FMetallic => per_params(&|m| Ok(vec![check_metallic(&ls.build_f(m)?, plan)])),
        SuiteId::JCompat => per_params(&|m| {
            let (gc, j) = (tm.complete_metric(s.metric())?, ls.build_j(m)?);
            let mut v = check_compat("g^c-J:lifted", &gc, &j, &jframe()?, plan);
            v.extend(check_compat("g^c-J:coordinate", &gc, &j, &ls.bundle_frame(), plan));
            Ok(v)
        }),
        SuiteId::FCompat => per_params(&|m| {
            let (g, f) = (tm.sasaki_metric(), ls.build_f(m)?);
            let mut v = check_compat("G-F:lifted", &g, &f, &fframe()?, plan);
            v.extend(check_compat("G-F:coordinate", &g, &f, &ls.bundle_frame(), plan));
            Ok(v)
        }),
        SuiteId::JIntegrable => {
            let mut v = try_verdicts(id, || s.check_n_tensors(plan));
            v.extend(per_params(&|m| {
                let j = ls.build_j(m)?;
                let label = m.label();
                Ok(vec![
                    check_integrable(&format!("N_J[{label}]:lifted"), &j, &jframe()?, plan),
                    check_integrable(&format!("N_J[{label}]:coordinate"), &j, &ls.bundle_frame(), plan),
                    nj_table_verdict(ls, m, plan),
                ])
            }));
            v
        }
        SuiteId::JParallel => per_params(&|m| {
            Ok(vec![check_never_parallel(ls, &ls.build_j(m)?, &format!("J-parallel[{}]", m.label()), plan)])
        }),
        SuiteId::FParallel => per_params(&|m| {
            Ok(vec![check_never_parallel(ls, &ls.build_f(m)?, &format!("F-parallel[{}]", m.label()), plan)])
        }),
        SuiteId::PhiClosedness => per_params(&|m| {
            let r = closedness_report(ls, m, plan);
            let tag = |v: Verdict| Verdict { id: format!("{}[{}]", v.id, m.label()), ..v };
            Ok(vec![tag(r.symmetry), tag(r.identity)])
        }),
        SuiteId::FIntegrabilityConditions => {
            let mut judged = Vec::new();
            let mut side = Vec::new();
            for &m in params {
                let r = check_f_integrability_conditions(ls, m, &plan.with_params(m.p, m.q));
                let tag = |v: &Verdict| Verdict { id: format!("{}[{}]", v.id, m.label()), ..v.clone() };
                judged.extend(r.judged().into_iter().map(tag));
                side.extend([&r.e4, &r.e5, &r.d_flat, &r.n_f].map(tag));
            }
            let mut o = SuiteOutcome::from_verdicts(id, &judged);
            for v in side {
                o.checks.push(CheckSummary { id: format!("{} (side condition)", v.id), status: v.status });
                o.witnesses.extend(v.witnesses.into_iter().take(2));
                o.notes.extend(v.notes.into_iter().map(|n| format!("{}: {n}", v.id)));
            }
            return (o, None);
        }
        SuiteId::PhiPrime => {
            let mut sign = None;
            let mut v = Vec::new();
            for &m in params {
                let (verdict, s) = phi_prime_verdict(ls, m, plan);
                v.push(verdict);
                sign = sign.or(s);
            }
            return (SuiteOutcome::from_verdicts(id, &v), sign);
        }
    };
    (SuiteOutcome::from_verdicts(id, &verdicts), None)
}

/// Computed `N_J` against the derived closed forms on 𝒟 pairs.
fn nj_table_verdict(ls: &LiftedStructure, m: MetallicParams, plan: &Plan) -> Verdict {
    let id = format!("N_J-table[{}]", m.label());
    let plan = plan.with_params(m.p, m.q);
    let build = || -> Result<Vec<Comparison>, ManifoldError> {
        let frame = ls.structure().d_frame(&plan)?;
        let mut out = Vec::new();
        for x in &frame {
            for y in &frame {
                for r in nj_table(ls, m, x, y)? {
                    let fr = [r.frame[0].as_str(), r.frame[1].as_str()];
                    out.push(Comparison::fields(r.name, &fr, &r.computed, &r.derived));
                }
            }
        }
        Ok(out)
    };
    match build() {
        Ok(cmp) => plan.check(&id, &cmp),
        Err(e) => Verdict::error(&id, e.to_string()),
    }
}

/// `dΦ′(X^h,X^v,ξ^v) = s (2σ−p)/6 g(X,X)` with one sign `s` for every 𝒟
/// direction and point, and nonzero.
fn phi_prime_verdict(ls: &LiftedStructure, m: MetallicParams, plan: &Plan) -> (Verdict, Option<&'static str>) {
    let id = format!("Phi-prime[{}]", m.label());
    let plan = plan.with_params(m.p, m.q);
    let probes = ls
        .structure()
        .d_frame(&plan)
        .map_err(ManifoldError::from)
        .and_then(|frame| frame.iter().map(|x| phi_prime_probe(ls, m, x)).collect::<Result<Vec<_>, _>>());
    let probes = match probes {
        Ok(p) => p,
        Err(e) => return (Verdict::error(&id, e.to_string()), None),
    };
    let with_sign = |s: i64| -> Vec<Comparison> {
        probes
            .iter()
            .flat_map(|p| {
                let fr = [p.direction.as_str()];
                [
                    Comparison::scalar("dPhi'(X^h,X^v,xi^v) = s k g(X,X)/3", &fr, p.value.clone(), Expr::int(s) * p.magnitude.clone()),
                    Comparison::nonzero_scalar("dPhi'(X^h,X^v,xi^v) != 0", &fr, p.value.clone()),
                ]
            })
            .collect()
    };
    for (s, label) in [(-1, "-"), (1, "+")] {
        let v = plan.check(&id, &with_sign(s));
        if v.passed() {
            return (v.with_note(format!("measured sign {label}")), Some(label));
        }
    }
    let v = plan.check(&id, &with_sign(-1));
    (v.with_note("no single sign fits every direction and point"), None)
}
