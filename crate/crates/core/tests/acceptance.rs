//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

mod common;

use std::process::{Command, ExitCode};
use std::time::Instant;

use common::{h3, manifest_path, verify, with_points, MUTATIONS};
use metallift::harness::{sample_points, Manifest, Report, SuiteId};
use metallift::manifold::TensorField;
use metallift::metallic::{
    check_metallic, check_f_integrability_conditions, nj_table, phi_prime_probe, LiftedStructure, MetallicParams,
};
use metallift::paracontact::ParacontactStructure;
use metallift::symcore::{parse, parse_rational, Expr, MetallicScalar, Rational};
use metallift::verify::{Comparison, Mode, Plan, Status};

const PQ_GRID: [(u32, u32); 4] = [(1, 1), (1, 2), (2, 1), (3, 5)];
const SIGNS: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

struct Ctx {
    manifest: Manifest,
    structure: ParacontactStructure,
    plan: Plan,
    exact: Report,
}

type Criterion = fn(&Ctx) -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn suite_status(r: &Report, id: SuiteId) -> Status {
    r.suites.iter().find(|s| s.id == id).map_or(Status::Error, |s| s.status)
}

fn suites_pass(r: &Report, ids: &[SuiteId]) -> Outcome {
    let bad: Vec<String> = ids
        .iter()
        .filter(|&&id| suite_status(r, id) != Status::Pass)
        .map(|id| format!("{id}: {:?}", suite_status(r, *id)))
        .collect();
    outcome(bad.is_empty(), if bad.is_empty() { "all pass".into() } else { bad.join("; ") })
}

fn e(s: &str) -> Expr {
    parse(s, 3).unwrap()
}

fn axioms(ctx: &Ctx) -> Outcome {
    let base = suites_pass(&ctx.exact, &[SuiteId::Axioms]);
    let missed: Vec<&str> = MUTATIONS
        .iter()
        .filter(|(_, f)| {
            let mut m = with_points(h3(), 3, Mode::Exact);
            f(&mut m);
            verify(&m, &[]).suites.iter().all(|s| s.status != Status::Fail)
        })
        .map(|(n, _)| *n)
        .collect();
    let points = ctx.plan.points.len();
    outcome(
        base.pass && missed.is_empty() && points >= 10,
        format!("{points} points, {} of 12 mutations caught {missed:?}", 12 - missed.len()),
    )
}

fn lifts(ctx: &Ctx) -> Outcome {
    let s = &ctx.exact.suites.iter().find(|s| s.id == SuiteId::Lifts).unwrap();
    outcome(
        s.status == Status::Pass && s.max_residual.exact == "0",
        format!("{} checks, max residual {}", s.checks.len(), s.max_residual.exact),
    )
}

fn metallic(ctx: &Ctx) -> Outcome {
    let ls = LiftedStructure::new(ctx.structure.clone()).unwrap();
    let mut failing = Vec::new();
    for (p, q) in PQ_GRID {
        for (e1, e2) in SIGNS {
            let m = MetallicParams::with_signs(p, q, e1, e2).unwrap();
            if !check_metallic(&ls.build_j(m).unwrap(), &ctx.plan).passed() {
                failing.push(format!("J {}", m.label()));
            }
        }
        let m = MetallicParams::new(p, q).unwrap();
        if !check_metallic(&ls.build_f(m).unwrap(), &ctx.plan).passed() {
            failing.push(format!("F {}", m.label()));
        }
    }
    let detail = if failing.is_empty() {
        "J (4 sign variants) and F metallic on the grid".to_string()
    } else {
        format!("not metallic: {}", failing.join(", "))
    };
    outcome(failing.is_empty(), detail)
}

/// The only failures criterion 3 is allowed: J with mixed signs.
fn metallic_failure_is_expected(o: &Outcome) -> bool {
    let listed: Vec<&str> = o.detail.trim_start_matches("not metallic: ").split(", ").collect();
    listed.len() == 2 * PQ_GRID.len() && listed.iter().all(|l| l.starts_with("J ") && (l.ends_with("(+,-)") || l.ends_with("(-,+)")))
}

fn compat(ctx: &Ctx) -> Outcome {
    suites_pass(&ctx.exact, &[SuiteId::JCompat, SuiteId::FCompat])
}

fn integrable(ctx: &Ctx) -> Outcome {
    let base = suites_pass(&ctx.exact, &[SuiteId::JIntegrable]);
    let mutated = [
        ([["1", "x3", "0"], ["0", "-1", "0"], ["0", "0", "0"]], ["0", "0", "1/x3"]),
        ([["-1", "0", "0"], ["0", "-1", "0"], ["x2*x3", "0", "0"]], ["x2", "0", "1/x3"]),
        ([["-1", "0", "0"], ["0", "-1", "0"], ["x3^2", "0", "0"]], ["x3", "0", "1/x3"]),
    ];
    let m = MetallicParams::new(1, 1).unwrap();
    let mut rows = 0;
    let mut nonzero = 0;
    let mut mismatched = Vec::new();
    for (phi, eta) in mutated {
        let s = ParacontactStructure::new(
            ctx.structure.base().clone(),
            phi.iter().map(|r| r.iter().map(|x| e(x)).collect()).collect(),
            eta.iter().map(|x| e(x)).collect(),
            ["0", "0", "x3"].iter().map(|x| e(x)).collect(),
        )
        .unwrap();
        let ls = LiftedStructure::new(s).unwrap();
        let frame = ls.structure().d_frame(&ctx.plan).unwrap();
        for x in &frame {
            for y in &frame {
                for r in nj_table(&ls, m, x, y).unwrap() {
                    let fr = [r.frame[0].as_str(), r.frame[1].as_str()];
                    let zero = TensorField::zeros(r.computed.coords(), 1, 0);
                    rows += 1;
                    if !ctx.plan.check("nz", &[Comparison::fields("", &fr, &r.computed, &zero)]).passed() {
                        nonzero += 1;
                    }
                    if !ctx.plan.check("row", &[Comparison::fields(r.name, &fr, &r.computed, &r.derived)]).passed() {
                        mismatched.push(format!("{} {fr:?}", r.name));
                    }
                }
            }
        }
    }
    outcome(
        base.pass && mismatched.is_empty() && nonzero > 0,
        format!(
            "N_J = 0 on H3: {}; mutated: {} of {rows} rows match the closed forms ({nonzero} nonzero)",
            base.detail,
            rows - mismatched.len()
        ),
    )
}

fn parallel(ctx: &Ctx) -> Outcome {
    suites_pass(&ctx.exact, &[SuiteId::JParallel, SuiteId::FParallel])
}

fn f_integrability(ctx: &Ctx) -> Outcome {
    let ls = LiftedStructure::new(ctx.structure.clone()).unwrap();
    let r = check_f_integrability_conditions(&ls, MetallicParams::new(1, 1).unwrap(), &ctx.plan);
    let pair = ["d/dx1".to_string(), "d/dx1".to_string()];
    let d_witness = r.d_flat.witnesses.iter().find(|w| w.frame == pair);
    let e5_witness = r.e5.witnesses.iter().any(|w| w.frame == pair);
    let witness_ok = d_witness.is_some_and(|w| {
        let x3 = w.point.iter().find_map(|l| l.strip_prefix("x3=")).map(|v| parse_rational(v).unwrap());
        x3.is_some_and(|x3: Rational| {
            let want = MetallicScalar::rational((&x3 * &x3).recip(), 1, 1);
            w.value == want.to_string()
        })
    });
    let pass = r.e4.passed()
        && !r.d_flat.passed()
        && !r.e5.passed()
        && !r.n_f.passed()
        && e5_witness
        && witness_ok
        && r.judged().iter().all(|v| v.passed());
    let w = d_witness.map_or("none".into(), |w| format!("{} at {}", w.value, w.point.join(",")));
    outcome(
        pass,
        format!(
            "e4 {:?}, e5 {:?}, D-flat {:?} (witness d/dx1,d/dx1 = {w}), N_F {:?}",
            r.e4.status, r.e5.status, r.d_flat.status, r.n_f.status
        ),
    )
}

fn phi_prime(ctx: &Ctx) -> Outcome {
    let ls = LiftedStructure::new(ctx.structure.clone()).unwrap();
    let x = TensorField::vector(ctx.structure.coords(), vec![e("x3"), Expr::zero(), Expr::zero()]).unwrap();
    let mut signs = Vec::new();
    let mut exact_magnitude = true;
    for (p, q) in PQ_GRID {
        let m = MetallicParams::new(p, q).unwrap();
        let probe = phi_prime_probe(&ls, m, &("x3 d/dx1".into(), x.clone())).unwrap();
        let sixth = {
            let s = m.sigma();
            let p_half = MetallicScalar::rational(Rational::new((p as i64).into(), 2.into()), p, q);
            let k = &s - &p_half;
            &k * &MetallicScalar::rational(Rational::new(1.into(), 3.into()), p, q)
        };
        for pt in &ctx.plan.points {
            let ev = pt.exact(p, q).unwrap();
            let v = ev.eval(&probe.value).unwrap();
            if ev.eval(&probe.magnitude).unwrap() != sixth {
                exact_magnitude = false;
            }
            signs.push(if v == sixth { "+" } else if v == -&sixth { "-" } else { "?" });
        }
    }
    signs.dedup();
    let recorded = ctx.exact.conventions.dphi_prime_sign.as_str();
    let pass = exact_magnitude && signs.len() == 1 && signs[0] != "?" && signs[0] == recorded;
    outcome(
        pass,
        format!("|dPhi'| = (2 sigma - p)/6 exactly: {exact_magnitude}; sign {signs:?}, recorded \"{recorded}\""),
    )
}

fn parity(ctx: &Ctx) -> Outcome {
    let mut m = ctx.manifest.clone();
    m.sample.mode = Mode::Float;
    let float = verify(&m, &[]);
    let mut diffs = Vec::new();
    for (a, b) in ctx.exact.suites.iter().zip(&float.suites) {
        if a.status != b.status || a.checks != b.checks {
            diffs.push(a.id.to_string());
        }
    }
    let worst = float
        .suites
        .iter()
        .filter(|s| !matches!(s.id, SuiteId::JParallel | SuiteId::FParallel | SuiteId::PhiPrime))
        .map(|s| s.max_residual.float)
        .fold(0.0, f64::max);
    outcome(
        diffs.is_empty() && float.suites.len() == 12 && worst <= 1e-9,
        format!("{} suites compared, differing: {diffs:?}; largest identity residual {worst:e}", float.suites.len()),
    )
}

fn determinism(ctx: &Ctx) -> Outcome {
    let again = verify(&ctx.manifest, &[]).to_json() == ctx.exact.to_json();
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_metallift"))
            .args(["verify", manifest_path().to_str().unwrap(), "--points", "4", "--seed", "99"])
            .arg("--report")
            .arg(&path)
            .output()
            .unwrap()
            .status;
        (status.code(), std::fs::read(&path).unwrap_or_default())
    };
    let (c1, r1) = run("a.json");
    let (c2, r2) = run("b.json");
    let cli = c1 == Some(0) && c2 == Some(0) && !r1.is_empty() && r1 == r2;
    outcome(again && cli, format!("library rerun identical: {again}; CLI reports identical: {cli}"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let manifest = h3();
    let parsed = manifest.validate().unwrap();
    let points = sample_points(&parsed, manifest.sample.count, manifest.sample.seed).unwrap();
    let ctx = Ctx {
        plan: Plan::new(points, manifest.sample.mode),
        exact: verify(&manifest, &[]),
        structure: parsed.structure,
        manifest,
    };
    let criteria: [(&str, Criterion); 10] = [
        ("axioms hold and every targeted mutation is caught", axioms),
        ("lift laws, bracket table and lifted connections are exact", lifts),
        ("J and F are metallic on the (p,q) grid, all sign variants of J", metallic),
        ("g^c is J-compatible and G is F-compatible", compat),
        ("N_J = 0, and the lifted-frame closed forms hold on mutated structures", integrable),
        ("J and F are never parallel, matching the closed forms", parallel),
        ("F-integrability side conditions on H3", f_integrability),
        ("dPhi' has magnitude (2 sigma - p)/6 for X = x3 d/dx1, sign recorded", phi_prime),
        ("exact and float verdicts agree", parity),
        ("reports are byte-identical for a fixed seed", determinism),
    ];
    let mut unexpected = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f(&ctx);
        let n = i + 1;
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let allowed = !o.pass && n == 3 && metallic_failure_is_expected(&o);
        let suffix = if allowed { " [known: mixed sign variants are not metallic]" } else { "" };
        println!("criterion {n:>2} {tag}: {name} ({}){suffix}", o.detail);
        if !o.pass && !allowed {
            unexpected += 1;
        }
    }
    println!("acceptance finished in {:.1} s", start.elapsed().as_secs_f64());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}
