use crate::manifold::TensorField;
use crate::symcore::{rat, sigma, Assignment, Evaluator, Expr, MetallicScalar};

const POINTS: [[(i64, i64); 6]; 4] = [
    [(1, 2), (-1, 3), (2, 1), (3, 4), (-2, 5), (1, 1)],
    [(2, 1), (1, 1), (1, 3), (-1, 2), (1, 7), (5, 3)],
    [(-3, 2), (2, 5), (7, 4), (2, 1), (-1, 1), (-3, 8)],
    [(0, 1), (-5, 4), (3, 2), (1, 9), (4, 3), (-1, 6)],
];

/// Fixed rational points (all coordinates nonzero where it matters, `x_n > 0`).
pub fn points(n: usize, p: u32, q: u32) -> Vec<Evaluator<MetallicScalar>> {
    let m = |&(a, b): &(i64, i64)| MetallicScalar::rational(rat(a, b), p, q);
    POINTS
        .iter()
        .map(|row| {
            let mut base: Vec<_> = row[..n].iter().map(m).collect();
            // the last base coordinate stays positive (half-space domains)
            let last = &row[n - 1];
            base[n - 1] = m(&(last.0.abs().max(1), last.1));
            Evaluator::new(Assignment {
                base,
                fiber: row[6 - n..].iter().rev().map(m).collect(),
                sigma: sigma(p.into(), q.into()).unwrap(),
            })
        })
        .collect()
}

pub fn assert_vanishes(e: &Expr, n: usize) {
    for ev in points(n, 1, 1) {
        let v = ev.eval(e).unwrap();
        assert!(v.is_zero(), "`{e}` evaluates to {v} at {:?}", ev.point().base);
    }
}

pub fn assert_fields_eq(a: &TensorField, b: &TensorField) {
    assert_eq!(a.valence(), b.valence());
    let n = a.coords().base_dim();
    for (x, y) in a.components().iter().zip(b.components()) {
        assert_vanishes(&(x - y), n);
    }
}

pub fn h3() -> crate::manifold::ChartedManifold {
    let p = |s: &str| crate::symcore::parse(s, 3).unwrap();
    crate::manifold::ChartedManifold::new(
        vec!["x1".into(), "x2".into(), "x3".into()],
        vec![p("x3")],
        vec![
            vec![p("1/x3^2"), p("0"), p("0")],
            vec![p("0"), p("1/x3^2"), p("0")],
            vec![p("0"), p("0"), p("1/x3^2")],
        ],
    )
    .unwrap()
}

/// The fixed points as a sample plan (fiber coordinates included).
pub fn plan(n: usize, mode: crate::verify::Mode) -> crate::verify::Plan {
    let pts = POINTS
        .iter()
        .map(|row| {
            let mut base: Vec<_> = row[..n].iter().map(|&(a, b)| rat(a, b)).collect();
            let last = row[n - 1];
            base[n - 1] = rat(last.0.abs().max(1), last.1);
            let fiber = row[6 - n..].iter().rev().map(|&(a, b)| rat(a, b)).collect();
            crate::verify::SamplePoint::new(base, fiber)
        })
        .collect();
    crate::verify::Plan::new(pts, mode)
}

fn exprs(rows: &[&str]) -> Vec<Expr> {
    rows.iter().map(|s| crate::symcore::parse(s, 3).unwrap()).collect()
}

/// The hyperbolic P-Sasakian structure, optionally with replaced pieces.
pub fn h3_structure_with(
    phi: [[&str; 3]; 3],
    eta: [&str; 3],
    xi: [&str; 3],
) -> crate::paracontact::ParacontactStructure {
    crate::paracontact::ParacontactStructure::new(
        h3(),
        phi.iter().map(|r| exprs(r)).collect(),
        exprs(&eta),
        exprs(&xi),
    )
    .unwrap()
}

pub const H3_PHI: [[&str; 3]; 3] = [["-1", "0", "0"], ["0", "-1", "0"], ["0", "0", "0"]];
pub const H3_ETA: [&str; 3] = ["0", "0", "1/x3"];
pub const H3_XI: [&str; 3] = ["0", "0", "x3"];

pub fn h3_structure() -> crate::paracontact::ParacontactStructure {
    h3_structure_with(H3_PHI, H3_ETA, H3_XI)
}
