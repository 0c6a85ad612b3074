use crate::manifold::{apply_curvature, ManifoldError, TensorField};
use crate::paracontact::FrameField;
use crate::symcore::Expr;
use crate::verify::{Comparison, Plan, Status, Verdict, Witness};

use super::{check_integrable, LiftedStructure, MetallicParams};

/// Verdicts for the integrability criterion of `F`, with `e4` and `e5`
/// evaluated on the 𝒟 frame.
///
/// `N_F = 0` is expected to hold exactly when the curvature condition `e4`
/// and the connection condition `e5` both hold on the base. On 𝒟, `e5` is
/// expected to vanish exactly where `η(∇_X Y)` does.
#[derive(Clone, Debug)]
pub struct FIntegrability {
    /// `R(φX,φY)Z + R(X,Y)Z − φR(φX,Y)Z − φR(X,φY)Z = 0`.
    pub e4: Verdict,
    /// `∇_{φX}φY − φ∇_{φX}Y − φ∇_X φY + ∇_X Y = 0`.
    pub e5: Verdict,
    pub n_f: Verdict,
    pub d_flat: Verdict,
    /// `N_F = 0` agrees with `e4 ∧ e5`.
    pub iff: Verdict,
    /// On each 𝒟 pair and point, `e5 = 0` agrees with `η(∇_X Y) = 0`.
    pub pointwise: Verdict,
}

impl FIntegrability {
    /// The two verdicts that decide whether the criterion is consistent.
    pub fn judged(&self) -> [&Verdict; 2] {
        [&self.iff, &self.pointwise]
    }

    pub fn all(&self) -> Vec<Verdict> {
        [&self.e4, &self.e5, &self.n_f, &self.d_flat, &self.iff, &self.pointwise]
            .into_iter()
            .cloned()
            .collect()
    }
}

fn e5_field(ls: &LiftedStructure, x: &TensorField, y: &TensorField) -> Result<TensorField, ManifoldError> {
    let s = ls.structure();
    let (phi, lc) = (s.phi(), s.levi_civita());
    let (phix, phiy) = (phi.apply(x)?, phi.apply(y)?);
    lc.nabla(&phix, &phiy)?
        .sub(&phi.apply(&lc.nabla(&phix, y)?)?)?
        .sub(&phi.apply(&lc.nabla(x, &phiy)?)?)?
        .add(&lc.nabla(x, y)?)
}

fn e4_field(
    ls: &LiftedStructure,
    r: &TensorField,
    x: &TensorField,
    y: &TensorField,
    z: &TensorField,
) -> Result<TensorField, ManifoldError> {
    let phi = ls.structure().phi();
    let (phix, phiy) = (phi.apply(x)?, phi.apply(y)?);
    let inner = apply_curvature(r, &phix, y, z)?.add(&apply_curvature(r, x, &phiy, z)?)?;
    apply_curvature(r, &phix, &phiy, z)?
        .add(&apply_curvature(r, x, y, z)?)?
        .sub(&phi.apply(&inner)?)
}

pub fn check_f_integrability_conditions(
    ls: &LiftedStructure,
    params: MetallicParams,
    plan: &Plan,
) -> FIntegrability {
    let plan = plan.with_params(params.p, params.q);
    let s = ls.structure();
    let frame = match s.d_frame(&plan) {
        Ok(f) => f,
        Err(e) => {
            let err = |id: &str| Verdict::error(id, e.to_string());
            return FIntegrability {
                e4: err("F:e4"),
                e5: err("F:e5"),
                n_f: err("F:N_F"),
                d_flat: err("F:D-flat"),
                iff: err("F:iff"),
                pointwise: err("F:e5-vs-D-flat"),
            };
        }
    };
    let zero = TensorField::zeros(s.coords(), 1, 0);

    let e4 = (|| -> Result<Vec<Comparison>, ManifoldError> {
        let r = s.levi_civita().curvature();
        let mut out = Vec::new();
        for (a, x) in &frame {
            for (b, y) in &frame {
                for (c, z) in &frame {
                    out.push(Comparison::fields("e4 = 0", &[a, b, c], &e4_field(ls, &r, x, y, z)?, &zero));
                }
            }
        }
        Ok(out)
    })();
    let e4 = match e4 {
        Ok(cmp) => plan.check("F:e4", &cmp),
        Err(e) => Verdict::error("F:e4", e.to_string()),
    };

    let e5 = (|| -> Result<Vec<Comparison>, ManifoldError> {
        let mut out = Vec::new();
        for (a, x) in &frame {
            for (b, y) in &frame {
                out.push(Comparison::fields("e5 = 0", &[a, b], &e5_field(ls, x, y)?, &zero));
            }
        }
        Ok(out)
    })();
    let e5 = match e5 {
        Ok(cmp) => plan.check("F:e5", &cmp),
        Err(e) => Verdict::error("F:e5", e.to_string()),
    };

    let n_f = match ls.build_f(params) {
        Ok(f) => check_integrable("F:N_F", &f, &ls.bundle_frame(), &plan),
        Err(e) => Verdict::error("F:N_F", e.to_string()),
    };
    let d_flat = s.check_d_flat(s.levi_civita(), &plan);
    let d_flat = Verdict { id: "F:D-flat".into(), ..d_flat };

    let decided = |v: &Verdict| matches!(v.status, Status::Pass | Status::Fail);
    let iff = if [&e4, &e5, &n_f].into_iter().all(decided) {
        let lhs = n_f.passed();
        let rhs = e4.passed() && e5.passed();
        let v = Verdict {
            status: if lhs == rhs { Status::Pass } else { Status::Fail },
            ..Verdict::skipped("F:iff", "")
        };
        Verdict { notes: vec![format!("N_F = 0: {lhs}; e4 and e5: {rhs}")], ..v }
    } else {
        Verdict::error("F:iff", "an ingredient verdict did not evaluate".into())
    };

    let pointwise = pointwise_agreement(ls, &frame, &plan);
    FIntegrability {
        e4,
        e5,
        n_f,
        d_flat,
        iff,
        pointwise,
    }
}

fn pointwise_agreement(ls: &LiftedStructure, frame: &[FrameField], plan: &Plan) -> Verdict {
    const ID: &str = "F:e5-vs-D-flat";
    let s = ls.structure();
    let zero = TensorField::zeros(s.coords(), 1, 0);
    let mut agree = 0usize;
    let mut out = Verdict {
        status: Status::Pass,
        ..Verdict::skipped(ID, "")
    };
    out.notes.clear();
    for (a, x) in frame {
        for (b, y) in frame {
            let flat = s.levi_civita().nabla(x, y).and_then(|n| s.eta().pair(&n));
            let pair = e5_field(ls, x, y).and_then(|e5| Ok((e5, flat?)));
            let (e5, flat) = match pair {
                Ok(v) => v,
                Err(e) => return Verdict::error(ID, e.to_string()),
            };
            let e5_cmp = [Comparison::fields("e5 = 0", &[a, b], &e5, &zero)];
            let flat_cmp = [Comparison::scalar("eta(nabla_X Y) = 0", &[a, b], flat, Expr::zero())];
            for pt in &plan.points {
                let single = Plan {
                    points: vec![pt.clone()],
                    ..plan.clone()
                };
                let (ve, vf) = (single.check(ID, &e5_cmp), single.check(ID, &flat_cmp));
                if !decided_pair(&ve, &vf) {
                    return Verdict::error(ID, format!("evaluation failed at {a}, {b}"));
                }
                if ve.passed() == vf.passed() {
                    agree += 1;
                } else {
                    out.status = Status::Fail;
                    out.witnesses.push(Witness {
                        check: "e5 = 0 iff eta(nabla_X Y) = 0".into(),
                        point: pt.labels(),
                        frame: vec![a.clone(), b.clone()],
                        value: format!("e5 zero: {}, eta(nabla_X Y) zero: {}", ve.passed(), vf.passed()),
                    });
                }
            }
        }
    }
    out.notes.push(format!("{agree} agreeing (pair, point) cases"));
    out
}

fn decided_pair(a: &Verdict, b: &Verdict) -> bool {
    [a, b].iter().all(|v| matches!(v.status, Status::Pass | Status::Fail))
}
