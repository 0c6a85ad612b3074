use crate::manifold::{coboundary_2form, lie_bracket, ManifoldError, TensorField};
use crate::paracontact::FrameField;
use crate::symcore::Expr;
use crate::verify::{Comparison, Plan, Verdict};

use super::{check_compat, LiftedStructure, MetallicError, MetallicOnTM, MetallicParams, StructureKind};

/// `Φ(X̃,Ỹ) = m(X̃, TỸ) − (p/2) m(X̃,Ỹ)`.
pub fn fundamental_form(metric: &TensorField, t: &MetallicOnTM) -> Result<TensorField, ManifoldError> {
    metric.expect_valence(0, 2)?;
    metric.expect_same_coords(&t.tensor)?;
    let d = metric.dim();
    let half_p = t.params.half_p();
    Ok(TensorField::from_fn(metric.coords(), 0, 2, |ix| {
        let (a, b) = (ix[0], ix[1]);
        let mut terms: Vec<Expr> = (0..d)
            .map(|c| metric.get(&[a, c]) * t.tensor.get(&[c, b]))
            .collect();
        terms.push(-(&half_p * metric.get(&[a, b])));
        Expr::sum(terms)
    }))
}

/// [`fundamental_form`] after checking that `metric` is compatible with `t`
/// on the bundle coordinate frame.
pub fn checked_fundamental_form(
    ls: &LiftedStructure,
    metric: &TensorField,
    t: &MetallicOnTM,
    plan: &Plan,
) -> Result<TensorField, MetallicError> {
    let failing: Vec<String> = check_compat("compat", metric, t, &ls.bundle_frame(), plan)
        .into_iter()
        .filter(|v| !v.passed())
        .map(|v| v.id)
        .collect();
    if !failing.is_empty() {
        return Err(MetallicError::Precondition(format!(
            "metric is not compatible with the structure (failing: {})",
            failing.join(", ")
        )));
    }
    Ok(fundamental_form(metric, t)?)
}

/// `dΦ′(X^h, X^v, ξ^v)` with `Φ′` built from the Sasaki metric and `F`.
#[derive(Clone, Debug)]
pub struct ClosednessProbe {
    pub direction: String,
    pub value: Expr,
    /// `((2σ − p)/6) g(X,X)`; the value is `±` this.
    pub magnitude: Expr,
}

pub fn phi_prime_probe(
    ls: &LiftedStructure,
    params: MetallicParams,
    x: &FrameField,
) -> Result<ClosednessProbe, ManifoldError> {
    let tm = ls.bundle();
    let f = ls.build_f(params)?;
    let phi_prime = fundamental_form(&tm.sasaki_metric(), &f)?;
    let (xh, xv) = (tm.horizontal(&x.1)?, tm.vertical(&x.1)?);
    let value = coboundary_2form(&phi_prime, &xh, &xv, &ls.xi_v)?;
    let gxx = ls.structure().metric().eval2(&x.1, &x.1)?;
    let magnitude = Expr::product([params.k(), Expr::frac(1, 3), gxx]);
    Ok(ClosednessProbe {
        direction: x.0.clone(),
        value,
        magnitude,
    })
}

/// Conditional closedness report for `Φ` built from `g^c` and `J`.
#[derive(Clone, Debug)]
pub struct ClosednessReport {
    /// `Φ(X,Y) = Φ(Y,X)` on the lifted frame. Compatibility makes `Φ`
    /// symmetric; the antisymmetric defect `Φ(X,Y) + Φ(Y,X)` is reported.
    pub symmetry: Verdict,
    /// For `X, Y, Z` in 𝒟:
    /// `−6 dΦ(X^c,Y^c,Z^v) = (2σ−p){Xg(Y,φZ) + Yg(Z,φX) + Zg(X,φY) − g([X,Y],φZ) − g([Z,X],φY) − g([Y,Z],φX)}`.
    /// Reported alongside: `dΦ(X^c,Y^c,Z^v)`, the residual
    /// `g(∇_Y X,φZ) + g(∇_Z Y,φX) + g(∇_X Z,φY)`, and the gap
    /// `−6 dΦ − 2(2σ−p)·residual` that vanishes when `∇φ = 0`.
    pub identity: Verdict,
}

impl ClosednessReport {
    pub fn merged(&self, id: &str) -> Verdict {
        Verdict::merge(id, &[self.symmetry.clone(), self.identity.clone()])
    }
}

pub fn closedness_report(ls: &LiftedStructure, params: MetallicParams, plan: &Plan) -> ClosednessReport {
    const SYM: &str = "Phi-symmetric";
    const IDENT: &str = "dPhi-identity";
    let plan = plan.with_params(params.p, params.q);
    let tm = ls.bundle();
    let s = ls.structure();
    let (g, phi) = (s.metric(), s.phi());
    let form = match ls
        .build_j(params)
        .and_then(|j| fundamental_form(&tm.complete_metric(g)?, &j))
    {
        Ok(f) => f,
        Err(e) => {
            return ClosednessReport {
                symmetry: Verdict::error(SYM, e.to_string()),
                identity: Verdict::error(IDENT, e.to_string()),
            }
        }
    };

    let symmetry = (|| -> Result<Vec<Comparison>, ManifoldError> {
        let mut out = Vec::new();
        let frame = ls.lifted_frame(StructureKind::CompleteJ)?;
        for (i, (a, x)) in frame.iter().enumerate() {
            for (b, y) in &frame[i..] {
                let (xy, yx) = (form.eval2(x, y)?, form.eval2(y, x)?);
                out.push(Comparison::scalar("Phi(X,Y) = Phi(Y,X)", &[a, b], xy.clone(), yx.clone()));
                out.push(Comparison::report("Phi(X,Y) + Phi(Y,X)", &[a, b], xy + yx));
            }
        }
        Ok(out)
    })();
    let symmetry = match symmetry {
        Ok(cmp) => plan.check(SYM, &cmp),
        Err(e) => Verdict::error(SYM, e.to_string()),
    };

    let d_frame = match s.d_frame(&plan) {
        Ok(f) => f,
        Err(e) => {
            return ClosednessReport {
                symmetry,
                identity: Verdict::error(IDENT, e.to_string()),
            }
        }
    };
    let identity = (|| -> Result<Vec<Comparison>, ManifoldError> {
        let lc = s.levi_civita();
        let two_k = Expr::int(2) * params.k();
        let gphi = |u: &TensorField, v: &TensorField| g.eval2(u, &phi.apply(v)?);
        let mut out = Vec::new();
        for (xn, x) in &d_frame {
            for (yn, y) in &d_frame {
                for (zn, z) in &d_frame {
                    let fr = [xn.as_str(), yn.as_str(), zn.as_str()];
                    let d_phi = coboundary_2form(&form, &tm.complete(x)?, &tm.complete(y)?, &tm.vertical(z)?)?;
                    let bracket_terms = Expr::sum([
                        x.derive(&gphi(y, z)?)?,
                        y.derive(&gphi(z, x)?)?,
                        z.derive(&gphi(x, y)?)?,
                        -gphi(&lie_bracket(x, y)?, z)?,
                        -gphi(&lie_bracket(z, x)?, y)?,
                        -gphi(&lie_bracket(y, z)?, x)?,
                    ]);
                    let six_d = Expr::int(-6) * d_phi.clone();
                    out.push(Comparison::scalar(
                        "-6 dPhi(X^c,Y^c,Z^v) = (2 sigma - p) {bracket terms}^v",
                        &fr,
                        six_d.clone(),
                        &two_k * &bracket_terms,
                    ));
                    let residual = Expr::sum([
                        gphi(&lc.nabla(y, x)?, z)?,
                        gphi(&lc.nabla(z, y)?, x)?,
                        gphi(&lc.nabla(x, z)?, y)?,
                    ]);
                    out.push(Comparison::report("dPhi(X^c,Y^c,Z^v)", &fr, d_phi));
                    out.push(Comparison::report("closedness condition residual", &fr, residual.clone()));
                    out.push(Comparison::report(
                        "gap when nabla phi != 0",
                        &fr,
                        six_d - Expr::int(2) * (&two_k * &residual),
                    ));
                }
            }
        }
        Ok(out)
    })();
    let identity = match identity {
        Ok(cmp) => plan.check(IDENT, &cmp),
        Err(e) => Verdict::error(IDENT, e.to_string()),
    };
    ClosednessReport { symmetry, identity }
}
