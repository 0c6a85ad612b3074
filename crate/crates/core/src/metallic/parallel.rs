use crate::manifold::{ManifoldError, TensorField};
use crate::paracontact::FrameField;
use crate::verify::{Comparison, Plan, Verdict};

use super::{LiftedStructure, MetallicOnTM, StructureKind};

/// `(∇̃_{X̃} T) ξ̃` for one base direction `X` together with its closed forms.
#[derive(Clone, Debug)]
pub struct ParallelProbe {
    pub direction: String,
    pub residual: TensorField,
    /// Valid for every `X`:
    /// `−k[(η(X)ξ)^c − X^c + (φX)^v]` for `J`, `−k[(φX)^v − (φ²X)^h]` for `F`.
    pub closed_form: TensorField,
    /// The form stated for `X` in 𝒟: `−k[(φX)^v − X^c]` for `J`; same as
    /// `closed_form` for `F`.
    pub d_form: TensorField,
}

/// Probes `T` against its lifted connection (`∇^c` for `J`, `∇^h` for `F`)
/// along the lift of each direction, applied to the matching lift of `ξ`.
pub fn parallelity_probe(
    ls: &LiftedStructure,
    t: &MetallicOnTM,
    directions: &[FrameField],
) -> Result<Vec<ParallelProbe>, ManifoldError> {
    let tm = ls.bundle();
    let s = ls.structure();
    let (phi, eta, xi) = (s.phi(), s.eta(), s.xi());
    let k = t.params.k();
    let (conn, xi_t) = match t.kind {
        StructureKind::CompleteJ => (tm.complete_connection(), &ls.xi_c),
        StructureKind::HorizontalF => (tm.horizontal_connection(), &ls.xi_h),
    };
    let t_xi = t.tensor.apply(xi_t)?;
    let mut out = Vec::with_capacity(directions.len());
    for (label, x) in directions {
        let phix = phi.apply(x)?;
        let (xt, closed, d_form) = match t.kind {
            StructureKind::CompleteJ => {
                let xc = tm.complete(x)?;
                let eta_x_xi = xi.scale(&eta.pair(x)?);
                let general = tm.complete(&eta_x_xi)?.sub(&xc)?.add(&tm.vertical(&phix)?)?;
                let d = tm.vertical(&phix)?.sub(&xc)?;
                (xc, general, d)
            }
            StructureKind::HorizontalF => {
                let xh = tm.horizontal(x)?;
                let form = tm.vertical(&phix)?.sub(&tm.horizontal(&phi.apply(&phix)?)?)?;
                (xh, form.clone(), form)
            }
        };
        let residual = conn
            .nabla(&xt, &t_xi)?
            .sub(&t.tensor.apply(&conn.nabla(&xt, xi_t)?)?)?;
        let minus_k = -k.clone();
        out.push(ParallelProbe {
            direction: label.clone(),
            residual,
            closed_form: closed.scale(&minus_k),
            d_form: d_form.scale(&minus_k),
        });
    }
    Ok(out)
}

/// Never-parallel verdict: on 𝒟 directions the residual equals the 𝒟 closed
/// form and is nonzero; along `ξ` it equals the general closed form.
pub fn check_never_parallel(ls: &LiftedStructure, t: &MetallicOnTM, id: &str, plan: &Plan) -> Verdict {
    let plan = plan.with_params(t.params.p, t.params.q);
    let d_frame = match ls.structure().d_frame(&plan) {
        Ok(f) => f,
        Err(e) => return Verdict::error(id, e.to_string()),
    };
    let xi_dir = vec![("xi".to_string(), ls.structure().xi().clone())];
    let build = || -> Result<Vec<Comparison>, ManifoldError> {
        let mut out = Vec::new();
        for p in parallelity_probe(ls, t, &d_frame)? {
            let fr = [p.direction.as_str()];
            out.push(Comparison::fields("(nabla T) xi = closed form on D", &fr, &p.residual, &p.d_form));
            out.push(Comparison::nonzero_field("(nabla T) xi != 0", &fr, &p.residual));
        }
        for p in parallelity_probe(ls, t, &xi_dir)? {
            let fr = [p.direction.as_str()];
            out.push(Comparison::fields("(nabla T) xi = general closed form", &fr, &p.residual, &p.closed_form));
        }
        Ok(out)
    };
    match build() {
        Ok(cmp) => plan.check(id, &cmp),
        Err(e) => Verdict::error(id, e.to_string()),
    }
}
