use crate::manifold::{apply_pair, nijenhuis, nijenhuis_on, ManifoldError, TensorField};
use crate::paracontact::FrameField;
use crate::symcore::Expr;
use crate::verify::{Comparison, Plan, Verdict};

use super::{LiftedStructure, MetallicOnTM, MetallicParams};

/// `N_T = 0` on every pair of `frame`, using the component formula.
pub fn check_integrable(id: &str, t: &MetallicOnTM, frame: &[FrameField], plan: &Plan) -> Verdict {
    let plan = plan.with_params(t.params.p, t.params.q);
    let build = || -> Result<Vec<Comparison>, ManifoldError> {
        let n = nijenhuis(&t.tensor)?;
        let zero = TensorField::zeros(t.tensor.coords(), 1, 0);
        let mut out = Vec::new();
        for (a, x) in frame {
            for (b, y) in frame {
                out.push(Comparison::fields("N_T(X,Y) = 0", &[a, b], &apply_pair(&n, x, y)?, &zero));
            }
        }
        Ok(out)
    };
    match build() {
        Ok(cmp) => plan.check(id, &cmp),
        Err(e) => Verdict::error(id, e.to_string()),
    }
}

/// One row of the lifted-frame table of `N_J`.
#[derive(Clone, Debug)]
pub struct NjRow {
    pub name: &'static str,
    pub frame: [String; 2],
    /// `N_J` by the four-bracket formula on the lifted fields.
    pub computed: TensorField,
    /// `A` times the closed form derived from the lift calculus.
    pub derived: TensorField,
    /// `A` times the closed form as printed in the original source.
    pub printed: TensorField,
    /// The printed row is too garbled to be read unambiguously.
    pub printed_normative: bool,
}

/// The lifted-frame values of `N_J` for `X, Y` in 𝒟, with their closed forms
/// in terms of `N¹ … N⁴`.
pub fn nj_table(
    ls: &LiftedStructure,
    params: MetallicParams,
    x: &FrameField,
    y: &FrameField,
) -> Result<Vec<NjRow>, ManifoldError> {
    let s = ls.structure();
    let tm = ls.bundle();
    let j = ls.build_j(params)?.tensor;
    let nt = s.n_tensors()?;
    let (xn, x) = (&x.0, &x.1);
    let (yn, y) = (&y.0, &y.1);
    let (phi, xi) = (s.phi(), s.xi());

    let n1 = apply_pair(&nt.n1, x, y)?;
    let n2 = nt.n2.eval2(x, y)?;
    let n3x = nt.n3.apply(x)?;
    let phi_n3x = phi.apply(&n3x)?;
    let n4x = nt.n4.pair(x)?;
    let n2x_xi = nt.n2.eval2(x, xi)?;
    let n4_phix = nt.n4.pair(&phi.apply(x)?)?;

    let (xv, xc) = (tm.vertical(x)?, tm.complete(x)?);
    let (yv, yc) = (tm.vertical(y)?, tm.complete(y)?);
    let (xi_v, xi_c) = (&ls.xi_v, &ls.xi_c);
    let a = params.a();
    let scale = |f: &Expr, v: &TensorField| v.scale(f);
    let c = |f: &Expr| tm.complete_fn(f);
    let zero = TensorField::zeros(tm.coords(), 1, 0);
    let sum = |parts: Vec<TensorField>| -> Result<TensorField, ManifoldError> {
        parts.iter().try_fold(zero.clone(), |acc, p| acc.add(p))
    };
    let neg = |v: TensorField| v.scale(&Expr::int(-1));

    let vv = zero.clone();
    let vc = sum(vec![tm.vertical(&n1)?, scale(&n2, xi_c)])?;
    let cc_derived = sum(vec![tm.complete(&n1)?, scale(&n2, xi_v), scale(&c(&n2), xi_c)])?;
    let cc_printed = sum(vec![tm.complete(&n1)?, scale(&n2, xi_v)])?;
    let vxv_derived = sum(vec![neg(tm.vertical(&n3x)?), neg(scale(&n4x, xi_c))])?;
    let vxv_printed = sum(vec![neg(tm.vertical(&n3x)?), scale(&n4x, xi_c)])?;
    let vxc_derived = sum(vec![
        tm.vertical(&phi_n3x.add(&scale(&n4x, xi))?)?,
        scale(&n2x_xi, xi_c),
    ])?;
    let vxc_printed = sum(vec![
        tm.vertical(&phi_n3x.sub(&scale(&n4x, xi))?)?,
        scale(&n2x_xi, xi_c),
    ])?;
    let cxv_derived = sum(vec![
        neg(tm.complete(&n3x)?),
        tm.vertical(&phi_n3x)?,
        scale(&n2x_xi, xi_c),
        neg(scale(&c(&n4x), xi_c)),
    ])?;
    let cxv_printed = sum(vec![
        neg(tm.complete(&n3x)?),
        tm.vertical(&phi_n3x)?,
        neg(scale(&c(&(n4_phix.clone() - n4x.clone())), xi_c)),
    ])?;
    let cxc_derived = sum(vec![
        neg(tm.vertical(&n3x)?),
        tm.complete(&phi_n3x)?,
        scale(&c(&n4x), xi_v),
        scale(&n2x_xi, xi_v),
        scale(&c(&n2x_xi), xi_c),
    ])?;
    // best-effort bracketing of the printed row
    let cxc_printed = sum(vec![
        neg(tm.vertical(&n3x)?),
        scale(&(n4x.clone() + n2x_xi.clone()), xi_c),
        tm.complete(&phi_n3x.sub(&scale(&n4x, xi))?)?,
    ])?;

    let nj = |u: &TensorField, v: &TensorField| nijenhuis_on(&j, u, v);
    let row = |name: &'static str,
               frame: [&str; 2],
               computed: TensorField,
               derived: TensorField,
               printed: TensorField,
               normative: bool| NjRow {
        name,
        frame: [frame[0].to_string(), frame[1].to_string()],
        computed,
        derived: derived.scale(&a),
        printed: printed.scale(&a),
        printed_normative: normative,
    };
    let (xv_n, xc_n) = (format!("({xn})^v"), format!("({xn})^c"));
    let (yv_n, yc_n) = (format!("({yn})^v"), format!("({yn})^c"));
    Ok(vec![
        row("N_J(X^v,Y^v)", [&xv_n, &yv_n], nj(&xv, &yv)?, vv.clone(), vv.clone(), true),
        row("N_J(X^v,Y^c)", [&xv_n, &yc_n], nj(&xv, &yc)?, vc.clone(), vc, true),
        row("N_J(X^c,Y^c)", [&xc_n, &yc_n], nj(&xc, &yc)?, cc_derived, cc_printed, true),
        row("N_J(X^v,xi^v)", [&xv_n, "xi^v"], nj(&xv, xi_v)?, vxv_derived, vxv_printed, true),
        row("N_J(X^v,xi^c)", [&xv_n, "xi^c"], nj(&xv, xi_c)?, vxc_derived, vxc_printed, true),
        row("N_J(X^c,xi^v)", [&xc_n, "xi^v"], nj(&xc, xi_v)?, cxv_derived, cxv_printed, true),
        row("N_J(X^c,xi^c)", [&xc_n, "xi^c"], nj(&xc, xi_c)?, cxc_derived, cxc_printed, false),
        row("N_J(xi^v,xi^v)", ["xi^v", "xi^v"], nj(xi_v, xi_v)?, vv.clone(), vv.clone(), true),
        row("N_J(xi^c,xi^c)", ["xi^c", "xi^c"], nj(xi_c, xi_c)?, vv.clone(), vv.clone(), true),
        row("N_J(xi^v,xi^c)", ["xi^v", "xi^c"], nj(xi_v, xi_c)?, vv.clone(), vv, true),
    ])
}
