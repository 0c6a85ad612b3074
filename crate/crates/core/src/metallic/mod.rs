//! Metallic structures `J` (complete lifts) and `F` (horizontal lifts) on the
//! tangent bundle of an almost paracontact manifold.

mod forms;
mod integrability;
mod nijenhuis;
mod parallel;

pub use forms::{checked_fundamental_form, closedness_report, fundamental_form, phi_prime_probe, ClosednessProbe, ClosednessReport};
pub use integrability::{check_f_integrability_conditions, FIntegrability};
pub use nijenhuis::{check_integrable, nj_table, NjRow};
pub use parallel::{check_never_parallel, parallelity_probe, ParallelProbe};

use crate::bundle::TangentBundle;
use crate::manifold::{ManifoldError, TensorField};
use crate::paracontact::{FrameField, ParacontactStructure};
use crate::symcore::{rat, sigma, Expr, MetallicScalar, SymError};
use crate::verify::{Comparison, Plan, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetallicError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// `(p, q)` with the signs `eps1`, `eps2` in front of the `η⊗ξ` terms of `J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MetallicParams {
    pub p: u32,
    pub q: u32,
    pub eps1: i8,
    pub eps2: i8,
}

impl MetallicParams {
    pub fn new(p: u32, q: u32) -> Result<Self, SymError> {
        Self::with_signs(p, q, 1, 1)
    }

    pub fn with_signs(p: u32, q: u32, eps1: i8, eps2: i8) -> Result<Self, SymError> {
        sigma(p.into(), q.into())?;
        if eps1.abs() != 1 || eps2.abs() != 1 {
            return Err(SymError::Domain(format!("signs must be +1 or -1, got ({eps1}, {eps2})")));
        }
        Ok(Self { p, q, eps1, eps2 })
    }

    pub fn sigma(&self) -> MetallicScalar {
        sigma(self.p.into(), self.q.into()).expect("validated")
    }

    /// `p/2`.
    pub fn half_p(&self) -> Expr {
        Expr::frac(self.p as i64, 2)
    }

    /// `k = (2σ − p)/2`.
    pub fn k(&self) -> Expr {
        Expr::sigma() - self.half_p()
    }

    /// `A = k²`.
    pub fn a(&self) -> Expr {
        Expr::powi(self.k(), 2)
    }

    pub fn label(&self) -> String {
        let s = |e: i8| if e > 0 { '+' } else { '-' };
        format!("p={},q={},eps=({},{})", self.p, self.q, s(self.eps1), s(self.eps2))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    CompleteJ,
    HorizontalF,
}

/// A (1,1) field on the bundle chart built from a paracontact structure.
#[derive(Clone, Debug)]
pub struct MetallicOnTM {
    pub kind: StructureKind,
    pub tensor: TensorField,
    pub params: MetallicParams,
}

/// Lifts of `(φ, η, ξ)` to the tangent bundle, built once.
#[derive(Clone, Debug)]
pub struct LiftedStructure {
    structure: ParacontactStructure,
    bundle: TangentBundle,
    pub phi_c: TensorField,
    pub phi_h: TensorField,
    pub eta_v: TensorField,
    pub eta_c: TensorField,
    pub eta_h: TensorField,
    pub xi_v: TensorField,
    pub xi_c: TensorField,
    pub xi_h: TensorField,
}

impl LiftedStructure {
    pub fn new(structure: ParacontactStructure) -> Result<Self, ManifoldError> {
        let bundle = TangentBundle::with_connection(
            structure.base().clone(),
            structure.levi_civita().clone(),
        );
        let (phi, eta, xi) = (structure.phi(), structure.eta(), structure.xi());
        Ok(Self {
            phi_c: bundle.complete_endo(phi)?,
            phi_h: bundle.horizontal_endo(phi)?,
            eta_v: bundle.vertical_form(eta)?,
            eta_c: bundle.complete_form(eta)?,
            eta_h: bundle.horizontal_form(eta)?,
            xi_v: bundle.vertical(xi)?,
            xi_c: bundle.complete(xi)?,
            xi_h: bundle.horizontal(xi)?,
            structure,
            bundle,
        })
    }

    /// As [`LiftedStructure::new`], refusing structures that fail a P-Sasakian axiom on `plan`.
    pub fn checked(structure: ParacontactStructure, plan: &Plan) -> Result<Self, MetallicError> {
        let mut verdicts = structure.check_almost_paracontact(plan);
        verdicts.extend(structure.check_metric_compat(plan));
        verdicts.extend(structure.check_p_sasakian(plan));
        let failing: Vec<&str> = verdicts.iter().filter(|v| !v.passed()).map(|v| v.id.as_str()).collect();
        if !failing.is_empty() {
            return Err(MetallicError::Precondition(format!(
                "structure is not P-Sasakian (failing: {})",
                failing.join(", ")
            )));
        }
        Ok(Self::new(structure)?)
    }

    pub fn structure(&self) -> &ParacontactStructure {
        &self.structure
    }

    pub fn bundle(&self) -> &TangentBundle {
        &self.bundle
    }

    /// `P = φ^c + ε1 η^v⊗ξ^v + ε2 η^c⊗ξ^c`.
    pub fn p_tensor(&self, eps1: i8, eps2: i8) -> Result<TensorField, ManifoldError> {
        let a = TensorField::outer(&self.eta_v, &self.xi_v)?.scale(&Expr::int(eps1.into()));
        let b = TensorField::outer(&self.eta_c, &self.xi_c)?.scale(&Expr::int(eps2.into()));
        self.phi_c.add(&a)?.add(&b)
    }

    /// `Q = φ^h + η^h⊗ξ^h + η^v⊗ξ^v`.
    pub fn q_tensor(&self) -> Result<TensorField, ManifoldError> {
        let a = TensorField::outer(&self.eta_h, &self.xi_h)?;
        let b = TensorField::outer(&self.eta_v, &self.xi_v)?;
        self.phi_h.add(&a)?.add(&b)
    }

    /// `J = (p/2) I − k P`.
    pub fn build_j(&self, params: MetallicParams) -> Result<MetallicOnTM, ManifoldError> {
        let p = self.p_tensor(params.eps1, params.eps2)?;
        Ok(MetallicOnTM {
            kind: StructureKind::CompleteJ,
            tensor: self.metallic_from(&p, &params)?,
            params,
        })
    }

    /// `F = (p/2) I − k Q`. The signs in `params` are ignored.
    pub fn build_f(&self, params: MetallicParams) -> Result<MetallicOnTM, ManifoldError> {
        let q = self.q_tensor()?;
        Ok(MetallicOnTM {
            kind: StructureKind::HorizontalF,
            tensor: self.metallic_from(&q, &params)?,
            params,
        })
    }

    fn metallic_from(&self, t: &TensorField, params: &MetallicParams) -> Result<TensorField, ManifoldError> {
        TensorField::identity(self.bundle.coords())
            .scale(&params.half_p())
            .sub(&t.scale(&params.k()))
    }

    /// Lifted frame `{∂_i^v, ∂_i^c, ξ^v, ξ^c}` for `J` or with horizontal lifts for `F`.
    pub fn lifted_frame(&self, kind: StructureKind) -> Result<Vec<FrameField>, ManifoldError> {
        let tm = &self.bundle;
        let mut out = Vec::new();
        for (label, e) in self.structure.coordinate_frame() {
            out.push((format!("({label})^v"), tm.vertical(&e)?));
            match kind {
                StructureKind::CompleteJ => out.push((format!("({label})^c"), tm.complete(&e)?)),
                StructureKind::HorizontalF => out.push((format!("({label})^h"), tm.horizontal(&e)?)),
            }
        }
        out.push(("xi^v".into(), self.xi_v.clone()));
        match kind {
            StructureKind::CompleteJ => out.push(("xi^c".into(), self.xi_c.clone())),
            StructureKind::HorizontalF => out.push(("xi^h".into(), self.xi_h.clone())),
        }
        Ok(out)
    }

    /// Coordinate frame `d/dx1 .. d/dxn, d/dy1 .. d/dyn` of the bundle chart.
    pub fn bundle_frame(&self) -> Vec<FrameField> {
        let c = self.bundle.coords();
        let n = self.bundle.n();
        (0..2 * n)
            .map(|a| {
                let name = if a < n { format!("d/dx{}", a + 1) } else { format!("d/dy{}", a - n + 1) };
                (name, TensorField::coordinate(c, a))
            })
            .collect()
    }
}

/// `T² = pT + qI` on every bundle coordinate direction.
pub fn check_metallic(t: &MetallicOnTM, plan: &Plan) -> Verdict {
    let id = format!("metallic[{}]", t.params.label());
    let plan = plan.with_params(t.params.p, t.params.q);
    let build = || -> Result<Vec<Comparison>, ManifoldError> {
        let c = t.tensor.coords();
        let t2 = t.tensor.compose(&t.tensor)?;
        let rhs = t
            .tensor
            .scale(&Expr::int(t.params.p.into()))
            .add(&TensorField::identity(c).scale(&Expr::int(t.params.q.into())))?;
        let mut out = Vec::new();
        for a in 0..c.dim() {
            let e = TensorField::coordinate(c, a);
            let label = format!("e{}", a + 1);
            out.push(Comparison::fields("T^2 e = p T e + q e", &[&label], &t2.apply(&e)?, &rhs.apply(&e)?));
        }
        Ok(out)
    };
    match build() {
        Ok(cmp) => plan.check(&id, &cmp),
        Err(e) => Verdict::error(&id, e.to_string()),
    }
}

/// Compatibility of `metric` with `t` in both forms on the given frame:
/// `m(TX,TY) = p m(X,TY) + q m(X,Y)` and `m(TX,Y) = m(X,TY)`.
pub fn check_compat(
    id: &str,
    metric: &TensorField,
    t: &MetallicOnTM,
    frame: &[FrameField],
    plan: &Plan,
) -> Vec<Verdict> {
    let plan = plan.with_params(t.params.p, t.params.q);
    let build = || -> Result<(Vec<Comparison>, Vec<Comparison>), ManifoldError> {
        let images: Vec<TensorField> = frame.iter().map(|(_, x)| t.tensor.apply(x)).collect::<Result<_, _>>()?;
        let (mut pq, mut sym) = (Vec::new(), Vec::new());
        let (p, q) = (Expr::int(t.params.p.into()), Expr::int(t.params.q.into()));
        for (i, (a, x)) in frame.iter().enumerate() {
            for (j, (b, y)) in frame.iter().enumerate() {
                let (tx, ty) = (&images[i], &images[j]);
                pq.push(Comparison::scalar(
                    "m(TX,TY) = p m(X,TY) + q m(X,Y)",
                    &[a, b],
                    metric.eval2(tx, ty)?,
                    &p * &metric.eval2(x, ty)? + &q * &metric.eval2(x, y)?,
                ));
                if j >= i {
                    sym.push(Comparison::scalar(
                        "m(TX,Y) = m(X,TY)",
                        &[a, b],
                        metric.eval2(tx, y)?,
                        metric.eval2(x, ty)?,
                    ));
                }
            }
        }
        Ok((pq, sym))
    };
    match build() {
        Ok((pq, sym)) => vec![
            plan.check(&format!("{id}[{}]:pq-form", t.params.label()), &pq),
            plan.check(&format!("{id}[{}]:symmetry", t.params.label()), &sym),
        ],
        Err(e) => vec![Verdict::error(id, e.to_string())],
    }
}

/// `(2σ − p)/2` as an exact scalar, for tests and reports.
pub fn k_scalar(params: &MetallicParams) -> MetallicScalar {
    let s = params.sigma();
    let (p, q) = (params.p, params.q);
    &s - &MetallicScalar::rational(rat(p as i64, 2), p, q)
}
