//! Almost paracontact metric structures `(φ, η, ξ, g)` and their P-Sasakian axioms.

use crate::manifold::{
    apply_pair, christoffel, exterior_derivative_1form, lie_derivative, nijenhuis, ChartedManifold,
    Connection, Coords, ManifoldError, TensorField,
};
use crate::symcore::{Expr, SymError};
use crate::verify::{Comparison, Mode, Plan, SamplePoint, Verdict, FLOAT_TOLERANCE};

/// A labelled vector field used as a frame member in checks.
pub type FrameField = (String, TensorField);

#[derive(Clone, Debug)]
pub struct ParacontactStructure {
    base: ChartedManifold,
    phi: TensorField,
    eta: TensorField,
    xi: TensorField,
    lc: Connection,
}

impl ParacontactStructure {
    /// `phi[i][j] = φ^i_j`, `eta[i] = η_i`, `xi[i] = ξ^i`.
    pub fn new(
        base: ChartedManifold,
        phi: Vec<Vec<Expr>>,
        eta: Vec<Expr>,
        xi: Vec<Expr>,
    ) -> Result<Self, ManifoldError> {
        let c = base.coords();
        let n = base.dim();
        if phi.len() != n || phi.iter().any(|r| r.len() != n) {
            return Err(ManifoldError::Shape(format!("phi must be {n}x{n}")));
        }
        if eta.len() != n || xi.len() != n {
            return Err(ManifoldError::Shape(format!("eta and xi need {n} components")));
        }
        let phi = TensorField::endomorphism(c, phi)?;
        let eta = TensorField::covector(c, eta)?;
        let xi = TensorField::vector(c, xi)?;
        Ok(Self::from_fields(base, phi, eta, xi))
    }

    pub fn from_fields(
        base: ChartedManifold,
        phi: TensorField,
        eta: TensorField,
        xi: TensorField,
    ) -> Self {
        let lc = christoffel(&base);
        Self {
            base,
            phi,
            eta,
            xi,
            lc,
        }
    }

    pub fn base(&self) -> &ChartedManifold {
        &self.base
    }

    pub fn coords(&self) -> Coords {
        self.base.coords()
    }

    pub fn phi(&self) -> &TensorField {
        &self.phi
    }

    pub fn eta(&self) -> &TensorField {
        &self.eta
    }

    pub fn xi(&self) -> &TensorField {
        &self.xi
    }

    pub fn metric(&self) -> &TensorField {
        self.base.metric()
    }

    /// Levi-Civita connection of the base metric.
    pub fn levi_civita(&self) -> &Connection {
        &self.lc
    }

    /// Coordinate frame `d/dx1 .. d/dxn`.
    pub fn coordinate_frame(&self) -> Vec<FrameField> {
        (0..self.base.dim())
            .map(|i| (format!("d/dx{}", i + 1), TensorField::coordinate(self.coords(), i)))
            .collect()
    }

    /// Spanning family `d/dxi − (η(d/dxi)/η(ξ)) ξ` of 𝒟 = ker η.
    ///
    /// Members vanishing at every point of `plan` are dropped.
    pub fn d_frame(&self, plan: &Plan) -> Result<Vec<FrameField>, SymError> {
        let eta_xi = self.eta.pair(&self.xi).expect("valences fixed at construction");
        let mut out = Vec::new();
        for (label, e) in self.coordinate_frame() {
            let eta_e = self.eta.pair(&e).expect("valences fixed at construction");
            if eta_e.is_zero() {
                out.push((label, e));
                continue;
            }
            let coeff = Expr::quotient(eta_e, eta_xi.clone());
            let member = e.sub(&self.xi.scale(&coeff)).expect("same chart");
            if !vanishes_on(&member, plan)? {
                out.push((format!("{label}-eta({label})xi"), member));
            }
        }
        Ok(out)
    }

    /// `η(v) = 0` at `point`, decided exactly.
    pub fn in_distribution(&self, v: &TensorField, point: &SamplePoint) -> Result<bool, ManifoldError> {
        let value = point.exact(1, 1)?.eval(&self.eta.pair(v)?)?;
        Ok(value.is_zero())
    }

    /// `φ² = I − η⊗ξ`, `η(ξ) = 1`, `φξ = 0`, `η∘φ = 0`.
    pub fn check_almost_paracontact(&self, plan: &Plan) -> Vec<Verdict> {
        let c = self.coords();
        let frame = self.coordinate_frame();
        let phi2 = self.phi.compose(&self.phi).expect("(1,1)");
        let mut squared = Vec::new();
        let mut eta_phi = Vec::new();
        for (label, e) in &frame {
            let lhs = phi2.apply(e).expect("vector");
            let rhs = e.sub(&self.xi.scale(&self.eta.pair(e).expect("form"))).expect("chart");
            squared.push(Comparison::fields("phi^2 X = X - eta(X) xi", &[label], &lhs, &rhs));
            let v = self.eta.pair(&self.phi.apply(e).expect("vector")).expect("form");
            eta_phi.push(Comparison::scalar("eta(phi X) = 0", &[label], v, Expr::zero()));
        }
        let eta_xi = Comparison::scalar(
            "eta(xi) = 1",
            &["xi"],
            self.eta.pair(&self.xi).expect("form"),
            Expr::one(),
        );
        let phi_xi = Comparison::fields(
            "phi xi = 0",
            &["xi"],
            &self.phi.apply(&self.xi).expect("vector"),
            &TensorField::zeros(c, 1, 0),
        );
        vec![
            plan.check("phi-squared", &squared),
            plan.check("eta-xi", &[eta_xi]),
            plan.check("phi-xi", &[phi_xi]),
            plan.check("eta-phi", &eta_phi),
        ]
    }

    /// `g(X,Y) = g(φX,φY) + η(X)η(Y)`, `g(X,φY) = g(φX,Y)`, `g(X,ξ) = η(X)`.
    pub fn check_metric_compat(&self, plan: &Plan) -> Vec<Verdict> {
        let g = self.metric();
        let frame = self.coordinate_frame();
        let (mut compat, mut sym, mut dual) = (Vec::new(), Vec::new(), Vec::new());
        for (a, x) in &frame {
            let px = self.phi.apply(x).expect("vector");
            let ex = self.eta.pair(x).expect("form");
            for (b, y) in &frame {
                let py = self.phi.apply(y).expect("vector");
                let ey = self.eta.pair(y).expect("form");
                compat.push(Comparison::scalar(
                    "g(X,Y) = g(phi X, phi Y) + eta(X) eta(Y)",
                    &[a, b],
                    g.eval2(x, y).expect("metric"),
                    g.eval2(&px, &py).expect("metric") + &ex * &ey,
                ));
                sym.push(Comparison::scalar(
                    "g(X, phi Y) = g(phi X, Y)",
                    &[a, b],
                    g.eval2(x, &py).expect("metric"),
                    g.eval2(&px, y).expect("metric"),
                ));
            }
            dual.push(Comparison::scalar(
                "g(X, xi) = eta(X)",
                &[a],
                g.eval2(x, &self.xi).expect("metric"),
                ex,
            ));
        }
        vec![
            plan.check("metric-phi", &compat),
            plan.check("phi-symmetric", &sym),
            plan.check("metric-eta", &dual),
        ]
    }

    /// `(∇_Xφ)Y = −g(X,Y)ξ − η(Y)X + 2η(X)η(Y)ξ`, `∇_Xξ = φX` and
    /// `(∇_Xη)Y = g(φX,Y)`.
    pub fn check_p_sasakian(&self, plan: &Plan) -> Vec<Verdict> {
        let g = self.metric();
        let frame = self.coordinate_frame();
        let nabla_phi = self.lc.covariant_derivative(&self.phi).expect("(1,1)");
        let nabla_eta = self.lc.covariant_derivative(&self.eta).expect("(0,1)");
        let (mut dphi, mut dxi, mut deta) = (Vec::new(), Vec::new(), Vec::new());
        for (a, x) in &frame {
            let ex = self.eta.pair(x).expect("form");
            let px = self.phi.apply(x).expect("vector");
            for (b, y) in &frame {
                let ey = self.eta.pair(y).expect("form");
                let lhs = nabla_phi.contract_last(x).expect("vector").apply(y).expect("vector");
                let coeff = Expr::product([Expr::int(2), ex.clone(), ey.clone()])
                    - g.eval2(x, y).expect("metric");
                let rhs = self
                    .xi
                    .scale(&coeff)
                    .sub(&x.scale(&ey))
                    .expect("chart");
                dphi.push(Comparison::fields(
                    "(nabla_X phi)Y = -g(X,Y) xi - eta(Y) X + 2 eta(X) eta(Y) xi",
                    &[a, b],
                    &lhs,
                    &rhs,
                ));
                let lhs = nabla_eta.contract_last(x).expect("form").pair(y).expect("form");
                deta.push(Comparison::scalar(
                    "(nabla_X eta)Y = g(phi X, Y)",
                    &[a, b],
                    lhs,
                    g.eval2(&px, y).expect("metric"),
                ));
            }
            dxi.push(Comparison::fields(
                "nabla_X xi = phi X",
                &[a],
                &self.lc.nabla(x, &self.xi).expect("vectors"),
                &px,
            ));
        }
        vec![
            plan.check("nabla-phi", &dphi),
            plan.check("nabla-xi", &dxi),
            plan.check("nabla-eta", &deta),
        ]
    }

    /// `N¹ = N_φ − 2dη⊗ξ`, `N²(X,Y) = (L_{φX}η)Y − (L_{φY}η)X`, `N³ = L_ξφ`, `N⁴ = L_ξη`.
    pub fn n_tensors(&self) -> Result<NTensors, ManifoldError> {
        let c = self.coords();
        let n_phi = nijenhuis(&self.phi)?;
        let d_eta = exterior_derivative_1form(&self.eta)?;
        let n1 = TensorField::from_fn(c, 1, 2, |ix| {
            n_phi.get(ix)
                - &Expr::product([Expr::int(2), d_eta.get(&ix[1..]).clone(), self.xi.get(&ix[..1]).clone()])
        });
        let frame = self.coordinate_frame();
        let lie_eta: Vec<TensorField> = frame
            .iter()
            .map(|(_, e)| lie_derivative(&self.phi.apply(e)?, &self.eta))
            .collect::<Result<_, _>>()?;
        let n2 = TensorField::from_fn(c, 0, 2, |ix| {
            lie_eta[ix[0]].get(&[ix[1]]) - lie_eta[ix[1]].get(&[ix[0]])
        });
        Ok(NTensors {
            n1,
            n2,
            n3: lie_derivative(&self.xi, &self.phi)?,
            n4: lie_derivative(&self.xi, &self.eta)?,
        })
    }

    /// Verdicts `N¹ = 0`, …, `N⁴ = 0` on coordinate frame pairs.
    pub fn check_n_tensors(&self, plan: &Plan) -> Result<Vec<Verdict>, ManifoldError> {
        let nt = self.n_tensors()?;
        let c = self.coords();
        let frame = self.coordinate_frame();
        let zero_v = TensorField::zeros(c, 1, 0);
        let (mut c1, mut c2, mut c3, mut c4) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for (a, x) in &frame {
            for (b, y) in &frame {
                c1.push(Comparison::fields("N1(X,Y) = 0", &[a, b], &apply_pair(&nt.n1, x, y)?, &zero_v));
                c2.push(Comparison::scalar("N2(X,Y) = 0", &[a, b], nt.n2.eval2(x, y)?, Expr::zero()));
            }
            c3.push(Comparison::fields("N3(X) = 0", &[a], &nt.n3.apply(x)?, &zero_v));
            c4.push(Comparison::scalar("N4(X) = 0", &[a], nt.n4.pair(x)?, Expr::zero()));
        }
        Ok(vec![
            plan.check("N1", &c1),
            plan.check("N2", &c2),
            plan.check("N3", &c3),
            plan.check("N4", &c4),
        ])
    }

    /// 𝒟-flatness of `conn`: `η(∇_X Y) = 0` for `X, Y` in the 𝒟 frame.
    pub fn check_d_flat(&self, conn: &Connection, plan: &Plan) -> Verdict {
        let frame = match self.d_frame(plan) {
            Ok(f) => f,
            Err(e) => return Verdict::error("D-flat", e.to_string()),
        };
        let mut cmp = Vec::new();
        for (a, x) in &frame {
            for (b, y) in &frame {
                let v = conn.nabla(x, y).and_then(|n| self.eta.pair(&n));
                match v {
                    Ok(v) => cmp.push(Comparison::scalar("eta(nabla_X Y) = 0", &[a, b], v, Expr::zero())),
                    Err(e) => return Verdict::error("D-flat", e.to_string()),
                }
            }
        }
        plan.check("D-flat", &cmp)
    }
}

/// The four tensors whose vanishing is equivalent to integrability of the lifted structure.
#[derive(Clone, Debug)]
pub struct NTensors {
    /// (1,2)
    pub n1: TensorField,
    /// (0,2)
    pub n2: TensorField,
    /// (1,1)
    pub n3: TensorField,
    /// (0,1)
    pub n4: TensorField,
}

fn vanishes_on(v: &TensorField, plan: &Plan) -> Result<bool, SymError> {
    for pt in &plan.points {
        match plan.mode {
            Mode::Exact => {
                let ev = pt.exact(1, 1)?;
                for c in v.components() {
                    if !ev.eval(c)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
            Mode::Float => {
                let ev = pt.float(1, 1)?;
                for c in v.components() {
                    if ev.eval(c)?.abs() > FLOAT_TOLERANCE {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}
