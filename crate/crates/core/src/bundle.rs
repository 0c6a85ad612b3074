//! The tangent bundle chart `(x, y)` and vertical, complete and horizontal lifts.
//!
//! Fiber slot `n + i` carries the coordinate `y^{i+1}`. Block matrices below
//! are written `[[xx, xy], [yx, yy]]` with rows indexing the output slot.

use crate::manifold::{christoffel, lie_bracket, ChartedManifold, Connection, Coords, ManifoldError, TensorField};
use crate::symcore::Expr;
use crate::verify::{Comparison, Plan, Verdict};

/// Sign in front of the fiber part `y^j ∂_j X^i` of a complete lift.
///
/// `Plus` is the one compatible with `X^c f^c = (Xf)^c`; `Minus` exists to
/// demonstrate that the other choice breaks it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberSign {
    Plus,
    Minus,
}

#[derive(Clone, Debug)]
pub struct TangentBundle {
    base: ChartedManifold,
    lc: Connection,
    curvature: TensorField,
}

impl TangentBundle {
    /// Bundle over `base` with its Levi-Civita connection.
    pub fn new(base: ChartedManifold) -> Self {
        let lc = christoffel(&base);
        Self::with_connection(base, lc)
    }

    pub fn with_connection(base: ChartedManifold, lc: Connection) -> Self {
        let curvature = lc.curvature();
        Self {
            base,
            lc,
            curvature,
        }
    }

    pub fn base(&self) -> &ChartedManifold {
        &self.base
    }

    pub fn base_connection(&self) -> &Connection {
        &self.lc
    }

    /// `R^l_{ijk}` of the base connection.
    pub fn base_curvature(&self) -> &TensorField {
        &self.curvature
    }

    pub fn n(&self) -> usize {
        self.base.dim()
    }

    pub fn coords(&self) -> Coords {
        Coords::Bundle(self.n())
    }

    fn gamma(&self, k: usize, i: usize, j: usize) -> &Expr {
        self.lc.gamma(k, i, j)
    }

    /// `y^k ∂_k f`.
    fn transvect(&self, f: &Expr) -> Expr {
        let c = self.coords();
        Expr::sum((0..self.n()).map(|k| Expr::y(k + 1) * c.partial(f, k)))
    }

    /// `N^l_i = y^k Γ^l_{ki}`, the coefficients of the nonlinear connection.
    fn nonlinear(&self, l: usize, i: usize) -> Expr {
        Expr::sum((0..self.n()).map(|k| Expr::y(k + 1) * self.gamma(l, k, i).clone()))
    }

    fn expect_base(&self, t: &TensorField, upper: usize, lower: usize) -> Result<(), ManifoldError> {
        t.expect_valence(upper, lower)?;
        if t.coords() != self.base.coords() {
            return Err(ManifoldError::Shape("expected a field on the base chart".into()));
        }
        Ok(())
    }

    fn block_vector(&self, top: Vec<Expr>, bottom: Vec<Expr>) -> TensorField {
        TensorField::vector(self.coords(), top.into_iter().chain(bottom).collect())
            .expect("2n components")
    }

    fn block_rows(
        &self,
        xx: impl Fn(usize, usize) -> Expr,
        xy: impl Fn(usize, usize) -> Expr,
        yx: impl Fn(usize, usize) -> Expr,
        yy: impl Fn(usize, usize) -> Expr,
    ) -> Vec<Expr> {
        let n = self.n();
        let mut out = Vec::with_capacity(4 * n * n);
        for a in 0..2 * n {
            for b in 0..2 * n {
                out.push(match (a < n, b < n) {
                    (true, true) => xx(a, b),
                    (true, false) => xy(a, b - n),
                    (false, true) => yx(a - n, b),
                    (false, false) => yy(a - n, b - n),
                });
            }
        }
        out
    }

    // functions

    /// `f^v = f ∘ π`.
    pub fn vertical_fn(&self, f: &Expr) -> Expr {
        f.clone()
    }

    /// `f^c = y^j ∂_j f`.
    pub fn complete_fn(&self, f: &Expr) -> Expr {
        self.transvect(f)
    }

    /// `f^h = f^c − γ(df)`, which vanishes identically.
    pub fn horizontal_fn(&self, f: &Expr) -> Expr {
        let c = self.coords();
        let gamma_df = Expr::sum((0..self.n()).map(|j| Expr::y(j + 1) * c.partial(f, j)));
        self.complete_fn(f) - gamma_df
    }

    // vector fields

    /// `X^v = X^i ∂_{y^i}`.
    pub fn vertical(&self, x: &TensorField) -> Result<TensorField, ManifoldError> {
        self.expect_base(x, 1, 0)?;
        Ok(self.block_vector(vec![Expr::zero(); self.n()], x.components().to_vec()))
    }

    /// `X^c = X^i ∂_i + y^j ∂_j X^i ∂_{y^i}`.
    pub fn complete(&self, x: &TensorField) -> Result<TensorField, ManifoldError> {
        self.complete_signed(x, FiberSign::Plus)
    }

    pub fn complete_signed(
        &self,
        x: &TensorField,
        sign: FiberSign,
    ) -> Result<TensorField, ManifoldError> {
        self.expect_base(x, 1, 0)?;
        let fiber = x
            .components()
            .iter()
            .map(|xi| match sign {
                FiberSign::Plus => self.transvect(xi),
                FiberSign::Minus => -self.transvect(xi),
            })
            .collect();
        Ok(self.block_vector(x.components().to_vec(), fiber))
    }

    /// `X^h = X^i ∂_i − y^j X^k Γ^l_{kj} ∂_{y^l}`.
    pub fn horizontal(&self, x: &TensorField) -> Result<TensorField, ManifoldError> {
        self.expect_base(x, 1, 0)?;
        let n = self.n();
        let xs = x.components();
        let fiber = (0..n)
            .map(|l| {
                -Expr::sum(
                    (0..n)
                        .filter(|&k| !xs[k].is_zero())
                        .map(|k| &xs[k] * &self.nonlinear(l, k)),
                )
            })
            .collect();
        Ok(self.block_vector(xs.to_vec(), fiber))
    }

    /// `E_i = (∂_i)^h` followed by `V_i = ∂_{y^i}`.
    pub fn adapted_frame(&self) -> Vec<(String, TensorField)> {
        let bc = self.base.coords();
        let mut out = Vec::with_capacity(2 * self.n());
        for i in 0..self.n() {
            let h = self
                .horizontal(&TensorField::coordinate(bc, i))
                .expect("coordinate field");
            out.push((format!("E{}", i + 1), h));
        }
        for i in 0..self.n() {
            out.push((format!("V{}", i + 1), TensorField::coordinate(self.coords(), self.n() + i)));
        }
        out
    }

    // 1-forms

    /// `ω^v = ω_i dx^i`.
    pub fn vertical_form(&self, w: &TensorField) -> Result<TensorField, ManifoldError> {
        self.expect_base(w, 0, 1)?;
        let comps = w.components().iter().cloned().chain(vec![Expr::zero(); self.n()]).collect();
        TensorField::covector(self.coords(), comps)
    }

    /// `ω^c = y^j ∂_j ω_i dx^i + ω_i dy^i`.
    pub fn complete_form(&self, w: &TensorField) -> Result<TensorField, ManifoldError> {
        self.expect_base(w, 0, 1)?;
        let top: Vec<Expr> = w.components().iter().map(|wi| self.transvect(wi)).collect();
        TensorField::covector(self.coords(), top.into_iter().chain(w.components().to_vec()).collect())
    }

    /// `ω^h = y^j Γ^k_{ji} ω_k dx^i + ω_i dy^i`.
    pub fn horizontal_form(&self, w: &TensorField) -> Result<TensorField, ManifoldError> {
        self.expect_base(w, 0, 1)?;
        let n = self.n();
        let ws = w.components();
        let top: Vec<Expr> = (0..n)
            .map(|i| {
                Expr::sum(
                    (0..n)
                        .filter(|&k| !ws[k].is_zero())
                        .map(|k| self.nonlinear(k, i) * ws[k].clone()),
                )
            })
            .collect();
        TensorField::covector(self.coords(), top.into_iter().chain(ws.to_vec()).collect())
    }

    // (1,1) fields

    /// `F^v = [[0, 0], [F, 0]]`.
    pub fn vertical_endo(&self, f: &TensorField) -> Result<TensorField, ManifoldError> {
        self.expect_base(f, 1, 1)?;
        let comps = self.block_rows(
            |_, _| Expr::zero(),
            |_, _| Expr::zero(),
            |i, j| f.get(&[i, j]).clone(),
            |_, _| Expr::zero(),
        );
        TensorField::new(self.coords(), 1, 1, comps)
    }

    /// `F^c = [[F, 0], [y^k ∂_k F, F]]`.
    pub fn complete_endo(&self, f: &TensorField) -> Result<TensorField, ManifoldError> {
        self.expect_base(f, 1, 1)?;
        let comps = self.block_rows(
            |i, j| f.get(&[i, j]).clone(),
            |_, _| Expr::zero(),
            |i, j| self.transvect(f.get(&[i, j])),
            |i, j| f.get(&[i, j]).clone(),
        );
        TensorField::new(self.coords(), 1, 1, comps)
    }

    /// `F^h = [[F, 0], [B, F]]` with `B^l_k = y^j (F^l_i Γ^i_{kj} − Γ^l_{mj} F^m_k)`.
    pub fn horizontal_endo(&self, f: &TensorField) -> Result<TensorField, ManifoldError> {
        self.expect_base(f, 1, 1)?;
        let n = self.n();
        let comps = self.block_rows(
            |i, j| f.get(&[i, j]).clone(),
            |_, _| Expr::zero(),
            |l, k| {
                Expr::sum((0..n).flat_map(|m| {
                    [
                        f.get(&[l, m]) * &self.nonlinear(m, k),
                        -(self.nonlinear(l, m) * f.get(&[m, k]).clone()),
                    ]
                }))
            },
            |i, j| f.get(&[i, j]).clone(),
        );
        TensorField::new(self.coords(), 1, 1, comps)
    }

    // metrics

    /// `g^c = [[y^k ∂_k g, g], [g, 0]]`.
    pub fn complete_metric(&self, g: &TensorField) -> Result<TensorField, ManifoldError> {
        self.expect_base(g, 0, 2)?;
        let comps = self.block_rows(
            |i, j| self.transvect(g.get(&[i, j])),
            |i, j| g.get(&[i, j]).clone(),
            |i, j| g.get(&[i, j]).clone(),
            |_, _| Expr::zero(),
        );
        TensorField::new(self.coords(), 0, 2, comps)
    }

    /// `g^h` with `xx_{ab} = y^k (g_{aj} Γ^j_{kb} + g_{ib} Γ^i_{ka})`, `xy = yx = g`, `yy = 0`.
    ///
    /// Pairs `X^h, Y^h` to zero and `X^h, Y^v` to `g(X,Y)^v`.
    pub fn horizontal_metric(&self, g: &TensorField) -> Result<TensorField, ManifoldError> {
        self.expect_base(g, 0, 2)?;
        let n = self.n();
        let comps = self.block_rows(
            |a, b| {
                Expr::sum((0..n).flat_map(|j| {
                    [
                        g.get(&[a, j]) * &self.nonlinear(j, b),
                        g.get(&[j, b]) * &self.nonlinear(j, a),
                    ]
                }))
            },
            |i, j| g.get(&[i, j]).clone(),
            |i, j| g.get(&[i, j]).clone(),
            |_, _| Expr::zero(),
        );
        TensorField::new(self.coords(), 0, 2, comps)
    }

    /// Sasaki metric `G(X^h,Y^h) = G(X^v,Y^v) = g(X,Y)^v`, `G(X^h,Y^v) = 0`.
    pub fn sasaki_metric(&self) -> TensorField {
        let n = self.n();
        let g = |i: usize, j: usize| self.base.g(i, j).clone();
        // xy_{a,m} = g_{lm} N^l_a
        let xy = |a: usize, m: usize| Expr::sum((0..n).map(|l| g(l, m) * self.nonlinear(l, a)));
        let comps = self.block_rows(
            |a, b| {
                let mut terms = vec![g(a, b)];
                for l in 0..n {
                    for m in 0..n {
                        terms.push(Expr::product([
                            g(l, m),
                            self.nonlinear(l, a),
                            self.nonlinear(m, b),
                        ]));
                    }
                }
                Expr::sum(terms)
            },
            xy,
            |m, a| xy(a, m),
            g,
        );
        TensorField::new(self.coords(), 0, 2, comps).expect("block layout")
    }

    // operators

    /// `γF = (F y)^v` for a (1,1) field `F`.
    pub fn gamma_endo(&self, f: &TensorField) -> Result<TensorField, ManifoldError> {
        self.expect_base(f, 1, 1)?;
        let n = self.n();
        let fiber = (0..n)
            .map(|i| Expr::sum((0..n).map(|j| f.get(&[i, j]) * &Expr::y(j + 1))))
            .collect();
        Ok(self.block_vector(vec![Expr::zero(); n], fiber))
    }

    /// `γR(X,Y) = (R(X,Y)y)^v`.
    pub fn gamma_curvature(
        &self,
        x: &TensorField,
        y: &TensorField,
    ) -> Result<TensorField, ManifoldError> {
        self.expect_base(x, 1, 0)?;
        self.expect_base(y, 1, 0)?;
        let n = self.n();
        let (xs, ys) = (x.components(), y.components());
        let rxy = TensorField::from_fn(self.base.coords(), 1, 1, |ix| {
            let (l, k) = (ix[0], ix[1]);
            let mut terms = Vec::new();
            for i in (0..n).filter(|&i| !xs[i].is_zero()) {
                for j in (0..n).filter(|&j| !ys[j].is_zero()) {
                    let r = self.curvature.get(&[l, i, j, k]);
                    if !r.is_zero() {
                        terms.push(Expr::product([r.clone(), xs[i].clone(), ys[j].clone()]));
                    }
                }
            }
            Expr::sum(terms)
        });
        self.gamma_endo(&rxy)
    }

    /// `γR(·, X, Y)`: the vertical field `(R(y, X)Y)^v`.
    pub fn gamma_curvature_first(
        &self,
        x: &TensorField,
        y: &TensorField,
    ) -> Result<TensorField, ManifoldError> {
        self.expect_base(x, 1, 0)?;
        self.expect_base(y, 1, 0)?;
        let n = self.n();
        let fiber = (0..n)
            .map(|l| {
                let mut terms = Vec::new();
                for i in 0..n {
                    for j in (0..n).filter(|&j| !x.components()[j].is_zero()) {
                        for k in (0..n).filter(|&k| !y.components()[k].is_zero()) {
                            let r = self.curvature.get(&[l, i, j, k]);
                            if !r.is_zero() {
                                terms.push(Expr::product([
                                    r.clone(),
                                    Expr::y(i + 1),
                                    x.components()[j].clone(),
                                    y.components()[k].clone(),
                                ]));
                            }
                        }
                    }
                }
                Expr::sum(terms)
            })
            .collect();
        Ok(self.block_vector(vec![Expr::zero(); n], fiber))
    }

    // connections

    /// Complete lift `∇^c`: `Γ̃^k_{ij} = Γ^k_{ij}`, `Γ̃^{n+k}_{ij} = y^l ∂_l Γ^k_{ij}`,
    /// `Γ̃^{n+k}_{i,n+j} = Γ̃^{n+k}_{n+i,j} = Γ^k_{ij}`, all others zero.
    pub fn complete_connection(&self) -> Connection {
        let n = self.n();
        Connection::from_fn(self.coords(), |k, i, j| match (k < n, i < n, j < n) {
            (true, true, true) => self.gamma(k, i, j).clone(),
            (false, true, true) => self.transvect(self.gamma(k - n, i, j)),
            (false, true, false) => self.gamma(k - n, i, j - n).clone(),
            (false, false, true) => self.gamma(k - n, i - n, j).clone(),
            _ => Expr::zero(),
        })
    }

    /// Horizontal lift `∇^h`: as `∇^c` except
    /// `Γ̃^{n+l}_{ij} = y^k (∂_i Γ^l_{kj} + Γ^l_{im} Γ^m_{kj} − Γ^m_{ij} Γ^l_{km})`.
    pub fn horizontal_connection(&self) -> Connection {
        let n = self.n();
        let c = self.coords();
        Connection::from_fn(c, |k, i, j| match (k < n, i < n, j < n) {
            (true, true, true) => self.gamma(k, i, j).clone(),
            (false, true, true) => {
                let l = k - n;
                Expr::sum((0..n).map(|kk| {
                    let mut terms = vec![c.partial(self.gamma(l, kk, j), i)];
                    for m in 0..n {
                        terms.push(self.gamma(l, i, m) * self.gamma(m, kk, j));
                        terms.push(-(self.gamma(m, i, j) * self.gamma(l, kk, m)));
                    }
                    Expr::y(kk + 1) * Expr::sum(terms)
                }))
            }
            (false, true, false) => self.gamma(k - n, i, j - n).clone(),
            (false, false, true) => self.gamma(k - n, i - n, j).clone(),
            _ => Expr::zero(),
        })
    }
}

/// Base objects whose lifts are checked against the lift laws.
#[derive(Clone, Debug)]
pub struct LiftSample {
    pub vectors: Vec<(String, TensorField)>,
    pub functions: Vec<(String, Expr)>,
    pub forms: Vec<(String, TensorField)>,
    pub endos: Vec<(String, TensorField)>,
}

impl TangentBundle {
    /// Evaluates every lift law on the sample, one verdict per family.
    pub fn check_lift_laws(&self, s: &LiftSample, plan: &Plan) -> Result<Vec<Verdict>, ManifoldError> {
        let lc = &self.lc;
        let g = self.base.metric();
        let c = self.coords();
        let zero_v = TensorField::zeros(c, 1, 0);
        let mut lifted = Vec::with_capacity(s.vectors.len());
        for (name, x) in &s.vectors {
            lifted.push((name.as_str(), x, self.vertical(x)?, self.complete(x)?, self.horizontal(x)?));
        }

        let mut fns = Vec::new();
        for (fname, f) in &s.functions {
            let (fv, fc) = (self.vertical_fn(f), self.complete_fn(f));
            fns.push(Comparison::scalar("f^h = 0", &[fname], self.horizontal_fn(f), Expr::zero()));
            for (xname, x, xv, xc, xh) in &lifted {
                let xf = x.derive(f)?;
                let fr = [*xname, fname.as_str()];
                fns.push(Comparison::scalar("X^v f^v = 0", &fr, xv.derive(&fv)?, Expr::zero()));
                fns.push(Comparison::scalar("X^v f^c = (Xf)^v", &fr, xv.derive(&fc)?, xf.clone()));
                fns.push(Comparison::scalar("X^c f^v = (Xf)^v", &fr, xc.derive(&fv)?, xf.clone()));
                fns.push(Comparison::scalar("X^c f^c = (Xf)^c", &fr, xc.derive(&fc)?, self.complete_fn(&xf)));
                fns.push(Comparison::scalar("X^h f^v = (Xf)^v", &fr, xh.derive(&fv)?, xf));
            }
        }

        let mut forms = Vec::new();
        for (wname, w) in &s.forms {
            let (wv, wc, wh) = (self.vertical_form(w)?, self.complete_form(w)?, self.horizontal_form(w)?);
            for (xname, x, xv, xc, xh) in &lifted {
                let wx = w.pair(x)?;
                let fr = [wname.as_str(), *xname];
                forms.push(Comparison::scalar("w^v(X^v) = 0", &fr, wv.pair(xv)?, Expr::zero()));
                forms.push(Comparison::scalar("w^v(X^c) = w(X)^v", &fr, wv.pair(xc)?, wx.clone()));
                forms.push(Comparison::scalar("w^v(X^h) = w(X)^v", &fr, wv.pair(xh)?, wx.clone()));
                forms.push(Comparison::scalar("w^c(X^v) = w(X)^v", &fr, wc.pair(xv)?, wx.clone()));
                forms.push(Comparison::scalar("w^c(X^c) = w(X)^c", &fr, wc.pair(xc)?, self.complete_fn(&wx)));
                forms.push(Comparison::scalar("w^h(X^v) = w(X)^v", &fr, wh.pair(xv)?, wx));
                forms.push(Comparison::scalar("w^h(X^h) = 0", &fr, wh.pair(xh)?, Expr::zero()));
            }
        }

        let mut endos = Vec::new();
        for (fname, f) in &s.endos {
            let (fv, fc, fh) = (self.vertical_endo(f)?, self.complete_endo(f)?, self.horizontal_endo(f)?);
            let f2 = f.compose(f)?;
            let f3 = f2.compose(f)?;
            let fr = [fname.as_str()];
            endos.push(Comparison::fields("(F^c)^2 = (F^2)^c", &fr, &fc.compose(&fc)?, &self.complete_endo(&f2)?));
            endos.push(Comparison::fields("(F^c)^3 = (F^3)^c", &fr, &fc.compose(&fc)?.compose(&fc)?, &self.complete_endo(&f3)?));
            endos.push(Comparison::fields("(F^h)^2 = (F^2)^h", &fr, &fh.compose(&fh)?, &self.horizontal_endo(&f2)?));
            for (xname, x, xv, xc, xh) in &lifted {
                let fx = f.apply(x)?;
                let fr = [fname.as_str(), *xname];
                endos.push(Comparison::fields("F^c X^c = (FX)^c", &fr, &fc.apply(xc)?, &self.complete(&fx)?));
                endos.push(Comparison::fields("F^c X^v = (FX)^v", &fr, &fc.apply(xv)?, &self.vertical(&fx)?));
                endos.push(Comparison::fields("F^h X^h = (FX)^h", &fr, &fh.apply(xh)?, &self.horizontal(&fx)?));
                endos.push(Comparison::fields("F^h X^v = (FX)^v", &fr, &fh.apply(xv)?, &self.vertical(&fx)?));
                endos.push(Comparison::fields("F^v X^c = (FX)^v", &fr, &fv.apply(xc)?, &self.vertical(&fx)?));
                endos.push(Comparison::fields("F^v X^v = 0", &fr, &fv.apply(xv)?, &zero_v));
            }
        }

        let gc = self.complete_metric(g)?;
        let gh = self.horizontal_metric(g)?;
        let sasaki = self.sasaki_metric();
        let (mut metrics, mut brackets, mut conn_c, mut conn_h) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        let nc = self.complete_connection();
        let nh = self.horizontal_connection();
        for (a, x, xv, xc, xh) in &lifted {
            for (b, y, yv, yc, yh) in &lifted {
                let fr = [*a, *b];
                let gxy = g.eval2(x, y)?;
                metrics.push(Comparison::scalar("g^c(X^c,Y^c) = g(X,Y)^c", &fr, gc.eval2(xc, yc)?, self.complete_fn(&gxy)));
                metrics.push(Comparison::scalar("g^c(X^c,Y^v) = g(X,Y)^v", &fr, gc.eval2(xc, yv)?, gxy.clone()));
                metrics.push(Comparison::scalar("g^c(X^v,Y^v) = 0", &fr, gc.eval2(xv, yv)?, Expr::zero()));
                metrics.push(Comparison::scalar("g^h(X^h,Y^h) = 0", &fr, gh.eval2(xh, yh)?, Expr::zero()));
                metrics.push(Comparison::scalar("g^h(X^h,Y^v) = g(X,Y)^v", &fr, gh.eval2(xh, yv)?, gxy.clone()));
                metrics.push(Comparison::scalar("G(X^h,Y^h) = g(X,Y)^v", &fr, sasaki.eval2(xh, yh)?, gxy.clone()));
                metrics.push(Comparison::scalar("G(X^h,Y^v) = 0", &fr, sasaki.eval2(xh, yv)?, Expr::zero()));
                metrics.push(Comparison::scalar("G(X^v,Y^v) = g(X,Y)^v", &fr, sasaki.eval2(xv, yv)?, gxy));

                let xy = lie_bracket(x, y)?;
                let nxy = lc.nabla(x, y)?;
                let nyx = lc.nabla(y, x)?;
                brackets.push(Comparison::fields("[X^v,Y^v] = 0", &fr, &lie_bracket(xv, yv)?, &zero_v));
                brackets.push(Comparison::fields("[X^v,Y^c] = [X,Y]^v", &fr, &lie_bracket(xv, yc)?, &self.vertical(&xy)?));
                brackets.push(Comparison::fields("[X^c,Y^c] = [X,Y]^c", &fr, &lie_bracket(xc, yc)?, &self.complete(&xy)?));
                brackets.push(Comparison::fields("[X^h,Y^v] = (nabla_X Y)^v", &fr, &lie_bracket(xh, yv)?, &self.vertical(&nxy)?));
                brackets.push(Comparison::fields(
                    "[X^v,Y^h] = -(nabla_Y X)^v",
                    &fr,
                    &lie_bracket(xv, yh)?,
                    &self.vertical(&nyx)?.scale(&Expr::int(-1)),
                ));
                brackets.push(Comparison::fields(
                    "[X^h,Y^h] = [X,Y]^h - gammaR(X,Y)",
                    &fr,
                    &lie_bracket(xh, yh)?,
                    &self.horizontal(&xy)?.sub(&self.gamma_curvature(x, y)?)?,
                ));

                conn_c.push(Comparison::fields("nabla^c_{X^c} Y^c = (nabla_X Y)^c", &fr, &nc.nabla(xc, yc)?, &self.complete(&nxy)?));
                conn_c.push(Comparison::fields("nabla^c_{X^c} Y^v = (nabla_X Y)^v", &fr, &nc.nabla(xc, yv)?, &self.vertical(&nxy)?));
                conn_c.push(Comparison::fields("nabla^c_{X^v} Y^c = (nabla_X Y)^v", &fr, &nc.nabla(xv, yc)?, &self.vertical(&nxy)?));
                conn_c.push(Comparison::fields("nabla^c_{X^v} Y^v = 0", &fr, &nc.nabla(xv, yv)?, &zero_v));

                conn_h.push(Comparison::fields("nabla^h_{X^h} Y^h = (nabla_X Y)^h", &fr, &nh.nabla(xh, yh)?, &self.horizontal(&nxy)?));
                conn_h.push(Comparison::fields("nabla^h_{X^h} Y^v = (nabla_X Y)^v", &fr, &nh.nabla(xh, yv)?, &self.vertical(&nxy)?));
                conn_h.push(Comparison::fields("nabla^h_{X^v} Y^h = 0", &fr, &nh.nabla(xv, yh)?, &zero_v));
                conn_h.push(Comparison::fields("nabla^h_{X^v} Y^v = 0", &fr, &nh.nabla(xv, yv)?, &zero_v));
            }
        }

        Ok(vec![
            plan.check("lift-functions", &fns),
            plan.check("lift-forms", &forms),
            plan.check("lift-endomorphisms", &endos),
            plan.check("lift-metrics", &metrics),
            plan.check("lift-brackets", &brackets),
            plan.check("complete-connection", &conn_c),
            plan.check("horizontal-connection", &conn_h),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::parse;
    use crate::testutil::{assert_fields_eq, assert_vanishes, h3, h3_structure, plan};
    use crate::verify::Mode;

    fn base_vec(s: [&str; 3]) -> TensorField {
        TensorField::vector(Coords::Base(3), s.iter().map(|e| parse(e, 3).unwrap()).collect()).unwrap()
    }

    fn sample() -> LiftSample {
        let s = h3_structure();
        let c = Coords::Base(3);
        let p = |e: &str| parse(e, 3).unwrap();
        LiftSample {
            vectors: vec![
                ("d/dx1".into(), TensorField::coordinate(c, 0)),
                ("xi".into(), s.xi().clone()),
                ("X".into(), base_vec(["x2", "x1*x3", "x3^2"])),
            ],
            functions: vec![("x1*x3".into(), p("x1*x3")), ("1/x3".into(), p("1/x3"))],
            forms: vec![
                ("eta".into(), s.eta().clone()),
                ("w".into(), TensorField::covector(c, vec![p("x3"), p("x1*x2"), p("1")]).unwrap()),
            ],
            endos: vec![
                ("phi".into(), s.phi().clone()),
                (
                    "F".into(),
                    TensorField::endomorphism(
                        c,
                        vec![
                            vec![p("x2"), p("1"), p("0")],
                            vec![p("0"), p("x3"), p("x1")],
                            vec![p("1"), p("0"), p("-1")],
                        ],
                    )
                    .unwrap(),
                ),
            ],
        }
    }

    #[test]
    fn lift_laws_hold_on_hyperbolic_space() {
        let tm = TangentBundle::new(h3());
        for mode in [Mode::Exact, Mode::Float] {
            let vs = tm.check_lift_laws(&sample(), &plan(3, mode)).unwrap();
            for v in &vs {
                assert!(v.passed(), "{} failed: {:?}", v.id, v.witnesses.first());
            }
        }
    }

    #[test]
    fn minus_sign_complete_lift_breaks_derivation_law() {
        let tm = TangentBundle::new(h3());
        let x = base_vec(["x2", "x1*x3", "x3^2"]);
        let f = parse("x1*x3", 3).unwrap();
        let xf = x.derive(&f).unwrap();
        let plus = tm.complete_signed(&x, FiberSign::Plus).unwrap();
        assert_vanishes(&(plus.derive(&tm.complete_fn(&f)).unwrap() - tm.complete_fn(&xf)), 3);
        let minus = tm.complete_signed(&x, FiberSign::Minus).unwrap();
        let residual = minus.derive(&tm.complete_fn(&f)).unwrap() - tm.complete_fn(&xf);
        let ev = &crate::testutil::points(3, 1, 1)[0];
        assert!(!ev.eval(&residual).unwrap().is_zero());
    }

    #[test]
    fn horizontal_lift_of_a_function_vanishes() {
        let tm = TangentBundle::new(h3());
        for f in ["x1", "x1*x2^2", "1/x3"] {
            assert_vanishes(&tm.horizontal_fn(&parse(f, 3).unwrap()), 3);
        }
    }

    #[test]
    fn horizontal_lift_on_hyperbolic_space_by_hand() {
        // (d/dx1)^h = d/dx1 − y^j Γ^l_{1j} d/dy^l = d/dx1 + (y3/x3) d/dy1 − (y1/x3) d/dy3
        let tm = TangentBundle::new(h3());
        let h = tm.horizontal(&TensorField::coordinate(Coords::Base(3), 0)).unwrap();
        let p = |e: &str| parse(e, 3).unwrap();
        let expected = TensorField::vector(
            tm.coords(),
            vec![p("1"), p("0"), p("0"), p("y3/x3"), p("0"), p("-y1/x3")],
        )
        .unwrap();
        assert_fields_eq(&h, &expected);
    }

    #[test]
    fn curvature_term_of_horizontal_bracket_is_nontrivial() {
        // for coordinate fields [X,Y] = 0, so [X^h,Y^h] = −γR(X,Y) = −(R(X,Y)y)^v
        let tm = TangentBundle::new(h3());
        let c = Coords::Base(3);
        let (e1, e3) = (TensorField::coordinate(c, 0), TensorField::coordinate(c, 2));
        let br = lie_bracket(&tm.horizontal(&e1).unwrap(), &tm.horizontal(&e3).unwrap()).unwrap();
        // R(∂1,∂3)y = −(g(∂3,y)∂1 − g(∂1,y)∂3) = (−y3 ∂1 + y1 ∂3)/x3²
        let p = |e: &str| parse(e, 3).unwrap();
        let expected = TensorField::vector(
            tm.coords(),
            vec![p("0"), p("0"), p("0"), p("y3/x3^2"), p("0"), p("-y1/x3^2")],
        )
        .unwrap();
        assert_fields_eq(&br, &expected);
    }

    #[test]
    fn complete_connection_is_torsion_free_and_horizontal_one_is_not() {
        let tm = TangentBundle::new(h3());
        assert_fields_eq(&tm.complete_connection().torsion(), &TensorField::zeros(tm.coords(), 1, 2));
        // T^h(X^h, Y^h) = γR(X, Y)
        let c = Coords::Base(3);
        let (e1, e3) = (TensorField::coordinate(c, 0), TensorField::coordinate(c, 2));
        let t = crate::manifold::apply_pair(
            &tm.horizontal_connection().torsion(),
            &tm.horizontal(&e1).unwrap(),
            &tm.horizontal(&e3).unwrap(),
        )
        .unwrap();
        assert_fields_eq(&t, &tm.gamma_curvature(&e1, &e3).unwrap());
    }

    #[test]
    fn horizontal_metric_agrees_with_complete_metric_for_levi_civita() {
        let tm = TangentBundle::new(h3());
        let g = tm.base().metric();
        assert_fields_eq(&tm.horizontal_metric(g).unwrap(), &tm.complete_metric(g).unwrap());
    }

    #[test]
    fn adapted_frame_spans() {
        let tm = TangentBundle::new(h3());
        let frame = tm.adapted_frame();
        assert_eq!(frame.len(), 6);
        let rows: Vec<Vec<Expr>> = frame.iter().map(|(_, v)| v.components().to_vec()).collect();
        // the frame matrix is unipotent lower-triangular in (x, y) blocks
        let det = crate::manifold::determinant_of(&rows);
        assert_vanishes(&(det - Expr::one()), 3);
    }

    #[test]
    fn gamma_of_identity_is_the_liouville_field() {
        let tm = TangentBundle::new(h3());
        let v = tm.gamma_endo(&TensorField::identity(Coords::Base(3))).unwrap();
        let expected: Vec<Expr> = (0..6).map(|a| if a < 3 { Expr::zero() } else { Expr::y(a - 2) }).collect();
        assert_fields_eq(&v, &TensorField::vector(tm.coords(), expected).unwrap());
    }
}
