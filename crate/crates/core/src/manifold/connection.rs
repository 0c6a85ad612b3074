use crate::symcore::Expr;

use super::{ChartedManifold, Coords, ManifoldError, TensorField};

/// Linear connection given by `∇_{∂_i} ∂_j = Γ^k_{ij} ∂_k`.
#[derive(Clone, Debug)]
pub struct Connection {
    coords: Coords,
    gamma: Vec<Expr>,
}

impl Connection {
    /// `gamma[k][i][j]` flattened as `(k * d + i) * d + j`.
    pub fn new(coords: Coords, gamma: Vec<Expr>) -> Result<Self, ManifoldError> {
        let d = coords.dim();
        if gamma.len() != d * d * d {
            return Err(ManifoldError::Shape(format!(
                "connection in dimension {d} needs {} coefficients, got {}",
                d * d * d,
                gamma.len()
            )));
        }
        Ok(Self { coords, gamma })
    }

    pub fn from_fn(coords: Coords, mut f: impl FnMut(usize, usize, usize) -> Expr) -> Self {
        let d = coords.dim();
        let mut gamma = Vec::with_capacity(d * d * d);
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    gamma.push(f(k, i, j));
                }
            }
        }
        Self { coords, gamma }
    }

    pub fn coords(&self) -> Coords {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    pub fn gamma(&self, k: usize, i: usize, j: usize) -> &Expr {
        let d = self.dim();
        &self.gamma[(k * d + i) * d + j]
    }

    /// `∇_X Y`.
    pub fn nabla(&self, x: &TensorField, y: &TensorField) -> Result<TensorField, ManifoldError> {
        x.expect_valence(1, 0)?;
        y.expect_valence(1, 0)?;
        if x.coords() != self.coords || y.coords() != self.coords {
            return Err(ManifoldError::Shape("connection and fields on different charts".into()));
        }
        let d = self.dim();
        let xs = x.components();
        let ys = y.components();
        let mut out = Vec::with_capacity(d);
        for k in 0..d {
            let mut terms = vec![x.derive(&ys[k])?];
            for i in (0..d).filter(|&i| !xs[i].is_zero()) {
                for j in (0..d).filter(|&j| !ys[j].is_zero()) {
                    let g = self.gamma(k, i, j);
                    if !g.is_zero() {
                        terms.push(Expr::product([g.clone(), xs[i].clone(), ys[j].clone()]));
                    }
                }
            }
            out.push(Expr::sum(terms));
        }
        TensorField::vector(self.coords, out)
    }

    /// `T^k_{ij} = Γ^k_{ij} − Γ^k_{ji}`.
    pub fn torsion(&self) -> TensorField {
        TensorField::from_fn(self.coords, 1, 2, |i| {
            self.gamma(i[0], i[1], i[2]) - self.gamma(i[0], i[2], i[1])
        })
    }

    /// `R^l_{ijk}` with `R(∂_i, ∂_j) ∂_k = R^l_{ijk} ∂_l` and
    /// `R(X,Y)Z = ∇_X ∇_Y Z − ∇_Y ∇_X Z − ∇_{[X,Y]} Z`.
    pub fn curvature(&self) -> TensorField {
        let d = self.dim();
        let c = self.coords;
        TensorField::from_fn(c, 1, 3, |idx| {
            let (l, i, j, k) = (idx[0], idx[1], idx[2], idx[3]);
            let mut terms = vec![
                c.partial(self.gamma(l, j, k), i),
                -c.partial(self.gamma(l, i, k), j),
            ];
            for m in 0..d {
                terms.push(self.gamma(l, i, m) * self.gamma(m, j, k));
                terms.push(-(self.gamma(l, j, m) * self.gamma(m, i, k)));
            }
            Expr::sum(terms)
        })
    }

    /// `∇T` with the differentiation slot appended as the last lower index.
    ///
    /// Supported valences: (0,0), (1,0), (0,1), (1,1), (0,2).
    pub fn covariant_derivative(&self, t: &TensorField) -> Result<TensorField, ManifoldError> {
        if t.coords() != self.coords {
            return Err(ManifoldError::Shape("connection and field on different charts".into()));
        }
        let d = self.dim();
        let c = self.coords;
        let g = |k, i, j| self.gamma(k, i, j).clone();
        let sum = |f: &dyn Fn(usize) -> Expr| Expr::sum((0..d).map(f));
        let out = match t.valence() {
            (0, 0) => TensorField::from_fn(c, 0, 1, |i| c.partial(t.get(&[]), i[0])),
            (1, 0) => TensorField::from_fn(c, 1, 1, |ix| {
                let (k, m) = (ix[0], ix[1]);
                c.partial(t.get(&[k]), m) + sum(&|j| g(k, m, j) * t.get(&[j]).clone())
            }),
            (0, 1) => TensorField::from_fn(c, 0, 2, |ix| {
                let (i, m) = (ix[0], ix[1]);
                c.partial(t.get(&[i]), m) - sum(&|j| g(j, m, i) * t.get(&[j]).clone())
            }),
            (1, 1) => TensorField::from_fn(c, 1, 2, |ix| {
                let (k, i, m) = (ix[0], ix[1], ix[2]);
                c.partial(t.get(&[k, i]), m) + sum(&|j| g(k, m, j) * t.get(&[j, i]).clone())
                    - sum(&|j| g(j, m, i) * t.get(&[k, j]).clone())
            }),
            (0, 2) => TensorField::from_fn(c, 0, 3, |ix| {
                let (i, j, m) = (ix[0], ix[1], ix[2]);
                c.partial(t.get(&[i, j]), m)
                    - sum(&|l| g(l, m, i) * t.get(&[l, j]).clone())
                    - sum(&|l| g(l, m, j) * t.get(&[i, l]).clone())
            }),
            (k, l) => {
                return Err(ManifoldError::Capability(format!(
                    "covariant derivative of valence ({k},{l}) is not supported"
                )))
            }
        };
        Ok(out)
    }

    /// `∇_X T`, same valence as `T`.
    pub fn covariant_along(
        &self,
        x: &TensorField,
        t: &TensorField,
    ) -> Result<TensorField, ManifoldError> {
        self.covariant_derivative(t)?.contract_last(x)
    }
}

/// Levi-Civita connection:
/// `Γ^k_{ij} = ½ g^{kl} (∂_i g_{jl} + ∂_j g_{il} − ∂_l g_{ij})`.
pub fn christoffel(m: &ChartedManifold) -> Connection {
    let n = m.dim();
    let c = m.coords();
    let ginv = m.inverse_metric();
    // first-kind symbols Γ_{l,ij}
    let first: Vec<Expr> = (0..n * n * n)
        .map(|flat| {
            let (l, i, j) = (flat / (n * n), (flat / n) % n, flat % n);
            Expr::sum([
                c.partial(m.g(j, l), i),
                c.partial(m.g(i, l), j),
                -c.partial(m.g(i, j), l),
            ])
        })
        .collect();
    Connection::from_fn(c, |k, i, j| {
        let s = Expr::sum((0..n).filter(|&l| !ginv.get(&[k, l]).is_zero()).map(|l| {
            ginv.get(&[k, l]) * &first[(l * n + i) * n + j]
        }));
        s.scale(crate::symcore::rat(1, 2))
    })
}

/// `R(X,Y)Z` from curvature components.
pub fn apply_curvature(
    r: &TensorField,
    x: &TensorField,
    y: &TensorField,
    z: &TensorField,
) -> Result<TensorField, ManifoldError> {
    r.expect_valence(1, 3)?;
    r.contract_last(z)?.contract_last(y)?.contract_last(x)
}

/// `T(X, Y)` for a (1,2) field.
pub fn apply_pair(
    t: &TensorField,
    x: &TensorField,
    y: &TensorField,
) -> Result<TensorField, ManifoldError> {
    t.expect_valence(1, 2)?;
    t.contract_last(y)?.contract_last(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::{parse, Assignment, Evaluator};
    use crate::testutil::{assert_fields_eq, assert_vanishes, h3};

    fn delta(a: usize, b: usize) -> Expr {
        if a == b {
            Expr::one()
        } else {
            Expr::zero()
        }
    }

    #[test]
    fn hyperbolic_christoffel_symbols() {
        let lc = christoffel(&h3());
        // hand-derived: Γ^3_11 = Γ^3_22 = 1/x3, Γ^3_33 = Γ^1_13 = Γ^2_23 = -1/x3
        let inv = parse("1/x3", 3).unwrap();
        let expected = |k: usize, i: usize, j: usize| -> Expr {
            match (k, i.min(j), i.max(j)) {
                (2, 0, 0) | (2, 1, 1) => inv.clone(),
                (2, 2, 2) | (0, 0, 2) | (1, 1, 2) => -inv.clone(),
                _ => Expr::zero(),
            }
        };
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    assert_vanishes(&(lc.gamma(k, i, j) - &expected(k, i, j)), 3);
                }
            }
        }
        assert_fields_eq(&lc.torsion(), &TensorField::zeros(lc.coords(), 1, 2));
    }

    #[test]
    fn hyperbolic_space_has_constant_curvature_minus_one() {
        let m = h3();
        let r = christoffel(&m).curvature();
        // R(X,Y)Z = -(g(Y,Z)X - g(X,Z)Y)
        let expected = TensorField::from_fn(m.coords(), 1, 3, |ix| {
            let (l, i, j, k) = (ix[0], ix[1], ix[2], ix[3]);
            -(m.g(j, k) * &delta(l, i) - m.g(i, k) * &delta(l, j))
        });
        assert_fields_eq(&r, &expected);
    }

    #[test]
    fn metric_is_parallel() {
        let m = h3();
        let lc = christoffel(&m);
        let dg = lc.covariant_derivative(m.metric()).unwrap();
        assert_fields_eq(&dg, &TensorField::zeros(m.coords(), 0, 3));
    }

    #[test]
    fn curvature_matches_second_covariant_derivatives() {
        // R(X,Y)Z = ∇X∇YZ − ∇Y∇XZ − ∇[X,Y]Z on non-coordinate fields
        let m = h3();
        let lc = christoffel(&m);
        let c = m.coords();
        let v = |s: [&str; 3]| {
            TensorField::vector(c, s.iter().map(|e| parse(e, 3).unwrap()).collect()).unwrap()
        };
        let x = v(["x2", "1", "x3"]);
        let y = v(["0", "x1*x3", "2"]);
        let z = v(["x3^2", "x1", "-1"]);
        let lhs = apply_curvature(&lc.curvature(), &x, &y, &z).unwrap();
        let br = crate::manifold::lie_bracket(&x, &y).unwrap();
        let rhs = lc
            .nabla(&x, &lc.nabla(&y, &z).unwrap())
            .unwrap()
            .sub(&lc.nabla(&y, &lc.nabla(&x, &z).unwrap()).unwrap())
            .unwrap()
            .sub(&lc.nabla(&br, &z).unwrap())
            .unwrap();
        assert_fields_eq(&lhs, &rhs);
    }

    /// Christoffel symbols against central differences of the metric and a
    /// numerically inverted matrix.
    #[test]
    fn christoffel_matches_finite_differences() {
        let p = |s: &str| parse(s, 3).unwrap();
        let m = ChartedManifold::new(
            vec!["x1".into(), "x2".into(), "x3".into()],
            vec![],
            vec![
                vec![p("1+x1^2"), p("x1*x2"), p("0")],
                vec![p("x1*x2"), p("2+x2^2"), p("x3")],
                vec![p("0"), p("x3"), p("3+x1*x3")],
            ],
        )
        .unwrap();
        let lc = christoffel(&m);
        let at = [0.3, -0.7, 1.1];
        let g_at = |x: [f64; 3]| -> [[f64; 3]; 3] {
            let ev = Evaluator::new(Assignment { base: x.to_vec(), fiber: vec![], sigma: 0.0 });
            let mut out = [[0.0; 3]; 3];
            for (i, row) in out.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    *v = ev.eval(m.g(i, j)).unwrap();
                }
            }
            out
        };
        let h = 1e-5;
        let dg: Vec<[[f64; 3]; 3]> = (0..3)
            .map(|a| {
                let (mut plus, mut minus) = (at, at);
                plus[a] += h;
                minus[a] -= h;
                let (gp, gm) = (g_at(plus), g_at(minus));
                let mut d = [[0.0; 3]; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        d[i][j] = (gp[i][j] - gm[i][j]) / (2.0 * h);
                    }
                }
                d
            })
            .collect();
        let ginv = invert3(g_at(at));
        let ev = Evaluator::new(Assignment { base: at.to_vec(), fiber: vec![], sigma: 0.0 });
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    let oracle: f64 = (0..3)
                        .map(|l| 0.5 * ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]))
                        .sum();
                    let got = ev.eval(lc.gamma(k, i, j)).unwrap();
                    assert!((got - oracle).abs() < 1e-7, "Γ^{k}_{i}{j}: {got} vs {oracle}");
                }
            }
        }
    }

    fn invert3(a: [[f64; 3]; 3]) -> [[f64; 3]; 3] {
        // Gauss-Jordan with partial pivoting
        let mut m = [[0.0; 6]; 3];
        for i in 0..3 {
            m[i][..3].copy_from_slice(&a[i]);
            m[i][3 + i] = 1.0;
        }
        for col in 0..3 {
            let piv = (col..3)
                .max_by(|&r, &s| m[r][col].abs().total_cmp(&m[s][col].abs()))
                .unwrap();
            m.swap(col, piv);
            let d = m[col][col];
            for v in m[col].iter_mut() {
                *v /= d;
            }
            for r in 0..3 {
                if r != col {
                    let f = m[r][col];
                    let pivot_row = m[col];
                    for (v, pv) in m[r].iter_mut().zip(pivot_row) {
                        *v -= f * pv;
                    }
                }
            }
        }
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            out[i].copy_from_slice(&m[i][3..]);
        }
        out
    }
}
