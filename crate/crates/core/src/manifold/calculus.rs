use crate::symcore::{rat, Expr};

use super::{ManifoldError, TensorField};

/// `[X, Y]^k = X(Y^k) − Y(X^k)`.
pub fn lie_bracket(x: &TensorField, y: &TensorField) -> Result<TensorField, ManifoldError> {
    x.expect_valence(1, 0)?;
    y.expect_valence(1, 0)?;
    x.expect_same_coords(y)?;
    let xs = x.components();
    let ys = y.components();
    let mut out = Vec::with_capacity(xs.len());
    for k in 0..xs.len() {
        out.push(x.derive(&ys[k])? - y.derive(&xs[k])?);
    }
    TensorField::vector(x.coords(), out)
}

/// `L_X T` for valences (0,0), (1,0), (0,1) and (1,1).
pub fn lie_derivative(x: &TensorField, t: &TensorField) -> Result<TensorField, ManifoldError> {
    x.expect_valence(1, 0)?;
    x.expect_same_coords(t)?;
    let c = x.coords();
    let d = c.dim();
    let xs = x.components();
    // dx[j][i] = ∂_i X^j
    let dx: Vec<Vec<Expr>> = xs
        .iter()
        .map(|xj| (0..d).map(|i| c.partial(xj, i)).collect())
        .collect();
    match t.valence() {
        (0, 0) => Ok(TensorField::from_fn(c, 0, 0, |_| {
            x.derive(t.get(&[])).expect("vector field")
        })),
        (1, 0) => lie_bracket(x, t),
        (0, 1) => {
            let mut out = Vec::with_capacity(d);
            for i in 0..d {
                let mut terms = vec![x.derive(t.get(&[i]))?];
                terms.extend((0..d).map(|j| t.get(&[j]) * &dx[j][i]));
                out.push(Expr::sum(terms));
            }
            TensorField::covector(c, out)
        }
        (1, 1) => {
            let mut out = Vec::with_capacity(d * d);
            for k in 0..d {
                for i in 0..d {
                    let mut terms = vec![x.derive(t.get(&[k, i]))?];
                    for j in 0..d {
                        terms.push(-(t.get(&[j, i]) * &dx[k][j]));
                        terms.push(t.get(&[k, j]) * &dx[j][i]);
                    }
                    out.push(Expr::sum(terms));
                }
            }
            TensorField::new(c, 1, 1, out)
        }
        (u, l) => Err(ManifoldError::Capability(format!(
            "Lie derivative of valence ({u},{l}) is not supported"
        ))),
    }
}

/// `dω_{ij} = ½(∂_i ω_j − ∂_j ω_i)`, so that
/// `dω(X,Y) = ½(X ω(Y) − Y ω(X) − ω([X,Y]))`.
pub fn exterior_derivative_1form(w: &TensorField) -> Result<TensorField, ManifoldError> {
    w.expect_valence(0, 1)?;
    let c = w.coords();
    Ok(TensorField::from_fn(c, 0, 2, |ix| {
        (c.partial(w.get(&[ix[1]]), ix[0]) - c.partial(w.get(&[ix[0]]), ix[1])).scale(rat(1, 2))
    }))
}

/// `dΦ_{ijk} = ⅓(∂_i Φ_{jk} + ∂_j Φ_{ki} + ∂_k Φ_{ij})`.
///
/// Only meaningful when `Φ` is antisymmetric; callers check that separately.
pub fn exterior_derivative_2form(phi: &TensorField) -> Result<TensorField, ManifoldError> {
    phi.expect_valence(0, 2)?;
    let c = phi.coords();
    Ok(TensorField::from_fn(c, 0, 3, |ix| {
        let (i, j, k) = (ix[0], ix[1], ix[2]);
        Expr::sum([
            c.partial(phi.get(&[j, k]), i),
            c.partial(phi.get(&[k, i]), j),
            c.partial(phi.get(&[i, j]), k),
        ])
        .scale(rat(1, 3))
    }))
}

/// `dω(X,Y) = ½(X ω(Y) − Y ω(X) − ω([X,Y]))` evaluated on vector fields.
pub fn coboundary_1form(
    w: &TensorField,
    x: &TensorField,
    y: &TensorField,
) -> Result<Expr, ManifoldError> {
    let s = x.derive(&w.pair(y)?)? - y.derive(&w.pair(x)?)? - w.pair(&lie_bracket(x, y)?)?;
    Ok(s.scale(rat(1, 2)))
}

/// `dΦ(X,Y,Z) = ⅓(XΦ(Y,Z) + YΦ(Z,X) + ZΦ(X,Y) − Φ([X,Y],Z) − Φ([Z,X],Y) − Φ([Y,Z],X))`.
pub fn coboundary_2form(
    phi: &TensorField,
    x: &TensorField,
    y: &TensorField,
    z: &TensorField,
) -> Result<Expr, ManifoldError> {
    let terms = [
        x.derive(&phi.eval2(y, z)?)?,
        y.derive(&phi.eval2(z, x)?)?,
        z.derive(&phi.eval2(x, y)?)?,
        -phi.eval2(&lie_bracket(x, y)?, z)?,
        -phi.eval2(&lie_bracket(z, x)?, y)?,
        -phi.eval2(&lie_bracket(y, z)?, x)?,
    ];
    Ok(Expr::sum(terms).scale(rat(1, 3)))
}

/// Nijenhuis torsion components
/// `N^k_{ij} = F^l_i ∂_l F^k_j − F^l_j ∂_l F^k_i − F^k_l (∂_i F^l_j − ∂_j F^l_i)`,
/// so that `N(X,Y) = [FX,FY] − F[FX,Y] − F[X,FY] + F²[X,Y]`.
pub fn nijenhuis(f: &TensorField) -> Result<TensorField, ManifoldError> {
    f.expect_valence(1, 1)?;
    let c = f.coords();
    let d = c.dim();
    // df[l][k][j] = ∂_l F^k_j
    let df: Vec<TensorField> = (0..d).map(|l| f.partial(l)).collect();
    Ok(TensorField::from_fn(c, 1, 2, |ix| {
        let (k, i, j) = (ix[0], ix[1], ix[2]);
        let mut terms = Vec::new();
        for l in 0..d {
            terms.push(f.get(&[l, i]) * df[l].get(&[k, j]));
            terms.push(-(f.get(&[l, j]) * df[l].get(&[k, i])));
            terms.push(-(f.get(&[k, l]) * &(df[i].get(&[l, j]) - df[j].get(&[l, i]))));
        }
        Expr::sum(terms)
    }))
}

/// `N_F(X, Y)` computed from brackets of the given vector fields.
pub fn nijenhuis_on(
    f: &TensorField,
    x: &TensorField,
    y: &TensorField,
) -> Result<TensorField, ManifoldError> {
    let fx = f.apply(x)?;
    let fy = f.apply(y)?;
    let a = lie_bracket(&fx, &fy)?;
    let b = f.apply(&lie_bracket(&fx, y)?)?;
    let c = f.apply(&lie_bracket(x, &fy)?)?;
    let d = f.apply(&f.apply(&lie_bracket(x, y)?)?)?;
    a.sub(&b)?.sub(&c)?.add(&d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{apply_pair, Coords};
    use crate::symcore::parse;
    use crate::testutil::{assert_fields_eq, assert_vanishes};

    const C: Coords = Coords::Base(3);

    fn v(s: [&str; 3]) -> TensorField {
        TensorField::vector(C, s.iter().map(|e| parse(e, 3).unwrap()).collect()).unwrap()
    }

    fn form(s: [&str; 3]) -> TensorField {
        TensorField::covector(C, s.iter().map(|e| parse(e, 3).unwrap()).collect()).unwrap()
    }

    fn endo(rows: [[&str; 3]; 3]) -> TensorField {
        TensorField::endomorphism(
            C,
            rows.iter()
                .map(|r| r.iter().map(|e| parse(e, 3).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn bracket_of_coordinate_multiples() {
        let b = lie_bracket(&v(["0", "x1", "0"]), &v(["1", "0", "0"])).unwrap();
        assert_fields_eq(&b, &v(["0", "-1", "0"]));
    }

    #[test]
    fn jacobi_identity() {
        let x = v(["x2", "x3^2", "1"]);
        let y = v(["x1*x3", "0", "x2"]);
        let z = v(["1", "x1", "x1*x2"]);
        let b = |a: &TensorField, c: &TensorField| lie_bracket(a, c).unwrap();
        let s = b(&x, &b(&y, &z)).add(&b(&y, &b(&z, &x))).unwrap().add(&b(&z, &b(&x, &y))).unwrap();
        assert_fields_eq(&s, &TensorField::zeros(C, 1, 0));
    }

    #[test]
    fn lie_derivative_satisfies_leibniz() {
        // (L_X ω)(Y) = X(ω(Y)) − ω([X,Y]) and (L_X F)Y = [X,FY] − F[X,Y]
        let x = v(["x2", "x1*x3", "x3"]);
        let y = v(["1", "x3", "x1^2"]);
        let w = form(["x3", "x1*x2", "1/x3"]);
        let f = endo([["x1", "0", "1"], ["x2", "x3", "0"], ["0", "x1*x3", "2"]]);
        let xy = lie_bracket(&x, &y).unwrap();
        let lw = lie_derivative(&x, &w).unwrap().pair(&y).unwrap();
        assert_vanishes(&(lw - x.derive(&w.pair(&y).unwrap()).unwrap() + w.pair(&xy).unwrap()), 3);
        let lf = lie_derivative(&x, &f).unwrap().apply(&y).unwrap();
        let rhs = lie_bracket(&x, &f.apply(&y).unwrap())
            .unwrap()
            .sub(&f.apply(&xy).unwrap())
            .unwrap();
        assert_fields_eq(&lf, &rhs);
    }

    #[test]
    fn exterior_derivatives_agree_with_coboundaries() {
        let x = v(["x2", "x1*x3", "x3"]);
        let y = v(["1", "x3", "x1^2"]);
        let z = v(["x3", "0", "x2"]);
        let w = form(["x3*x2", "x1^2", "1/x3"]);
        let dw = exterior_derivative_1form(&w).unwrap();
        let lhs = dw.eval2(&x, &y).unwrap();
        assert_vanishes(&(lhs - coboundary_1form(&w, &x, &y).unwrap()), 3);
        let phi = TensorField::bilinear(
            C,
            vec![
                vec![Expr::zero(), parse("x3", 3).unwrap(), parse("x1*x2", 3).unwrap()],
                vec![parse("-x3", 3).unwrap(), Expr::zero(), parse("x1", 3).unwrap()],
                vec![parse("-x1*x2", 3).unwrap(), parse("-x1", 3).unwrap(), Expr::zero()],
            ],
        )
        .unwrap();
        let dphi = exterior_derivative_2form(&phi).unwrap();
        let on_fields = dphi.contract_last(&z).unwrap().eval2(&x, &y).unwrap();
        assert_vanishes(&(on_fields - coboundary_2form(&phi, &x, &y, &z).unwrap()), 3);
        // d∘d = 0 with the ½ and ⅓ normalisations
        let ddw = exterior_derivative_2form(&dw).unwrap();
        assert_fields_eq(&ddw, &TensorField::zeros(C, 0, 3));
    }

    #[test]
    fn nijenhuis_components_agree_with_brackets() {
        let f = endo([["x2", "1", "0"], ["0", "x1*x3", "x3"], ["x1", "0", "-1"]]);
        let n = nijenhuis(&f).unwrap();
        let x = v(["x2", "x1*x3", "x3"]);
        let y = v(["1", "x3", "x1^2"]);
        assert_fields_eq(&apply_pair(&n, &x, &y).unwrap(), &nijenhuis_on(&f, &x, &y).unwrap());
        let constant = endo([["0", "1", "0"], ["-1", "0", "0"], ["0", "0", "2"]]);
        assert_fields_eq(&nijenhuis(&constant).unwrap(), &TensorField::zeros(C, 1, 2));
    }
}
