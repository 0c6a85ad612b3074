use crate::symcore::{Expr, VarId};

use super::ManifoldError;

/// Coordinate system a tensor field lives on.
///
/// `Base(n)` is the chart `x1..xn` of the manifold; `Bundle(n)` is the induced
/// chart `x1..xn, y1..yn` of its tangent bundle, with slots `n..2n` the fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coords {
    Base(usize),
    Bundle(usize),
}

impl Coords {
    pub fn dim(self) -> usize {
        match self {
            Coords::Base(n) => n,
            Coords::Bundle(n) => 2 * n,
        }
    }

    pub fn base_dim(self) -> usize {
        match self {
            Coords::Base(n) | Coords::Bundle(n) => n,
        }
    }

    pub fn var(self, a: usize) -> VarId {
        VarId::slot(a, self.base_dim())
    }

    /// Partial derivative along coordinate slot `a`.
    pub fn partial(self, e: &Expr, a: usize) -> Expr {
        e.diff(self.var(a))
    }
}

/// A tensor field with `upper` contravariant and `lower` covariant slots.
///
/// Components are stored row-major with the upper indices first, so a (1,1)
/// field `F` stores `F^i_j` at `i * dim + j` and acts on vectors by
/// `(F X)^i = F^i_j X^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorField {
    coords: Coords,
    upper: usize,
    lower: usize,
    comps: Vec<Expr>,
}

impl TensorField {
    pub fn new(
        coords: Coords,
        upper: usize,
        lower: usize,
        comps: Vec<Expr>,
    ) -> Result<Self, ManifoldError> {
        let expected = coords.dim().pow((upper + lower) as u32);
        if comps.len() != expected {
            return Err(ManifoldError::Shape(format!(
                "valence ({upper},{lower}) in dimension {} needs {expected} components, got {}",
                coords.dim(),
                comps.len()
            )));
        }
        Ok(Self {
            coords,
            upper,
            lower,
            comps,
        })
    }

    pub fn from_fn(
        coords: Coords,
        upper: usize,
        lower: usize,
        mut f: impl FnMut(&[usize]) -> Expr,
    ) -> Self {
        let d = coords.dim();
        let rank = upper + lower;
        let total = d.pow(rank as u32);
        let mut idx = vec![0; rank];
        let mut comps = Vec::with_capacity(total);
        for flat in 0..total {
            let mut r = flat;
            for slot in (0..rank).rev() {
                idx[slot] = r % d;
                r /= d;
            }
            comps.push(f(&idx));
        }
        Self {
            coords,
            upper,
            lower,
            comps,
        }
    }

    pub fn zeros(coords: Coords, upper: usize, lower: usize) -> Self {
        Self::from_fn(coords, upper, lower, |_| Expr::zero())
    }

    pub fn vector(coords: Coords, comps: Vec<Expr>) -> Result<Self, ManifoldError> {
        Self::new(coords, 1, 0, comps)
    }

    pub fn covector(coords: Coords, comps: Vec<Expr>) -> Result<Self, ManifoldError> {
        Self::new(coords, 0, 1, comps)
    }

    /// (1,1) field from `rows[i][j] = F^i_j`.
    pub fn endomorphism(coords: Coords, rows: Vec<Vec<Expr>>) -> Result<Self, ManifoldError> {
        Self::new(coords, 1, 1, rows.into_iter().flatten().collect())
    }

    /// (0,2) field from `rows[i][j] = g_ij`.
    pub fn bilinear(coords: Coords, rows: Vec<Vec<Expr>>) -> Result<Self, ManifoldError> {
        Self::new(coords, 0, 2, rows.into_iter().flatten().collect())
    }

    /// Coordinate vector field `d/dx^a` (slot `a`).
    pub fn coordinate(coords: Coords, a: usize) -> Self {
        Self::from_fn(coords, 1, 0, |i| {
            if i[0] == a {
                Expr::one()
            } else {
                Expr::zero()
            }
        })
    }

    pub fn identity(coords: Coords) -> Self {
        Self::from_fn(coords, 1, 1, |i| {
            if i[0] == i[1] {
                Expr::one()
            } else {
                Expr::zero()
            }
        })
    }

    /// `xi ⊗ eta` viewed as the endomorphism `X -> eta(X) xi`.
    pub fn outer(eta: &TensorField, xi: &TensorField) -> Result<Self, ManifoldError> {
        eta.expect_valence(0, 1)?;
        xi.expect_valence(1, 0)?;
        eta.expect_same_coords(xi)?;
        Ok(Self::from_fn(eta.coords, 1, 1, |i| {
            &xi.comps[i[0]] * &eta.comps[i[1]]
        }))
    }

    pub fn coords(&self) -> Coords {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    pub fn valence(&self) -> (usize, usize) {
        (self.upper, self.lower)
    }

    pub fn components(&self) -> &[Expr] {
        &self.comps
    }

    fn flat(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.upper + self.lower);
        let d = self.dim();
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < d);
            acc * d + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> &Expr {
        &self.comps[self.flat(idx)]
    }

    pub fn expect_valence(&self, upper: usize, lower: usize) -> Result<(), ManifoldError> {
        if (self.upper, self.lower) == (upper, lower) {
            Ok(())
        } else {
            Err(ManifoldError::Shape(format!(
                "expected valence ({upper},{lower}), found ({},{})",
                self.upper, self.lower
            )))
        }
    }

    pub fn expect_same_coords(&self, other: &TensorField) -> Result<(), ManifoldError> {
        if self.coords == other.coords {
            Ok(())
        } else {
            Err(ManifoldError::Shape(format!(
                "mixed coordinate systems {:?} and {:?}",
                self.coords, other.coords
            )))
        }
    }

    pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> Self {
        Self {
            coords: self.coords,
            upper: self.upper,
            lower: self.lower,
            comps: self.comps.iter().map(f).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Expr, &Expr) -> Expr) -> Result<Self, ManifoldError> {
        self.expect_same_coords(other)?;
        other.expect_valence(self.upper, self.lower)?;
        Ok(Self {
            coords: self.coords,
            upper: self.upper,
            lower: self.lower,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, ManifoldError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ManifoldError> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Expr) -> Self {
        self.map(|c| s * c)
    }

    /// `F X` for a (1,1) field `F` and a vector field `X`.
    pub fn apply(&self, x: &TensorField) -> Result<TensorField, ManifoldError> {
        self.expect_valence(1, 1)?;
        x.expect_valence(1, 0)?;
        self.expect_same_coords(x)?;
        let d = self.dim();
        Ok(Self::from_fn(self.coords, 1, 0, |i| {
            Expr::sum((0..d).map(|j| &self.comps[i[0] * d + j] * &x.comps[j]))
        }))
    }

    /// `self ∘ other` for (1,1) fields.
    pub fn compose(&self, other: &TensorField) -> Result<TensorField, ManifoldError> {
        self.expect_valence(1, 1)?;
        other.expect_valence(1, 1)?;
        self.expect_same_coords(other)?;
        let d = self.dim();
        Ok(Self::from_fn(self.coords, 1, 1, |i| {
            Expr::sum((0..d).map(|m| &self.comps[i[0] * d + m] * &other.comps[m * d + i[1]]))
        }))
    }

    /// `omega(X)` for a 1-form and a vector field.
    pub fn pair(&self, x: &TensorField) -> Result<Expr, ManifoldError> {
        self.expect_valence(0, 1)?;
        x.expect_valence(1, 0)?;
        self.expect_same_coords(x)?;
        Ok(Expr::sum(
            self.comps.iter().zip(&x.comps).map(|(w, v)| w * v),
        ))
    }

    /// `b(X, Y)` for a (0,2) field.
    pub fn eval2(&self, x: &TensorField, y: &TensorField) -> Result<Expr, ManifoldError> {
        self.expect_valence(0, 2)?;
        x.expect_valence(1, 0)?;
        y.expect_valence(1, 0)?;
        self.expect_same_coords(x)?;
        self.expect_same_coords(y)?;
        let d = self.dim();
        let mut terms = Vec::new();
        for i in 0..d {
            if x.comps[i].is_zero() {
                continue;
            }
            for j in 0..d {
                terms.push(Expr::product([
                    self.comps[i * d + j].clone(),
                    x.comps[i].clone(),
                    y.comps[j].clone(),
                ]));
            }
        }
        Ok(Expr::sum(terms))
    }

    /// `omega(X)` as a 1-form value, or `F(·, X)` contraction of the last lower slot.
    pub fn contract_last(&self, x: &TensorField) -> Result<TensorField, ManifoldError> {
        x.expect_valence(1, 0)?;
        self.expect_same_coords(x)?;
        if self.lower == 0 {
            return Err(ManifoldError::Shape("no lower slot to contract".into()));
        }
        let d = self.dim();
        Ok(Self::from_fn(
            self.coords,
            self.upper,
            self.lower - 1,
            |idx| {
                let mut full = idx.to_vec();
                full.push(0);
                Expr::sum((0..d).map(|m| {
                    *full.last_mut().unwrap() = m;
                    &self.comps[self.flat(&full)] * &x.comps[m]
                }))
            },
        ))
    }

    /// Directional derivative `X(f)`.
    pub fn derive(&self, f: &Expr) -> Result<Expr, ManifoldError> {
        self.expect_valence(1, 0)?;
        Ok(Expr::sum(self.comps.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(
            |(a, c)| c * &self.coords.partial(f, a),
        )))
    }

    /// Componentwise partial derivative along slot `a`.
    pub fn partial(&self, a: usize) -> Self {
        let c = self.coords;
        self.map(|e| c.partial(e, a))
    }

    /// Transpose of a (0,2) field.
    pub fn transpose2(&self) -> Result<Self, ManifoldError> {
        self.expect_valence(0, 2)?;
        Ok(Self::from_fn(self.coords, 0, 2, |i| self.get(&[i[1], i[0]]).clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn component_count_is_checked() {
        let err = TensorField::new(Coords::Base(3), 1, 1, vec![Expr::zero(); 8]);
        assert!(matches!(err, Err(ManifoldError::Shape(_))));
        assert_eq!(TensorField::zeros(Coords::Bundle(3), 1, 2).components().len(), 216);
    }

    #[test]
    fn index_layout() {
        let t = TensorField::from_fn(Coords::Base(2), 1, 2, |i| {
            Expr::int((100 * i[0] + 10 * i[1] + i[2]) as i64)
        });
        assert_eq!(t.get(&[1, 0, 1]), &Expr::int(101));
        assert_eq!(t.get(&[0, 1, 1]), &Expr::int(11));
    }

    #[test]
    fn outer_acts_as_eta_times_xi() {
        let c = Coords::Base(2);
        let eta = TensorField::covector(c, vec![Expr::one(), Expr::zero()]).unwrap();
        let xi = TensorField::vector(c, vec![Expr::zero(), Expr::x(1)]).unwrap();
        let m = TensorField::outer(&eta, &xi).unwrap();
        let v = m.apply(&TensorField::coordinate(c, 0)).unwrap();
        assert_eq!(v.components(), &[Expr::zero(), Expr::x(1)]);
    }
}
