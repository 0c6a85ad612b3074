use crate::symcore::Expr;

use super::{Coords, ManifoldError, TensorField};

/// A single coordinate chart `U` with a Riemannian metric.
///
/// `domain` lists expressions that must be strictly positive at admissible
/// points (e.g. `x3` for the upper half-space).
#[derive(Clone, Debug)]
pub struct ChartedManifold {
    n: usize,
    coord_names: Vec<String>,
    domain: Vec<Expr>,
    metric: TensorField,
}

impl ChartedManifold {
    pub fn new(
        coord_names: Vec<String>,
        domain: Vec<Expr>,
        metric: Vec<Vec<Expr>>,
    ) -> Result<Self, ManifoldError> {
        let n = coord_names.len();
        if n < 2 {
            return Err(ManifoldError::Shape(format!("dimension must be at least 2, got {n}")));
        }
        if metric.len() != n || metric.iter().any(|r| r.len() != n) {
            return Err(ManifoldError::Shape(format!("metric must be {n}x{n}")));
        }
        for e in domain.iter().chain(metric.iter().flatten()) {
            if e.contains_fiber() {
                return Err(ManifoldError::Shape(format!(
                    "base expression `{e}` uses a fiber coordinate"
                )));
            }
            if e.max_index() > n {
                return Err(ManifoldError::Shape(format!(
                    "expression `{e}` uses a coordinate beyond dimension {n}"
                )));
            }
        }
        let metric = TensorField::bilinear(Coords::Base(n), metric)?;
        Ok(Self {
            n,
            coord_names,
            domain,
            metric,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> Coords {
        Coords::Base(self.n)
    }

    pub fn coord_names(&self) -> &[String] {
        &self.coord_names
    }

    pub fn domain(&self) -> &[Expr] {
        &self.domain
    }

    pub fn metric(&self) -> &TensorField {
        &self.metric
    }

    pub fn g(&self, i: usize, j: usize) -> &Expr {
        self.metric.get(&[i, j])
    }

    /// Replaces the metric, keeping chart and domain.
    pub fn with_metric(&self, metric: Vec<Vec<Expr>>) -> Result<Self, ManifoldError> {
        Self::new(self.coord_names.clone(), self.domain.clone(), metric)
    }

    /// `det g` by cofactor expansion.
    pub fn metric_determinant(&self) -> Expr {
        let rows: Vec<Vec<Expr>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.g(i, j).clone()).collect())
            .collect();
        determinant(&rows)
    }

    /// `g^{ij}` as adjugate over determinant.
    pub fn inverse_metric(&self) -> TensorField {
        let n = self.n;
        let rows: Vec<Vec<Expr>> = (0..n)
            .map(|i| (0..n).map(|j| self.g(i, j).clone()).collect())
            .collect();
        let det = determinant(&rows);
        TensorField::from_fn(Coords::Base(n), 2, 0, |ij| {
            // cofactor of (j, i)
            let (i, j) = (ij[0], ij[1]);
            let minor: Vec<Vec<Expr>> = rows
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != j)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != i)
                        .map(|(_, e)| e.clone())
                        .collect()
                })
                .collect();
            let cof = determinant(&minor);
            let signed = if (i + j) % 2 == 0 { cof } else { -cof };
            Expr::quotient(signed, det.clone())
        })
    }
}

pub fn determinant(rows: &[Vec<Expr>]) -> Expr {
    match rows.len() {
        0 => Expr::one(),
        1 => rows[0][0].clone(),
        n => Expr::sum((0..n).filter(|&c| !rows[0][c].is_zero()).map(|c| {
            let minor: Vec<Vec<Expr>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != c)
                        .map(|(_, e)| e.clone())
                        .collect()
                })
                .collect();
            let term = &rows[0][c] * &determinant(&minor);
            if c % 2 == 0 {
                term
            } else {
                -term
            }
        })),
    }
}
