use std::cell::RefCell;
use std::collections::HashMap;

use super::expr::{Expr, Func, Node, VarId, VarKind};
use super::rational::{to_f64, Rational};
use super::scalar::MetallicScalar;
use super::SymError;

/// Scalar types an [`Expr`] can be evaluated into.
pub trait EvalScalar: Clone + std::fmt::Debug {
    /// Embeds a rational using the same context (metallic parameters) as `self`.
    fn embed(&self, r: &Rational) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Result<Self, SymError>;
    fn powi(&self, n: i32) -> Result<Self, SymError>;
    fn func(&self, f: Func) -> Result<Self, SymError>;
    fn to_f64(&self) -> f64;
    fn is_exact() -> bool;
}

impl EvalScalar for MetallicScalar {
    fn embed(&self, r: &Rational) -> Self {
        let (p, q) = self.params();
        MetallicScalar::rational(r.clone(), p, q)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Result<Self, SymError> {
        self.checked_div(rhs)
    }
    fn powi(&self, n: i32) -> Result<Self, SymError> {
        MetallicScalar::powi(self, n)
    }
    fn func(&self, f: Func) -> Result<Self, SymError> {
        Err(SymError::NotRational(f.name().to_string()))
    }
    fn to_f64(&self) -> f64 {
        MetallicScalar::to_f64(self)
    }
    fn is_exact() -> bool {
        true
    }
}

impl EvalScalar for f64 {
    fn embed(&self, r: &Rational) -> Self {
        to_f64(r)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Result<Self, SymError> {
        if *rhs == 0.0 {
            Err(SymError::DivisionByZero)
        } else {
            Ok(self / rhs)
        }
    }
    fn powi(&self, n: i32) -> Result<Self, SymError> {
        if *self == 0.0 && n < 0 {
            Err(SymError::DivisionByZero)
        } else {
            Ok(f64::powi(*self, n))
        }
    }
    fn func(&self, f: Func) -> Result<Self, SymError> {
        let v = *self;
        let out = match f {
            Func::Sqrt if v < 0.0 => return Err(SymError::Domain(format!("sqrt({v})"))),
            Func::Log if v <= 0.0 => return Err(SymError::Domain(format!("log({v})"))),
            Func::Sqrt => v.sqrt(),
            Func::Exp => v.exp(),
            Func::Log => v.ln(),
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
        };
        Ok(out)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_exact() -> bool {
        false
    }
}

/// Values for the coordinates and for `sigma`.
#[derive(Clone, Debug)]
pub struct Assignment<S> {
    pub base: Vec<S>,
    pub fiber: Vec<S>,
    pub sigma: S,
}

impl<S: EvalScalar> Assignment<S> {
    pub fn get(&self, v: VarId) -> Option<&S> {
        let slot = v.index.checked_sub(1)?;
        match v.kind {
            VarKind::Base => self.base.get(slot),
            VarKind::Fiber => self.fiber.get(slot),
        }
    }
}

/// Evaluates expressions at one point, memoising shared subtrees.
///
/// The cache keeps a clone of every visited node so that node addresses stay
/// valid for the evaluator's lifetime.
pub struct Evaluator<S> {
    point: Assignment<S>,
    cache: RefCell<HashMap<usize, (Expr, S)>>,
}

impl<S: EvalScalar> Evaluator<S> {
    pub fn new(point: Assignment<S>) -> Self {
        Self {
            point,
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn point(&self) -> &Assignment<S> {
        &self.point
    }

    /// In exact mode a function node anywhere in `e` is a `NotRational` error.
    pub fn eval(&self, e: &Expr) -> Result<S, SymError> {
        self.eval_node(e)
    }

    fn eval_node(&self, e: &Expr) -> Result<S, SymError> {
        if let Some((_, v)) = self.cache.borrow().get(&e.ptr()) {
            return Ok(v.clone());
        }
        let zero = || self.point.sigma.embed(&Rational::from_integer(0.into()));
        let v = match e.node() {
            Node::Const(r) => self.point.sigma.embed(r),
            Node::Var(v) => self
                .point
                .get(*v)
                .cloned()
                .ok_or_else(|| SymError::Unassigned(v.to_string()))?,
            Node::Sigma => self.point.sigma.clone(),
            Node::Sum(ts) => {
                let mut acc = zero();
                for t in ts {
                    acc = acc.add(&self.eval_node(t)?);
                }
                acc
            }
            Node::Product(fs) => {
                let mut acc = self.point.sigma.embed(&Rational::from_integer(1.into()));
                for f in fs {
                    acc = acc.mul(&self.eval_node(f)?);
                }
                acc
            }
            Node::Quotient(a, b) => self.eval_node(a)?.div(&self.eval_node(b)?)?,
            Node::Power(b, n) => self.eval_node(b)?.powi(*n)?,
            Node::Func(f, a) => self.eval_node(a)?.func(*f)?,
        };
        self.cache
            .borrow_mut()
            .insert(e.ptr(), (e.clone(), v.clone()));
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::{parse, rat};

    fn exact_at(base: &[(i64, i64)], fiber: &[(i64, i64)]) -> Evaluator<MetallicScalar> {
        let m = |&(n, d): &(i64, i64)| MetallicScalar::rational(rat(n, d), 1, 1);
        Evaluator::new(Assignment {
            base: base.iter().map(m).collect(),
            fiber: fiber.iter().map(m).collect(),
            sigma: crate::symcore::sigma(1, 1).unwrap(),
        })
    }

    #[test]
    fn exact_substitution() {
        let ev = exact_at(&[(1, 1), (1, 1), (2, 1)], &[(0, 1), (0, 1), (3, 1)]);
        let e = parse("1/x3^2", 3).unwrap();
        assert_eq!(ev.eval(&e).unwrap(), MetallicScalar::rational(rat(1, 4), 1, 1));
        let e = parse("y3/x3", 3).unwrap();
        assert_eq!(ev.eval(&e).unwrap(), MetallicScalar::rational(rat(3, 2), 1, 1));
    }

    #[test]
    fn exact_mode_rejects_radicals() {
        let ev = exact_at(&[(2, 1)], &[]);
        let e = parse("sqrt(x1)", 1).unwrap();
        assert!(matches!(ev.eval(&e), Err(SymError::NotRational(_))));
    }

    #[test]
    fn division_by_zero_at_point() {
        let ev = exact_at(&[(0, 1)], &[]);
        assert_eq!(ev.eval(&parse("1/x1", 1).unwrap()), Err(SymError::DivisionByZero));
        let evf = Evaluator::new(Assignment { base: vec![0.0], fiber: vec![], sigma: 1.618 });
        assert_eq!(evf.eval(&parse("x1^-1", 1).unwrap()), Err(SymError::DivisionByZero));
    }

    #[test]
    fn float_functions() {
        let ev = Evaluator::new(Assignment { base: vec![4.0], fiber: vec![], sigma: 1.0 });
        let v = ev.eval(&parse("sqrt(x1) + exp(0) + log(1) + sin(0) + cos(0)", 1).unwrap()).unwrap();
        assert!((v - 4.0).abs() < 1e-15);
    }

    #[test]
    fn unassigned_variable() {
        let ev = exact_at(&[(1, 1)], &[]);
        assert!(matches!(ev.eval(&Expr::y(1)), Err(SymError::Unassigned(_))));
    }
}
