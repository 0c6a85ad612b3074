use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::{is_one, rat, Rational};
use super::SymError;

/// Default maximum order accepted by [`Expr::diff_chain`].
pub const DEFAULT_DERIVATIVE_CAP: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    Base,
    Fiber,
}

/// A coordinate variable: `x<index>` on the base or `y<index>` on the fiber.
/// The index is 1-based, matching the DSL spelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId {
    pub kind: VarKind,
    pub index: usize,
}

impl VarId {
    pub fn base(index: usize) -> Self {
        assert!(index >= 1, "coordinate indices are 1-based");
        Self {
            kind: VarKind::Base,
            index,
        }
    }

    pub fn fiber(index: usize) -> Self {
        assert!(index >= 1, "coordinate indices are 1-based");
        Self {
            kind: VarKind::Fiber,
            index,
        }
    }

    /// Variable for the 0-based coordinate slot `a` of a chart whose base has
    /// dimension `n`: slots `0..n` are `x`, slots `n..2n` are `y`.
    pub fn slot(a: usize, n: usize) -> Self {
        if a < n {
            Self::base(a + 1)
        } else {
            Self::fiber(a - n + 1)
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::Base => write!(f, "x{}", self.index),
            VarKind::Fiber => write!(f, "y{}", self.index),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Sqrt,
    Exp,
    Log,
    Sin,
    Cos,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sqrt => "sqrt",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "sqrt" => Func::Sqrt,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            _ => return None,
        })
    }
}

#[derive(Debug, PartialEq)]
pub enum Node {
    Const(Rational),
    Var(VarId),
    /// The metallic mean of the evaluation context.
    Sigma,
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Quotient(Expr, Expr),
    Power(Expr, i32),
    Func(Func, Expr),
}

/// Immutable, cheaply clonable expression DAG.
///
/// All constructors apply only local rules: flattening of nested sums and
/// products, constant folding, and removal of `0` terms and `1` factors. Two
/// expressions that are equal as functions may therefore differ structurally;
/// equality of values is decided by evaluation.
#[derive(Clone)]
pub struct Expr(Arc<Node>);

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

impl Expr {
    fn wrap(node: Node) -> Self {
        Expr(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub(crate) fn ptr(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn constant(r: Rational) -> Self {
        Self::wrap(Node::Const(r))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n, 1))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::constant(rat(n, d))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn var(v: VarId) -> Self {
        Self::wrap(Node::Var(v))
    }

    pub fn x(index: usize) -> Self {
        Self::var(VarId::base(index))
    }

    pub fn y(index: usize) -> Self {
        Self::var(VarId::fiber(index))
    }

    pub fn sigma() -> Self {
        Self::wrap(Node::Sigma)
    }

    pub fn as_const(&self) -> Option<&Rational> {
        match self.node() {
            Node::Const(r) => Some(r),
            _ => None,
        }
    }

    /// Structurally zero. A `false` answer says nothing about the value.
    pub fn is_zero(&self) -> bool {
        self.as_const().is_some_and(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_const().is_some_and(is_one)
    }

    pub fn sum(terms: impl IntoIterator<Item = Expr>) -> Self {
        let mut out = Vec::new();
        let mut c = Rational::zero();
        for t in terms {
            match t.node() {
                Node::Const(r) => c += r,
                Node::Sum(inner) => {
                    for s in inner {
                        match s.node() {
                            Node::Const(r) => c += r,
                            _ => out.push(s.clone()),
                        }
                    }
                }
                _ => out.push(t),
            }
        }
        if !c.is_zero() {
            out.push(Self::constant(c));
        }
        match out.len() {
            0 => Self::zero(),
            1 => out.pop().unwrap(),
            _ => Self::wrap(Node::Sum(out)),
        }
    }

    pub fn product(factors: impl IntoIterator<Item = Expr>) -> Self {
        let mut out = Vec::new();
        let mut c = Rational::one();
        for f in factors {
            match f.node() {
                Node::Const(r) => c *= r,
                Node::Product(inner) => {
                    for s in inner {
                        match s.node() {
                            Node::Const(r) => c *= r,
                            _ => out.push(s.clone()),
                        }
                    }
                }
                _ => out.push(f),
            }
            if c.is_zero() {
                return Self::zero();
            }
        }
        if !is_one(&c) {
            out.insert(0, Self::constant(c));
        }
        match out.len() {
            0 => Self::one(),
            1 => out.pop().unwrap(),
            _ => Self::wrap(Node::Product(out)),
        }
    }

    pub fn quotient(num: Expr, den: Expr) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        match den.as_const() {
            Some(d) if d.is_zero() => Self::wrap(Node::Quotient(num, den)),
            Some(d) if is_one(d) => num,
            Some(d) => Self::product([Self::constant(d.recip()), num]),
            None => Self::wrap(Node::Quotient(num, den)),
        }
    }

    pub fn powi(base: Expr, exp: i32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        if exp == 1 {
            return base;
        }
        if let Some(c) = base.as_const() {
            if !c.is_zero() || exp > 0 {
                return Self::constant(num_traits::Pow::pow(c, exp));
            }
        }
        Self::wrap(Node::Power(base, exp))
    }

    pub fn func(f: Func, arg: Expr) -> Self {
        Self::wrap(Node::Func(f, arg))
    }

    pub fn scale(&self, r: Rational) -> Self {
        Self::product([Self::constant(r), self.clone()])
    }

    /// True when the tree uses only constants, variables, `sigma`, sums,
    /// products, quotients and integer powers.
    pub fn is_rational(&self) -> bool {
        match self.node() {
            Node::Const(_) | Node::Var(_) | Node::Sigma => true,
            Node::Sum(ts) | Node::Product(ts) => ts.iter().all(Expr::is_rational),
            Node::Quotient(a, b) => a.is_rational() && b.is_rational(),
            Node::Power(b, _) => b.is_rational(),
            Node::Func(..) => false,
        }
    }

    pub fn contains_fiber(&self) -> bool {
        match self.node() {
            Node::Var(v) => v.kind == VarKind::Fiber,
            Node::Const(_) | Node::Sigma => false,
            Node::Sum(ts) | Node::Product(ts) => ts.iter().any(Expr::contains_fiber),
            Node::Quotient(a, b) => a.contains_fiber() || b.contains_fiber(),
            Node::Power(b, _) | Node::Func(_, b) => b.contains_fiber(),
        }
    }

    /// Largest base index used by the expression (0 if none).
    pub fn max_index(&self) -> usize {
        match self.node() {
            Node::Var(v) => v.index,
            Node::Const(_) | Node::Sigma => 0,
            Node::Sum(ts) | Node::Product(ts) => {
                ts.iter().map(Expr::max_index).max().unwrap_or(0)
            }
            Node::Quotient(a, b) => a.max_index().max(b.max_index()),
            Node::Power(b, _) | Node::Func(_, b) => b.max_index(),
        }
    }

    /// Symbolic partial derivative.
    pub fn diff(&self, v: VarId) -> Expr {
        let mut memo = HashMap::new();
        diff_memo(self, v, &mut memo)
    }

    /// Iterated partial derivative along `vars`, refusing chains longer than `cap`.
    pub fn diff_chain(&self, vars: &[VarId], cap: usize) -> Result<Expr, SymError> {
        if vars.len() > cap {
            return Err(SymError::DerivativeCap {
                order: vars.len(),
                cap,
            });
        }
        Ok(vars.iter().fold(self.clone(), |e, v| e.diff(*v)))
    }

    /// Replaces variables by expressions.
    pub fn substitute(&self, f: &dyn Fn(VarId) -> Option<Expr>) -> Expr {
        match self.node() {
            Node::Var(v) => f(*v).unwrap_or_else(|| self.clone()),
            Node::Const(_) | Node::Sigma => self.clone(),
            Node::Sum(ts) => Expr::sum(ts.iter().map(|t| t.substitute(f))),
            Node::Product(ts) => Expr::product(ts.iter().map(|t| t.substitute(f))),
            Node::Quotient(a, b) => Expr::quotient(a.substitute(f), b.substitute(f)),
            Node::Power(b, n) => Expr::powi(b.substitute(f), *n),
            Node::Func(g, a) => Expr::func(*g, a.substitute(f)),
        }
    }
}

fn diff_memo(e: &Expr, v: VarId, memo: &mut HashMap<usize, (Expr, Expr)>) -> Expr {
    if let Some((_, d)) = memo.get(&e.ptr()) {
        return d.clone();
    }
    let d = match e.node() {
        Node::Const(_) | Node::Sigma => Expr::zero(),
        Node::Var(w) => {
            if *w == v {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Node::Sum(ts) => Expr::sum(ts.iter().map(|t| diff_memo(t, v, memo))),
        Node::Product(fs) => {
            let ds: Vec<Expr> = fs.iter().map(|f| diff_memo(f, v, memo)).collect();
            let mut terms = Vec::new();
            for (i, di) in ds.iter().enumerate() {
                if di.is_zero() {
                    continue;
                }
                let mut factors: Vec<Expr> = fs.clone();
                factors[i] = di.clone();
                terms.push(Expr::product(factors));
            }
            Expr::sum(terms)
        }
        Node::Quotient(a, b) => {
            let da = diff_memo(a, v, memo);
            let db = diff_memo(b, v, memo);
            if db.is_zero() {
                Expr::quotient(da, b.clone())
            } else {
                let num = &(&da * b) - &(a * &db);
                Expr::quotient(num, Expr::powi(b.clone(), 2))
            }
        }
        Node::Power(b, n) => {
            let db = diff_memo(b, v, memo);
            Expr::product([Expr::int(*n as i64), Expr::powi(b.clone(), n - 1), db])
        }
        Node::Func(f, a) => {
            let da = diff_memo(a, v, memo);
            if da.is_zero() {
                Expr::zero()
            } else {
                let outer = match f {
                    Func::Sqrt => Expr::quotient(Expr::frac(1, 2), e.clone()),
                    Func::Exp => e.clone(),
                    Func::Log => Expr::quotient(Expr::one(), a.clone()),
                    Func::Sin => Expr::func(Func::Cos, a.clone()),
                    Func::Cos => -Expr::func(Func::Sin, a.clone()),
                };
                &outer * &da
            }
        }
    };
    memo.insert(e.ptr(), (e.clone(), d.clone()));
    d
}

// Precedence levels used by the printer: sum < product < unary < power < atom.
fn prec(e: &Expr) -> u8 {
    match e.node() {
        Node::Sum(_) => 1,
        Node::Product(_) | Node::Quotient(..) => 2,
        Node::Const(r) if r.is_negative() || !r.is_integer() => 2,
        Node::Power(..) => 4,
        _ => 5,
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    /// Canonical infix form; `parse(print(e)) == e` for every constructed `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Const(r) => write!(f, "{r}"),
            Node::Var(v) => write!(f, "{v}"),
            Node::Sigma => write!(f, "sigma"),
            Node::Sum(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write_child(f, t, 2)?;
                }
                Ok(())
            }
            Node::Product(fs) => {
                for (i, t) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    // a fractional leading constant prints as `a/b`, which binds like a product
                    let min = if i == 0 { 2 } else { 3 };
                    write_child(f, t, min)?;
                }
                Ok(())
            }
            Node::Quotient(a, b) => {
                write_child(f, a, 2)?;
                write!(f, "/")?;
                write_child(f, b, 3)
            }
            Node::Power(b, n) => {
                write_child(f, b, 5)?;
                write!(f, "^{n}")
            }
            Node::Func(g, a) => write!(f, "{}({a})", g.name()),
        }
    }
}

macro_rules! bin_ops {
    ($($tr:ident $m:ident $body:expr;)*) => {$(
        impl $tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self.clone(), rhs.clone())
            }
        }
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self, rhs)
            }
        }
    )*};
}

bin_ops! {
    Add add |a, b| Expr::sum([a, b]);
    Sub sub |a, b| Expr::sum([a, -b]);
    Mul mul |a, b| Expr::product([a, b]);
    Div div Expr::quotient;
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::product([Expr::int(-1), self])
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_simplification() {
        let x = Expr::x(1);
        assert!((&x * &Expr::zero()).is_zero());
        assert_eq!(&x + &Expr::zero(), x);
        assert_eq!(Expr::int(2) + Expr::int(3), Expr::int(5));
        assert_eq!(Expr::int(2) * Expr::frac(1, 2), Expr::one());
        assert_eq!(Expr::powi(Expr::int(2), -2), Expr::frac(1, 4));
    }

    #[test]
    fn product_rule() {
        let e = Expr::x(1) * Expr::x(2);
        assert_eq!(e.diff(VarId::base(1)), Expr::x(2));
    }

    #[test]
    fn quotient_power_rule() {
        let e = Expr::quotient(Expr::one(), Expr::powi(Expr::x(3), 2));
        let d = e.diff(VarId::base(3));
        // -(2 x3) / (x3^2)^2, equal to -2/x3^3 as a function
        assert_eq!(d.to_string(), "-2*x3/(x3^2)^2");
    }

    #[test]
    fn derivative_cap() {
        let e = Expr::powi(Expr::x(1), 5);
        let v = VarId::base(1);
        assert!(e.diff_chain(&[v, v, v], 3).is_ok());
        assert_eq!(
            e.diff_chain(&[v, v, v, v], 3),
            Err(SymError::DerivativeCap { order: 4, cap: 3 })
        );
    }

    #[test]
    fn rationality_gate() {
        assert!((Expr::x(1) / Expr::y(2)).is_rational());
        assert!(!Expr::func(Func::Sqrt, Expr::x(1)).is_rational());
    }

    #[test]
    fn slot_mapping() {
        assert_eq!(VarId::slot(0, 3), VarId::base(1));
        assert_eq!(VarId::slot(4, 3), VarId::fiber(2));
    }
}
