//! Exact scalars and the coordinate-expression DSL.
//!
//! Everything geometric in this crate is ultimately a tree of [`Expr`] nodes over
//! base coordinates `x1..xn`, fiber coordinates `y1..yn` and the metallic constant
//! `sigma`. Identities are verified by evaluating such trees at sample points,
//! either exactly in `Q(sigma)` or in `f64`.

mod error;
mod eval;
mod expr;
mod parse;
mod rational;
mod scalar;

pub use error::SymError;
pub use eval::{Assignment, EvalScalar, Evaluator};
pub use expr::{Expr, Func, Node, VarId, VarKind, DEFAULT_DERIVATIVE_CAP};
pub use parse::parse;
pub use rational::{parse_rational, rat, Rational};
pub use scalar::{sigma, MetallicScalar};
