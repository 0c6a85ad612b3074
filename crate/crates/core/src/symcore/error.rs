use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("invalid metallic parameters p={p}, q={q}: both must be positive")]
    Parameter { p: i64, q: i64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at byte {offset} (dimension is {dim})")]
    UnknownVariable {
        name: String,
        offset: usize,
        dim: usize,
    },
    #[error("exact evaluation of a non-rational expression (`{0}`)")]
    NotRational(String),
    #[error("variable {0} has no value in the evaluation point")]
    Unassigned(String),
    #[error("derivative order {order} exceeds the configured cap {cap}")]
    DerivativeCap { order: usize, cap: usize },
    #[error("domain error: {0}")]
    Domain(String),
}
