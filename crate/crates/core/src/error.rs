use thiserror::Error;

use crate::certificate::Certificate;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("order `{order}` is not defined for m = {m}")]
    OrderNotDefined { order: String, m: usize },
    #[error("partial order `{0}` requires m = 2")]
    NotBivariate(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("graph is disconnected: vertex `{unreachable}` is unreachable from `{from}`")]
    Disconnected { from: String, unreachable: String },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid scheme: {0}")]
    InvalidScheme(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("missing label `{0}`")]
    MissingLabel(String),
    #[error("generator matrices do not commute")]
    NonCommutative,
    #[error("scheme axioms fail; see certificate")]
    NotAScheme(Box<Certificate>),
    #[error("partial order is not compatible with the monomial order; see certificate")]
    IncompatibleOrders(Box<Certificate>),
    #[error("negative intersection number p[{a},{b}]^{c} = {value}")]
    NegativeEntry {
        a: String,
        b: String,
        c: String,
        value: String,
    },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
