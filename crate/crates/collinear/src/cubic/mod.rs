//! Collinear sets in triconnected cubic plane graphs: an induction over
//! well-formed quadruples that builds a proper good curve and charges every
//! skipped vertex to a visited one, at most three per visited vertex.

mod build;
mod generate;
mod quadruple;

use thiserror::Error;

use crate::curves::CurveError;
use crate::plane_graph::GraphError;

pub use build::{audit_charged, build_cubic_curve, theorem4, ChargedCurve};
pub use generate::generate_triconnected_cubic;
pub use quadruple::{chain_decompose, make_quadruple, ChainBlock, ChainDecomposition, Quadruple, QuadrupleError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubicError {
    #[error("graph is not cubic")]
    NotCubic,
    #[error("graph is not triconnected")]
    NotTriconnected,
    #[error(transparent)]
    Quadruple(#[from] QuadrupleError),
    #[error("unexpected structure: {0}")]
    Structure(String),
    #[error("audit failed on a {n}-vertex quadruple: {msg}")]
    Audit { n: usize, msg: String },
    #[error("generation failed: {0}")]
    Generate(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
