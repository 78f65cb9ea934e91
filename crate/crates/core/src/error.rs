use thiserror::Error;

use crate::genfun::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("jet order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("non-invertible jet (zero constant term)")]
    NonInvertibleJet,

    #[error("jet quotient has a pole at the expansion point")]
    PoleAtExpansionPoint,

    #[error("derivative order {k} exceeds jet order {order}")]
    DerivativeBeyondOrder { k: usize, order: usize },

    #[error("degenerate: Apostol parameter equals 1; use bernoulli()")]
    DegenerateApostol,

    #[error("parameter outside closed unit disc: |eps| > 1")]
    ParameterOutsideDisc,

    #[error("parameter equals 1: use natural_sum")]
    UseNaturalSum,

    #[error("generating function must vanish at 0 (series starts at n = 1)")]
    NonzeroConstantTerm,

    #[error("denominator is the zero polynomial")]
    ZeroDenominator,

    #[error("pole at origin")]
    PoleAtOrigin,

    #[error("denominator root hint does not factor the denominator exactly")]
    BadRootHint,

    #[error("root finder did not converge (residual {residual:e})")]
    RootFinder { residual: f64 },

    #[error("inadmissible generating function: {0}")]
    Inadmissible(Violation),

    #[error("higher-order pole unsupported (only simple poles are handled)")]
    HigherOrderPole,

    #[error("point is not a pole of the generating function")]
    NotAPole,

    #[error("point is a pole of the generating function")]
    EvaluationAtPole,

    #[error("k = 0 lies outside the method's range; use abel_value(f, 0, ..) as an explicit extension")]
    ZeroOrder,

    #[error("support overlaps singularity; increase m")]
    SupportOverlap,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("extrapolation did not converge: {0}")]
    Convergence(String),
}
