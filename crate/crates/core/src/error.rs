use thiserror::Error;

use crate::algebra::VarIndex;
use crate::poset::ElementId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("poset has {size} elements, bound is {bound}")]
    SizeExceeded { size: usize, bound: usize },
    #[error("relations contain a cycle through element {0}")]
    CycleDetected(ElementId),
    #[error("elements {0} and {1} are already comparable")]
    NotIncomparable(ElementId, ElementId),
    #[error("({0}, {1}) is not a cover edge")]
    NotCoverEdge(ElementId, ElementId),
    #[error("poset is not connected")]
    NotConnected,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("duplicate interpolation node")]
    DuplicateNode,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("specialization makes factor (x{0} - x{1}) vanish")]
    PoleCollision(VarIndex, VarIndex),
    #[error("substitution hits the surviving factor (x{0} - x{1})")]
    SubstitutionPole(VarIndex, VarIndex),
    #[error("variable x{0} has no assigned value")]
    Unassigned(VarIndex),
    #[error("denominator has a non-rational root")]
    IrrationalPole,
    #[error("integrand of term {term} is not proper at infinity")]
    ImproperIntegrand { term: usize },
    #[error("evaluation point coincides with a pole")]
    PoleAtX,
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("non-polynomial function needs an explicit truncation order")]
    TruncationRequired,
    #[error("indices must be distinct")]
    EqualIndices,
    #[error("identity labeling is not a linear extension")]
    LabelingNotExtension,
    #[error("form `{0}` is not available for this input")]
    FormUnavailable(&'static str),
}
