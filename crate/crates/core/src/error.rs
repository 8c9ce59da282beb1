use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown vertex id `{id}`")]
    UnknownVertex { line: usize, id: String },
    #[error("line {line}: duplicate id `{id}`")]
    DuplicateId { line: usize, id: String },
    #[error("line {line}: weight given on non-node end `{id}`")]
    WeightOnNonNode { line: usize, id: String },
    #[error("line {line}: missing weight on node end `{id}`")]
    MissingWeight { line: usize, id: String },
    #[error("invalid splice diagram: {}", .0.join("; "))]
    InvalidDiagram(Vec<String>),
    #[error("no vertex with id `{0}`")]
    UnknownId(String),
    #[error("`{0}` is not an arrowhead")]
    NotArrowhead(String),
    #[error("splice leaves no arrowheads")]
    NoArrowheads,
    #[error("linking numbers into arrowhead `{0}` are not supported")]
    ArrowheadTarget(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("polynomials in {left} and {right} variables cannot be combined")]
    VariableMismatch { left: usize, right: usize },
    #[error("not divisible")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("negative net zero-factor multiplicity {0}")]
    NegativeZeroFactors(i64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty point set")]
    EmptyPolytope,
    #[error("non-integral vertex in Newton zonotope")]
    NonIntegralVertex,
    #[error("all linking columns vanish; no essential coordinates")]
    AllColumnsZero,
    #[error("b_e = {0} exceeds 3: evaluation-only mode, unit ball vertices are not enumerated")]
    EvaluationOnly(usize),
    #[error("diagram describes the unknot; norm formulas do not apply")]
    Unknot,
    #[error("zero cohomology class")]
    ZeroClass,
    #[error("invalid cohomology class: {0}")]
    InvalidClass(String),
    #[error("random diagram generation failed: {0}")]
    Generator(String),
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
}
