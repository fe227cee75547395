use crate::field::FieldSpec;

/// Library-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("field degree {0} outside the supported range 2..=32")]
    UnsupportedDegree(u32),

    #[error("polynomial {poly:#x} is not irreducible of degree {degree}")]
    NotIrreducible { degree: u32, poly: u64 },

    #[error("x is not a primitive element modulo {poly:#x}")]
    NotPrimitive { poly: u64 },

    #[error("value {value} does not fit in GF(2^{degree})")]
    ValueOutOfField { value: u64, degree: u32 },

    #[error("field mismatch: {0:?} vs {1:?}")]
    FieldMismatch(FieldSpec, FieldSpec),

    #[error("zero has no inverse")]
    DivisionByZero,

    #[error("column index {index} out of range, matrix has {n} columns")]
    ColumnOutOfRange { index: u64, n: u64 },

    #[error("element {element} outside the universe {lo}..={hi}")]
    ElementOutOfRange { element: u64, lo: u64, hi: u64 },

    #[error("construction infeasible: {0}")]
    Infeasible(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("enumeration needs {needed} states, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("the table states of {0:?} and {1:?} collide; lookups would be ambiguous")]
    AmbiguousStates(Vec<u64>, Vec<u64>),

    #[error("listing algorithm {algorithm} does not apply to this scheme: {reason}")]
    IncompatibleAlgorithm { algorithm: String, reason: String },

    #[error("malformed operation at line {line}: {reason}")]
    MalformedOp { line: usize, reason: String },

    #[error("bad table file: {0}")]
    BadTableFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
