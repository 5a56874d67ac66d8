use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("{what} exceeds the configured cap ({value} > {limit})")]
    CapExceeded {
        what: &'static str,
        value: u128,
        limit: u128,
    },
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("`{0}` is not an element of the ground set")]
    NotSubset(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid field element code {code} for a field of order {order}")]
    BadElement { code: u32, order: u32 },
    #[error("not a subfield: {0}")]
    NotASubfield(String),
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("template labels clash with the instance: {0}")]
    LabelClash(String),
    #[error("invalid template: {0}")]
    InvalidTemplate(String),
    #[error("matrix does not conform to the template ({0})")]
    NotConforming(String),
    #[error("bad column assignment: {0}")]
    BadAssignment(String),
    #[error("code has length zero")]
    EmptyCode,
    #[error("argument outside the domain: {0}")]
    DomainError(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("operation requires a binary code, got a field of order {0}")]
    NotBinary(u32),
    #[error("defect {d} outside 0..={max}")]
    DefectOutOfRange { d: u128, max: u128 },
    #[error("rank function violates the matroid axioms: {0}")]
    NotAMatroid(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn cap(what: &'static str, value: impl Into<u128>, limit: impl Into<u128>) -> Self {
        Error::CapExceeded {
            what,
            value: value.into(),
            limit: limit.into(),
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// True for the resource-limit error, which front ends report separately
    /// from bad input.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
