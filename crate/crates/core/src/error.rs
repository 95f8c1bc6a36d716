use thiserror::Error;

/// Errors raised while building, reading or combining finite categories.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("missing composite {g} . {f}")]
    MissingComposite { g: String, f: String },
    #[error("composite {g} . {f} = {gf} has the wrong endpoints")]
    CompositeTyping { g: String, f: String, gf: String },
    #[error("associativity fails for ({h}, {g}, {f})")]
    AssociativityViolation { h: String, g: String, f: String },
    #[error("identity law fails at {f}")]
    IdentityViolation { f: String },
    #[error("dangling index: {0}")]
    DanglingIndex(String),
    #[error("duplicate name: {0}")]
    DuplicateName(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("size cap exceeded in {stage}: {detail}")]
    SizeCapExceeded { stage: String, detail: String },
    #[error("source/target mismatch: {0}")]
    SourceTargetMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("transports fail functoriality at ({alpha}, {beta})")]
    FunctorialityViolation { alpha: String, beta: String },
    #[error("fiber mismatch: {0}")]
    FiberMismatch(String),
    #[error("not a pseudo-final object: {0}")]
    NotPseudoFinal(String),
    #[error("construction mismatch: {0}")]
    ConstructionMismatch(String),
    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
