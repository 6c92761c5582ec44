use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("predicate `{pred}` used with arity {first} and with arity {second}")]
    ArityConflict {
        pred: String,
        first: usize,
        second: usize,
    },

    #[error("formula is not in prenex form: {0}")]
    NotPrenex(String),

    #[error("free variable `{0}`")]
    FreeVariable(String),

    #[error("model line {line}: {msg}")]
    ModelFormat { line: usize, msg: String },

    #[error("universe is empty")]
    EmptyUniverse,

    #[error("unknown constant `{0}` (not a universe element and not bound by a quantifier)")]
    UnknownConstant(String),

    #[error("predicate `{pred}` has arity {declared} but is used with {used} arguments")]
    ArityMismatch {
        pred: String,
        declared: usize,
        used: usize,
    },

    #[error("predicate `{0}` declared twice")]
    DuplicatePredicate(String),

    #[error("undeclared predicate `{0}`")]
    UndeclaredPredicate(String),

    #[error("atom `{atom}` mentions variable `{found}`; only `{expected}` may occur")]
    ForeignVariable {
        atom: String,
        expected: String,
        found: String,
    },

    #[error("formula has {count} distinct atoms; at most {max} are supported here")]
    TooManyAtoms { count: usize, max: usize },

    #[error("universe size {requested} exceeds the configured cap of {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn model(line: usize, msg: impl Into<String>) -> Self {
        Error::ModelFormat {
            line,
            msg: msg.into(),
        }
    }

    /// True for syntax-level failures: malformed formula or model text, or a
    /// formula outside the accepted shape.
    pub fn is_syntactic(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::ArityConflict { .. }
                | Error::NotPrenex(_)
                | Error::ModelFormat { .. }
                | Error::DuplicatePredicate(_)
        )
    }
}
