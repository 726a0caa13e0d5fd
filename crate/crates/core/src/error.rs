use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),

    #[error("space error: {0}")]
    Space(String),

    #[error("signature mismatch at leg {leg}: expected {expected}, found {found}")]
    Signature {
        leg: usize,
        expected: String,
        found: String,
    },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("contraction plan error: {0}")]
    Plan(String),

    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("role mismatch: {0}")]
    RoleMismatch(String),

    #[error("dangling Sweedler index `{0}`: {1}")]
    DanglingIndex(String, String),

    #[error("ill-formed Sweedler expression: {0}")]
    Sweedler(String),

    #[error("unbound generator `{0}`")]
    Unbound(String),

    #[error("bundle is missing roles: {}", .0.join(", "))]
    MissingRoles(Vec<String>),

    #[error("prerequisite {id} fails: {detail}")]
    Prerequisite { id: String, detail: String },

    #[error("unknown condition or gate `{0}`")]
    UnknownId(String),

    #[error("unknown construction `{0}`")]
    UnknownConstruction(String),

    #[error("infeasible request: {0}")]
    Infeasible(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
