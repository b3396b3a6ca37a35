use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("syntax error at line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("missing field `{0}`")]
    MissingField(String),
    #[error("field `{field}`: {msg}")]
    BadField { field: String, msg: String },
    #[error("problem kind `{found}` given to the `{expected}` command")]
    KindMismatch { expected: String, found: String },
    #[error("hypothesis failure: {0}")]
    Hypothesis(#[from] rolle_core::Error),
}

impl CliError {
    pub fn field(field: impl Into<String>, msg: impl Into<String>) -> Self {
        CliError::BadField {
            field: field.into(),
            msg: msg.into(),
        }
    }

    /// 1 for unreadable or invalid input, 2 when a computation's hypotheses cannot be met.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Hypothesis(_) => 2,
            _ => 1,
        }
    }
}
