use thiserror::Error;

/// Errors produced while parsing, planning, reading, or generating code.
#[derive(Debug, Error)]
pub enum DfmlError {
    #[error("xml syntax: {0}")]
    Syntax(String),

    #[error("unknown element <{0}>")]
    UnknownElement(String),

    #[error("missing required attribute `{attr}` on <{element}>")]
    MissingAttribute { element: String, attr: String },

    #[error("invalid {what}: {detail}")]
    Invalid { what: String, detail: String },

    #[error("unsupported feature: {0}")]
    Unsupported(String),

    #[error("inconsistent description at {path}: {detail}")]
    Inconsistent { path: String, detail: String },

    #[error("unreachable successors: {path} is open-ended but is not the last sibling")]
    UnreachableSuccessors { path: String },

    #[error("unsupported layout for code generation: {0}")]
    UnsupportedLayout(String),

    #[error("unknown emission target `{0}`")]
    UnknownTarget(String),

    #[error("read error at {path}: {detail}")]
    Read { path: String, detail: String },

    #[error("invalid selection: {0}")]
    Selection(String),
}

impl DfmlError {
    pub(crate) fn invalid(what: impl Into<String>, detail: impl Into<String>) -> Self {
        DfmlError::Invalid {
            what: what.into(),
            detail: detail.into(),
        }
    }

    pub(crate) fn read(path: impl Into<String>, detail: impl Into<String>) -> Self {
        DfmlError::Read {
            path: path.into(),
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, DfmlError>;
