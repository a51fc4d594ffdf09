use thiserror::Error;

/// Errors produced by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("structure error: {0}")]
    Structure(String),
    #[error("embedding error: {0}")]
    Embedding(String),
    #[error("graph is disconnected: {0}")]
    Disconnected(String),
    #[error("width error: {0}")]
    Width(String),
    #[error("internal consistency check `{claim}` failed: {detail}")]
    Consistency { claim: &'static str, detail: String },
    #[error("generation failed: {0}")]
    Generation(String),
    #[error("not 1-plane: {0}")]
    NotOnePlane(String),
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        source: Box<Error>,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn malformed<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Malformed(msg.into()))
}

pub(crate) fn consistency(claim: &'static str, detail: impl Into<String>) -> Error {
    Error::Consistency {
        claim,
        detail: detail.into(),
    }
}
