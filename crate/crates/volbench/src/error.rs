use thiserror::Error;

/// Failure to read one of the file formats.
#[derive(Debug, Error)]
pub enum FormatError {
    /// Not well-formed text (JSON syntax, CSV quoting, I/O).
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed, but fields are missing, extra or of the wrong shape.
    #[error("schema error: {0}")]
    Schema(String),
    /// Structurally fine, but the content breaks a domain invariant.
    #[error("invariant error: {0}")]
    Invariant(String),
}

/// Decodes in two passes so that every shape problem (including wrong array
/// arity, which serde reports as a syntax error) is a schema error.
pub(crate) fn decode_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, FormatError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| FormatError::Parse(e.to_string()))?;
    serde_json::from_value(value).map_err(|e| FormatError::Schema(e.to_string()))
}
