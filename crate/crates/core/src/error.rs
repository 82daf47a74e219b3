use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("width {width} exceeds the {engine} capacity of {cap} qubits")]
    Capacity {
        engine: &'static str,
        width: usize,
        cap: usize,
    },

    #[error("qubit index {index} out of range for width {width}")]
    Index { index: usize, width: usize },

    #[error("circuit invariant violated: {0}")]
    Invariant(String),

    #[error("confidence interval undefined: pooled HOP {pooled} over {samples} samples")]
    Degenerate { pooled: f64, samples: usize },

    #[error("2^{0} does not fit in 63 bits")]
    Overflow(u32),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}
