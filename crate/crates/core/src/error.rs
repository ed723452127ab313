use crate::symbolic::SymbolString;

/// Errors produced by the library.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// An argument fell outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative numeric procedure failed to converge.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// The request exceeds a configured resource limit.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// `x = 0` is the neutral fixed point and belongs to no half-open cell.
    #[error("x = 0 belongs to no partition cell")]
    FixedPointCell,

    /// A point fell below the deepest resolved preimage; the ladder must be
    /// built deeper to index it.
    #[error("point below resolved ladder depth {depth}")]
    LadderDepth { depth: usize },

    /// An orbit reached the fixed point exactly; the symbols accumulated so
    /// far are returned with the error.
    #[error("orbit hit the fixed point after {} symbols", partial.len())]
    OrbitHitZero { partial: SymbolString },

    /// A symbol string violates the successor rule.
    #[error("inadmissible symbol pair at position {position}")]
    Inadmissible { position: usize },

    /// Theorem-style bounds need at least one completed run.
    #[error("bounds undefined: compression contains no completed run")]
    EmptyCompression,

    /// The asymptotic prediction is not defined at this tail exponent.
    #[error("no asymptotic prediction at tail exponent {exponent}")]
    UnsupportedRegime { exponent: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
