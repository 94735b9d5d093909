//! Crate-wide error type.

use std::path::PathBuf;

/// Errors produced by the revoice library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("file not found: {0}")]
    MissingFile(PathBuf),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed WAV file: {0}")]
    MalformedWav(String),

    #[error("unsupported WAV encoding: format tag {format_tag}, {bits_per_sample} bits/sample")]
    UnsupportedWavEncoding { format_tag: u16, bits_per_sample: u16 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("input too short: {got} samples, need at least {need}")]
    ShortInput { got: usize, need: usize },

    #[error("window/hop does not satisfy overlap-add reconstruction: {0}")]
    ColaViolation(String),

    #[error("negative magnitude at frame {frame}, bin {bin}")]
    NegativeMagnitude { frame: usize, bin: usize },

    #[error("lag {max_lag} out of range for frame of {frame_len} samples")]
    LagOutOfRange { max_lag: usize, frame_len: usize },

    #[error("invalid frequency band: {0}")]
    InvalidBand(String),

    #[error("polynomial root finding did not converge: {0}")]
    RootFinding(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("training aborted: loss is not finite at step {step}")]
    NonFiniteLoss { step: usize },

    #[error("malformed {format} data: {detail}")]
    MalformedFormat { format: &'static str, detail: String },

    #[error("word span {word_id} is invalid: start {start} >= end {end}")]
    InvalidSpan { word_id: u32, start: u32, end: u32 },

    #[error("span [{start}, {end}) exceeds {frames} feature frames")]
    SpanOutOfRange { start: u32, end: u32, frames: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
