//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O: {0}")]
    Io(#[from] std::io::Error),

    #[error("node count must be at least {min}, got {got}")]
    NodeCount { got: usize, min: usize },

    #[error("edge density must be in [0, 1], got {0}")]
    EdgeDensity(f64),

    #[error("self-loop at node {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("edge endpoint out of range: ({u}, {v}) with {n} nodes")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },

    #[error("malformed graph header: {0}")]
    MalformedHeader(String),

    #[error("edge count mismatch: header says {expected}, found {got}")]
    EdgeCountMismatch { expected: usize, got: usize },

    #[error("{path}:{line}: {source}")]
    InFile {
        path: String,
        line: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("spin assignment length {got} does not match node count {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("spin value must be +1 or -1, got {0}")]
    BadSpin(i8),

    #[error("graph too large for exact solver: {n} nodes (limit {limit})")]
    TooLargeForExact { n: usize, limit: usize },

    #[error("invalid oscillator parameters: {0}")]
    InvalidParams(String),

    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),

    #[error("oscillator {osc} never completed a cycle ({flips} comparator flips seen)")]
    NonOscillation { osc: usize, flips: usize },

    #[error("numerical instability at t = {t:.6e} s: |v[{osc}]| = {v:.3e} V")]
    Instability { osc: usize, t: f64, v: f64 },

    #[error(
        "oscillators not frequency-synchronized: period spread {spread_pct:.2}% exceeds {limit_pct:.2}%"
    )]
    Unsynchronized { spread_pct: f64, limit_pct: f64 },

    #[error("oscillator {osc} has {got} usable flip events, need at least {need}")]
    NotEnoughEvents { osc: usize, got: usize, need: usize },

    #[error("no dominant spectral peak in waveform")]
    FlatSpectrum,

    #[error("waveform too short: {got:.1} fundamental periods, need at least {need:.0}")]
    WaveformTooShort { got: f64, need: f64 },

    #[error("invalid waveform spec: {0}")]
    InvalidWaveform(String),

    #[error("config: {0}")]
    Config(String),
}

impl Error {
    /// Attach file/line context to an error raised while parsing a file.
    pub(crate) fn in_file(self, path: &std::path::Path, line: usize) -> Error {
        Error::InFile {
            path: path.display().to_string(),
            line,
            source: Box::new(self),
        }
    }
}
