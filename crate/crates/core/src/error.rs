use std::fmt;

/// Error type shared by all operations in this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralError {
    /// Input contained no samples.
    EmptySignal,
    /// A sample, coefficient or parameter was NaN or infinite.
    NonFiniteSample,
    /// Operation is only defined for uniformly sampled signals.
    NonUniformSampling,
    /// Sequences that must have equal length do not.
    LengthMismatch { expected: usize, actual: usize },
    /// Convolution inputs must be zero-padded to a common length by the caller.
    UnpaddedConvolution,
    /// Filter kernel has more taps than the signal has samples.
    KernelTooLong { kernel: usize, signal: usize },
    /// Not enough samples for the requested operation.
    TooShort { needed: usize, got: usize },
    /// A numeric parameter is outside its valid range.
    InvalidParameter(String),
    /// Spectrum fields are mutually inconsistent (grid vs. sample count).
    InconsistentSpectrum(String),
    /// Constant data has zero variance; the periodogram is undefined.
    ZeroVariance,
    /// No periodogram peak passed the significance threshold.
    NoSignificantComponent,
    /// The waterfall diagram is already on a period axis.
    AlreadyPeriodAxis,
}

impl fmt::Display for SpectralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralError::EmptySignal => write!(f, "empty signal"),
            SpectralError::NonFiniteSample => write!(f, "non-finite sample"),
            SpectralError::NonUniformSampling => {
                write!(f, "requires uniform sampling; use lomb module")
            }
            SpectralError::LengthMismatch { expected, actual } => {
                write!(f, "length mismatch: expected {expected}, got {actual}")
            }
            SpectralError::UnpaddedConvolution => write!(f, "pad to equal length"),
            SpectralError::KernelTooLong { kernel, signal } => {
                write!(f, "kernel length {kernel} exceeds signal length {signal}")
            }
            SpectralError::TooShort { needed, got } => {
                write!(f, "needs at least {needed} samples, got {got}")
            }
            SpectralError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            SpectralError::InconsistentSpectrum(msg) => write!(f, "inconsistent spectrum: {msg}"),
            SpectralError::ZeroVariance => write!(f, "zero variance"),
            SpectralError::NoSignificantComponent => write!(f, "no significant component"),
            SpectralError::AlreadyPeriodAxis => write!(f, "diagram is already on a period axis"),
        }
    }
}

impl std::error::Error for SpectralError {}

pub type Result<T> = std::result::Result<T, SpectralError>;
