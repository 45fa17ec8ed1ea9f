//! One-dimensional spectral analysis built from first principles.
//!
//! The crate covers the classical toolchain for sampled real-valued data:
//!
//! - forward/inverse DFT with the `1/N` forward normalization (the zero bin
//!   is the signal mean), arbitrary lengths in O(N log N);
//! - centered spectra via `(-1)^n` input modulation and the matching
//!   frequency grids;
//! - quadrature demodulation of a single component;
//! - Hilbert transform, analytic signal and envelope demodulation;
//! - circular FFT convolution, polynomial multiplication, window functions,
//!   moving averages with phase restoration, polynomial band passes,
//!   spectral derivatives and autocorrelation denoising;
//! - waterfall time-frequency diagrams from band-passed envelopes;
//! - the Lomb-Scargle periodogram for gapped and irregular sampling, with
//!   false-alarm probabilities and reconstruction from significant peaks.
//!
//! Everything is a pure function of its inputs; values are immutable after
//! construction and safe to share across threads. Waterfall rows and
//! periodogram columns are evaluated in parallel with deterministic
//! assembly.

// negated comparisons are used on purpose in parameter guards: unlike the
// suggested rewrite, `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod error;
pub mod fft;
pub mod filtering;
pub mod lomb;
pub mod noise;
pub mod signal;
pub mod waterfall;

pub use analytic::{analytic_signal, envelope, hilbert, AnalyticSignal};
pub use error::{Result, SpectralError};
pub use fft::{dft_forward, dft_inverse};
pub use filtering::{
    acf_denoise, convolve_fft, filter_fft, moving_average, poly_multiply,
    poly_multiply_fft_cost, spectral_derivative, window_blackman, window_hamming, window_tukey,
    FilterSpec, Kernel,
};
pub use lomb::{
    false_alarm_probability, filter_lomb, lomb_scargle, lomb_scargle_fast, select_peaks,
    LombPeriodogram, Peak, PeakSet, PhaseMode,
};
pub use signal::{frequency_grid, qdt_demodulate, spec_fft, spec_ifft, Signal, Spectrum, TimeDomain};
pub use waterfall::{
    bandwidth_schedule, fast_envelope, to_period_axis, waterfall, AxisMode, WaterfallDiagram,
};
