//! Sampled-signal and spectrum data model, the centered/uncentered transform
//! pair built on it, frequency grids and single-frequency quadrature
//! demodulation.

use crate::error::{Result, SpectralError};
use crate::fft::{dft_forward, dft_inverse, to_complex};
use num_complex::Complex64;

/// Relative spacing tolerance used to classify a grid as uniform.
const UNIFORM_TOL: f64 = 1e-9;

/// An ordered series of real samples together with their sample positions.
///
/// Positions may carry time or space units; they must be finite and strictly
/// increasing. When all spacings agree to within `1e-9` relative, the signal
/// is flagged uniform and carries the derived sampling interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    positions: Vec<f64>,
    values: Vec<f64>,
    sample_interval: Option<f64>,
}

impl Signal {
    pub fn new(positions: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if positions.is_empty() {
            return Err(SpectralError::EmptySignal);
        }
        if positions.len() != values.len() {
            return Err(SpectralError::LengthMismatch {
                expected: positions.len(),
                actual: values.len(),
            });
        }
        if positions.iter().chain(values.iter()).any(|v| !v.is_finite()) {
            return Err(SpectralError::NonFiniteSample);
        }
        if positions.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SpectralError::InvalidParameter(
                "positions must be strictly increasing".into(),
            ));
        }
        let sample_interval = derive_interval(&positions);
        Ok(Self {
            positions,
            values,
            sample_interval,
        })
    }

    /// Uniform grid starting at `start` with spacing `ts`.
    pub fn uniform(start: f64, ts: f64, values: Vec<f64>) -> Result<Self> {
        if !(ts > 0.0) || !ts.is_finite() || !start.is_finite() {
            return Err(SpectralError::InvalidParameter(
                "sampling interval must be positive and finite".into(),
            ));
        }
        let positions = (0..values.len()).map(|n| start + n as f64 * ts).collect();
        Self::new(positions, values)
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty input
    }

    pub fn is_uniform(&self) -> bool {
        self.sample_interval.is_some()
    }

    /// Derived sampling interval; `None` for irregular grids and for single
    /// samples, where no spacing exists to derive it from.
    pub fn sample_interval(&self) -> Option<f64> {
        self.sample_interval
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    pub(crate) fn require_uniform(&self) -> Result<f64> {
        self.sample_interval.ok_or(SpectralError::NonUniformSampling)
    }
}

fn derive_interval(positions: &[f64]) -> Option<f64> {
    if positions.len() < 2 {
        return None;
    }
    let n = positions.len() as f64;
    let ts = (positions[positions.len() - 1] - positions[0]) / (n - 1.0);
    let ok = positions
        .windows(2)
        .all(|w| ((w[1] - w[0]) - ts).abs() <= UNIFORM_TOL * ts);
    ok.then_some(ts)
}

/// Complex spectrum of a uniformly sampled signal.
///
/// `amplitudes` follow the crate's 1/N forward convention, so the value at
/// `f = 0` is the signal mean. `centered` records whether the grid runs
/// symmetrically around zero (negative frequencies first) or from zero up to
/// `(N-1)/(Ts*N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    frequencies: Vec<f64>,
    amplitudes: Vec<Complex64>,
    centered: bool,
    n_samples: usize,
    sample_interval: f64,
    origin: f64,
}

impl Spectrum {
    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn centered(&self) -> bool {
        self.centered
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn sample_interval(&self) -> f64 {
        self.sample_interval
    }

    /// Position of the first sample of the originating signal.
    pub fn origin(&self) -> f64 {
        self.origin
    }
}

/// Back-transform output: real samples when the imaginary residue is
/// negligible, complex samples otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum TimeDomain {
    Real(Signal),
    Complex {
        positions: Vec<f64>,
        values: Vec<Complex64>,
    },
}

impl TimeDomain {
    pub fn into_real(self) -> Option<Signal> {
        match self {
            TimeDomain::Real(s) => Some(s),
            TimeDomain::Complex { .. } => None,
        }
    }
}

/// DFT bin frequencies for `n` samples spaced `ts` apart.
///
/// Uncentered: `m/(ts*n)` for `m = 0..n`. Centered: `(m - floor(n/2))/(ts*n)`,
/// which puts `f = 0` in the middle of the grid (exactly, for even `n`).
pub fn frequency_grid(n: usize, ts: f64, centered: bool) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(SpectralError::EmptySignal);
    }
    if !(ts > 0.0) || !ts.is_finite() {
        return Err(SpectralError::InvalidParameter(
            "sampling interval must be positive".into(),
        ));
    }
    let df = 1.0 / (ts * n as f64);
    let offset = if centered { (n / 2) as f64 } else { 0.0 };
    Ok((0..n).map(|m| (m as f64 - offset) * df).collect())
}

/// Spectrum of a uniform signal, optionally centered around `f = 0`.
///
/// Centering multiplies the samples by the alternating series `(-1)^n` before
/// the transform, which shifts the spectrum by half the sampling frequency.
/// For even `n` the bin at `f = 0` then holds the signal mean exactly; for odd
/// `n` the shift is half a bin off-grid, a limitation inherent to the
/// modulation trick.
pub fn spec_fft(signal: &Signal, center: bool) -> Result<Spectrum> {
    let ts = signal.require_uniform()?;
    let mut values = to_complex(signal.values());
    if center {
        modulate_alternating(&mut values);
    }
    let amplitudes = dft_forward(&values)?;
    let n = signal.len();
    Ok(Spectrum {
        frequencies: frequency_grid(n, ts, center)?,
        amplitudes,
        centered: center,
        n_samples: n,
        sample_interval: ts,
        origin: signal.positions()[0],
    })
}

/// Inverts [`spec_fft`], undoing the `(-1)^n` modulation for centered input.
///
/// Returns real samples when the imaginary residue is below `1e-9` of the
/// largest magnitude; otherwise the complex samples are kept.
pub fn spec_ifft(spectrum: &Spectrum) -> Result<TimeDomain> {
    validate_grid(spectrum)?;
    let mut values = dft_inverse(&spectrum.amplitudes)?;
    if spectrum.centered {
        modulate_alternating(&mut values);
    }
    let n = spectrum.n_samples;
    let positions: Vec<f64> = (0..n)
        .map(|k| spectrum.origin + k as f64 * spectrum.sample_interval)
        .collect();
    let max_mag = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let max_imag = values.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    if max_imag <= 1e-9 * max_mag.max(f64::MIN_POSITIVE) {
        let real = values.iter().map(|v| v.re).collect();
        Ok(TimeDomain::Real(Signal::new(positions, real)?))
    } else {
        Ok(TimeDomain::Complex { positions, values })
    }
}

fn modulate_alternating(values: &mut [Complex64]) {
    for v in values.iter_mut().skip(1).step_by(2) {
        *v = -*v;
    }
}

fn validate_grid(spectrum: &Spectrum) -> Result<()> {
    let n = spectrum.n_samples;
    if n != spectrum.amplitudes.len() || n != spectrum.frequencies.len() {
        return Err(SpectralError::InconsistentSpectrum(format!(
            "n_samples = {n} does not match {} amplitudes / {} frequencies",
            spectrum.amplitudes.len(),
            spectrum.frequencies.len()
        )));
    }
    let expected = frequency_grid(n, spectrum.sample_interval, spectrum.centered)?;
    let df = 1.0 / (spectrum.sample_interval * n as f64);
    let ok = spectrum
        .frequencies
        .iter()
        .zip(&expected)
        .all(|(a, b)| (a - b).abs() <= 1e-9 * df);
    if !ok {
        return Err(SpectralError::InconsistentSpectrum(
            "frequency grid does not match n_samples and sampling interval".into(),
        ));
    }
    Ok(())
}

/// Quadrature demodulation: amplitude and phase of the component at angular
/// frequency `omega0`, from the in-phase and quadrature correlation sums
///
/// ```text
/// R = (1/N) * sum s[n]*cos(omega0*t[n]),   I = (1/N) * sum s[n]*sin(omega0*t[n])
/// A = 2*sqrt(R^2 + I^2),                   phi = atan2(I, R)
/// ```
///
/// Exact when `omega0` matches a grid frequency with an integer number of
/// periods in the window; otherwise biased by the truncation residue of the
/// finite observation range.
pub fn qdt_demodulate(signal: &Signal, omega0: f64) -> Result<(f64, f64)> {
    signal.require_uniform()?;
    if signal.len() < 2 {
        return Err(SpectralError::TooShort {
            needed: 2,
            got: signal.len(),
        });
    }
    if !omega0.is_finite() {
        return Err(SpectralError::InvalidParameter(
            "omega0 must be finite".into(),
        ));
    }
    let n = signal.len() as f64;
    let mut r = 0.0;
    let mut i = 0.0;
    for (&t, &s) in signal.positions().iter().zip(signal.values()) {
        let (sin, cos) = (omega0 * t).sin_cos();
        r += s * cos;
        i += s * sin;
    }
    r /= n;
    i /= n;
    Ok((2.0 * (r * r + i * i).sqrt(), i.atan2(r)))
}
