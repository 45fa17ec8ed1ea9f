//! Spectral-domain convolution and filtering: circular convolution,
//! polynomial multiplication, window functions, moving average with phase
//! restoration, polynomial band-pass filtering, the spectral derivative and
//! autocorrelation-based denoising.
//!
//! All filtering here is circular: the signal is treated as one period of a
//! periodic sequence, so kernels wrap around at the boundaries. There is no
//! zero-padded linear mode.

use crate::analytic::one_sided_spectrum;
use crate::error::{Result, SpectralError};
use crate::fft::{dft_forward, dft_inverse, to_complex};
use crate::signal::Signal;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Band-pass description: weight one on `|f - fc| <= bw`, falling to zero as
/// a polynomial of degree `degree` over a further `bw/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterSpec {
    fc: f64,
    bw: f64,
    degree: u32,
}

impl FilterSpec {
    pub fn new(fc: f64, bw: f64, degree: u32) -> Result<Self> {
        if !fc.is_finite() || !bw.is_finite() {
            return Err(SpectralError::NonFiniteSample);
        }
        if bw <= 0.0 {
            return Err(SpectralError::InvalidParameter(
                "bandwidth must be positive".into(),
            ));
        }
        if degree < 1 {
            return Err(SpectralError::InvalidParameter(
                "polynomial degree must be at least 1".into(),
            ));
        }
        Ok(Self { fc, bw, degree })
    }

    pub fn fc(&self) -> f64 {
        self.fc
    }

    pub fn bw(&self) -> f64 {
        self.bw
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Spectral weight at frequency `f`.
    ///
    /// The pass region `|f - fc| <= bw` is flat at one. Beyond it the weight
    /// falls as `(1 - t)^degree` with `t = (|f - fc| - bw)/(bw/2)`, reaching
    /// zero at `|f - fc| = 1.5*bw`; large degrees approach the ideal brick
    /// wall over the pass region.
    pub fn weight(&self, f: f64) -> f64 {
        let d = (f - self.fc).abs();
        if d <= self.bw {
            return 1.0;
        }
        let t = (d - self.bw) / (self.bw / 2.0);
        if t >= 1.0 {
            0.0
        } else {
            (1.0 - t).powi(self.degree as i32)
        }
    }
}

/// Real filter taps for time-domain kernels.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    taps: Vec<f64>,
}

impl Kernel {
    pub fn new(taps: Vec<f64>) -> Result<Self> {
        if taps.is_empty() {
            return Err(SpectralError::EmptySignal);
        }
        if taps.iter().any(|t| !t.is_finite()) {
            return Err(SpectralError::NonFiniteSample);
        }
        Ok(Self { taps })
    }

    /// Boxcar kernel of `len` taps, each `1/len`.
    pub fn moving_average(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(SpectralError::EmptySignal);
        }
        Self::new(vec![1.0 / len as f64; len])
    }

    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taps.is_empty()
    }
}

/// Circular convolution of two equally long real sequences via the transform
/// pair: the spectra are multiplied element-wise and scaled so the result
/// equals the direct sum `c[n] = sum_k a[k]*b[(n-k) mod N]`.
pub fn convolve_fft(a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    if a.len() != b.len() {
        return Err(SpectralError::UnpaddedConvolution);
    }
    let n = a.len() as f64;
    let fa = dft_forward(&to_complex(a))?;
    let fb = dft_forward(&to_complex(b))?;
    let product: Vec<Complex64> = fa.iter().zip(&fb).map(|(x, y)| x * y).collect();
    let back = dft_inverse(&product)?;
    Ok(back.iter().map(|v| v.re * n).collect())
}

/// Polynomial product via [`convolve_fft`]: both coefficient vectors are
/// zero-padded to the result length `deg(a) + deg(b) + 1`, where the circular
/// convolution coincides with the linear one.
pub fn poly_multiply(a_coeffs: &[f64], b_coeffs: &[f64]) -> Vec<f64> {
    if a_coeffs.is_empty() || b_coeffs.is_empty() {
        return Vec::new();
    }
    let out_len = a_coeffs.len() + b_coeffs.len() - 1;
    let mut a = a_coeffs.to_vec();
    let mut b = b_coeffs.to_vec();
    a.resize(out_len, 0.0);
    b.resize(out_len, 0.0);
    convolve_fft(&a, &b).expect("padded inputs are valid")
}

/// Flop estimate for degree-`n` polynomial multiplication through the FFT:
/// `ceil(3*(2n+1)*log2(2n+1))` — three transforms of the padded length.
pub fn poly_multiply_fft_cost(degree: u64) -> u64 {
    let m = (2 * degree + 1) as f64;
    (3.0 * m * m.log2()).ceil() as u64
}

/// Tukey window evaluated at the given sample positions: flat top with a
/// raised-cosine taper over the fraction `alpha` of the span at each end.
pub fn window_tukey(positions: &[f64], alpha: f64) -> Result<Vec<f64>> {
    if positions.is_empty() {
        return Err(SpectralError::EmptySignal);
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(SpectralError::InvalidParameter(
            "tukey alpha must lie in (0, 1]".into(),
        ));
    }
    let n = positions.len();
    if n == 1 {
        return Ok(vec![1.0]);
    }
    let lo = positions[0];
    let span = positions[n - 1] - lo;
    if !(span > 0.0) {
        return Err(SpectralError::InvalidParameter(
            "positions must span a non-zero range".into(),
        ));
    }
    Ok(positions
        .iter()
        .map(|&x| {
            let u = (x - lo) / span;
            let ramp = |d: f64| {
                if d >= alpha {
                    1.0
                } else {
                    0.5 * (1.0 - (PI * d / alpha).cos())
                }
            };
            ramp(u).min(ramp(1.0 - u))
        })
        .collect())
}

/// Hamming window, `0.54 - 0.46*cos(2*pi*k/(n-1))`.
pub fn window_hamming(n: usize) -> Result<Vec<f64>> {
    symmetric_window(n, |x| 0.54 - 0.46 * x.cos())
}

/// Blackman window, `0.42 - 0.5*cos(2*pi*k/(n-1)) + 0.08*cos(4*pi*k/(n-1))`.
pub fn window_blackman(n: usize) -> Result<Vec<f64>> {
    symmetric_window(n, |x| 0.42 - 0.5 * x.cos() + 0.08 * (2.0 * x).cos())
}

fn symmetric_window(n: usize, shape: impl Fn(f64) -> f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(SpectralError::EmptySignal);
    }
    if n == 1 {
        return Ok(vec![1.0]);
    }
    Ok((0..n)
        .map(|k| shape(2.0 * PI * k as f64 / (n - 1) as f64))
        .collect())
}

/// Derivative through the spectral domain: the centered spectrum is
/// multiplied by `i*2*pi*f` and transformed back; the real part is returned.
/// Non-periodic input must be windowed by the caller first.
pub fn spectral_derivative(signal: &Signal) -> Result<Signal> {
    signal.require_uniform()?;
    let spec = crate::signal::spec_fft(signal, true)?;
    let mut amps = spec.amplitudes().to_vec();
    for (a, &f) in amps.iter_mut().zip(spec.frequencies()) {
        *a *= Complex64::new(0.0, 2.0 * PI * f);
    }
    // undo the centering modulation after the back transform
    let mut values = dft_inverse(&amps)?;
    for v in values.iter_mut().skip(1).step_by(2) {
        *v = -*v;
    }
    Signal::new(
        signal.positions().to_vec(),
        values.iter().map(|v| v.re).collect(),
    )
}

/// Circular moving average through the spectral domain.
///
/// The kernel is zero-padded to the signal length and both spectra are
/// multiplied. With `phase_correct` the spectrum is rotated by the linear
/// phase `exp(i*2*pi*m*floor(Nk/2)/N)`, shifting the output back by the
/// kernel's group delay so it aligns with the input. For even kernel
/// lengths the true delay is `(Nk-1)/2`, half a sample less than the
/// correction applies; odd lengths align exactly.
pub fn moving_average(signal: &Signal, kernel: &Kernel, phase_correct: bool) -> Result<Signal> {
    signal.require_uniform()?;
    let n = signal.len();
    if kernel.len() > n {
        return Err(SpectralError::KernelTooLong {
            kernel: kernel.len(),
            signal: n,
        });
    }
    let mut padded = kernel.taps().to_vec();
    padded.resize(n, 0.0);
    let fs = dft_forward(&to_complex(signal.values()))?;
    let fk = dft_forward(&to_complex(&padded))?;
    let shift = (kernel.len() / 2) as f64;
    let mut product: Vec<Complex64> = fs
        .iter()
        .zip(&fk)
        .map(|(a, b)| a * b * n as f64)
        .collect();
    if phase_correct {
        for (m, v) in product.iter_mut().enumerate() {
            *v *= Complex64::from_polar(1.0, 2.0 * PI * m as f64 * shift / n as f64);
        }
    }
    let values = dft_inverse(&product)?;
    Signal::new(
        signal.positions().to_vec(),
        values.iter().map(|v| v.re).collect(),
    )
}

/// Band-pass filter on the one-sided analytic spectrum.
///
/// The weight of `spec` is applied to the analytic spectrum bins, the result
/// is transformed back and the real part returned. Degrees around ten and
/// above approximate the ideal band pass.
pub fn filter_fft(signal: &Signal, spec: &FilterSpec) -> Result<Signal> {
    let ts = signal.require_uniform()?;
    let n = signal.len();
    let mut amps = one_sided_spectrum(signal)?;
    let df = 1.0 / (ts * n as f64);
    for (m, a) in amps.iter_mut().enumerate() {
        *a *= spec.weight(m as f64 * df);
    }
    let values = dft_inverse(&amps)?;
    Signal::new(
        signal.positions().to_vec(),
        values.iter().map(|v| v.re).collect(),
    )
}

/// Noise reduction by self-similarity: spectral components whose
/// autocorrelation magnitude `|S*conj(S)|` falls below one standard
/// deviation of all such magnitudes are zeroed; surviving components keep
/// their phase. Works on the analytic spectrum so amplitudes read in
/// natural units.
pub fn acf_denoise(signal: &Signal) -> Result<Signal> {
    signal.require_uniform()?;
    if signal.len() < 3 {
        return Err(SpectralError::TooShort {
            needed: 3,
            got: signal.len(),
        });
    }
    let amps = one_sided_spectrum(signal)?;
    let weights = acf_weights(&amps);
    let filtered: Vec<Complex64> = amps
        .iter()
        .zip(&weights)
        .map(|(a, &w)| a * w)
        .collect();
    let values = dft_inverse(&filtered)?;
    Signal::new(
        signal.positions().to_vec(),
        values.iter().map(|v| v.re).collect(),
    )
}

/// Survivor mask of [`acf_denoise`]: one where `|ACF|` is at least the
/// sample standard deviation of all `|ACF|` bins, zero elsewhere.
pub fn acf_weights(spectrum: &[Complex64]) -> Vec<f64> {
    let acf: Vec<f64> = spectrum.iter().map(|a| a.norm_sqr()).collect();
    let n = acf.len() as f64;
    let mean = acf.iter().sum::<f64>() / n;
    let var = acf.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    let sd = var.sqrt();
    acf.iter()
        .map(|&v| if v < sd { 0.0 } else { 1.0 })
        .collect()
}
