//! Discrete Fourier transform with the 1/N forward normalization.
//!
//! The convention used throughout this crate differs from the common
//! unnormalized one and is fixed as
//!
//! ```text
//! forward:  S[m] = (1/N) * sum_n s[n] * exp(-i*2*pi*m*n/N)
//! inverse:  s[n] =         sum_m S[m] * exp(+i*2*pi*m*n/N)
//! ```
//!
//! so `S[0]` always equals the arithmetic mean of the input and the inverse
//! carries no scale factor. Any length is supported in O(N log N): powers of
//! two run through an iterative radix-2 kernel, every other length (primes
//! included) through Bluestein's chirp-z reduction onto a power-of-two grid.

use crate::error::{Result, SpectralError};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Forward transform, `1/N` normalized. `S[0]` is the mean of the input.
pub fn dft_forward(values: &[Complex64]) -> Result<Vec<Complex64>> {
    check_input(values)?;
    let n = values.len() as f64;
    let mut out = transform(values, -1.0);
    for v in &mut out {
        *v /= n;
    }
    Ok(out)
}

/// Back transform; plain coefficient sum, no scale factor.
pub fn dft_inverse(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    check_input(coeffs)?;
    Ok(transform(coeffs, 1.0))
}

fn check_input(values: &[Complex64]) -> Result<()> {
    if values.is_empty() {
        return Err(SpectralError::EmptySignal);
    }
    if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(SpectralError::NonFiniteSample);
    }
    Ok(())
}

pub(crate) fn to_complex(values: &[f64]) -> Vec<Complex64> {
    values.iter().map(|&v| Complex64::new(v, 0.0)).collect()
}

/// Unnormalized sum `X[k] = sum_n x[n] * exp(sign*i*2*pi*k*n/N)`.
fn transform(input: &[Complex64], sign: f64) -> Vec<Complex64> {
    let n = input.len();
    if n == 1 {
        return input.to_vec();
    }
    if n.is_power_of_two() {
        let mut buf = input.to_vec();
        fft_pow2(&mut buf, sign);
        buf
    } else {
        bluestein(input, sign)
    }
}

/// In-place iterative radix-2 kernel. `buf.len()` must be a power of two.
fn fft_pow2(buf: &mut [Complex64], sign: f64) {
    let n = buf.len();
    debug_assert!(n.is_power_of_two());

    // bit-reversal permutation
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            buf.swap(i, j);
        }
    }

    let twiddles: Vec<Complex64> = (0..n / 2)
        .map(|k| Complex64::from_polar(1.0, sign * 2.0 * PI * k as f64 / n as f64))
        .collect();

    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let w = twiddles[k * stride];
                let u = buf[start + k];
                let v = buf[start + k + half] * w;
                buf[start + k] = u + v;
                buf[start + k + half] = u - v;
            }
        }
        len <<= 1;
    }
}

/// Bluestein's algorithm: rewrites the length-N transform as a circular
/// convolution with a quadratic chirp, evaluated on a power-of-two grid of
/// size >= 2N-1. The chirp exponent n^2/N is reduced modulo 2N before the
/// angle is formed, which keeps the phase exact for large n.
fn bluestein(input: &[Complex64], sign: f64) -> Vec<Complex64> {
    let n = input.len();
    let m = (2 * n - 1).next_power_of_two();

    let chirp: Vec<Complex64> = (0..n)
        .map(|k| {
            let q = ((k as u64) * (k as u64)) % (2 * n as u64);
            Complex64::from_polar(1.0, sign * PI * q as f64 / n as f64)
        })
        .collect();

    let mut a = vec![Complex64::new(0.0, 0.0); m];
    for k in 0..n {
        a[k] = input[k] * chirp[k];
    }
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    b[0] = chirp[0].conj();
    for k in 1..n {
        let c = chirp[k].conj();
        b[k] = c;
        b[m - k] = c;
    }

    fft_pow2(&mut a, -1.0);
    fft_pow2(&mut b, -1.0);
    for k in 0..m {
        a[k] *= b[k];
    }
    fft_pow2(&mut a, 1.0);

    let scale = 1.0 / m as f64;
    (0..n).map(|k| chirp[k] * a[k] * scale).collect()
}
