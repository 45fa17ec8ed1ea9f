//! Time-frequency decomposition of non-stationary signals.
//!
//! Instead of a shifting FFT, each analysis frequency row is produced by
//! band-pass filtering around that frequency and demodulating the envelope,
//! so the whole record contributes to every row. The band width follows an
//! empirical schedule that widens with the center frequency, trading
//! frequency precision for time localization as the uncertainty principle
//! dictates.

use crate::error::{Result, SpectralError};
use crate::fft::{dft_forward, dft_inverse, to_complex};
use crate::filtering::FilterSpec;
use crate::signal::Signal;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::SQRT_2;

/// Axis interpretation of a [`WaterfallDiagram`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisMode {
    Frequency,
    Period,
}

/// Time x frequency amplitude map. Rows follow `frequencies` (or periods,
/// after [`to_period_axis`]), columns follow `times`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaterfallDiagram {
    times: Vec<f64>,
    frequencies: Vec<f64>,
    amplitudes: Vec<Vec<f64>>,
    axis_mode: AxisMode,
}

impl WaterfallDiagram {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Row axis: analysis frequencies, or periods in period mode.
    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    /// Row-major amplitude matrix, one row per frequency.
    pub fn amplitudes(&self) -> &[Vec<f64>] {
        &self.amplitudes
    }

    pub fn axis_mode(&self) -> AxisMode {
        self.axis_mode
    }
}

/// Empirical band width for the analysis frequency `fc`:
/// `min(max(4*delta_f, fc/4), wd*delta_f)`. Narrow fixed bands at low
/// frequencies, a width proportional to `fc` in between, capped at
/// `wd*delta_f`.
pub fn bandwidth_schedule(fc: f64, delta_f: f64, wd: f64) -> Result<f64> {
    if !(delta_f > 0.0) || !(wd > 0.0) || !fc.is_finite() || fc < 0.0 {
        return Err(SpectralError::InvalidParameter(
            "bandwidth schedule needs fc >= 0, delta_f > 0, wd > 0".into(),
        ));
    }
    Ok((4.0 * delta_f).max(fc / 4.0).min(wd * delta_f))
}

/// Envelope of the band around `fc` in one back transform.
///
/// The one-sided weighted spectrum `Y` is formed from the signal spectrum,
/// the band weight and the mirror-half sign factor (first bin kept at its
/// plain value), and the envelope is read off as `|F^-1((1+i)Y)|/sqrt(2)`.
/// Agrees with enveloping the band-passed real signal on band-limited tones.
pub fn fast_envelope(signal: &Signal, fc: f64, bw: f64, degree: u32) -> Result<Vec<f64>> {
    let ts = signal.require_uniform()?;
    let spectrum = dft_forward(&to_complex(signal.values()))?;
    fast_envelope_from_spectrum(&spectrum, ts, fc, bw, degree)
}

fn fast_envelope_from_spectrum(
    spectrum: &[Complex64],
    ts: f64,
    fc: f64,
    bw: f64,
    degree: u32,
) -> Result<Vec<f64>> {
    let n = spectrum.len();
    let band = FilterSpec::new(fc, bw, degree)?;
    let df = 1.0 / (ts * n as f64);
    let mid = (n as f64 - 1.0) / 2.0;
    let mut weighted: Vec<Complex64> = spectrum
        .iter()
        .enumerate()
        .map(|(m, &s)| {
            let one_sided = if m == 0 {
                1.0
            } else {
                1.0 - crate::analytic::zero_sign(m as f64 - mid)
            };
            s * band.weight(m as f64 * df) * one_sided
        })
        .collect();
    let one_plus_i = Complex64::new(1.0, 1.0);
    for v in &mut weighted {
        *v *= one_plus_i;
    }
    let back = dft_inverse(&weighted)?;
    Ok(back.iter().map(|v| v.norm() / SQRT_2).collect())
}

/// Waterfall diagram of a uniform signal: one [`fast_envelope`] row per DFT
/// grid frequency from zero up to half the sampling frequency, with band
/// widths from [`bandwidth_schedule`]. Rows are independent and evaluated in
/// parallel; assembly order is fixed, so the result is deterministic.
pub fn waterfall(signal: &Signal, nf: u32, wd: f64) -> Result<WaterfallDiagram> {
    let ts = signal.require_uniform()?;
    let n = signal.len();
    if n < 8 {
        return Err(SpectralError::TooShort { needed: 8, got: n });
    }
    if nf < 1 {
        return Err(SpectralError::InvalidParameter(
            "polynomial degree nf must be at least 1".into(),
        ));
    }
    let df = 1.0 / (ts * n as f64);
    let spectrum = dft_forward(&to_complex(signal.values()))?;
    let rows = n / 2 + 1;
    let frequencies: Vec<f64> = (0..rows).map(|r| r as f64 * df).collect();
    let amplitudes = frequencies
        .par_iter()
        .map(|&fc| {
            let bw = bandwidth_schedule(fc, df, wd)?;
            fast_envelope_from_spectrum(&spectrum, ts, fc, bw, nf)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WaterfallDiagram {
        times: signal.positions().to_vec(),
        frequencies,
        amplitudes,
        axis_mode: AxisMode::Frequency,
    })
}

/// Oversampling factor of the uniform period grid in [`to_period_axis`].
/// The reciprocal mapping crowds high frequencies into a tiny period range,
/// so the period axis carries more points than the frequency axis had.
const PERIOD_GRID_OVERSAMPLE: usize = 4;

/// Re-expresses the frequency axis as periods `1/f`.
///
/// The `f = 0` row has no finite period and is placed at twice the largest
/// finite period. Because reciprocal periods are not equally spaced, every
/// column is linearly resampled onto a uniform period grid.
pub fn to_period_axis(wf: &WaterfallDiagram) -> Result<WaterfallDiagram> {
    if wf.axis_mode == AxisMode::Period {
        return Err(SpectralError::AlreadyPeriodAxis);
    }
    let periods = reciprocal_axis(&wf.frequencies);
    let lo = periods.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = periods.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let rows = wf.frequencies.len() * PERIOD_GRID_OVERSAMPLE;
    let grid: Vec<f64> = (0..rows)
        .map(|k| lo + (hi - lo) * k as f64 / (rows - 1) as f64)
        .collect();

    let mut order: Vec<usize> = (0..periods.len()).collect();
    order.sort_by(|&a, &b| periods[a].total_cmp(&periods[b]));
    let sorted_axis: Vec<f64> = order.iter().map(|&i| periods[i]).collect();

    let n_cols = wf.times.len();
    let mut amplitudes = vec![vec![0.0; n_cols]; rows];
    let mut column = vec![0.0; periods.len()];
    for c in 0..n_cols {
        for (k, &src) in order.iter().enumerate() {
            column[k] = wf.amplitudes[src][c];
        }
        for (r, &p) in grid.iter().enumerate() {
            amplitudes[r][c] = linear_interpolate(&sorted_axis, &column, p);
        }
    }
    Ok(WaterfallDiagram {
        times: wf.times.clone(),
        frequencies: grid,
        amplitudes,
        axis_mode: AxisMode::Period,
    })
}

/// Periods `1/f` with the zero-frequency entry replaced by twice the largest
/// finite period.
pub fn reciprocal_axis(frequencies: &[f64]) -> Vec<f64> {
    let mut periods: Vec<f64> = frequencies
        .iter()
        .map(|&f| if f == 0.0 { f64::INFINITY } else { 1.0 / f })
        .collect();
    let max_finite = periods
        .iter()
        .cloned()
        .filter(|p| p.is_finite())
        .fold(0.0, f64::max);
    for p in &mut periods {
        if !p.is_finite() {
            *p = 2.0 * max_finite;
        }
    }
    periods
}

/// Piecewise-linear interpolation over a sorted axis, clamped at the ends.
pub fn linear_interpolate(axis: &[f64], values: &[f64], x: f64) -> f64 {
    debug_assert_eq!(axis.len(), values.len());
    if x <= axis[0] {
        return values[0];
    }
    if x >= axis[axis.len() - 1] {
        return values[values.len() - 1];
    }
    let j = axis.partition_point(|&a| a < x);
    let (x0, x1) = (axis[j - 1], axis[j]);
    let (y0, y1) = (values[j - 1], values[j]);
    if x1 == x0 {
        return y0;
    }
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn tone_signal(n: usize, f: f64) -> Signal {
        let ts = 1.0 / n as f64;
        let values = (0..n).map(|k| (TAU * f * k as f64 * ts).sin()).collect();
        Signal::uniform(0.0, ts, values).unwrap()
    }

    #[test]
    fn schedule_branches_and_monotonicity() {
        assert!((bandwidth_schedule(0.0, 1.0, 64.0).unwrap() - 4.0).abs() < 1e-12);
        assert!((bandwidth_schedule(100.0, 1.0, 10.0).unwrap() - 10.0).abs() < 1e-12);
        assert!((bandwidth_schedule(64.0, 1.0, 64.0).unwrap() - 16.0).abs() < 1e-12);
        let mut last = 0.0;
        for k in 0..200 {
            let fc = k as f64;
            let bw = bandwidth_schedule(fc, 1.0, 64.0).unwrap();
            assert!(bw >= last, "schedule not monotone at fc = {fc}");
            assert!(bw <= 64.0 + 1e-12);
            last = bw;
        }
        assert!(bandwidth_schedule(1.0, 0.0, 1.0).is_err());
        assert!(bandwidth_schedule(1.0, 1.0, -1.0).is_err());
        assert!(bandwidth_schedule(-1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn in_band_carrier_has_unit_envelope() {
        let s = tone_signal(128, 20.0);
        let env = fast_envelope(&s, 20.0, 5.0, 10).unwrap();
        for v in &env {
            assert!((v - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn far_tone_leaves_one_percent_residual_at_most() {
        let s = tone_signal(128, 50.0);
        let env = fast_envelope(&s, 10.0, 5.0, 10).unwrap();
        for v in &env {
            assert!(*v <= 0.01);
        }
    }

    #[test]
    fn gaussian_burst_envelope_is_recovered_mid_range() {
        let n = 256;
        let ts = 1.0 / n as f64;
        let gauss = |t: f64| (-(t - 0.5) * (t - 0.5) / (2.0 * 0.06 * 0.06)).exp();
        let values: Vec<f64> = (0..n)
            .map(|k| {
                let t = k as f64 * ts;
                gauss(t) * (TAU * 40.0 * t).cos()
            })
            .collect();
        let s = Signal::uniform(0.0, ts, values).unwrap();
        let env = fast_envelope(&s, 40.0, 20.0, 10).unwrap();
        for k in n / 4..3 * n / 4 {
            let t = k as f64 * ts;
            assert!(
                (env[k] - gauss(t)).abs() <= 0.02,
                "sample {k}: {} vs {}",
                env[k],
                gauss(t)
            );
        }
    }

    #[test]
    fn fast_envelope_agrees_with_filter_then_envelope() {
        use crate::analytic::envelope;
        use crate::filtering::{filter_fft, FilterSpec};
        let s = tone_signal(128, 20.0);
        let fast = fast_envelope(&s, 20.0, 5.0, 10).unwrap();
        let filtered = filter_fft(&s, &FilterSpec::new(20.0, 5.0, 10).unwrap()).unwrap();
        let slow = envelope(&filtered).unwrap();
        for (a, b) in fast.iter().zip(slow.values()) {
            assert!((a - b).abs() < 1e-6);
        }
    }

    #[test]
    fn stationary_tone_row_is_flat_and_remote_rows_are_empty() {
        let s = tone_signal(128, 10.0);
        let wf = waterfall(&s, 3, 64.0).unwrap();
        let row = &wf.amplitudes()[10];
        for v in &row[row.len() / 4..3 * row.len() / 4] {
            assert!((v - 1.0).abs() <= 0.05);
        }
        let bw = bandwidth_schedule(10.0, 1.0, 64.0).unwrap();
        for (r, row) in wf.amplitudes().iter().enumerate() {
            if (wf.frequencies()[r] - 10.0).abs() >= 2.0 * bw {
                for v in row {
                    assert!(*v <= 0.1);
                }
            }
        }
    }

    #[test]
    fn rows_match_independent_fast_envelope_calls_exactly() {
        let n = 128;
        let ts = 1.0 / n as f64;
        let values: Vec<f64> = (0..n)
            .map(|k| {
                let t = k as f64 * ts;
                (TAU * 10.0 * t).sin() + 0.5 * (TAU * 30.0 * t + 0.3).cos()
            })
            .collect();
        let s = Signal::uniform(0.0, ts, values).unwrap();
        let wf = waterfall(&s, 3, 64.0).unwrap();
        for (r, &fc) in wf.frequencies().iter().enumerate() {
            let bw = bandwidth_schedule(fc, 1.0, 64.0).unwrap();
            let row = fast_envelope(&s, fc, bw, 3).unwrap();
            assert_eq!(&wf.amplitudes()[r], &row, "row {r} differs");
        }
    }

    #[test]
    fn amplitudes_are_bounded_by_the_peak_of_a_grid_tone() {
        let n = 128;
        let ts = 1.0 / n as f64;
        let values: Vec<f64> = (0..n).map(|k| (TAU * 12.0 * k as f64 * ts).cos()).collect();
        let s = Signal::uniform(0.0, ts, values).unwrap();
        let peak = s.values().iter().cloned().fold(0.0, f64::max);
        let wf = waterfall(&s, 3, 64.0).unwrap();
        for row in wf.amplitudes() {
            for v in row {
                assert!(*v <= peak * (1.0 + 1e-6));
            }
        }
    }

    #[test]
    fn uncertainty_trade_off_across_three_octaves() {
        // same burst shape at rising carriers: time width shrinks while the
        // frequency spread of the ridge grows
        let n = 512;
        let ts = 1.0 / n as f64;
        let mut time_widths = Vec::new();
        let mut freq_widths = Vec::new();
        for fb in [16usize, 32, 64] {
            let values: Vec<f64> = (0..n)
                .map(|k| {
                    let t = k as f64 * ts;
                    (-(t - 0.5) * (t - 0.5) / (2.0 * 0.02 * 0.02)).exp()
                        * (TAU * fb as f64 * t).cos()
                })
                .collect();
            let s = Signal::uniform(0.0, ts, values).unwrap();
            let wf = waterfall(&s, 3, 64.0).unwrap();
            let row = &wf.amplitudes()[fb];
            let half = row.iter().cloned().fold(0.0, f64::max) / 2.0;
            time_widths.push(row.iter().filter(|&&v| v >= half).count());
            let mid_col = n / 2;
            let column: Vec<f64> = wf.amplitudes().iter().map(|r| r[mid_col]).collect();
            let chalf = column.iter().cloned().fold(0.0, f64::max) / 2.0;
            freq_widths.push(column.iter().filter(|&&v| v >= chalf).count());
        }
        assert!(
            time_widths[0] > time_widths[1] && time_widths[1] > time_widths[2],
            "time widths {time_widths:?}"
        );
        assert!(
            freq_widths[0] < freq_widths[1] && freq_widths[1] < freq_widths[2],
            "freq widths {freq_widths:?}"
        );
    }

    #[test]
    fn period_axis_reciprocals_and_zero_row() {
        let p = reciprocal_axis(&[0.0, 1.0, 2.0]);
        assert_eq!(p, vec![2.0, 1.0, 0.5]);
    }

    #[test]
    fn period_mode_rejects_second_conversion() {
        let s = tone_signal(64, 8.0);
        let wf = waterfall(&s, 3, 64.0).unwrap();
        let p = to_period_axis(&wf).unwrap();
        assert_eq!(p.axis_mode(), AxisMode::Period);
        assert_eq!(
            to_period_axis(&p).unwrap_err(),
            SpectralError::AlreadyPeriodAxis
        );
    }

    #[test]
    fn period_round_trip_reproduces_smooth_diagram() {
        // synthetic smooth diagram over the 0..64 grid
        let n = 128;
        let times: Vec<f64> = (0..n).map(|k| k as f64 / n as f64).collect();
        let frequencies: Vec<f64> = (0..=n / 2).map(|r| r as f64).collect();
        let amplitudes: Vec<Vec<f64>> = frequencies
            .iter()
            .map(|&f| {
                times
                    .iter()
                    .map(|&t| {
                        (-(f - 2.0) * (f - 2.0) / (2.0 * 1.5 * 1.5)).exp()
                            * (1.0 + 0.3 * (TAU * t).cos())
                            / 1.3
                    })
                    .collect()
            })
            .collect();
        let wf = WaterfallDiagram {
            times: times.clone(),
            frequencies: frequencies.clone(),
            amplitudes: amplitudes.clone(),
            axis_mode: AxisMode::Frequency,
        };
        let p = to_period_axis(&wf).unwrap();
        // map back: frequency of each period row is its reciprocal
        let back_axis: Vec<f64> = p.frequencies().iter().map(|&pp| 1.0 / pp).collect();
        let mut order: Vec<usize> = (0..back_axis.len()).collect();
        order.sort_by(|&a, &b| back_axis[a].total_cmp(&back_axis[b]));
        let sorted: Vec<f64> = order.iter().map(|&i| back_axis[i]).collect();
        let peak = 1.0;
        let mut worst = 0.0f64;
        for (r, &f) in frequencies.iter().enumerate() {
            for c in 0..times.len() {
                let col: Vec<f64> = order.iter().map(|&i| p.amplitudes()[i][c]).collect();
                let v = linear_interpolate(&sorted, &col, f);
                worst = worst.max((v - amplitudes[r][c]).abs());
            }
        }
        assert!(worst <= 0.02 * peak, "round-trip error {worst}");
    }

    #[test]
    fn waterfall_input_validation() {
        let irregular = Signal::new(vec![0.0, 0.1, 0.5], vec![1.0, 0.0, -1.0]).unwrap();
        assert_eq!(
            waterfall(&irregular, 3, 64.0).unwrap_err(),
            SpectralError::NonUniformSampling
        );
        let short = Signal::uniform(0.0, 0.1, vec![1.0; 4]).unwrap();
        assert!(matches!(
            waterfall(&short, 3, 64.0).unwrap_err(),
            SpectralError::TooShort { .. }
        ));
        let ok = tone_signal(16, 2.0);
        assert!(waterfall(&ok, 0, 64.0).is_err());
    }
}
