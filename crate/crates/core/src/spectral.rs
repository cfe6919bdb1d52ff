//! FFT helpers for sampled interference curves.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

/// Magnitude of the analytic signal of `signal` (FFT Hilbert transform).
///
/// The signal is zero-padded to twice its length (next power of two) to keep
/// wrap-around from the ends away from the interior.
pub fn analytic_envelope(signal: &[f64]) -> Vec<f64> {
    let n = signal.len();
    if n == 0 {
        return Vec::new();
    }
    let len = (2 * n).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(len);
    let inverse = planner.plan_fft_inverse(len);

    let mut buf: Vec<Complex64> = signal.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    buf.resize(len, Complex64::new(0.0, 0.0));
    forward.process(&mut buf);
    // Keep DC and Nyquist, double positive frequencies, drop negative ones.
    for (k, c) in buf.iter_mut().enumerate() {
        if k == 0 || k == len / 2 {
            continue;
        }
        if k < len / 2 {
            *c *= 2.0;
        } else {
            *c = Complex64::new(0.0, 0.0);
        }
    }
    inverse.process(&mut buf);
    let scale = 1.0 / len as f64;
    buf[..n].iter().map(|c| c.norm() * scale).collect()
}

/// One-sided power spectrum of a real signal sampled every `step`, as
/// `(angular frequency, power)` pairs. The mean is removed first.
pub fn power_spectrum(signal: &[f64], step: f64) -> Vec<(f64, f64)> {
    let n = signal.len();
    if n < 2 {
        return Vec::new();
    }
    let mean = signal.iter().sum::<f64>() / n as f64;
    let mut buf: Vec<Complex64> = signal.iter().map(|&x| Complex64::new(x - mean, 0.0)).collect();
    FftPlanner::<f64>::new().plan_fft_forward(n).process(&mut buf);
    let resolution = 2.0 * PI / (n as f64 * step);
    buf[..n / 2 + 1]
        .iter()
        .enumerate()
        .map(|(k, c)| (k as f64 * resolution, c.norm_sqr()))
        .collect()
}

/// Angular frequency (rad per abscissa unit) of the strongest non-DC
/// spectral line, refined by parabolic interpolation of log power.
pub fn dominant_frequency(signal: &[f64], step: f64) -> Option<f64> {
    let spectrum = power_spectrum(signal, step);
    if spectrum.len() < 3 {
        return None;
    }
    let (k, _) = spectrum
        .iter()
        .enumerate()
        .skip(1)
        .max_by(|a, b| a.1 .1.total_cmp(&b.1 .1))?;
    let resolution = spectrum[1].0;
    if k + 1 >= spectrum.len() {
        return Some(spectrum[k].0);
    }
    let (a, b, c) = (spectrum[k - 1].1, spectrum[k].1, spectrum[k + 1].1);
    if a <= 0.0 || b <= 0.0 || c <= 0.0 {
        return Some(spectrum[k].0);
    }
    let (la, lb, lc) = (a.ln(), b.ln(), c.ln());
    let denom = la - 2.0 * lb + lc;
    let shift = if denom.abs() > 0.0 { 0.5 * (la - lc) / denom } else { 0.0 };
    Some((k as f64 + shift.clamp(-0.5, 0.5)) * resolution)
}
