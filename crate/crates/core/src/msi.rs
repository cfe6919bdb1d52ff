//! Multi-slit Fraunhofer interference.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::SlitConfig;
use crate::curve::{uniform_grid, ConfigSnapshot, Family, PatternCurve};
use crate::details::details_factor;
use crate::error::{Error, Result};
use crate::features::{local_maxima, ClassifiedFeature};
use crate::sampled::UniformSamples;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MsiPoint {
    pub sin_theta: f64,
    /// Phase across one slit, `πa sinθ/λ`.
    pub u: f64,
    /// Phase between adjacent slits, `πd sinθ/λ`.
    pub v: f64,
    pub intensity: f64,
}

pub(crate) fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-8 {
        1.0 - u * u / 6.0
    } else {
        u.sin() / u
    }
}

/// `I = (sin u / u)² (sin Nv / sin v)²` with unit single-slit amplitude.
pub fn msi_intensity(config: &SlitConfig, sin_theta: f64) -> Result<MsiPoint> {
    if !(sin_theta.abs() <= 1.0) {
        return Err(Error::SinThetaOutOfRange(sin_theta));
    }
    let u = PI * config.slit_width * sin_theta / config.wavelength;
    let v = PI * config.slit_pitch * sin_theta / config.wavelength;
    let envelope = sinc(u);
    let details = details_factor(config.n_slits, v);
    Ok(MsiPoint { sin_theta, u, v, intensity: (envelope * details).powi(2) })
}

pub fn msi_pattern(config: &SlitConfig, sin_theta_min: f64, sin_theta_max: f64, n_samples: usize) -> Result<PatternCurve> {
    config.validate()?;
    let abscissa = uniform_grid(sin_theta_min, sin_theta_max, n_samples)?;
    let values = abscissa
        .iter()
        .map(|&s| msi_intensity(config, s).map(|p| p.intensity))
        .collect::<Result<Vec<_>>>()?;
    Ok(PatternCurve { abscissa, values, family: Family::Msi, config: ConfigSnapshot::Slits(*config) })
}

/// Fourier transform of a sampled aperture, `∫ f₀(x) e^{−i2πx q} dx`, at
/// spatial frequencies `q = sinθ/λ` (1/m).
///
/// The aperture must vanish at both grid edges, and every `|q|` must stay
/// below the Nyquist limit `1/(2Δx)`.
pub fn aperture_transform(aperture: &UniformSamples, sin_theta_over_lambda: &[f64]) -> Result<Vec<Complex64>> {
    aperture.fourier_transform(sin_theta_over_lambda)
}

/// Real part of [`aperture_transform`]; the full amplitude for apertures
/// symmetric about `x = 0`.
pub fn aperture_diffraction_amplitude(aperture: &UniformSamples, sin_theta_over_lambda: &[f64]) -> Result<Vec<f64>> {
    Ok(aperture_transform(aperture, sin_theta_over_lambda)?.into_iter().map(|a| a.re).collect())
}

/// `|𝓕[f₀]|²` at each spatial frequency.
pub fn aperture_diffraction_intensity(aperture: &UniformSamples, sin_theta_over_lambda: &[f64]) -> Result<Vec<f64>> {
    Ok(aperture_transform(aperture, sin_theta_over_lambda)?.into_iter().map(|a| a.norm_sqr()).collect())
}

/// Transmission of the slit array sampled on `[−extent/2, extent/2]` with
/// `samples_per_slit` points across each slit. Slits are centred at
/// `(i − (N−1)/2)·d` and sampling points sit at cell centres, so each slit
/// contributes exactly `a` to the aperture integral.
pub fn slit_aperture(config: &SlitConfig, samples_per_slit: usize) -> Result<UniformSamples> {
    config.validate()?;
    if samples_per_slit < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples per slit".into()));
    }
    let step = config.slit_width / samples_per_slit as f64;
    let half_span = 0.5 * (config.n_slits as f64 - 1.0) * config.slit_pitch + config.slit_width;
    let half_cells = (half_span / step).ceil() as usize;
    let start = -(half_cells as f64 - 0.5) * step;
    let count = 2 * half_cells;
    UniformSamples::from_fn(start, step, count, |x| slit_transmission(config, x))
}

/// 1 inside any slit, 0 on the blocks.
pub fn slit_transmission(config: &SlitConfig, x: f64) -> f64 {
    let offset = 0.5 * (config.n_slits as f64 - 1.0);
    let k = (x / config.slit_pitch + offset).round();
    if k < 0.0 || k > config.n_slits as f64 - 1.0 {
        return 0.0;
    }
    let center = (k - offset) * config.slit_pitch;
    if (x - center).abs() < 0.5 * config.slit_width {
        1.0
    } else {
        0.0
    }
}

/// Intensity peaks tagged primary where `|D_N(v)| ≥ N/2`. Uses the
/// prominence floor `1e−6·N²`.
pub fn classify_peaks(config: &SlitConfig, curve: &PatternCurve) -> Vec<ClassifiedFeature> {
    let n = config.n_slits as f64;
    local_maxima(&curve.abscissa, &curve.values, 1e-6 * n * n)
        .into_iter()
        .map(|p| {
            let v = PI * config.slit_pitch * p.position / config.wavelength;
            ClassifiedFeature {
                position: p.position,
                value: p.value,
                primary: details_factor(config.n_slits, v).abs() >= 0.5 * n,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::secondary_counts_between_primaries;
    use proptest::prelude::*;

    const LAMBDA: f64 = 500e-9;

    fn phasor_intensity(n: u32, a: f64, d: f64, s: f64) -> f64 {
        let delta = 2.0 * PI * d * s / LAMBDA;
        let field: Complex64 = (0..n).map(|i| Complex64::from_polar(1.0, i as f64 * delta)).sum();
        let u = PI * a * s / LAMBDA;
        let envelope = if u == 0.0 { 1.0 } else { u.sin() / u };
        field.norm_sqr() * envelope * envelope
    }

    #[test]
    fn central_maximum_is_n_squared() {
        for n in 1..=8 {
            let c = SlitConfig::new(n, 1e-5, 5e-4, LAMBDA).unwrap();
            assert_eq!(msi_intensity(&c, 0.0).unwrap().intensity, (n * n) as f64);
        }
    }

    #[test]
    fn single_slit_first_zero() {
        let c = SlitConfig::new(1, 1e-5, 5e-4, LAMBDA).unwrap();
        let p = msi_intensity(&c, 0.05).unwrap();
        assert!((p.u - PI).abs() < 1e-12);
        assert!(p.intensity < 1e-28);
    }

    #[test]
    fn four_slit_point_matches_phasor_sum() {
        let c = SlitConfig::new(4, 1e-5, 5e-4, LAMBDA).unwrap();
        let p = msi_intensity(&c, 5e-4).unwrap();
        let expected = phasor_intensity(4, 1e-5, 5e-4, 5e-4);
        assert!((p.intensity - expected).abs() < 1e-10);
    }

    #[test]
    fn domain_error() {
        let c = SlitConfig::new(4, 1e-5, 5e-4, LAMBDA).unwrap();
        assert!(matches!(msi_intensity(&c, 1.5), Err(Error::SinThetaOutOfRange(_))));
    }

    #[test]
    fn secondary_peak_counts() {
        for n in 2..=8u32 {
            let c = SlitConfig::new(n, 1e-5, 5e-4, LAMBDA).unwrap();
            let w = 3.5 * LAMBDA / c.slit_pitch;
            let curve = msi_pattern(&c, -w, w, 3001).unwrap();
            curve.check_invariants().unwrap();
            let counts = secondary_counts_between_primaries(&classify_peaks(&c, &curve));
            assert!(counts.len() >= 2);
            assert!(counts.iter().all(|&k| k == n as usize - 2), "N={n}: {counts:?}");
        }
    }

    #[test]
    fn rectangle_transform() {
        let a = 1e-5;
        let c = SlitConfig::new(1, a, 5e-4, LAMBDA).unwrap();
        let aperture = slit_aperture(&c, 100).unwrap();
        let amp = aperture_diffraction_amplitude(&aperture, &[0.0, 1.0 / a, 0.37 / a]).unwrap();
        assert!((amp[0] - a).abs() < 1e-18);
        assert!(amp[1].abs() < 1e-18);
        let u = PI * 0.37;
        assert!((amp[2] - a * u.sin() / u).abs() < 1e-4 * a);
    }

    #[test]
    fn aperture_nyquist_guard() {
        let c = SlitConfig::new(1, 1e-5, 5e-4, LAMBDA).unwrap();
        let aperture = slit_aperture(&c, 10).unwrap();
        let too_high = 1.0 / aperture.step;
        assert!(matches!(
            aperture_diffraction_amplitude(&aperture, &[too_high]),
            Err(Error::GridTooCoarse { .. })
        ));
    }

    proptest! {
        #[test]
        fn closed_form_equals_phasor_sum(n in 1u32..=10, s in -0.02f64..0.02) {
            let (a, d) = (1e-5, 5e-4);
            let c = SlitConfig::new(n, a, d, LAMBDA).unwrap();
            let closed = msi_intensity(&c, s).unwrap().intensity;
            prop_assert!((closed - phasor_intensity(n, a, d, s)).abs() < 1e-10);
        }
    }
}
