//! Multi-mode Mach–Zehnder single counts and multi-mode NOON-state coincidences.

use crate::config::{SingleSpectrumConfig, SpectralModeConfig};
use crate::curve::{uniform_grid, ConfigSnapshot, Family, PatternCurve};
use crate::details::details_factor;
use crate::error::Result;
use crate::features::{local_maxima, ClassifiedFeature};
use crate::spectral::analytic_envelope;

/// Default carrier ω₀ (rad·THz) for figure reproduction.
pub const DEFAULT_CARRIER: f64 = 50.0;

/// `½ + (1/2N) exp(−γ²τ²/8) D_N(ατ) cos(ω₀τ)`.
pub fn mzi_probability(config: &SingleSpectrumConfig, tau: f64) -> f64 {
    let g = config.mode_width;
    let n = config.n_modes as f64;
    let gaussian = (-g * g * tau * tau / 8.0).exp();
    let details = details_factor(config.n_modes, config.mode_spacing * tau);
    (0.5 + 0.5 * gaussian * details * (config.center_frequency * tau).cos() / n).clamp(0.0, 1.0)
}

/// `½ + (1/2N) exp(−γ²τ²/4) D_N(2ατ) cos(2ω₀τ)` for frequency-correlated modes.
pub fn noon_probability(config: &SpectralModeConfig, tau: f64) -> f64 {
    let g = config.mode_width;
    let n = config.n_modes as f64;
    let gaussian = (-g * g * tau * tau / 4.0).exp();
    let details = details_factor(config.n_modes, 2.0 * config.mode_spacing * tau);
    (0.5 + 0.5 * gaussian * details * (2.0 * config.center_frequency * tau).cos() / n).clamp(0.0, 1.0)
}

pub fn mzi_pattern(config: &SingleSpectrumConfig, tau_min: f64, tau_max: f64, n_samples: usize) -> Result<PatternCurve> {
    config.validate()?;
    let abscissa = uniform_grid(tau_min, tau_max, n_samples)?;
    let values = abscissa.iter().map(|&t| mzi_probability(config, t)).collect();
    Ok(PatternCurve { abscissa, values, family: Family::Mzi, config: ConfigSnapshot::SingleSpectrum(*config) })
}

pub fn noon_pattern(config: &SpectralModeConfig, tau_min: f64, tau_max: f64, n_samples: usize) -> Result<PatternCurve> {
    config.validate()?;
    let abscissa = uniform_grid(tau_min, tau_max, n_samples)?;
    let values = abscissa.iter().map(|&t| noon_probability(config, t)).collect();
    Ok(PatternCurve { abscissa, values, family: Family::Noon, config: ConfigSnapshot::SpectralModes(*config) })
}

/// Peaks of the fringe envelope `|P(τ) − ½|` (recovered from the sampled
/// curve with an analytic-signal envelope), tagged primary where the
/// details factor is at least N/2 in magnitude.
///
/// The carrier must sit above the spread of the details factor,
/// `ω₀ > (N−1)α` for MZI, or the envelope estimate mixes the two.
pub fn classify_envelope_peaks(curve: &PatternCurve) -> Result<Vec<ClassifiedFeature>> {
    let centred: Vec<f64> = curve.values.iter().map(|v| v - 0.5).collect();
    let envelope = analytic_envelope(&centred);
    let (n_modes, phase_per_tau) = match curve.config {
        ConfigSnapshot::SingleSpectrum(c) => (c.n_modes, c.mode_spacing),
        ConfigSnapshot::SpectralModes(c) => (c.n_modes, 2.0 * c.mode_spacing),
        ConfigSnapshot::Slits(_) => {
            return Err(crate::error::Error::InvalidArgument("envelope peaks need an MZI or NOON curve".into()))
        }
    };
    let n = n_modes as f64;
    let peak = envelope.iter().cloned().fold(0.0, f64::max);
    Ok(local_maxima(&curve.abscissa, &envelope, 1e-4 * peak)
        .into_iter()
        .map(|p| ClassifiedFeature {
            position: p.position,
            value: p.value,
            primary: details_factor(n_modes, phase_per_tau * p.position).abs() >= 0.5 * n,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homi::homi_probability;

    #[test]
    fn unit_visibility_at_zero_delay() {
        for n in 1..=8 {
            let m = SingleSpectrumConfig::new(n, 5.0, 2.0, 50.0).unwrap();
            let s = SpectralModeConfig::new(n, 5.0, 2.0, 50.0).unwrap();
            assert_eq!(mzi_probability(&m, 0.0), 1.0);
            assert_eq!(noon_probability(&s, 0.0), 1.0);
        }
    }

    #[test]
    fn single_mode_mzi_at_half_carrier_period() {
        let (g, w0) = (2.0, 50.0);
        let c = SingleSpectrumConfig::new(1, 5.0, g, w0).unwrap();
        let tau = std::f64::consts::PI / w0;
        let expected = 0.5 - 0.5 * (-g * g * tau * tau / 8.0).exp();
        assert!((mzi_probability(&c, tau) - expected).abs() < 1e-15);
    }

    #[test]
    fn even_in_tau() {
        let m = SingleSpectrumConfig::new(5, 5.0, 2.0, 50.0).unwrap();
        let s = SpectralModeConfig::new(5, 5.0, 2.0, 50.0).unwrap();
        for &t in &[0.01, 0.33, 1.2] {
            assert!((mzi_probability(&m, t) - mzi_probability(&m, -t)).abs() < 1e-15);
            assert!((noon_probability(&s, t) - noon_probability(&s, -t)).abs() < 1e-15);
        }
    }

    #[test]
    fn noon_without_carrier_mirrors_homi() {
        for n in 1..=8 {
            let c = SpectralModeConfig::new(n, 5.0, 2.0, 0.0).unwrap();
            for i in 0..301 {
                let t = -1.5 + 0.01 * i as f64;
                let lhs = 1.0 - noon_probability(&c, t);
                assert!((lhs - homi_probability(&c, t).probability).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn secondary_envelope_peaks() {
        for n in 3..=8u32 {
            let c = SingleSpectrumConfig::new(n, 5.0, 2.0, DEFAULT_CARRIER).unwrap();
            let curve = mzi_pattern(&c, -1.5, 1.5, 6001).unwrap();
            let counts = crate::features::secondary_counts_between_primaries(&classify_envelope_peaks(&curve).unwrap());
            assert!(!counts.is_empty(), "N={n}");
            assert!(counts.iter().all(|&k| k == n as usize - 2), "N={n}: {counts:?}");
        }
    }

    #[test]
    fn single_mode_noon_has_no_secondary_structure() {
        let c = SpectralModeConfig::new(1, 5.0, 2.0, DEFAULT_CARRIER).unwrap();
        // Wide enough for the envelope to decay, so truncation ripple stays out.
        let curve = noon_pattern(&c, -4.0, 4.0, 16001).unwrap();
        let peaks = classify_envelope_peaks(&curve).unwrap();
        assert_eq!(peaks.len(), 1);
        assert!(peaks[0].primary);
        assert!(peaks[0].position.abs() < 1e-3);
    }
}
