//! Multi-mode Gaussian joint spectral amplitudes and single-photon spectra.

use serde::{Deserialize, Serialize};

use crate::config::{mode_offsets, SingleSpectrumConfig, SpectralModeConfig};

/// Placement of the N modes in the (ω₁, ω₂) plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Correlation {
    /// Mode k centred at (ω₀ + cα, ω₀ − cα): frequency anti-correlated pairs (HOM).
    AntiCorrelated,
    /// Mode k centred at (ω₀ + cα, ω₀ + cα): frequency-correlated pairs (NOON).
    Correlated,
}

impl Correlation {
    /// Sign applied to the mode offset on the ω₂ axis.
    pub(crate) fn second_axis_sign(self) -> f64 {
        match self {
            Correlation::AntiCorrelated => -1.0,
            Correlation::Correlated => 1.0,
        }
    }
}

/// Un-normalised multi-mode Gaussian JSA `Σ_k exp[−(ω₁−ω₀−cα)²/γ² − (ω₂−ω₀∓cα)²/γ²]`.
pub fn jsa_value(config: &SpectralModeConfig, w1: f64, w2: f64, correlation: Correlation) -> f64 {
    let inv_g2 = 1.0 / (config.mode_width * config.mode_width);
    let sign = correlation.second_axis_sign();
    mode_offsets(config.n_modes)
        .map(|c| {
            let shift = c * config.mode_spacing;
            let d1 = w1 - config.center_frequency - shift;
            let d2 = w2 - config.center_frequency - sign * shift;
            (-(d1 * d1 + d2 * d2) * inv_g2).exp()
        })
        .sum()
}

/// Un-normalised multi-mode spectrum `Σ_k exp[−(ω−ω₀−cα)²/γ²]`.
pub fn spectrum_value(config: &SingleSpectrumConfig, w: f64) -> f64 {
    let inv_g2 = 1.0 / (config.mode_width * config.mode_width);
    mode_offsets(config.n_modes)
        .map(|c| {
            let d = w - config.center_frequency - c * config.mode_spacing;
            (-d * d * inv_g2).exp()
        })
        .sum()
}

/// Mode centres `(ω₁, ω₂)` in order k = 1..=N.
pub fn mode_centers(config: &SpectralModeConfig, correlation: Correlation) -> Vec<(f64, f64)> {
    let sign = correlation.second_axis_sign();
    mode_offsets(config.n_modes)
        .map(|c| {
            let shift = c * config.mode_spacing;
            (config.center_frequency + shift, config.center_frequency + sign * shift)
        })
        .collect()
}
