//! Run parameters: a JSON config file merged with command-line overrides.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use interfero_core::validation::ToleranceProfile;
use interfero_core::{QuadratureSpec, SingleSpectrumConfig, SlitConfig, SpectralModeConfig};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Default,
    Strict,
}

impl From<Profile> for ToleranceProfile {
    fn from(p: Profile) -> Self {
        match p {
            Profile::Default => ToleranceProfile::Default,
            Profile::Strict => ToleranceProfile::Strict,
        }
    }
}

/// Every field is optional; unset fields take the target's default.
/// Field names are shared by the JSON config file and the `--kebab-case`
/// flags, and flags win.
#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunParams {
    /// Number of spectral modes or slits (N)
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_modes: Option<u32>,
    /// Mode spacing α in rad·THz
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode_spacing: Option<f64>,
    /// Mode width γ in rad·THz
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode_width: Option<f64>,
    /// Centre frequency ω₀ in rad·THz
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center_frequency: Option<f64>,
    /// Lower end of the delay window in ps
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_min: Option<f64>,
    /// Upper end of the delay window in ps
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_max: Option<f64>,
    /// Number of samples along the abscissa
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Slit width a in m
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slit_width: Option<f64>,
    /// Slit pitch d in m
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slit_pitch: Option<f64>,
    /// Wavelength λ in m
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wavelength: Option<f64>,
    /// Lower end of the sin θ window
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sin_theta_min: Option<f64>,
    /// Upper end of the sin θ window
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sin_theta_max: Option<f64>,
    /// Add a quadrature-oracle column next to the closed form
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<bool>,
    /// Tabulated single-mode amplitude f₀ (matrix file for homi/noon,
    /// two-column file for mzi), evaluated with the quadrature oracle
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tabulated: Option<PathBuf>,
    #[arg(skip)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<QuadratureSpec>,
    /// Tolerance profile for `validate`
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Profile>,
    /// Smallest mode number for `fit`
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_min: Option<u32>,
    /// Largest mode number for `fit`
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u32>,
    /// True delay for the Cramér–Rao Monte Carlo in `fisher`
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub true_tau: Option<f64>,
    /// Detections per simulated experiment
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub num_measurements: Option<usize>,
    /// Number of simulated experiments
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub num_trials: Option<usize>,
    /// Seed for the Monte Carlo
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

macro_rules! overlay {
    ($base:ident, $top:ident, $($field:ident),*) => {
        RunParams { $($field: $top.$field.or($base.$field)),* }
    };
}

impl RunParams {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// Fields set in `top` replace those in `self`.
    pub fn overlay(self, top: RunParams) -> RunParams {
        let base = self;
        overlay!(
            base, top, n_modes, mode_spacing, mode_width, center_frequency, tau_min, tau_max, samples, slit_width,
            slit_pitch, wavelength, sin_theta_min, sin_theta_max, oracle, tabulated, quadrature, profile, n_min,
            n_max, true_tau, num_measurements, num_trials, seed
        )
    }

    pub fn spectral(&self, default_center: f64) -> Result<SpectralModeConfig> {
        Ok(SpectralModeConfig::new(
            self.n_modes.unwrap_or(4),
            self.mode_spacing.unwrap_or(5.0),
            self.mode_width.unwrap_or(2.0),
            self.center_frequency.unwrap_or(default_center),
        )?)
    }

    pub fn single(&self, default_center: f64) -> Result<SingleSpectrumConfig> {
        Ok(SingleSpectrumConfig::new(
            self.n_modes.unwrap_or(4),
            self.mode_spacing.unwrap_or(5.0),
            self.mode_width.unwrap_or(2.0),
            self.center_frequency.unwrap_or(default_center),
        )?)
    }

    pub fn slits(&self) -> Result<SlitConfig> {
        Ok(SlitConfig::new(
            self.n_modes.unwrap_or(4),
            self.slit_width.unwrap_or(1e-5),
            self.slit_pitch.unwrap_or(5e-4),
            self.wavelength.unwrap_or(SlitConfig::DEFAULT_WAVELENGTH),
        )?)
    }

    pub fn samples_or(&self, default: usize) -> Result<usize> {
        let n = self.samples.unwrap_or(default);
        if n < 2 {
            bail!("samples must be at least 2, got {n}");
        }
        Ok(n)
    }

    /// Delay window, `[−1.5, 1.5]` ps with 3001 samples by default.
    pub fn tau_window(&self) -> Result<(f64, f64, usize)> {
        let (lo, hi) = (self.tau_min.unwrap_or(-1.5), self.tau_max.unwrap_or(1.5));
        if !(hi > lo) {
            bail!("tau_max must exceed tau_min (got {lo} .. {hi})");
        }
        Ok((lo, hi, self.samples_or(3001)?))
    }

    /// sin θ window, `±3.5 λ/d` by default (seven principal maxima).
    pub fn sin_theta_window(&self, slits: &SlitConfig) -> Result<(f64, f64, usize)> {
        let reach = (3.5 * slits.wavelength / slits.slit_pitch).min(1.0);
        let (lo, hi) = (self.sin_theta_min.unwrap_or(-reach), self.sin_theta_max.unwrap_or(reach));
        if !(hi > lo) {
            bail!("sin_theta_max must exceed sin_theta_min (got {lo} .. {hi})");
        }
        Ok((lo, hi, self.samples_or(3001)?))
    }

    pub fn quadrature(&self) -> QuadratureSpec {
        self.quadrature.unwrap_or_default()
    }
}
