//! Parameter sets for the interference families.
//!
//! Units are fixed across the crate: angular frequencies in rad·THz, delays
//! in ps, lengths in m. With these units every phase (`γτ`, `ατ`, `ω₀τ`) is
//! dimensionless without conversion factors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Multi-mode Gaussian joint spectral amplitude driving HOM and NOON interference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralModeConfig {
    pub n_modes: u32,
    /// Mode spacing α (rad·THz).
    pub mode_spacing: f64,
    /// Mode width γ (rad·THz).
    pub mode_width: f64,
    /// Centre frequency ω₀ (rad·THz). Cancels out of HOM interference.
    #[serde(default)]
    pub center_frequency: f64,
}

/// Multi-mode single-photon spectrum driving Mach–Zehnder interference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleSpectrumConfig {
    pub n_modes: u32,
    pub mode_spacing: f64,
    pub mode_width: f64,
    pub center_frequency: f64,
}

/// Multi-slit geometry. `slit_pitch` is the centre-to-centre distance `d = a + b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlitConfig {
    pub n_slits: u32,
    pub slit_width: f64,
    pub slit_pitch: f64,
    #[serde(default = "SlitConfig::default_wavelength")]
    pub wavelength: f64,
}

fn check_modes(n_modes: u32, spacing: f64, width: f64, center: f64) -> Result<()> {
    if n_modes == 0 {
        return Err(Error::InvalidConfig("n_modes must be at least 1".into()));
    }
    if !(spacing.is_finite() && spacing > 0.0) {
        return Err(Error::InvalidConfig(format!("mode_spacing must be > 0, got {spacing}")));
    }
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::InvalidConfig(format!("mode_width must be > 0, got {width}")));
    }
    if !(center.is_finite() && center >= 0.0) {
        return Err(Error::InvalidConfig(format!("center_frequency must be >= 0, got {center}")));
    }
    Ok(())
}

/// Mode offsets `(2k − N − 1)` for `k = 1..=N`.
pub(crate) fn mode_offsets(n_modes: u32) -> impl Iterator<Item = f64> {
    let n = n_modes as i64;
    (1..=n).map(move |k| (2 * k - n - 1) as f64)
}

impl SpectralModeConfig {
    pub fn new(n_modes: u32, mode_spacing: f64, mode_width: f64, center_frequency: f64) -> Result<Self> {
        let config = Self { n_modes, mode_spacing, mode_width, center_frequency };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        check_modes(self.n_modes, self.mode_spacing, self.mode_width, self.center_frequency)
    }

    /// `γ/α ≤ 0.5`: the regime where neighbouring modes barely overlap.
    pub fn well_separated(&self) -> bool {
        self.mode_width / self.mode_spacing <= 0.5
    }

    pub fn with_center_frequency(mut self, center_frequency: f64) -> Self {
        self.center_frequency = center_frequency;
        self
    }
}

impl SingleSpectrumConfig {
    pub fn new(n_modes: u32, mode_spacing: f64, mode_width: f64, center_frequency: f64) -> Result<Self> {
        let config = Self { n_modes, mode_spacing, mode_width, center_frequency };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        check_modes(self.n_modes, self.mode_spacing, self.mode_width, self.center_frequency)
    }

    pub fn well_separated(&self) -> bool {
        self.mode_width / self.mode_spacing <= 0.5
    }
}

impl SlitConfig {
    /// 500 nm; used when a slit configuration does not name a wavelength.
    pub const DEFAULT_WAVELENGTH: f64 = 500e-9;

    fn default_wavelength() -> f64 {
        Self::DEFAULT_WAVELENGTH
    }

    pub fn new(n_slits: u32, slit_width: f64, slit_pitch: f64, wavelength: f64) -> Result<Self> {
        let config = Self { n_slits, slit_width, slit_pitch, wavelength };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_slits == 0 {
            return Err(Error::InvalidConfig("n_slits must be at least 1".into()));
        }
        if !(self.slit_width.is_finite() && self.slit_width > 0.0) {
            return Err(Error::InvalidConfig(format!("slit_width must be > 0, got {}", self.slit_width)));
        }
        if !(self.slit_pitch.is_finite() && self.slit_pitch > self.slit_width) {
            return Err(Error::InvalidConfig(format!(
                "slit_pitch ({}) must exceed slit_width ({})",
                self.slit_pitch, self.slit_width
            )));
        }
        if !(self.wavelength.is_finite() && self.wavelength > 0.0) {
            return Err(Error::InvalidConfig(format!("wavelength must be > 0, got {}", self.wavelength)));
        }
        Ok(())
    }

    /// Opaque block width `b = d − a`.
    pub fn block_width(&self) -> f64 {
        self.slit_pitch - self.slit_width
    }
}
