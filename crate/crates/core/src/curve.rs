use serde::{Deserialize, Serialize};

use crate::config::{SingleSpectrumConfig, SlitConfig, SpectralModeConfig};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Homi,
    Msi,
    Mzi,
    Noon,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Homi => "homi",
            Family::Msi => "msi",
            Family::Mzi => "mzi",
            Family::Noon => "noon",
        }
    }
}

/// The configuration a curve was generated from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConfigSnapshot {
    SpectralModes(SpectralModeConfig),
    SingleSpectrum(SingleSpectrumConfig),
    Slits(SlitConfig),
}

/// A sampled interference curve: P(τ) against τ in ps, or I against sin θ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternCurve {
    pub abscissa: Vec<f64>,
    pub values: Vec<f64>,
    pub family: Family,
    pub config: ConfigSnapshot,
}

impl PatternCurve {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Checks ordering, lengths and the value range for the family.
    pub fn check_invariants(&self) -> Result<()> {
        if self.abscissa.len() != self.values.len() {
            return Err(Error::InvalidArgument(format!(
                "abscissa has {} samples but values has {}",
                self.abscissa.len(),
                self.values.len()
            )));
        }
        if self.abscissa.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument("abscissa is not strictly increasing".into()));
        }
        let upper = match (self.family, self.config) {
            (Family::Msi, ConfigSnapshot::Slits(c)) => (c.n_slits as f64).powi(2),
            _ => 1.0,
        };
        if let Some(v) = self.values.iter().find(|v| !(**v >= 0.0 && **v <= upper)) {
            return Err(Error::InvalidArgument(format!("value {v} outside [0, {upper}]")));
        }
        Ok(())
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.abscissa.iter().copied().zip(self.values.iter().copied())
    }
}

/// `n` uniformly spaced samples from `start` to `stop` inclusive.
pub fn uniform_grid(start: f64, stop: f64, n: usize) -> Result<Vec<f64>> {
    if !(start < stop) || !start.is_finite() || !stop.is_finite() {
        return Err(Error::InvalidArgument(format!("empty range [{start}, {stop}]")));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 samples, got {n}")));
    }
    let step = (stop - start) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i == n - 1 { stop } else { start + step * i as f64 })
        .collect())
}
