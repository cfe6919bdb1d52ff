//! Uniformly sampled real functions and their cosine/Fourier transforms.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Edge-to-peak ratio above which a sampled function is considered clipped.
pub const DECAY_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniformSamples {
    pub start: f64,
    pub step: f64,
    pub values: Vec<f64>,
}

impl UniformSamples {
    pub fn new(start: f64, step: f64, values: Vec<f64>) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidArgument(format!("sample step must be > 0, got {step}")));
        }
        if values.len() < 2 {
            return Err(Error::InvalidArgument("need at least 2 samples".into()));
        }
        Ok(Self { start, step, values })
    }

    /// Samples `f` at `start + i·step` for `i < count`.
    pub fn from_fn(start: f64, step: f64, count: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..count).map(|i| f(start + step * i as f64)).collect();
        Self::new(start, step, values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn abscissa(&self, i: usize) -> f64 {
        self.start + self.step * i as f64
    }

    pub fn end(&self) -> f64 {
        self.abscissa(self.values.len() - 1)
    }

    pub fn peak(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Largest edge sample relative to the peak magnitude.
    pub fn edge_ratio(&self) -> f64 {
        let peak = self.peak();
        if peak == 0.0 {
            return 0.0;
        }
        let first = self.values[0].abs();
        let last = self.values[self.values.len() - 1].abs();
        first.max(last) / peak
    }

    /// Trapezoidal integral over the sampled range.
    pub fn integral(&self) -> f64 {
        let n = self.values.len();
        let inner: f64 = self.values[1..n - 1].iter().sum();
        self.step * (inner + 0.5 * (self.values[0] + self.values[n - 1]))
    }

    fn trapezoid_weight(&self, i: usize) -> f64 {
        if i == 0 || i == self.values.len() - 1 {
            0.5 * self.step
        } else {
            self.step
        }
    }

    fn check_transformable(&self, frequencies: &[f64], angular: bool) -> Result<()> {
        let ratio = self.edge_ratio();
        if ratio > DECAY_THRESHOLD {
            return Err(Error::NotDecayed { ratio });
        }
        // Largest conjugate variable the grid resolves without aliasing.
        let limit = if angular { PI / self.step } else { 0.5 / self.step };
        if let Some(&bad) = frequencies.iter().find(|f| f.abs() >= limit) {
            return Err(Error::GridTooCoarse { spacing: self.step, abscissa: bad, limit });
        }
        Ok(())
    }

    /// `∫ g(u) cos(uτ) du` for each τ, i.e. `Re ∫ g(u) e^{−iuτ} du`.
    ///
    /// Fails if the samples have not decayed at the edges or if a requested
    /// `|τ|` reaches the aliasing limit `π/step`.
    pub fn cosine_transform(&self, taus: &[f64]) -> Result<Vec<f64>> {
        self.check_transformable(taus, true)?;
        Ok(taus
            .iter()
            .map(|&tau| {
                self.values
                    .iter()
                    .enumerate()
                    .map(|(i, &g)| self.trapezoid_weight(i) * g * (self.abscissa(i) * tau).cos())
                    .sum()
            })
            .collect())
    }

    /// `∫ g(x) e^{−i2πxq} dx` for each spatial frequency `q`.
    pub fn fourier_transform(&self, frequencies: &[f64]) -> Result<Vec<Complex64>> {
        self.check_transformable(frequencies, false)?;
        Ok(frequencies
            .iter()
            .map(|&q| {
                self.values
                    .iter()
                    .enumerate()
                    .map(|(i, &g)| {
                        let phase = -2.0 * PI * self.abscissa(i) * q;
                        Complex64::from_polar(self.trapezoid_weight(i) * g, phase)
                    })
                    .sum()
            })
            .collect())
    }
}
