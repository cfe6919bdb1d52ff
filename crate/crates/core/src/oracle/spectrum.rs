//! Spectral amplitudes the quadrature oracle can integrate.

use std::f64::consts::SQRT_2;

use crate::config::{mode_offsets, SingleSpectrumConfig, SpectralModeConfig};
use crate::jsa::{jsa_value, spectrum_value, Correlation};

use super::quadrature::{merge_intervals, panelize, Panel};
use super::tabulated::{TabulatedMode1d, TabulatedMode2d};
use super::QuadratureSpec;

/// A real two-photon joint spectral amplitude f(ω₁, ω₂).
pub trait JointSpectrum: Sync {
    fn amplitude(&self, w1: f64, w2: f64) -> f64;

    /// Level-0 panels covering the support along ω₁ and ω₂. Outside the
    /// panels the amplitude is treated as zero.
    fn panels(&self, spec: &QuadratureSpec) -> (Vec<Panel>, Vec<Panel>);
}

/// A real single-photon spectral amplitude f(ω).
pub trait SingleSpectrum: Sync {
    fn amplitude(&self, w: f64) -> f64;
    fn panels(&self, spec: &QuadratureSpec) -> Vec<Panel>;
}

/// Cell around each Gaussian mode centre, `±truncation·γ/√2`, cut into
/// `points_per_mode / order` panels.
fn gaussian_mode_panels(centers: impl Iterator<Item = f64>, width: f64, spec: &QuadratureSpec) -> Vec<Panel> {
    let half = spec.truncation_sigmas * width / SQRT_2;
    let intervals = merge_intervals(centers.map(|c| (c - half, c + half)).collect());
    let order = spec.panel_order();
    let panel_width = 2.0 * half / spec.panels_per_mode() as f64;
    panelize(&intervals, panel_width, order)
}

/// The multi-mode Gaussian JSA of [`jsa_value`].
#[derive(Debug, Clone, Copy)]
pub struct GaussianJsa {
    pub config: SpectralModeConfig,
    pub correlation: Correlation,
}

impl JointSpectrum for GaussianJsa {
    fn amplitude(&self, w1: f64, w2: f64) -> f64 {
        jsa_value(&self.config, w1, w2, self.correlation)
    }

    fn panels(&self, spec: &QuadratureSpec) -> (Vec<Panel>, Vec<Panel>) {
        let c = &self.config;
        let sign = self.correlation.second_axis_sign();
        let axis1 = mode_offsets(c.n_modes).map(|k| c.center_frequency + k * c.mode_spacing);
        let axis2 = mode_offsets(c.n_modes).map(|k| c.center_frequency + sign * k * c.mode_spacing);
        (
            gaussian_mode_panels(axis1, c.mode_width, spec),
            gaussian_mode_panels(axis2, c.mode_width, spec),
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GaussianSpectrum {
    pub config: SingleSpectrumConfig,
}

impl SingleSpectrum for GaussianSpectrum {
    fn amplitude(&self, w: f64) -> f64 {
        spectrum_value(&self.config, w)
    }

    fn panels(&self, spec: &QuadratureSpec) -> Vec<Panel> {
        let c = &self.config;
        gaussian_mode_panels(
            mode_offsets(c.n_modes).map(|k| c.center_frequency + k * c.mode_spacing),
            c.mode_width,
            spec,
        )
    }
}

/// Panels between consecutive breakpoints, keeping only those whose
/// midpoint lies inside one of the supports.
fn breakpoint_panels(mut breaks: Vec<f64>, supports: &[(f64, f64)], order: usize) -> Vec<Panel> {
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * a.abs().max(1.0));
    breaks
        .windows(2)
        .filter(|w| {
            let mid = 0.5 * (w[0] + w[1]);
            supports.iter().any(|&(lo, hi)| mid > lo && mid < hi)
        })
        .map(|w| Panel { lo: w[0], hi: w[1], order })
        .collect()
}

/// `f(ω₁, ω₂) = Σ_k f₀(ω₁ − ω₀ − cα, ω₂ − ω₀ ∓ cα)` for a tabulated single-mode f₀.
#[derive(Debug, Clone)]
pub struct ModeSumJsa {
    pub mode: TabulatedMode2d,
    pub n_modes: u32,
    pub mode_spacing: f64,
    pub center_frequency: f64,
    pub correlation: Correlation,
}

impl ModeSumJsa {
    fn shifts(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let sign = self.correlation.second_axis_sign();
        mode_offsets(self.n_modes).map(move |c| {
            let s = c * self.mode_spacing;
            (self.center_frequency + s, self.center_frequency + sign * s)
        })
    }
}

impl JointSpectrum for ModeSumJsa {
    fn amplitude(&self, w1: f64, w2: f64) -> f64 {
        self.shifts().map(|(s1, s2)| self.mode.eval(w1 - s1, w2 - s2)).sum()
    }

    fn panels(&self, spec: &QuadratureSpec) -> (Vec<Panel>, Vec<Panel>) {
        let order = spec.panel_order().min(8);
        let (mut b1, mut b2) = (Vec::new(), Vec::new());
        let (mut s1, mut s2) = (Vec::new(), Vec::new());
        for (d1, d2) in self.shifts() {
            b1.extend(self.mode.x.nodes().map(|x| x + d1));
            b2.extend(self.mode.y.nodes().map(|y| y + d2));
            s1.push((self.mode.x.start + d1, self.mode.x.end() + d1));
            s2.push((self.mode.y.start + d2, self.mode.y.end() + d2));
        }
        (breakpoint_panels(b1, &s1, order), breakpoint_panels(b2, &s2, order))
    }
}

/// `f(ω) = Σ_k f₀(ω − ω₀ − cα)` for a tabulated single-mode f₀.
#[derive(Debug, Clone)]
pub struct ModeSumSpectrum {
    pub mode: TabulatedMode1d,
    pub n_modes: u32,
    pub mode_spacing: f64,
    pub center_frequency: f64,
}

impl SingleSpectrum for ModeSumSpectrum {
    fn amplitude(&self, w: f64) -> f64 {
        mode_offsets(self.n_modes)
            .map(|c| self.mode.eval(w - self.center_frequency - c * self.mode_spacing))
            .sum()
    }

    fn panels(&self, spec: &QuadratureSpec) -> Vec<Panel> {
        let order = spec.panel_order().min(8);
        let mut breaks = Vec::new();
        let mut supports = Vec::new();
        for c in mode_offsets(self.n_modes) {
            let d = self.center_frequency + c * self.mode_spacing;
            breaks.extend(self.mode.x.nodes().map(|x| x + d));
            supports.push((self.mode.x.start + d, self.mode.x.end() + d));
        }
        breakpoint_panels(breaks, &supports, order)
    }
}
