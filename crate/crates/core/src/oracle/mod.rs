//! Brute-force quadrature of the un-approximated interference integrals.
//!
//! Every oracle normalizes numerically by the quadrature of |f|², keeps all
//! cross terms between modes, and refines by halving every panel until two
//! successive levels agree to [`QuadratureSpec::rel_tolerance`].

mod grid;
pub mod quadrature;
pub mod spectrum;
pub mod tabulated;

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{mode_offsets, SingleSpectrumConfig, SpectralModeConfig};
use crate::error::{Error, Result};
use crate::jsa::Correlation;
use crate::sampled::{UniformSamples, DECAY_THRESHOLD};

use grid::{Grid1d, Grid2d, Kernel, Phase};
use quadrature::{merge_intervals, panelize, AxisRule};
pub use spectrum::{GaussianJsa, GaussianSpectrum, JointSpectrum, ModeSumJsa, ModeSumSpectrum, SingleSpectrum};

/// Deepest refinement level; level `L` splits every base panel into `2^L`.
pub const MAX_REFINEMENT: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureSpec {
    /// Half-width of each Gaussian mode cell in units of γ/√2.
    pub truncation_sigmas: f64,
    /// Gauss–Legendre nodes per mode cell and axis at the base level.
    pub points_per_mode: usize,
    /// Target change between successive refinements, on the probability scale.
    pub rel_tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { truncation_sigmas: 8.0, points_per_mode: 64, rel_tolerance: 1e-8 }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.truncation_sigmas >= 4.0) {
            return Err(Error::InvalidConfig(format!("truncation_sigmas must be >= 4, got {}", self.truncation_sigmas)));
        }
        if self.points_per_mode < 8 {
            return Err(Error::InvalidConfig(format!("points_per_mode must be >= 8, got {}", self.points_per_mode)));
        }
        if !(self.rel_tolerance > 0.0) {
            return Err(Error::InvalidConfig(format!("rel_tolerance must be positive, got {}", self.rel_tolerance)));
        }
        Ok(())
    }

    pub fn panel_order(&self) -> usize {
        self.points_per_mode.min(16)
    }

    pub fn panels_per_mode(&self) -> usize {
        self.points_per_mode.div_ceil(self.panel_order())
    }
}

/// Runs `eval` on successive levels until the largest change is within
/// `tolerance`.
fn refine(tolerance: f64, mut eval: impl FnMut(usize) -> Vec<f64>) -> Result<Vec<f64>> {
    let mut previous = eval(0);
    let mut change = f64::INFINITY;
    for level in 1..=MAX_REFINEMENT {
        let current = eval(level);
        change = previous.iter().zip(&current).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if change <= tolerance {
            return Ok(current);
        }
        previous = current;
    }
    Err(Error::NonConvergence { change, tolerance })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TwoPhoton {
    /// `P = ½ − ½∫∫ f(ω₁,ω₂) f(ω₂,ω₁) cos((ω₁−ω₂)τ)`
    Coincidence,
    /// `P = ½ + ½∫∫ |f(ω₁,ω₂)|² cos((ω₁+ω₂)τ)`
    Noon,
}

/// Two-photon oracle over any joint spectrum, with lazily built and cached
/// refinement levels. Safe to share between threads.
pub struct JointOracle<S> {
    spectrum: S,
    spec: QuadratureSpec,
    kind: TwoPhoton,
    levels: [OnceLock<Grid2d>; MAX_REFINEMENT + 1],
}

impl<S: JointSpectrum> JointOracle<S> {
    /// HOMI coincidence probability.
    pub fn coincidence(spectrum: S, spec: QuadratureSpec) -> Result<Self> {
        Self::new(spectrum, spec, TwoPhoton::Coincidence)
    }

    /// NOON-state coincidence probability.
    pub fn noon(spectrum: S, spec: QuadratureSpec) -> Result<Self> {
        Self::new(spectrum, spec, TwoPhoton::Noon)
    }

    fn new(spectrum: S, spec: QuadratureSpec, kind: TwoPhoton) -> Result<Self> {
        spec.validate()?;
        Ok(Self { spectrum, spec, kind, levels: Default::default() })
    }

    fn grid(&self, level: usize) -> &Grid2d {
        self.levels[level].get_or_init(|| {
            let (p1, p2) = self.spectrum.panels(&self.spec);
            let x = AxisRule::build(&p1, level as u32);
            let y = AxisRule::build(&p2, level as u32);
            let kernel = match self.kind {
                TwoPhoton::Coincidence => Kernel::Exchange,
                TwoPhoton::Noon => Kernel::Square,
            };
            Grid2d::build(&self.spectrum, &x, &y, kernel)
        })
    }

    /// `∫∫|f|²` at the finest level built so far, before normalization.
    pub fn norm(&self) -> f64 {
        self.levels.iter().rev().find_map(|l| l.get()).unwrap_or_else(|| self.grid(1)).norm
    }

    fn level_values(&self, level: usize, taus: &[f64]) -> Vec<f64> {
        let grid = self.grid(level);
        taus.par_iter()
            .map(|&tau| match self.kind {
                TwoPhoton::Coincidence => 0.5 - 0.5 * grid.moment(tau, Phase::Difference),
                TwoPhoton::Noon => 0.5 + 0.5 * grid.moment(tau, Phase::Sum),
            })
            .collect()
    }

    pub fn probabilities(&self, taus: &[f64]) -> Result<Vec<f64>> {
        refine(self.spec.rel_tolerance, |level| self.level_values(level, taus))
    }

    pub fn probability(&self, tau: f64) -> Result<f64> {
        Ok(self.probabilities(&[tau])?[0])
    }
}

/// One-photon Mach–Zehnder oracle, `P = ½[1 + ∫|f(ω)|² cos(ωτ)]`.
pub struct MziOracle<S> {
    spectrum: S,
    spec: QuadratureSpec,
    levels: [OnceLock<Grid1d>; MAX_REFINEMENT + 1],
}

impl<S: SingleSpectrum> MziOracle<S> {
    pub fn new(spectrum: S, spec: QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Self { spectrum, spec, levels: Default::default() })
    }

    fn grid(&self, level: usize) -> &Grid1d {
        self.levels[level].get_or_init(|| {
            let rule = AxisRule::build(&self.spectrum.panels(&self.spec), level as u32);
            Grid1d::build(&self.spectrum, &rule)
        })
    }

    pub fn probabilities(&self, taus: &[f64]) -> Result<Vec<f64>> {
        refine(self.spec.rel_tolerance, |level| {
            let grid = self.grid(level);
            taus.par_iter().map(|&tau| 0.5 * (1.0 + grid.moment(tau))).collect()
        })
    }

    pub fn probability(&self, tau: f64) -> Result<f64> {
        Ok(self.probabilities(&[tau])?[0])
    }
}

pub fn coincidence_numeric(config: &SpectralModeConfig, tau: f64, spec: &QuadratureSpec) -> Result<f64> {
    config.validate()?;
    let jsa = GaussianJsa { config: *config, correlation: Correlation::AntiCorrelated };
    JointOracle::coincidence(jsa, *spec)?.probability(tau)
}

pub fn noon_numeric(config: &SpectralModeConfig, tau: f64, spec: &QuadratureSpec) -> Result<f64> {
    config.validate()?;
    let jsa = GaussianJsa { config: *config, correlation: Correlation::Correlated };
    JointOracle::noon(jsa, *spec)?.probability(tau)
}

pub fn mzi_numeric(config: &SingleSpectrumConfig, tau: f64, spec: &QuadratureSpec) -> Result<f64> {
    config.validate()?;
    MziOracle::new(GaussianSpectrum { config: *config }, *spec)?.probability(tau)
}

/// `∫∫ Σ_{k≠l} f_k f_l / ∫∫ Σ_k f_k²` for the anti-correlated Gaussian JSA,
/// each overlap integral factored into two one-dimensional quadratures.
pub fn integrated_cross_term_ratio(config: &SpectralModeConfig) -> Result<f64> {
    config.validate()?;
    if config.n_modes == 1 {
        return Ok(0.0);
    }
    let spec = QuadratureSpec::default();
    let offsets: Vec<f64> = mode_offsets(config.n_modes).map(|c| c * config.mode_spacing).collect();
    let g = |x: f64| (-(x * x) / (config.mode_width * config.mode_width)).exp();
    let half = spec.truncation_sigmas * config.mode_width / std::f64::consts::SQRT_2;
    // Overlap of two unit Gaussians at a and b, along one axis.
    let overlap = |a: f64, b: f64| {
        let intervals = merge_intervals(vec![(a - half, a + half), (b - half, b + half)]);
        let panels = panelize(&intervals, 2.0 * half / spec.panels_per_mode() as f64, spec.panel_order());
        AxisRule::build(&panels, 1).integrate(|x| g(x - a) * g(x - b))
    };
    let mut diagonal = 0.0;
    let mut cross = 0.0;
    for (k, &a) in offsets.iter().enumerate() {
        for (l, &b) in offsets.iter().enumerate() {
            // Both axes see the same separation (the second is mirrored).
            let along_axis = overlap(a, b);
            let term = along_axis * along_axis;
            if k == l {
                diagonal += term;
            } else {
                cross += term;
            }
        }
    }
    Ok(cross / diagonal)
}

/// Size of the cross terms relative to the diagonal terms of |f|², as an
/// amplitude ratio: the square root of [`integrated_cross_term_ratio`].
/// For two adjacent Gaussian modes this is `exp(−2α²/γ²)`; zero for N = 1.
pub fn cross_term_weight(config: &SpectralModeConfig) -> Result<f64> {
    Ok(integrated_cross_term_ratio(config)?.sqrt())
}

/// A marginal of |f|² sampled on a uniform grid.
#[derive(Debug, Clone)]
pub struct Projection {
    pub samples: UniformSamples,
    /// Whether the marginal is still above the decay threshold at an edge.
    pub clipped: bool,
}

/// Axis of a projection: the marginal variable is `ω₁ − ω₂` or `ω₁ + ω₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Marginal {
    Difference,
    Sum,
}

fn intersect(a: &[(f64, f64)], b: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for &(a0, a1) in a {
        for &(b0, b1) in b {
            let (lo, hi) = (a0.max(b0), a1.min(b1));
            if hi > lo {
                out.push((lo, hi));
            }
        }
    }
    merge_intervals(out)
}

fn project<S: JointSpectrum>(
    spectrum: &S,
    spec: &QuadratureSpec,
    marginal: Marginal,
    start: f64,
    step: f64,
    count: usize,
) -> Result<Projection> {
    spec.validate()?;
    let (p1, p2) = spectrum.panels(spec);
    let support = |panels: &[quadrature::Panel]| merge_intervals(panels.iter().map(|p| (p.lo, p.hi)).collect());
    let (s1, s2) = (support(&p1), support(&p2));
    let width = p1.iter().chain(&p2).map(|p| p.hi - p.lo).fold(f64::INFINITY, f64::min);
    let order = spec.panel_order();
    let norm = {
        let x = AxisRule::build(&p1, 1);
        let y = AxisRule::build(&p2, 1);
        Grid2d::build(spectrum, &x, &y, Kernel::Square).norm
    };
    let scaled = |s: &[(f64, f64)], shift: f64| -> Vec<(f64, f64)> {
        s.iter().map(|&(lo, hi)| (2.0 * lo + shift, 2.0 * hi + shift)).collect()
    };
    // With m the marginal variable and t the integrated one:
    //   difference: ω₁ = (t + m)/2, ω₂ = (t − m)/2
    //   sum:        ω₁ = (m + t)/2, ω₂ = (m − t)/2
    // and dω₁dω₂ = ½ dm dt.
    let value_at = |m: f64, level: u32| -> f64 {
        let (range, point): (Vec<(f64, f64)>, Box<dyn Fn(f64) -> (f64, f64)>) = match marginal {
            Marginal::Difference => (
                intersect(&scaled(&s1, -m), &scaled(&s2, m)),
                Box::new(move |t| (0.5 * (t + m), 0.5 * (t - m))),
            ),
            Marginal::Sum => {
                let neg2: Vec<(f64, f64)> = s2.iter().map(|&(lo, hi)| (m - 2.0 * hi, m - 2.0 * lo)).collect();
                (intersect(&scaled(&s1, -m), &neg2), Box::new(move |t| (0.5 * (m + t), 0.5 * (m - t))))
            }
        };
        let panels = panelize(&range, 2.0 * width, order);
        let rule = AxisRule::build(&panels, level);
        0.5 * rule.integrate(|t| {
            let (w1, w2) = point(t);
            let f = spectrum.amplitude(w1, w2);
            f * f
        }) / norm
    };
    let values = refine(spec.rel_tolerance, |level| {
        (0..count)
            .into_par_iter()
            .map(|i| value_at(start + step * i as f64, level as u32))
            .collect()
    })?;
    let samples = UniformSamples::new(start, step, values)?;
    let clipped = samples.edge_ratio() > DECAY_THRESHOLD;
    Ok(Projection { samples, clipped })
}

/// Marginal of the normalized |f|² along `ω₋ = ω₁ − ω₂` (anti-correlated
/// Gaussian JSA), integrating out `ω₊ = ω₁ + ω₂`. Integrates to one.
pub fn difference_frequency_projection(
    config: &SpectralModeConfig,
    start: f64,
    step: f64,
    count: usize,
    spec: &QuadratureSpec,
) -> Result<Projection> {
    config.validate()?;
    let jsa = GaussianJsa { config: *config, correlation: Correlation::AntiCorrelated };
    project(&jsa, spec, Marginal::Difference, start, step, count)
}

/// Marginal of the normalized |f|² along `ω₊ = ω₁ + ω₂` (correlated
/// Gaussian JSA), integrating out `ω₋`. Integrates to one.
pub fn sum_frequency_projection(
    config: &SpectralModeConfig,
    start: f64,
    step: f64,
    count: usize,
    spec: &QuadratureSpec,
) -> Result<Projection> {
    config.validate()?;
    let jsa = GaussianJsa { config: *config, correlation: Correlation::Correlated };
    project(&jsa, spec, Marginal::Sum, start, step, count)
}

/// [`difference_frequency_projection`] for an arbitrary joint spectrum.
pub fn project_difference<S: JointSpectrum>(
    spectrum: &S,
    start: f64,
    step: f64,
    count: usize,
    spec: &QuadratureSpec,
) -> Result<Projection> {
    project(spectrum, spec, Marginal::Difference, start, step, count)
}

/// [`sum_frequency_projection`] for an arbitrary joint spectrum.
pub fn project_sum<S: JointSpectrum>(
    spectrum: &S,
    start: f64,
    step: f64,
    count: usize,
    spec: &QuadratureSpec,
) -> Result<Projection> {
    project(spectrum, spec, Marginal::Sum, start, step, count)
}
