//! Identity and oracle-equivalence checks collected into a report.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::{SingleSpectrumConfig, SlitConfig, SpectralModeConfig};
use crate::details::{cosine_sum, details_factor};
use crate::error::Result;
use crate::fisher::{fisher_closed_form, fisher_numeric};
use crate::homi::{homi_envelope_via_fourier, homi_probability};
use crate::jsa::Correlation;
use crate::msi::msi_intensity;
use crate::mzi_noon::{mzi_probability, noon_probability};
use crate::oracle::{
    cross_term_weight, difference_frequency_projection, GaussianJsa, GaussianSpectrum, JointOracle, MziOracle,
    QuadratureSpec,
};

const SEED: u64 = 0x1f2e_3d4c;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ToleranceProfile {
    Default,
    /// Oracle comparisons on γ/α = 0.05 configurations at 1e−6.
    Strict,
}

impl ToleranceProfile {
    fn oracle_ratio(self) -> f64 {
        match self {
            Self::Default => 0.1,
            Self::Strict => 0.05,
        }
    }

    fn oracle_threshold(self) -> f64 {
        match self {
            Self::Default => 1e-4,
            Self::Strict => 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub check_name: String,
    pub measured: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `measured ≤ threshold`.
    pub fn at_most(name: &str, measured: f64, threshold: f64) -> Self {
        Self { check_name: name.to_string(), measured, threshold, pass: measured <= threshold }
    }

    /// Passes when `measured ≥ threshold`.
    pub fn at_least(name: &str, measured: f64, threshold: f64) -> Self {
        Self { check_name: name.to_string(), measured, threshold, pass: measured >= threshold }
    }

    fn failed(name: &str, threshold: f64) -> Self {
        Self { check_name: name.to_string(), measured: f64::NAN, threshold, pass: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub failed_checks: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub profile: ToleranceProfile,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }
}

/// The details kernel under test, `(N, x) ↦ D_N(x)`.
pub type DetailsKernel = dyn Fn(u32, f64) -> f64 + Sync;

pub fn run_validation(profile: ToleranceProfile) -> ValidationReport {
    run_validation_with_kernel(profile, &details_factor)
}

/// As [`run_validation`], with the details kernel replaced in the kernel
/// identity checks.
pub fn run_validation_with_kernel(profile: ToleranceProfile, kernel: &DetailsKernel) -> ValidationReport {
    let mut checks = vec![
        cosine_sum_identity(kernel),
        details_bound(kernel),
        msi_phasor_sum(),
        noon_homi_reflection(),
        homi_dip(),
        homi_large_delay(),
        probability_bounds(),
        fisher_single_mode(),
        fisher_consistency(),
        cross_term_regime(),
    ];
    for (name, result) in [
        ("oracle_homi_equivalence", oracle_homi(profile)),
        ("oracle_mzi_equivalence", oracle_mzi(profile)),
        ("oracle_noon_equivalence", oracle_noon(profile)),
    ] {
        checks.push(match result {
            Ok(measured) => Check::at_most(name, measured, profile.oracle_threshold()),
            Err(_) => Check::failed(name, profile.oracle_threshold()),
        });
    }
    for n in [1, 3] {
        let name = format!("ewkt_projection_n{n}");
        let config = SpectralModeConfig { n_modes: n, mode_spacing: 5.0, mode_width: 2.0, center_frequency: 0.0 };
        checks.push(match ewkt_error(&config, &uniform(-1.5, 1.5, 61)) {
            Ok(measured) => Check::at_most(&name, measured, 1e-3),
            Err(_) => Check::failed(&name, 1e-3),
        });
    }
    let failed_checks: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| c.check_name.clone()).collect();
    let summary = Summary {
        total: checks.len(),
        passed: checks.len() - failed_checks.len(),
        failed: failed_checks.len(),
        failed_checks,
    };
    ValidationReport { profile, checks, summary }
}

fn uniform(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn spectral(n: u32, alpha: f64, gamma: f64, w0: f64) -> SpectralModeConfig {
    SpectralModeConfig { n_modes: n, mode_spacing: alpha, mode_width: gamma, center_frequency: w0 }
}

fn max_abs(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, |m, v| if v.is_nan() { f64::NAN } else { m.max(v.abs()) })
}

fn cosine_sum_identity(kernel: &DetailsKernel) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let xs: Vec<f64> = (0..1000).map(|_| rng.random_range(-4.0 * PI..4.0 * PI)).collect();
    let err = max_abs((1..=12).flat_map(|n| xs.iter().map(move |&x| kernel(n, x) - cosine_sum(n, x))));
    Check::at_most("details_cosine_sum_identity", err, 1e-10)
}

fn details_bound(kernel: &DetailsKernel) -> Check {
    let mut excess: f64 = 0.0;
    for n in 1..=12u32 {
        for i in 0..=4000 {
            let x = -2.0 * PI + 4.0 * PI * i as f64 / 4000.0;
            excess = excess.max(kernel(n, x).abs() - n as f64);
        }
        for m in -3..=3 {
            excess = excess.max((kernel(n, m as f64 * PI).abs() - n as f64).abs());
        }
    }
    Check::at_most("details_bound", excess.max(0.0), 0.0)
}

fn msi_phasor_sum() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut err: f64 = 0.0;
    for n in 1..=10u32 {
        let config = SlitConfig { n_slits: n, slit_width: 1e-5, slit_pitch: 5e-4, wavelength: 500e-9 };
        for _ in 0..100 {
            let s: f64 = rng.random_range(-0.01..0.01);
            let point = match msi_intensity(&config, s) {
                Ok(p) => p,
                Err(_) => return Check::failed("msi_phasor_sum", 1e-10),
            };
            let delta = 2.0 * PI * config.slit_pitch * s / config.wavelength;
            let (re, im) = (0..n).fold((0.0, 0.0), |(re, im), i| {
                let (si, ci) = (i as f64 * delta).sin_cos();
                (re + ci, im + si)
            });
            let u = point.u;
            let sinc = if u == 0.0 { 1.0 } else { u.sin() / u };
            let reference = (re * re + im * im) * sinc * sinc;
            err = err.max((point.intensity - reference).abs() / (n * n) as f64);
        }
    }
    Check::at_most("msi_phasor_sum", err, 1e-10)
}

fn noon_homi_reflection() -> Check {
    let taus = uniform(-3.0, 3.0, 601);
    let err = max_abs((1..=8).flat_map(|n| {
        let c = spectral(n, 5.0, 2.0, 0.0);
        taus.clone().into_iter().map(move |t| 1.0 - noon_probability(&c, t) - homi_probability(&c, t).probability)
    }));
    Check::at_most("noon_homi_reflection", err, 1e-12)
}

fn homi_dip() -> Check {
    let err = max_abs((1..=8).map(|n| homi_probability(&spectral(n, 5.0, 2.0, 0.0), 0.0).probability));
    Check::at_most("homi_dip_at_zero_delay", err, 1e-12)
}

/// Beyond |τ| = 4.5 ps the γ = 2 envelope `exp(−γ²τ²/4)` is below 2e−9.
fn homi_large_delay() -> Check {
    let taus: Vec<f64> = uniform(4.5, 10.0, 500).into_iter().flat_map(|t| [t, -t]).collect();
    let err = max_abs((1..=8).flat_map(|n| {
        let c = spectral(n, 5.0, 2.0, 0.0);
        taus.clone().into_iter().map(move |t| homi_probability(&c, t).probability - 0.5)
    }));
    Check::at_most("homi_large_delay_half", err, 1e-8)
}

/// Largest excursion outside [0, 1] (or [0, N²] for MSI) over all families.
fn probability_bounds() -> Check {
    let outside = |v: f64, hi: f64| if v.is_nan() { f64::INFINITY } else { (-v).max(v - hi).max(0.0) };
    let taus = uniform(-3.0, 3.0, 3001);
    let mut worst: f64 = 0.0;
    for n in 1..=8u32 {
        for gamma in [0.5, 2.0, 4.5] {
            let c = spectral(n, 5.0, gamma, 50.0);
            let s = SingleSpectrumConfig { n_modes: n, mode_spacing: 5.0, mode_width: gamma, center_frequency: 50.0 };
            for &t in &taus {
                worst = worst.max(outside(homi_probability(&c, t).probability, 1.0));
                worst = worst.max(outside(noon_probability(&c, t), 1.0));
                worst = worst.max(outside(mzi_probability(&s, t), 1.0));
            }
        }
        let slits = SlitConfig { n_slits: n, slit_width: 1e-5, slit_pitch: 5e-4, wavelength: 500e-9 };
        for s in uniform(-0.05, 0.05, 3001) {
            if let Ok(p) = msi_intensity(&slits, s) {
                worst = worst.max(outside(p.intensity, (n * n) as f64));
            }
        }
    }
    Check::at_most("probability_bounds", worst, 0.0)
}

fn fisher_single_mode() -> Check {
    let fi = fisher_closed_form(&spectral(1, 5.0, 2.0, 0.0), 1.0);
    Check::at_most("fisher_single_mode_value", (fi - 4.0 / (std::f64::consts::E.powi(2) - 1.0)).abs(), 1e-6)
}

/// Largest relative gap between the closed-form Fisher information and
/// finite differences of P at random non-degenerate delays, N ≤ 8.
pub fn fisher_consistency_error(samples_per_config: usize, seed: u64) -> f64 {
    let mut worst: f64 = 0.0;
    for n in 1..=8u32 {
        let c = spectral(n, 5.0, 2.0, 0.0);
        let p = |t: f64| homi_probability(&c, t).probability;
        let mut rng = ChaCha8Rng::seed_from_u64(seed + n as u64);
        let mut taken = 0;
        while taken < samples_per_config {
            let tau: f64 = rng.random_range(-1.5..1.5);
            let p0 = p(tau);
            let closed = fisher_closed_form(&c, tau);
            if p0 * (1.0 - p0) < 1e-6 || closed < 1e-6 {
                continue;
            }
            let numeric = fisher_numeric(p, tau, 1e-4).map(|f| f.fi).unwrap_or(f64::NAN);
            let rel = ((numeric - closed) / closed).abs();
            worst = if rel.is_nan() { f64::NAN } else { worst.max(rel) };
            taken += 1;
        }
    }
    worst
}

fn fisher_consistency() -> Check {
    Check::at_most("fisher_closed_vs_numeric", fisher_consistency_error(200, SEED + 2), 1e-4)
}

fn cross_term_regime() -> Check {
    match cross_term_weight(&spectral(2, 5.0, 2.0, 0.0)) {
        Ok(w) => Check::at_most("cross_term_weight_separated", w, 1e-5),
        Err(_) => Check::failed("cross_term_weight_separated", 1e-5),
    }
}

fn oracle_taus() -> Vec<f64> {
    uniform(-1.5, 1.5, 101)
}

fn oracle_homi(profile: ToleranceProfile) -> Result<f64> {
    let taus = oracle_taus();
    let spec = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for n in 1..=6 {
        let c = spectral(n, 5.0, 5.0 * profile.oracle_ratio(), 0.0);
        let oracle = JointOracle::coincidence(GaussianJsa { config: c, correlation: Correlation::AntiCorrelated }, spec)?;
        let numeric = oracle.probabilities(&taus)?;
        worst = worst.max(max_abs(taus.iter().zip(&numeric).map(|(&t, p)| homi_probability(&c, t).probability - p)));
    }
    Ok(worst)
}

fn oracle_noon(profile: ToleranceProfile) -> Result<f64> {
    let taus = oracle_taus();
    let spec = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for n in 1..=6 {
        let c = spectral(n, 5.0, 5.0 * profile.oracle_ratio(), 50.0);
        let oracle = JointOracle::noon(GaussianJsa { config: c, correlation: Correlation::Correlated }, spec)?;
        let numeric = oracle.probabilities(&taus)?;
        worst = worst.max(max_abs(taus.iter().zip(&numeric).map(|(&t, p)| noon_probability(&c, t) - p)));
    }
    Ok(worst)
}

fn oracle_mzi(profile: ToleranceProfile) -> Result<f64> {
    let taus = oracle_taus();
    let spec = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for n in 1..=6 {
        let c = SingleSpectrumConfig {
            n_modes: n,
            mode_spacing: 5.0,
            mode_width: 5.0 * profile.oracle_ratio(),
            center_frequency: 50.0,
        };
        let oracle = MziOracle::new(GaussianSpectrum { config: c }, spec)?;
        let numeric = oracle.probabilities(&taus)?;
        worst = worst.max(max_abs(taus.iter().zip(&numeric).map(|(&t, p)| mzi_probability(&c, t) - p)));
    }
    Ok(worst)
}

/// `max_τ |∫F(ω₋)cos(ω₋τ)dω₋ − (1 − 2P(τ))|` with F the quadrature
/// difference-frequency projection of the full JSA.
pub fn ewkt_error(config: &SpectralModeConfig, taus: &[f64]) -> Result<f64> {
    let (start, step, count) = projection_grid(config);
    let projection = difference_frequency_projection(config, start, step, count, &QuadratureSpec::default())?;
    let transform = homi_envelope_via_fourier(&projection.samples, taus)?;
    Ok(max_abs(
        taus.iter().zip(&transform).map(|(&t, f)| f - (1.0 - 2.0 * homi_probability(config, t).probability)),
    ))
}

/// A symmetric ω₋ grid covering every mode of the difference-frequency
/// projection out to 10 γ, with step γ/40.
pub fn projection_grid(config: &SpectralModeConfig) -> (f64, f64, usize) {
    let reach = 2.0 * (config.n_modes - 1) as f64 * config.mode_spacing + 10.0 * config.mode_width;
    let step = config.mode_width / 40.0;
    let half = (reach / step).ceil() as usize;
    (-(half as f64) * step, step, 2 * half + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_profile_passes() {
        let report = run_validation(ToleranceProfile::Default);
        for c in &report.checks {
            assert!(c.pass, "{c:?}");
        }
        assert!(report.all_pass());
        assert_eq!(report.summary.total, report.checks.len());
    }

    #[test]
    fn sign_flip_in_kernel_is_caught() {
        let flipped = |n: u32, x: f64| -details_factor(n, x);
        let report = run_validation_with_kernel(ToleranceProfile::Default, &flipped);
        assert!(!report.all_pass());
        assert!(report.summary.failed_checks.contains(&"details_cosine_sum_identity".to_string()));
    }

    #[test]
    fn report_serializes_with_expected_fields() {
        let check = Check::at_most("x", 1.0, 2.0);
        let json = format!("{:?}", check);
        assert!(json.contains("check_name"));
        assert!(check.pass);
        assert!(!Check::at_least("y", 1.0, 2.0).pass);
    }
}
