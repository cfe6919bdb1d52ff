//! Fisher information of the HOMI coincidence curve, its maximum over the
//! delay, √FI scaling with mode number, and Monte-Carlo Cramér–Rao checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::SpectralModeConfig;
use crate::details::reduce_phase;
use crate::error::{Error, Result};
use crate::homi::homi_probability;

/// Inside this band around the removable singularities the closed form is
/// replaced by finite differences of P.
pub const SINGULAR_BAND: f64 = 1e-5;
/// Finite-difference step used inside the singular band.
pub const SINGULAR_STEP: f64 = 1e-4;
/// Below this value of P(1−P) a point is treated as degenerate.
pub const DEGENERATE_VARIANCE: f64 = 1e-12;
/// Below this Fisher information the delay is not identifiable.
pub const IDENTIFIABLE_FISHER: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FisherCurve {
    pub tau_grid: Vec<f64>,
    pub fi_values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FisherPoint {
    pub fi: f64,
    /// P(1−P) fell below [`DEGENERATE_VARIANCE`]; `fi` is the limit `2|P″|`.
    pub degenerate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FisherMax {
    pub tau_star: f64,
    pub fi_max: f64,
    /// The maximum sits on the upper edge of the search window.
    pub on_boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SqrtFiFit {
    /// `(N, √fi_max)` for every N in the range.
    pub points: Vec<(u32, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

impl SqrtFiFit {
    pub fn fitted(&self, n: u32) -> f64 {
        self.slope * n as f64 + self.intercept
    }

    /// `(observed − fitted) / fitted` at each N.
    pub fn relative_residuals(&self) -> Vec<(u32, f64)> {
        self.points.iter().map(|&(n, y)| (n, (y - self.fitted(n)) / self.fitted(n))).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrlbReport {
    pub true_tau: f64,
    pub num_trials: usize,
    pub num_measurements_per_trial: usize,
    pub estimator_mean: f64,
    pub estimator_sd: f64,
    /// `1/√(Num·FI)`
    pub crlb_sd: f64,
    pub fisher_information: f64,
}

impl CrlbReport {
    pub fn efficiency_ratio(&self) -> f64 {
        self.estimator_sd / self.crlb_sd
    }
}

/// `FI(τ) = [P′]² / (P(1−P))` in closed form for the Gaussian multi-mode
/// coincidence probability, in ps⁻².
pub fn fisher_closed_form(config: &SpectralModeConfig, tau: f64) -> f64 {
    let n = config.n_modes as f64;
    let (alpha, gamma) = (config.mode_spacing, config.mode_width);
    // Everything is written in the reduced phase r = 2ατ − mπ. The sign
    // (−1)^{mN} common to sin(Nx) and cos(Nx) drops out of the square, and
    // sin(Nr), sin(r) stay consistent where their ratio is singular.
    let (r, _) = reduce_phase(2.0 * alpha * tau);
    let (s, c) = r.sin_cos();
    if s.abs() < SINGULAR_BAND || tau.abs() < SINGULAR_BAND {
        let p = |t: f64| homi_probability(config, t).probability;
        return fisher_numeric(p, tau, SINGULAR_STEP).map(|f| f.fi).unwrap_or(0.0);
    }
    let (big_s, big_c) = (n * r).sin_cos();
    // Grouped so that the N = 1 terms cancel exactly and small τ keeps precision.
    let numerator = gamma * gamma * tau / 2.0 * big_s + 2.0 * alpha * (big_s * c - n * big_c * s) / s;
    let denominator = n * n * s * s * (gamma * gamma * tau * tau / 2.0).exp_m1() + (n * s - big_s) * (n * s + big_s);
    if !denominator.is_finite() {
        return 0.0;
    }
    (numerator * numerator / denominator).max(0.0)
}

/// `[P′]² / (P(1−P))` with P′ from Richardson-extrapolated central
/// differences. Where P(1−P) < [`DEGENERATE_VARIANCE`] (the dip or a unit
/// maximum, where P′ also vanishes) the limit `2|P″|` is returned instead.
pub fn fisher_numeric(p: impl Fn(f64) -> f64, tau: f64, step: f64) -> Result<FisherPoint> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {step}")));
    }
    let p0 = p(tau);
    let variance = p0 * (1.0 - p0);
    if variance < DEGENERATE_VARIANCE {
        let second = |h: f64| (p(tau + h) - 2.0 * p0 + p(tau - h)) / (h * h);
        let curvature = (4.0 * second(step / 2.0) - second(step)) / 3.0;
        return Ok(FisherPoint { fi: 2.0 * curvature.abs(), degenerate: true });
    }
    let first = |h: f64| (p(tau + h) - p(tau - h)) / (2.0 * h);
    let slope = (4.0 * first(step / 2.0) - first(step)) / 3.0;
    Ok(FisherPoint { fi: slope * slope / variance, degenerate: false })
}

pub fn fisher_curve(config: &SpectralModeConfig, tau_grid: &[f64]) -> FisherCurve {
    FisherCurve {
        tau_grid: tau_grid.to_vec(),
        fi_values: tau_grid.par_iter().map(|&t| fisher_closed_form(config, t)).collect(),
    }
}

/// `[0, 3/γ + π/(2α)]`: the envelope has decayed and at least one full
/// period of the details factor is included.
pub fn default_search_window(config: &SpectralModeConfig) -> (f64, f64) {
    (0.0, 3.0 / config.mode_width + std::f64::consts::PI / (2.0 * config.mode_spacing))
}

/// Scan step resolving the narrowest structure of P: a fraction of the
/// details-factor period and of the envelope width.
fn scan_step(config: &SpectralModeConfig) -> f64 {
    let details = std::f64::consts::PI / (40.0 * config.n_modes as f64 * config.mode_spacing);
    details.min(1.0 / (40.0 * config.mode_width))
}

fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Global maximum of FI over `window` (default [`default_search_window`]):
/// dense scan, then golden-section refinement around the best grid point.
/// FI is even, so a lower edge at τ = 0 counts as interior.
pub fn max_fisher(config: &SpectralModeConfig, window: Option<(f64, f64)>) -> Result<FisherMax> {
    config.validate()?;
    let (lo, hi) = window.unwrap_or_else(|| default_search_window(config));
    if !(hi > lo) {
        return Err(Error::InvalidArgument(format!("empty search window [{lo}, {hi}]")));
    }
    let count = ((hi - lo) / scan_step(config)).ceil() as usize + 1;
    let step = (hi - lo) / (count - 1) as f64;
    let grid: Vec<f64> = (0..count).map(|i| lo + step * i as f64).collect();
    let values: Vec<f64> = grid.par_iter().map(|&t| fisher_closed_form(config, t)).collect();
    let (best, &grid_max) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty scan");
    let a = grid[best.saturating_sub(1)];
    let b = grid[(best + 1).min(count - 1)];
    let (tau, fi) = golden_section_max(|t| fisher_closed_form(config, t), a, b, 1e-10 * (1.0 + hi.abs()));
    let (tau_star, fi_max) = if fi >= grid_max { (tau, fi) } else { (grid[best], grid_max) };
    let on_boundary = best == count - 1 || (best == 0 && lo != 0.0);
    Ok(FisherMax { tau_star, fi_max, on_boundary })
}

/// Least-squares line through `(N, √fi_max(N))` at fixed α and γ.
pub fn sqrt_fi_vs_n_fit(alpha: f64, gamma: f64, n_range: std::ops::RangeInclusive<u32>) -> Result<SqrtFiFit> {
    let (first, last) = (*n_range.start(), *n_range.end());
    if first < 1 || last > 40 {
        return Err(Error::InvalidArgument(format!("mode numbers must lie in 1..=40, got {first}..={last}")));
    }
    if last <= first {
        return Err(Error::DegenerateFit(format!("need at least two mode numbers, got {first}..={last}")));
    }
    let points = n_range
        .into_par_iter()
        .map(|n| {
            let config = SpectralModeConfig::new(n, alpha, gamma, 0.0)?;
            Ok((n, max_fisher(&config, None)?.fi_max.sqrt()))
        })
        .collect::<Result<Vec<_>>>()?;
    let (slope, intercept, r_squared) = linear_fit(&points.iter().map(|&(n, y)| (n as f64, y)).collect::<Vec<_>>());
    Ok(SqrtFiFit { points, slope, intercept, r_squared })
}

fn linear_fit(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = points.iter().map(|p| (p.1 - slope * p.0 - intercept).powi(2)).sum();
    let ss_tot: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    (slope, intercept, 1.0 - ss_res / ss_tot)
}

fn derivative(p: &impl Fn(f64) -> f64, t: f64, h: f64) -> f64 {
    (p(t + h) - p(t - h)) / (2.0 * h)
}

/// Nearest zero of P′ from `tau` in direction `dir`, searched up to `limit`.
fn nearest_stationary(p: &impl Fn(f64) -> f64, tau: f64, dir: f64, step: f64, limit: f64) -> Option<f64> {
    let h = step * 1e-3;
    let sign0 = derivative(p, tau, h).signum();
    let mut a = tau;
    while (a - tau).abs() < limit {
        let b = a + dir * step;
        if derivative(p, b, h).signum() != sign0 {
            let (mut lo, mut hi) = (a, b);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if derivative(p, mid, h).signum() == sign0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if (hi - lo).abs() < 1e-13 {
                    break;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        a = b;
    }
    None
}

/// Solves `P(τ) = target` by bisection on a monotone branch, clamping to
/// the branch ends when the target is out of range.
fn invert_on_branch(p: &impl Fn(f64) -> f64, target: f64, lo: f64, hi: f64) -> f64 {
    let (p_lo, p_hi) = (p(lo), p(hi));
    let increasing = p_hi > p_lo;
    let (min, max) = if increasing { (p_lo, p_hi) } else { (p_hi, p_lo) };
    if target <= min {
        return if increasing { lo } else { hi };
    }
    if target >= max {
        return if increasing { hi } else { lo };
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if (p(mid) < target) == increasing {
            a = mid;
        } else {
            b = mid;
        }
        if b - a < 1e-14 * (1.0 + mid.abs()) {
            break;
        }
    }
    0.5 * (a + b)
}

/// Simulates `num_trials` experiments of `num_measurements` coincidence
/// detections each, estimates τ per trial by maximum likelihood on the
/// monotone branch of P around `true_tau`, and compares the spread of the
/// estimates with the Cramér–Rao bound. Trials use independent ChaCha
/// streams of `seed`, so reports are reproducible and thread-count
/// independent.
pub fn crlb_monte_carlo(
    config: &SpectralModeConfig,
    true_tau: f64,
    num_measurements: usize,
    num_trials: usize,
    seed: u64,
) -> Result<CrlbReport> {
    config.validate()?;
    if num_measurements == 0 || num_trials < 2 {
        return Err(Error::InvalidArgument("need at least one measurement and two trials".into()));
    }
    let p = |t: f64| homi_probability(config, t).probability;
    let p_true = p(true_tau);
    if !(p_true * (1.0 - p_true) >= DEGENERATE_VARIANCE) {
        return Err(Error::DegenerateProbability { tau: true_tau, probability: p_true });
    }
    let fi = fisher_closed_form(config, true_tau);
    if fi < IDENTIFIABLE_FISHER {
        return Err(Error::NonIdentifiable { tau: true_tau, fisher: fi });
    }

    let step = scan_step(config);
    let reach = 8.0 / config.mode_width + std::f64::consts::PI / config.mode_spacing;
    let lo = nearest_stationary(&p, true_tau, -1.0, step, reach).unwrap_or(true_tau - reach);
    let hi = nearest_stationary(&p, true_tau, 1.0, step, reach).unwrap_or(true_tau + reach);

    let estimates: Vec<f64> = (0..num_trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let hits = (0..num_measurements).filter(|_| rng.random::<f64>() < p_true).count();
            invert_on_branch(&p, hits as f64 / num_measurements as f64, lo, hi)
        })
        .collect();

    let m = num_trials as f64;
    let mean = estimates.iter().sum::<f64>() / m;
    let var = estimates.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (m - 1.0);
    Ok(CrlbReport {
        true_tau,
        num_trials,
        num_measurements_per_trial: num_measurements,
        estimator_mean: mean,
        estimator_sd: var.sqrt(),
        crlb_sd: 1.0 / (num_measurements as f64 * fi).sqrt(),
        fisher_information: fi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg(n: u32) -> SpectralModeConfig {
        SpectralModeConfig::new(n, 5.0, 2.0, 0.0).unwrap()
    }

    #[test]
    fn single_mode_value() {
        let expected = 4.0 / (std::f64::consts::E.powi(2) - 1.0);
        assert!((fisher_closed_form(&cfg(1), 1.0) - expected).abs() < 1e-12);
        let p = |t: f64| homi_probability(&cfg(1), t).probability;
        let numeric = fisher_numeric(p, 1.0, 1e-3).unwrap();
        assert!(!numeric.degenerate);
        assert!((numeric.fi - expected).abs() < 1e-6);
    }

    #[test]
    fn flat_probability_carries_no_information() {
        assert_eq!(fisher_numeric(|_| 0.5, 0.3, 1e-3).unwrap().fi, 0.0);
        assert!(fisher_numeric(|_| 0.5, 0.3, 0.0).is_err());
    }

    #[test]
    fn limit_at_the_dip() {
        // FI(0) = γ²/2 + 4α²(N²−1)/3
        for n in [1u32, 2, 5, 8] {
            let c = cfg(n);
            let expected = 2.0 + 100.0 * (n * n - 1) as f64 / 3.0;
            let fi = fisher_closed_form(&c, 0.0);
            assert!((fi / expected - 1.0).abs() < 1e-6, "N={n}: {fi} vs {expected}");
        }
    }

    #[test]
    fn decays_far_from_the_dip() {
        assert!(fisher_closed_form(&cfg(4), 12.0) < 1e-30);
        assert_eq!(fisher_closed_form(&cfg(4), 1e3), 0.0);
    }

    #[test]
    fn singular_band_is_continuous() {
        let c = cfg(3);
        let edge = std::f64::consts::PI / 10.0 + SINGULAR_BAND / (2.0 * 5.0);
        for eps in [1e-10, 1e-11] {
            let inside = fisher_closed_form(&c, edge - eps);
            let outside = fisher_closed_form(&c, edge + eps);
            assert!((inside / outside - 1.0).abs() < 1e-6, "{inside} vs {outside}");
        }
        let inside = fisher_closed_form(&c, SINGULAR_BAND * 0.999);
        let outside = fisher_closed_form(&c, SINGULAR_BAND * 1.001);
        assert!((inside / outside - 1.0).abs() < 1e-6, "{inside} vs {outside}");
    }

    #[test]
    fn single_mode_maximum_matches_scan() {
        let c = cfg(1);
        let m = max_fisher(&c, None).unwrap();
        let best = (0..=1_500_000)
            .map(|i| i as f64 * 1e-6)
            .map(|t| (t, fisher_closed_form(&c, t)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert!((m.tau_star - best.0).abs() < 1e-5);
        assert!(m.fi_max >= best.1 * (1.0 - 1e-9));
        assert!(!m.on_boundary);
    }

    #[test]
    fn boundary_maximum_is_flagged() {
        let m = max_fisher(&cfg(1), Some((0.5, 0.6))).unwrap();
        assert!(m.on_boundary);
        assert!((m.tau_star - 0.5).abs() < 1e-9);
    }

    #[test]
    fn fit_needs_two_points() {
        assert!(matches!(sqrt_fi_vs_n_fit(5.0, 2.0, 3..=3), Err(Error::DegenerateFit(_))));
        assert!(sqrt_fi_vs_n_fit(5.0, 2.0, 0..=3).is_err());
    }

    #[test]
    fn fit_slope_grows_with_spacing() {
        let a = sqrt_fi_vs_n_fit(5.0, 2.0, 1..=10).unwrap();
        let b = sqrt_fi_vs_n_fit(10.0, 2.0, 1..=10).unwrap();
        assert!(b.slope > a.slope);
    }

    #[test]
    fn crlb_preconditions() {
        assert!(matches!(crlb_monte_carlo(&cfg(2), 0.0, 100, 10, 1), Err(Error::DegenerateProbability { .. })));
        // Far out P is ½ to machine precision and FI vanishes.
        assert!(matches!(crlb_monte_carlo(&cfg(1), 20.0, 100, 10, 1), Err(Error::NonIdentifiable { .. })));
    }

    #[test]
    fn crlb_is_deterministic() {
        let a = crlb_monte_carlo(&cfg(1), 0.5, 500, 50, 7).unwrap();
        let b = crlb_monte_carlo(&cfg(1), 0.5, 500, 50, 7).unwrap();
        assert_eq!(a, b);
        let c = crlb_monte_carlo(&cfg(1), 0.5, 500, 50, 8).unwrap();
        assert_ne!(a.estimator_sd, c.estimator_sd);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn even_in_tau(n in 1u32..=8, tau in 0.0f64..2.0) {
            let c = cfg(n);
            let (a, b) = (fisher_closed_form(&c, tau), fisher_closed_form(&c, -tau));
            prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
            prop_assert!(a >= 0.0 && a.is_finite());
        }
    }
}
