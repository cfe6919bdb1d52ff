//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fail.

use std::f64::consts::{E, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use interfero_core::details::{cosine_sum, details_factor};
use interfero_core::features::{local_maxima, secondary_counts_between_primaries};
use interfero_core::fisher::{
    crlb_monte_carlo, fisher_closed_form, fisher_curve, fisher_numeric, max_fisher, sqrt_fi_vs_n_fit,
};
use interfero_core::homi::{classify_valleys, homi_envelope_via_fourier, homi_pattern, homi_probability};
use interfero_core::msi::{classify_peaks, msi_intensity, msi_pattern};
use interfero_core::mzi_noon::{mzi_pattern, mzi_probability, noon_pattern, noon_probability};
use interfero_core::oracle::{
    cross_term_weight, difference_frequency_projection, GaussianJsa, GaussianSpectrum, JointOracle, MziOracle,
};
use interfero_core::{Correlation, QuadratureSpec, SingleSpectrumConfig, SlitConfig, SpectralModeConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn spectral(n: u32, alpha: f64, gamma: f64, w0: f64) -> SpectralModeConfig {
    SpectralModeConfig::new(n, alpha, gamma, w0).unwrap()
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn max_abs(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, |m, v| if v.is_nan() { f64::NAN } else { m.max(v.abs()) })
}

fn hom_dip() -> Outcome {
    let dip = max_abs((1..=8).map(|n| homi_probability(&spectral(n, 5.0, 2.0, 0.0), 0.0).probability));
    let far: Vec<f64> = grid(3.0, 10.0, 7001).into_iter().skip(1).flat_map(|t| [t, -t]).collect();
    let (mut tail, mut worst_tau, mut worst_n) = (0.0f64, 0.0, 0);
    for n in 1..=8 {
        let c = spectral(n, 5.0, 2.0, 0.0);
        for &t in &far {
            let d = (homi_probability(&c, t).probability - 0.5).abs();
            if d > tail {
                (tail, worst_tau, worst_n) = (d, t, n);
            }
        }
    }
    outcome(
        dip <= 1e-12 && tail <= 1e-8,
        format!(
            "max|P(0)| = {dip:.1e} (tol 1e-12); max|P-0.5| over 3 < |tau| <= 10 = {tail:.3e} at N={worst_n}, tau={worst_tau:.3} (tol 1e-8)"
        ),
    )
}

fn structure_counts() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in [4u32, 5, 6, 7, 8] {
        let c = spectral(n, 5.0, 2.0, 0.0);
        let curve = homi_pattern(&c, -1.5, 1.5, 3001).unwrap();
        let counts = secondary_counts_between_primaries(&classify_valleys(&c, &curve));
        let expected = if n % 2 == 0 { n as usize - 2 } else { (n as usize - 3) / 2 };
        let ok = !counts.is_empty() && counts.iter().all(|&k| k == expected);
        pass &= ok;
        parts.push(format!("HOMI N={n}: {counts:?} (want {expected})"));
    }
    let lambda = SlitConfig::DEFAULT_WAVELENGTH;
    for n in 3..=8u32 {
        let c = SlitConfig::new(n, 1e-5, 5e-4, lambda).unwrap();
        let reach = 3.5 * lambda / c.slit_pitch;
        let curve = msi_pattern(&c, -reach, reach, 3001).unwrap();
        let counts = secondary_counts_between_primaries(&classify_peaks(&c, &curve));
        let ok = !counts.is_empty() && counts.iter().all(|&k| k == n as usize - 2);
        pass &= ok;
        parts.push(format!("MSI N={n}: {counts:?} (want {})", n - 2));
    }
    outcome(pass, parts.join("; "))
}

fn oracle_equivalence() -> Outcome {
    let taus = grid(-1.5, 1.5, 101);
    let spec = QuadratureSpec::default();
    let (mut homi, mut mzi, mut noon) = (0.0f64, 0.0f64, 0.0f64);
    for n in 1..=6 {
        for gamma in [0.5, 0.25] {
            let c = spectral(n, 5.0, gamma, 0.0);
            let oracle =
                JointOracle::coincidence(GaussianJsa { config: c, correlation: Correlation::AntiCorrelated }, spec)
                    .unwrap();
            let p = oracle.probabilities(&taus).unwrap();
            homi = homi.max(max_abs(taus.iter().zip(&p).map(|(&t, p)| homi_probability(&c, t).probability - p)));

            let c = spectral(n, 5.0, gamma, 50.0);
            let oracle =
                JointOracle::noon(GaussianJsa { config: c, correlation: Correlation::Correlated }, spec).unwrap();
            let p = oracle.probabilities(&taus).unwrap();
            noon = noon.max(max_abs(taus.iter().zip(&p).map(|(&t, p)| noon_probability(&c, t) - p)));

            let s = SingleSpectrumConfig::new(n, 5.0, gamma, 50.0).unwrap();
            let oracle = MziOracle::new(GaussianSpectrum { config: s }, spec).unwrap();
            let p = oracle.probabilities(&taus).unwrap();
            mzi = mzi.max(max_abs(taus.iter().zip(&p).map(|(&t, p)| mzi_probability(&s, t) - p)));
        }
    }
    let tol = 1e-4;
    outcome(
        homi < tol && mzi < tol && noon < tol,
        format!("max gap HOMI {homi:.2e}, MZI {mzi:.2e}, NOON {noon:.2e} (tol 1e-4; N<=6, gamma/alpha in {{0.1, 0.05}})"),
    )
}

fn closed_vs_oracle_gap(gamma: f64) -> f64 {
    let c = spectral(2, 5.0, gamma, 0.0);
    let taus = grid(-1.5, 1.5, 101);
    let oracle =
        JointOracle::coincidence(GaussianJsa { config: c, correlation: Correlation::AntiCorrelated }, QuadratureSpec::default())
            .unwrap();
    let p = oracle.probabilities(&taus).unwrap();
    max_abs(taus.iter().zip(&p).map(|(&t, p)| homi_probability(&c, t).probability - p))
}

fn cross_terms() -> Outcome {
    let c = |g| spectral(2, 5.0, g, 0.0);
    let (w_narrow, w_wide) = (cross_term_weight(&c(2.0)).unwrap(), cross_term_weight(&c(4.5)).unwrap());
    let (gap_narrow, gap_wide) = (closed_vs_oracle_gap(2.0), closed_vs_oracle_gap(4.5));
    outcome(
        w_narrow < 1e-5 && gap_narrow < w_narrow && w_wide > 1e-2 && gap_wide > gap_narrow,
        format!(
            "gamma=2: weight {w_narrow:.3e} (< 1e-5), gap {gap_narrow:.2e}; gamma=4.5: weight {w_wide:.3e} (> 1e-2), gap {gap_wide:.2e}"
        ),
    )
}

fn fisher_consistency() -> Outcome {
    let mut worst = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=8 {
        let c = spectral(n, 5.0, 2.0, 0.0);
        let p = |t: f64| homi_probability(&c, t).probability;
        let mut taken = 0;
        while taken < 200 {
            let tau: f64 = rng.random_range(-1.5..1.5);
            let (p0, closed) = (p(tau), fisher_closed_form(&c, tau));
            // Non-degenerate: P away from 0 and 1, and P' not vanishing.
            if p0 * (1.0 - p0) < 1e-6 || closed < 1e-6 {
                continue;
            }
            let numeric = fisher_numeric(p, tau, 1e-4).unwrap().fi;
            worst = worst.max(((numeric - closed) / closed).abs());
            taken += 1;
        }
    }
    let single = fisher_closed_form(&spectral(1, 5.0, 2.0, 0.0), 1.0);
    let single_err = (single - 4.0 / (E * E - 1.0)).abs();
    outcome(
        worst < 1e-4 && single_err < 1e-6,
        format!("max rel gap {worst:.2e} over 1600 points (tol 1e-4); FI(N=1, tau=1) error {single_err:.1e} (tol 1e-6)"),
    )
}

fn fisher_double_peak() -> Outcome {
    let c = spectral(8, 5.0, 2.0, 0.0);
    let taus = grid(-1.5, 1.5, 3001);
    let curve = fisher_curve(&c, &taus);
    let global = curve.fi_values.iter().cloned().fold(0.0, f64::max);
    // Global-scale maxima: local maxima reaching half the global maximum.
    let peaks: Vec<(f64, f64)> = local_maxima(&taus, &curve.fi_values, 1e-6 * global)
        .into_iter()
        .filter(|p| p.value >= 0.5 * global)
        .map(|p| (p.position, p.value))
        .collect();
    let step = taus[1] - taus[0];
    let pass = peaks.len() == 2
        && peaks[0].0 < 0.0
        && peaks[1].0 > 0.0
        && (peaks[0].0 + peaks[1].0).abs() <= step
        && (peaks[0].1 / peaks[1].1 - 1.0).abs() < 1e-6;
    let shown: Vec<String> = peaks.iter().map(|(t, v)| format!("{t:+.4}:{v:.0}")).collect();
    outcome(
        pass,
        format!(
            "{} maxima >= 0.5*global (global {global:.1} at tau={:+.4}); want exactly 2 flanking tau=0: [{}]",
            peaks.len(),
            taus[curve.fi_values.iter().position(|&v| v == global).unwrap()],
            shown.join(", ")
        ),
    )
}

fn fisher_linearity() -> Outcome {
    let fit = sqrt_fi_vs_n_fit(5.0, 2.0, 1..=40).unwrap();
    let residuals = fit.relative_residuals();
    let (worst_n, worst) = residuals
        .iter()
        .cloned()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .unwrap();
    let over: Vec<String> = residuals
        .iter()
        .filter(|r| r.1.abs() >= 0.02)
        .map(|(n, r)| format!("N={n}:{:+.1}%", 100.0 * r))
        .collect();
    outcome(
        fit.r_squared > 0.999 && worst.abs() < 0.02,
        format!(
            "slope {:.4}, intercept {:.4}, R^2 {:.6} (> 0.999); max |residual| {:.2}% at N={worst_n} (< 2%); over 2%: [{}]",
            fit.slope,
            fit.intercept,
            fit.r_squared,
            100.0 * worst.abs(),
            over.join(", ")
        ),
    )
}

fn cramer_rao() -> Outcome {
    let c = spectral(1, 5.0, 2.0, 0.0);
    let peak = max_fisher(&c, None).unwrap();
    match crlb_monte_carlo(&c, peak.tau_star, 10_000, 1_000, 20240917) {
        Ok(r) => {
            let ratio = r.efficiency_ratio();
            outcome(
                (1.0..=1.1).contains(&ratio),
                format!(
                    "tau*={:.4}, estimator SD {:.4e}, CRLB {:.4e}, ratio {ratio:.4} (want [1.0, 1.1])",
                    peak.tau_star, r.estimator_sd, r.crlb_sd
                ),
            )
        }
        Err(e) => outcome(
            false,
            format!("tau*={:.3e} (FI {:.4}): no estimate, {e}", peak.tau_star, peak.fi_max),
        ),
    }
}

fn ewkt() -> Outcome {
    let taus = grid(-1.5, 1.5, 301);
    let mut parts = Vec::new();
    let mut pass = true;
    for n in [1u32, 3] {
        let c = spectral(n, 5.0, 2.0, 0.0);
        let reach = 2.0 * (n - 1) as f64 * 5.0 + 20.0;
        let step = 0.05;
        let count = (2.0 * reach / step).round() as usize + 1;
        let proj = difference_frequency_projection(&c, -reach, step, count, &QuadratureSpec::default()).unwrap();
        let transform = homi_envelope_via_fourier(&proj.samples, &taus).unwrap();
        let err = max_abs(
            taus.iter()
                .zip(&transform)
                .map(|(&t, f)| f - (1.0 - 2.0 * homi_probability(&c, t).probability)),
        );
        pass &= err < 1e-3 && !proj.clipped;
        parts.push(format!("N={n}: max|Re FT - (1-2P)| = {err:.2e}"));
    }
    outcome(pass, format!("{} (tol 1e-3, positive sign)", parts.join(", ")))
}

fn identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let xs: Vec<f64> = (0..1000).map(|_| rng.random_range(-10.0..10.0)).collect();
    let cos_err = max_abs((1..=12).flat_map(|n| xs.iter().map(move |&x| details_factor(n, x) - cosine_sum(n, x))));

    let mut phasor_err = 0.0f64;
    for n in 1..=10u32 {
        let c = SlitConfig::new(n, 1e-5, 5e-4, 500e-9).unwrap();
        for _ in 0..200 {
            let theta: f64 = rng.random_range(-0.05..0.05);
            let s = theta.sin();
            let point = msi_intensity(&c, s).unwrap();
            let delta = 2.0 * PI * c.slit_pitch * s / c.wavelength;
            let (re, im) = (0..n).fold((0.0, 0.0), |(re, im), i| (re + (i as f64 * delta).cos(), im + (i as f64 * delta).sin()));
            let u = PI * c.slit_width * s / c.wavelength;
            let sinc = if u == 0.0 { 1.0 } else { u.sin() / u };
            phasor_err = phasor_err.max((point.intensity - (re * re + im * im) * sinc * sinc).abs());
        }
    }

    let taus = grid(-3.0, 3.0, 3001);
    let reflection = max_abs((1..=8).flat_map(|n| {
        let c = spectral(n, 5.0, 2.0, 0.0);
        taus.clone().into_iter().map(move |t| 1.0 - noon_probability(&c, t) - homi_probability(&c, t).probability)
    }));

    let mut bound_violations = 0usize;
    for n in 1..=8u32 {
        for gamma in [0.5, 2.0, 4.5] {
            let c = spectral(n, 5.0, gamma, 50.0);
            let s = SingleSpectrumConfig::new(n, 5.0, gamma, 50.0).unwrap();
            for curve in [
                homi_pattern(&c, -3.0, 3.0, 3001).unwrap(),
                noon_pattern(&c, -3.0, 3.0, 3001).unwrap(),
                mzi_pattern(&s, -3.0, 3.0, 3001).unwrap(),
            ] {
                bound_violations += curve.check_invariants().is_err() as usize;
            }
        }
        let slits = SlitConfig::new(n, 1e-5, 5e-4, 500e-9).unwrap();
        bound_violations += msi_pattern(&slits, -1.0, 1.0, 20001).unwrap().check_invariants().is_err() as usize;
    }
    outcome(
        cos_err < 1e-10 && phasor_err < 1e-10 && reflection < 1e-12 && bound_violations == 0,
        format!(
            "cosine sum {cos_err:.1e} (1e-10), phasor sum {phasor_err:.1e} (1e-10), NOON/HOMI reflection {reflection:.1e} (1e-12), bound violations {bound_violations}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("HOM dip exactness", 1, hom_dip),
        ("structure counts", 5, structure_counts),
        ("oracle equivalence", 60, oracle_equivalence),
        ("cross-term regime", 10, cross_terms),
        ("Fisher consistency", 5, fisher_consistency),
        ("Fisher double peak (N=8)", 2, fisher_double_peak),
        ("sqrt(FI_max) linearity", 120, fisher_linearity),
        ("Cramer-Rao Monte Carlo", 60, cramer_rao),
        ("e-WKT projection", 10, ewkt),
        ("identity suite", 5, identities),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let pass = result.pass && in_time;
        failed += !pass as usize;
        println!(
            "[{}] {:>2}. {name}: {} | {:.2}s (budget {budget}s{})",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            result.detail,
            elapsed.as_secs_f64(),
            if in_time { "" } else { ", exceeded" }
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
