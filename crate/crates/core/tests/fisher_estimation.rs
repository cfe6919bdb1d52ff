//! Fisher information against its analytic limits and a Monte Carlo estimator.

use interfero_core::fisher::{crlb_monte_carlo, fisher_closed_form, max_fisher, sqrt_fi_vs_n_fit};
use interfero_core::homi::homi_probability;
use interfero_core::SpectralModeConfig;

#[test]
fn dip_value_matches_series_expansion() {
    // Near τ = 0, P ≈ ½(γ²/4 + 2α²(N²−1)/3)τ², and FI(0) = lim 4P/τ² = γ²/2 + 4α²(N²−1)/3.
    for n in 1..=8u32 {
        for (alpha, gamma) in [(5.0, 2.0), (3.0, 0.7)] {
            let c = SpectralModeConfig::new(n, alpha, gamma, 0.0).unwrap();
            let nn = n as f64;
            let expected = gamma * gamma / 2.0 + 4.0 * alpha * alpha * (nn * nn - 1.0) / 3.0;
            let fi = fisher_closed_form(&c, 0.0);
            assert!((fi / expected - 1.0).abs() < 1e-6, "N={n}: {fi} vs {expected}");
        }
    }
}

#[test]
fn closed_form_matches_central_differences() {
    for n in 1..=6u32 {
        let c = SpectralModeConfig::new(n, 5.0, 2.0, 0.0).unwrap();
        for &t in &[0.05, 0.17, 0.4, 0.77, 1.3] {
            let h = 1e-5;
            let p = |x: f64| homi_probability(&c, x).probability;
            let d = (p(t + h) - p(t - h)) / (2.0 * h);
            let pt = p(t);
            let numeric = d * d / (pt * (1.0 - pt));
            let fi = fisher_closed_form(&c, t);
            assert!((fi - numeric).abs() <= 1e-5 * fi.max(1.0), "N={n} τ={t}: {fi} vs {numeric}");
        }
    }
}

#[test]
fn maximum_likelihood_reaches_the_bound_at_a_regular_point() {
    // With T trials the sample sd has relative spread ≈ 1/√(2T) ≈ 0.035 for
    // T = 400; 0.15 leaves room for O(1/M) estimator bias.
    let c = SpectralModeConfig::new(1, 5.0, 2.0, 0.0).unwrap();
    let report = crlb_monte_carlo(&c, 0.5, 10_000, 400, 2024).unwrap();
    assert!((report.efficiency_ratio() - 1.0).abs() < 0.15, "ratio {}", report.efficiency_ratio());
    assert!((report.estimator_mean - 0.5).abs() < 3.0 * report.crlb_sd);
    assert!((report.fisher_information - fisher_closed_form(&c, 0.5)).abs() < 1e-12);
}

#[test]
fn doubling_the_spacing_roughly_doubles_the_slope() {
    // FI grows like α²N² once the α terms dominate γ²/2, so √FI_max ∝ α.
    let base = sqrt_fi_vs_n_fit(5.0, 2.0, 1..=8).unwrap();
    let doubled = sqrt_fi_vs_n_fit(10.0, 2.0, 1..=8).unwrap();
    let ratio = doubled.slope / base.slope;
    assert!((ratio - 2.0).abs() < 0.1, "ratio {ratio}");
    assert!(doubled.r_squared > 0.99);
}

#[test]
fn maximum_is_at_least_the_dip_value() {
    for n in 1..=8u32 {
        let c = SpectralModeConfig::new(n, 5.0, 2.0, 0.0).unwrap();
        let m = max_fisher(&c, None).unwrap();
        assert!(m.fi_max >= fisher_closed_form(&c, 0.0) * (1.0 - 1e-12), "N={n}");
        assert!((fisher_closed_form(&c, m.tau_star) - m.fi_max).abs() <= 1e-9 * m.fi_max);
    }
}
