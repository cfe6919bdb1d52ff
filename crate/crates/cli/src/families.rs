//! Single-family sweeps: one curve, optionally with an oracle column.

use std::path::Path;

use anyhow::{Context, Result};
use interfero_core::fisher::{crlb_monte_carlo, fisher_curve, max_fisher, sqrt_fi_vs_n_fit};
use interfero_core::homi::{adjacent_overlap, classify_valleys, homi_pattern};
use interfero_core::msi::{classify_peaks, msi_pattern};
use interfero_core::mzi_noon::{classify_envelope_peaks, mzi_pattern, noon_pattern, DEFAULT_CARRIER};
use interfero_core::oracle::tabulated::{TabulatedMode1d, TabulatedMode2d};
use interfero_core::oracle::{
    cross_term_weight, GaussianJsa, GaussianSpectrum, JointOracle, ModeSumJsa, ModeSumSpectrum, MziOracle,
};
use interfero_core::curve::uniform_grid;
use interfero_core::features::{secondary_counts_between_primaries, ClassifiedFeature};
use interfero_core::{Correlation, PatternCurve};
use serde_json::{json, Value};

use crate::output::Sink;
use crate::params::RunParams;
use crate::svg::{line_plot, Series, Style};

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn feature_summary(features: &[ClassifiedFeature]) -> Value {
    json!({
        "primary": features.iter().filter(|f| f.primary).count(),
        "secondary": features.iter().filter(|f| !f.primary).count(),
        "secondary_between_primaries": secondary_counts_between_primaries(features),
    })
}

/// Writes `<target>.csv`, `<target>.svg` and `<target>.json` for one sampled
/// curve plus any extra columns.
#[allow(clippy::too_many_arguments)]
fn emit(
    sink: &mut Sink,
    target: &str,
    config: &Value,
    x_name: &str,
    xs: &[f64],
    columns: &[(&str, &[f64])],
    y_label: &str,
    mut summary: Value,
) -> Result<()> {
    let mut names = vec![x_name];
    names.extend(columns.iter().map(|c| c.0));
    let mut data: Vec<&[f64]> = vec![xs];
    data.extend(columns.iter().map(|c| c.1));
    sink.csv(target, target, config, &names, &data)?;
    sink.svg(target, || {
        let series: Vec<Series> =
            columns.iter().map(|&(label, y)| Series { label, x: xs, y, style: Style::Line }).collect();
        line_plot(target, x_name, y_label, &series)
    })?;
    summary["target"] = json!(target);
    summary["config"] = config.clone();
    sink.json(target, &summary)
}

fn curve_features(curve: &PatternCurve, features: interfero_core::Result<Vec<ClassifiedFeature>>) -> Result<Value> {
    curve.check_invariants()?;
    Ok(feature_summary(&features?))
}

pub fn homi(p: &RunParams, sink: &mut Sink) -> Result<()> {
    let config = p.spectral(0.0)?;
    let (lo, hi, n) = p.tau_window()?;
    let spec = p.quadrature();
    let mut cfg = json!({"family": "homi", "spectral": config, "tau_min": lo, "tau_max": hi, "samples": n});

    if let Some(path) = &p.tabulated {
        let mode = TabulatedMode2d::parse(&read(path)?)?;
        let taus = uniform_grid(lo, hi, n)?;
        let jsa = ModeSumJsa {
            mode,
            n_modes: config.n_modes,
            mode_spacing: config.mode_spacing,
            center_frequency: config.center_frequency,
            correlation: Correlation::AntiCorrelated,
        };
        let values = JointOracle::coincidence(jsa, spec)?.probabilities(&taus)?;
        cfg["tabulated"] = json!(path);
        cfg["quadrature"] = json!(spec);
        return emit(sink, "homi", &cfg, "tau_ps", &taus, &[("probability_oracle", &values)], "P(τ)", json!({}));
    }

    let curve = homi_pattern(&config, lo, hi, n)?;
    let mut summary = json!({
        "valleys": curve_features(&curve, Ok(classify_valleys(&config, &curve)))?,
        "adjacent_overlap": adjacent_overlap(&config),
        "cross_term_weight": cross_term_weight(&config)?,
        "well_separated": config.well_separated(),
    });
    if p.oracle.unwrap_or(false) {
        let jsa = GaussianJsa { config, correlation: Correlation::AntiCorrelated };
        let oracle = JointOracle::coincidence(jsa, spec)?.probabilities(&curve.abscissa)?;
        cfg["quadrature"] = json!(spec);
        summary["max_oracle_gap"] = json!(max_gap(&curve.values, &oracle));
        let cols: [(&str, &[f64]); 2] = [("probability", &curve.values), ("probability_oracle", &oracle)];
        return emit(sink, "homi", &cfg, "tau_ps", &curve.abscissa, &cols, "P(τ)", summary);
    }
    emit(sink, "homi", &cfg, "tau_ps", &curve.abscissa, &[("probability", &curve.values)], "P(τ)", summary)
}

pub fn msi(p: &RunParams, sink: &mut Sink) -> Result<()> {
    let config = p.slits()?;
    let (lo, hi, n) = p.sin_theta_window(&config)?;
    let cfg = json!({"family": "msi", "slits": config, "sin_theta_min": lo, "sin_theta_max": hi, "samples": n});
    let curve = msi_pattern(&config, lo, hi, n)?;
    let summary = json!({ "peaks": curve_features(&curve, Ok(classify_peaks(&config, &curve)))? });
    emit(sink, "msi", &cfg, "sin_theta", &curve.abscissa, &[("intensity", &curve.values)], "I(θ)", summary)
}

pub fn mzi(p: &RunParams, sink: &mut Sink) -> Result<()> {
    let config = p.single(DEFAULT_CARRIER)?;
    let (lo, hi, n) = p.tau_window()?;
    let spec = p.quadrature();
    let mut cfg = json!({"family": "mzi", "spectrum": config, "tau_min": lo, "tau_max": hi, "samples": n});

    if let Some(path) = &p.tabulated {
        let mode = TabulatedMode1d::parse(&read(path)?)?;
        let taus = uniform_grid(lo, hi, n)?;
        let spectrum = ModeSumSpectrum {
            mode,
            n_modes: config.n_modes,
            mode_spacing: config.mode_spacing,
            center_frequency: config.center_frequency,
        };
        let values = MziOracle::new(spectrum, spec)?.probabilities(&taus)?;
        cfg["tabulated"] = json!(path);
        cfg["quadrature"] = json!(spec);
        return emit(sink, "mzi", &cfg, "tau_ps", &taus, &[("probability_oracle", &values)], "P(τ)", json!({}));
    }

    let curve = mzi_pattern(&config, lo, hi, n)?;
    let mut summary = json!({
        "envelope_peaks": curve_features(&curve, classify_envelope_peaks(&curve))?,
        "well_separated": config.well_separated(),
    });
    if p.oracle.unwrap_or(false) {
        let oracle = MziOracle::new(GaussianSpectrum { config }, spec)?.probabilities(&curve.abscissa)?;
        cfg["quadrature"] = json!(spec);
        summary["max_oracle_gap"] = json!(max_gap(&curve.values, &oracle));
        let cols: [(&str, &[f64]); 2] = [("probability", &curve.values), ("probability_oracle", &oracle)];
        return emit(sink, "mzi", &cfg, "tau_ps", &curve.abscissa, &cols, "P(τ)", summary);
    }
    emit(sink, "mzi", &cfg, "tau_ps", &curve.abscissa, &[("probability", &curve.values)], "P(τ)", summary)
}

pub fn noon(p: &RunParams, sink: &mut Sink) -> Result<()> {
    let config = p.spectral(DEFAULT_CARRIER)?;
    let (lo, hi, n) = p.tau_window()?;
    let spec = p.quadrature();
    let mut cfg = json!({"family": "noon", "spectral": config, "tau_min": lo, "tau_max": hi, "samples": n});

    if let Some(path) = &p.tabulated {
        let mode = TabulatedMode2d::parse(&read(path)?)?;
        let taus = uniform_grid(lo, hi, n)?;
        let jsa = ModeSumJsa {
            mode,
            n_modes: config.n_modes,
            mode_spacing: config.mode_spacing,
            center_frequency: config.center_frequency,
            correlation: Correlation::Correlated,
        };
        let values = JointOracle::noon(jsa, spec)?.probabilities(&taus)?;
        cfg["tabulated"] = json!(path);
        cfg["quadrature"] = json!(spec);
        return emit(sink, "noon", &cfg, "tau_ps", &taus, &[("probability_oracle", &values)], "P(τ)", json!({}));
    }

    let curve = noon_pattern(&config, lo, hi, n)?;
    let mut summary = json!({
        "envelope_peaks": curve_features(&curve, classify_envelope_peaks(&curve))?,
        "well_separated": config.well_separated(),
    });
    if p.oracle.unwrap_or(false) {
        let jsa = GaussianJsa { config, correlation: Correlation::Correlated };
        let oracle = JointOracle::noon(jsa, spec)?.probabilities(&curve.abscissa)?;
        cfg["quadrature"] = json!(spec);
        summary["max_oracle_gap"] = json!(max_gap(&curve.values, &oracle));
        let cols: [(&str, &[f64]); 2] = [("probability", &curve.values), ("probability_oracle", &oracle)];
        return emit(sink, "noon", &cfg, "tau_ps", &curve.abscissa, &cols, "P(τ)", summary);
    }
    emit(sink, "noon", &cfg, "tau_ps", &curve.abscissa, &[("probability", &curve.values)], "P(τ)", summary)
}

pub fn fisher(p: &RunParams, sink: &mut Sink) -> Result<()> {
    let config = p.spectral(0.0)?;
    let (lo, hi, n) = p.tau_window()?;
    let mut cfg = json!({"family": "fisher", "spectral": config, "tau_min": lo, "tau_max": hi, "samples": n});
    let taus = uniform_grid(lo, hi, n)?;
    let curve = fisher_curve(&config, &taus);
    let mut summary = json!({ "max": max_fisher(&config, None)? });

    if let Some(true_tau) = p.true_tau {
        let measurements = p.num_measurements.unwrap_or(10_000);
        let trials = p.num_trials.unwrap_or(1_000);
        let seed = p.seed.unwrap_or(0);
        let report = crlb_monte_carlo(&config, true_tau, measurements, trials, seed)?;
        cfg["true_tau"] = json!(true_tau);
        cfg["num_measurements"] = json!(measurements);
        cfg["num_trials"] = json!(trials);
        cfg["seed"] = json!(seed);
        summary["crlb"] = json!(report);
        summary["efficiency_ratio"] = json!(report.efficiency_ratio());
    }
    emit(sink, "fisher", &cfg, "tau_ps", &curve.tau_grid, &[("fisher_information", &curve.fi_values)], "FI (ps⁻²)", summary)
}

pub fn fit(p: &RunParams, sink: &mut Sink) -> Result<()> {
    let alpha = p.mode_spacing.unwrap_or(5.0);
    let gamma = p.mode_width.unwrap_or(2.0);
    let (n_min, n_max) = (p.n_min.unwrap_or(1), p.n_max.unwrap_or(8));
    let cfg = json!({"family": "fit", "mode_spacing": alpha, "mode_width": gamma, "n_min": n_min, "n_max": n_max});
    let fit = sqrt_fi_vs_n_fit(alpha, gamma, n_min..=n_max)?;
    write_fit(sink, "fit", &cfg, &fit, false)
}

/// CSV, SVG and JSON of a √FI-vs-N fit; `force_json` writes the JSON even
/// when it was not requested.
pub fn write_fit(
    sink: &mut Sink,
    stem: &str,
    cfg: &Value,
    fit: &interfero_core::fisher::SqrtFiFit,
    force_json: bool,
) -> Result<()> {
    let ns: Vec<f64> = fit.points.iter().map(|&(n, _)| n as f64).collect();
    let root: Vec<f64> = fit.points.iter().map(|&(_, y)| y).collect();
    let fitted: Vec<f64> = fit.points.iter().map(|&(n, _)| fit.fitted(n)).collect();
    let residual: Vec<f64> = fit.relative_residuals().into_iter().map(|(_, r)| r).collect();
    sink.csv(
        stem,
        stem,
        cfg,
        &["n_modes", "sqrt_fi_max", "fitted", "relative_residual"],
        &[&ns, &root, &fitted, &residual],
    )?;
    sink.svg(stem, || {
        line_plot(
            &format!("√FI_max vs N (slope {:.4}, R² {:.6})", fit.slope, fit.r_squared),
            "N",
            "√FI_max (ps⁻¹)",
            &[
                Series { label: "computed", x: &ns, y: &root, style: Style::Markers },
                Series { label: "linear fit", x: &ns, y: &fitted, style: Style::Line },
            ],
        )
    })?;
    let summary = json!({
        "target": stem,
        "config": cfg,
        "slope": fit.slope,
        "intercept": fit.intercept,
        "r_squared": fit.r_squared,
        "points": fit.points,
        "relative_residuals": fit.relative_residuals(),
    });
    if force_json {
        sink.json_always(stem, &summary)
    } else {
        sink.json(stem, &summary)
    }
}
