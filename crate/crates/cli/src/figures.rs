//! Figure panels: every sub-plot written as its own CSV and SVG.

use anyhow::Result;
use interfero_core::fisher::{fisher_curve, sqrt_fi_vs_n_fit};
use interfero_core::homi::homi_pattern;
use interfero_core::jsa::{jsa_value, spectrum_value};
use interfero_core::msi::{msi_pattern, slit_transmission};
use interfero_core::mzi_noon::{mzi_pattern, noon_pattern, DEFAULT_CARRIER};
use interfero_core::oracle::tabulated::{GridAxis, TabulatedMode2d};
use interfero_core::curve::uniform_grid;
use interfero_core::{Correlation, SingleSpectrumConfig, SlitConfig, SpectralModeConfig};
use serde_json::{json, Value};

use crate::families::write_fit;
use crate::output::Sink;
use crate::params::RunParams;
use crate::svg::{heatmap, line_plot, Series, Style};

const ALPHA: f64 = 5.0;
const GAMMA: f64 = 2.0;
/// Half-width of every JSA panel about the centre frequency (rad·THz).
const JSA_REACH: f64 = 24.0;
const JSA_POINTS: usize = 241;

struct Figure<'a> {
    name: &'static str,
    sink: &'a mut Sink,
    samples: Option<usize>,
    wavelength: f64,
    manifest: Vec<Value>,
}

impl Figure<'_> {
    fn samples(&self, default: usize) -> usize {
        self.samples.unwrap_or(default).max(2)
    }

    fn panel_config(&mut self, panel: &str, body: Value) -> Value {
        let mut cfg = json!({"figure": self.name, "panel": panel});
        if let (Some(map), Value::Object(extra)) = (cfg.as_object_mut(), body) {
            map.extend(extra);
        }
        self.manifest.push(cfg.clone());
        cfg
    }

    fn line(&mut self, panel: &str, body: Value, columns: (&str, &str), xs: &[f64], ys: &[f64]) -> Result<()> {
        let cfg = self.panel_config(panel, body);
        let stem = format!("{}_{}", self.name, panel);
        let target = format!("{} {}", self.name, panel);
        self.sink.csv(&stem, &target, &cfg, &[columns.0, columns.1], &[xs, ys])?;
        self.sink.svg(&stem, || {
            line_plot(&target, columns.0, columns.1, &[Series { label: columns.1, x: xs, y: ys, style: Style::Line }])
        })
    }

    fn jsa(&mut self, panel: &str, config: SpectralModeConfig, correlation: Correlation) -> Result<()> {
        let cfg = self.panel_config(panel, json!({"spectral": config, "correlation": correlation}));
        let step = 2.0 * JSA_REACH / (JSA_POINTS - 1) as f64;
        let x = GridAxis::new(config.center_frequency - JSA_REACH, step, JSA_POINTS)?;
        let table = TabulatedMode2d::from_fn(x, x, |w1, w2| jsa_value(&config, w1, w2, correlation));
        let stem = format!("{}_{}", self.name, panel);
        let target = format!("{} {}", self.name, panel);
        self.sink.matrix_csv(&stem, &target, &cfg, &table)?;
        self.sink.svg(&stem, || {
            heatmap(
                &target,
                "ω₁ (rad·THz)",
                "ω₂ (rad·THz)",
                (x.start, x.step, x.count),
                (x.start, x.step, x.count),
                &table.values,
            )
        })
    }

    fn homi(&mut self, panel: &str, config: SpectralModeConfig) -> Result<()> {
        let curve = homi_pattern(&config, -1.5, 1.5, self.samples(3001))?;
        self.line(panel, json!({"spectral": config}), ("tau_ps", "probability"), &curve.abscissa, &curve.values)
    }

    fn slit_profile(&mut self, panel: &str, config: SlitConfig, half_width: f64) -> Result<()> {
        let count = (2.0 * half_width / (config.slit_width / 10.0)).ceil() as usize + 1;
        let xs = uniform_grid(-half_width, half_width, count)?;
        let ts: Vec<f64> = xs.iter().map(|&x| slit_transmission(&config, x)).collect();
        self.line(panel, json!({"slits": config}), ("x_m", "transmission"), &xs, &ts)
    }

    fn msi(&mut self, panel: &str, config: SlitConfig, reach: f64) -> Result<()> {
        let curve = msi_pattern(&config, -reach, reach, self.samples(3001))?;
        self.line(panel, json!({"slits": config}), ("sin_theta", "intensity"), &curve.abscissa, &curve.values)
    }

    fn slits(&self, n: u32, width: f64, pitch: f64) -> Result<SlitConfig> {
        Ok(SlitConfig::new(n, width, pitch, self.wavelength)?)
    }

    fn finish(self) -> Result<()> {
        let manifest = json!({"figure": self.name, "panels": self.manifest});
        self.sink.json(self.name, &manifest)
    }
}

fn spectral(n: u32, alpha: f64, gamma: f64, center: f64) -> Result<SpectralModeConfig> {
    Ok(SpectralModeConfig::new(n, alpha, gamma, center)?)
}

pub fn render(name: &'static str, p: &RunParams, sink: &mut Sink) -> Result<()> {
    let mut fig = Figure {
        name,
        sink,
        samples: p.samples,
        wavelength: p.wavelength.unwrap_or(SlitConfig::DEFAULT_WAVELENGTH),
        manifest: Vec::new(),
    };
    match name {
        "fig2" => fig2(&mut fig)?,
        "fig3" => fig3(&mut fig)?,
        "fig4" => fig4(&mut fig)?,
        "fig5" => fig5(&mut fig)?,
        "fig6" => fig6(&mut fig, p)?,
        "fig7" => fig7(&mut fig, p.center_frequency.unwrap_or(DEFAULT_CARRIER))?,
        _ => unreachable!("unknown figure {name}"),
    }
    fig.finish()
}

/// JSA, HOM pattern, slit profile and MSI pattern for N = 1..8.
fn fig2(fig: &mut Figure) -> Result<()> {
    let (a, d) = (1e-5, 5e-4);
    for n in 1..=8u32 {
        let config = spectral(n, ALPHA, GAMMA, 0.0)?;
        fig.jsa(&format!("a{n}"), config, Correlation::AntiCorrelated)?;
        fig.homi(&format!("b{n}"), config)?;
        let slits = fig.slits(n, a, d)?;
        fig.slit_profile(&format!("c{n}"), slits, 4.5 * d)?;
        fig.msi(&format!("d{n}"), slits, 3.5 * fig.wavelength / d)?;
    }
    Ok(())
}

/// Mode width and slit width scans at N = 4.
fn fig3(fig: &mut Figure) -> Result<()> {
    let d = 5e-4;
    for (i, (gamma, a)) in [0.5, 2.5, 4.5].into_iter().zip([1e-4, 1.5e-4, 2e-4]).enumerate() {
        let k = i + 1;
        let config = spectral(4, ALPHA, gamma, 0.0)?;
        fig.jsa(&format!("a{k}"), config, Correlation::AntiCorrelated)?;
        fig.homi(&format!("b{k}"), config)?;
        let slits = fig.slits(4, a, d)?;
        fig.slit_profile(&format!("c{k}"), slits, 2.5 * d)?;
        fig.msi(&format!("d{k}"), slits, 3.5 * fig.wavelength / d)?;
    }
    Ok(())
}

/// Mode spacing and slit pitch scans at N = 4.
fn fig4(fig: &mut Figure) -> Result<()> {
    let a = 1.5e-4;
    let pitches = [3e-4, 6e-4, 9e-4];
    let reach = 3.5 * fig.wavelength / pitches[0];
    for (i, (alpha, d)) in [2.5, 5.0, 7.5].into_iter().zip(pitches).enumerate() {
        let k = i + 1;
        let config = spectral(4, alpha, GAMMA, 0.0)?;
        fig.jsa(&format!("a{k}"), config, Correlation::AntiCorrelated)?;
        fig.homi(&format!("b{k}"), config)?;
        let slits = fig.slits(4, a, d)?;
        fig.slit_profile(&format!("c{k}"), slits, 2.5 * pitches[2])?;
        fig.msi(&format!("d{k}"), slits, reach)?;
    }
    Ok(())
}

/// Fisher information of the HOM pattern for N = 1..8.
fn fig5(fig: &mut Figure) -> Result<()> {
    let taus = uniform_grid(-1.5, 1.5, fig.samples(3001))?;
    for n in 1..=8u32 {
        let config = spectral(n, ALPHA, GAMMA, 0.0)?;
        let curve = fisher_curve(&config, &taus);
        fig.line(&format!("a{n}"), json!({"spectral": config}), ("tau_ps", "fisher_information"), &taus, &curve.fi_values)?;
    }
    Ok(())
}

/// √FI_max against N with its linear fit; the fit JSON is always written.
fn fig6(fig: &mut Figure, p: &RunParams) -> Result<()> {
    let (n_min, n_max) = (p.n_min.unwrap_or(1), p.n_max.unwrap_or(8));
    let cfg = fig.panel_config(
        "fit",
        json!({"mode_spacing": ALPHA, "mode_width": GAMMA, "n_min": n_min, "n_max": n_max}),
    );
    let fit = sqrt_fi_vs_n_fit(ALPHA, GAMMA, n_min..=n_max)?;
    write_fit(fig.sink, "fig6_fit", &cfg, &fit, true)
}

/// MZI spectra and patterns, NOON JSAs and patterns for N = 1..8.
fn fig7(fig: &mut Figure, center: f64) -> Result<()> {
    for n in 1..=8u32 {
        let single = SingleSpectrumConfig::new(n, ALPHA, GAMMA, center)?;
        let ws = uniform_grid(center - JSA_REACH, center + JSA_REACH, 961)?;
        let amp: Vec<f64> = ws.iter().map(|&w| spectrum_value(&single, w)).collect();
        fig.line(&format!("c{n}"), json!({"spectrum": single}), ("omega_rad_thz", "amplitude"), &ws, &amp)?;

        let mzi = mzi_pattern(&single, -3.0, 3.0, fig.samples(6001))?;
        fig.line(&format!("d{n}"), json!({"spectrum": single}), ("tau_ps", "probability"), &mzi.abscissa, &mzi.values)?;

        let joint = spectral(n, ALPHA, GAMMA, center)?;
        fig.jsa(&format!("e{n}"), joint, Correlation::Correlated)?;

        let noon = noon_pattern(&joint, -1.5, 1.5, fig.samples(3001))?;
        fig.line(&format!("f{n}"), json!({"spectral": joint}), ("tau_ps", "probability"), &noon.abscissa, &noon.values)?;
    }
    Ok(())
}
