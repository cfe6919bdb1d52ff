//! `interfero <family|figure> [--config FILE] [--out DIR] [--format csv,svg,json] [--seed N]`

mod families;
mod figures;
mod output;
mod params;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, ValueEnum};
use interfero_core::details_factor;
use interfero_core::validation::{run_validation_with_kernel, ToleranceProfile};

use output::{Format, Sink};
use params::RunParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Homi,
    Msi,
    Mzi,
    Noon,
    Fisher,
    Fit,
    Validate,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fault {
    /// Negate the details kernel inside the identity checks.
    SignFlip,
}

#[derive(Debug, Parser)]
#[command(name = "interfero", version, about = "Multi-mode interference patterns, Fisher information and figure panels")]
struct Cli {
    #[arg(value_enum)]
    target: Target,
    /// JSON file with run parameters; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Artefacts to write
    #[arg(long, value_enum, value_delimiter = ',', default_value = "csv,svg,json")]
    format: Vec<Format>,
    #[command(flatten)]
    params: RunParams,
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<Fault>,
}

fn validate(params: &RunParams, fault: Option<Fault>, sink: &mut Sink) -> Result<bool> {
    let profile: ToleranceProfile = params.profile.map_or(ToleranceProfile::Default, Into::into);
    let flipped = |n: u32, x: f64| -details_factor(n, x);
    let report = match fault {
        Some(Fault::SignFlip) => run_validation_with_kernel(profile, &flipped),
        None => run_validation_with_kernel(profile, &details_factor),
    };
    for c in &report.checks {
        println!(
            "{} {:<32} measured {:.3e} threshold {:.3e}",
            if c.pass { "PASS" } else { "FAIL" },
            c.check_name,
            c.measured,
            c.threshold
        );
    }
    println!("{}/{} checks passed", report.summary.passed, report.summary.total);
    sink.json_always("validation", &report)?;
    Ok(report.all_pass())
}

fn run(cli: Cli) -> Result<bool> {
    let params = match &cli.config {
        Some(path) => RunParams::load(path)?.overlay(cli.params),
        None => cli.params,
    };
    let mut sink = Sink::new(&cli.out, &cli.format)?;
    let ok = match cli.target {
        Target::Homi => families::homi(&params, &mut sink).map(|_| true)?,
        Target::Msi => families::msi(&params, &mut sink).map(|_| true)?,
        Target::Mzi => families::mzi(&params, &mut sink).map(|_| true)?,
        Target::Noon => families::noon(&params, &mut sink).map(|_| true)?,
        Target::Fisher => families::fisher(&params, &mut sink).map(|_| true)?,
        Target::Fit => families::fit(&params, &mut sink).map(|_| true)?,
        Target::Validate => validate(&params, cli.inject_fault, &mut sink)?,
        Target::Fig2 => figures::render("fig2", &params, &mut sink).map(|_| true)?,
        Target::Fig3 => figures::render("fig3", &params, &mut sink).map(|_| true)?,
        Target::Fig4 => figures::render("fig4", &params, &mut sink).map(|_| true)?,
        Target::Fig5 => figures::render("fig5", &params, &mut sink).map(|_| true)?,
        Target::Fig6 => figures::render("fig6", &params, &mut sink).map(|_| true)?,
        Target::Fig7 => figures::render("fig7", &params, &mut sink).map(|_| true)?,
    };
    for path in sink.written() {
        eprintln!("wrote {}", path.display());
    }
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
