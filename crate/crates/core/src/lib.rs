//! Multi-mode two-photon, single-photon and multi-slit interference:
//! closed-form evaluators, brute-force quadrature oracles, Fisher
//! information and delay-estimation bounds.

pub mod config;
pub mod curve;
pub mod details;
pub mod error;
pub mod features;
pub mod fisher;
pub mod homi;
pub mod jsa;
pub mod msi;
pub mod mzi_noon;
pub mod oracle;
pub mod sampled;
pub mod spectral;
pub mod validation;

pub use config::{SingleSpectrumConfig, SlitConfig, SpectralModeConfig};
pub use curve::{ConfigSnapshot, Family, PatternCurve};
pub use details::details_factor;
pub use error::{Error, Result};
pub use jsa::Correlation;
pub use oracle::QuadratureSpec;
