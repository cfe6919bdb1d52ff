//! Normalized tensor-product quadrature grids.

use rayon::prelude::*;

use super::quadrature::AxisRule;
use super::spectrum::{JointSpectrum, SingleSpectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum Kernel {
    /// `f(ω₁, ω₂) f(ω₂, ω₁)`
    Exchange,
    /// `f(ω₁, ω₂)²`
    Square,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum Phase {
    /// `cos((ω₁ − ω₂)τ)`
    Difference,
    /// `cos((ω₁ + ω₂)τ)`
    Sum,
}

/// Row-major weights `w_i w_j K(x_i, y_j) / ∫∫|f|²`, with the nonzero
/// column span of each row.
pub(super) struct Grid2d {
    x: Vec<f64>,
    y: Vec<f64>,
    weights: Vec<f64>,
    spans: Vec<(usize, usize)>,
    pub norm: f64,
}

impl Grid2d {
    pub fn build<S: JointSpectrum + ?Sized>(spectrum: &S, x: &AxisRule, y: &AxisRule, kernel: Kernel) -> Self {
        let ny = y.len();
        let rows: Vec<(Vec<f64>, f64)> = x
            .nodes
            .par_iter()
            .zip(&x.weights)
            .map(|(&xi, &wi)| {
                let mut row = Vec::with_capacity(ny);
                let mut norm = 0.0;
                for (&yj, &wj) in y.nodes.iter().zip(&y.weights) {
                    let f = spectrum.amplitude(xi, yj);
                    let w = wi * wj;
                    norm += w * f * f;
                    row.push(match kernel {
                        Kernel::Square => w * f * f,
                        Kernel::Exchange => w * f * spectrum.amplitude(yj, xi),
                    });
                }
                (row, norm)
            })
            .collect();
        let norm: f64 = rows.iter().map(|r| r.1).sum();
        let mut weights = Vec::with_capacity(x.len() * ny);
        let mut spans = Vec::with_capacity(x.len());
        for (row, _) in rows {
            let first = row.iter().position(|&v| v != 0.0).unwrap_or(0);
            let last = row.iter().rposition(|&v| v != 0.0).map_or(0, |i| i + 1);
            spans.push((first, last.max(first)));
            weights.extend(row.into_iter().map(|v| v / norm));
        }
        Self { x: x.nodes.clone(), y: y.nodes.clone(), weights, spans, norm }
    }

    /// `Σ_ij M_ij cos((x_i ∓ y_j)τ)`, separated into products of cosines
    /// and sines so each evaluation is one pass over the matrix.
    pub fn moment(&self, tau: f64, phase: Phase) -> f64 {
        let (sy, cy): (Vec<f64>, Vec<f64>) = self.y.iter().map(|&y| (y * tau).sin_cos()).unzip();
        let sign = match phase {
            Phase::Difference => 1.0,
            Phase::Sum => -1.0,
        };
        let ny = self.y.len();
        let mut total = 0.0;
        for (i, &xi) in self.x.iter().enumerate() {
            let (lo, hi) = self.spans[i];
            if lo >= hi {
                continue;
            }
            let row = &self.weights[i * ny + lo..i * ny + hi];
            let (mut c, mut s) = (0.0, 0.0);
            for ((m, cj), sj) in row.iter().zip(&cy[lo..hi]).zip(&sy[lo..hi]) {
                c += m * cj;
                s += m * sj;
            }
            let (sx, cx) = (xi * tau).sin_cos();
            total += cx * c + sign * sx * s;
        }
        total
    }
}

/// Weights `w_i f(x_i)² / ∫|f|²`.
pub(super) struct Grid1d {
    x: Vec<f64>,
    weights: Vec<f64>,
}

impl Grid1d {
    pub fn build<S: SingleSpectrum + ?Sized>(spectrum: &S, rule: &AxisRule) -> Self {
        let mut weights: Vec<f64> = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&x, &w)| {
                let f = spectrum.amplitude(x);
                w * f * f
            })
            .collect();
        let norm: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= norm);
        Self { x: rule.nodes.clone(), weights }
    }

    /// `Σ_i M_i cos(x_i τ)`
    pub fn moment(&self, tau: f64) -> f64 {
        self.x.iter().zip(&self.weights).map(|(&x, &m)| m * (x * tau).cos()).sum()
    }
}
