//! Tabulated single-mode amplitudes and their plain-text formats.
//!
//! Matrix format (two-dimensional f₀(ω₁, ω₂)):
//!
//! ```text
//! # grid-x start=-10 step=0.1 count=201
//! # grid-y start=-10 step=0.1 count=201
//! <201 rows of 201 values, comma or whitespace separated; row i is ω₁ = x_i>
//! ```
//!
//! Two-column format (one-dimensional f₀(ω)): one `ω, value` pair per line
//! on a uniform ω grid. In both formats other lines starting with `#` are
//! comments, and blank lines are ignored.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridAxis {
    pub start: f64,
    pub step: f64,
    pub count: usize,
}

impl GridAxis {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if !(step.is_finite() && step > 0.0 && start.is_finite()) || count < 2 {
            return Err(Error::InvalidArgument(format!(
                "grid needs finite start, step > 0 and count >= 2 (got start={start} step={step} count={count})"
            )));
        }
        Ok(Self { start, step, count })
    }

    pub fn end(&self) -> f64 {
        self.start + self.step * (self.count - 1) as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.start + self.step * i as f64)
    }

    /// Cell index and fractional offset for linear interpolation.
    fn locate(&self, x: f64) -> Option<(usize, f64)> {
        let t = (x - self.start) / self.step;
        if !(t >= 0.0 && t <= (self.count - 1) as f64) {
            return None;
        }
        let i = (t.floor() as usize).min(self.count - 2);
        Some((i, t - i as f64))
    }
}

/// Piecewise-linear f₀(ω); zero outside the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedMode1d {
    pub x: GridAxis,
    pub values: Vec<f64>,
}

impl TabulatedMode1d {
    pub fn new(x: GridAxis, values: Vec<f64>) -> Result<Self> {
        if values.len() != x.count {
            return Err(Error::InvalidArgument(format!("expected {} values, got {}", x.count, values.len())));
        }
        Ok(Self { x, values })
    }

    pub fn eval(&self, w: f64) -> f64 {
        match self.x.locate(w) {
            Some((i, t)) => self.values[i] * (1.0 - t) + self.values[i + 1] * t,
            None => 0.0,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut xs = Vec::new();
        let mut values = Vec::new();
        for (line_no, line) in data_lines(text) {
            let fields = split_fields(line, line_no)?;
            if fields.len() != 2 {
                return Err(Error::Parse { line: line_no, message: format!("expected 2 columns, found {}", fields.len()) });
            }
            xs.push(fields[0]);
            values.push(fields[1]);
        }
        if xs.len() < 2 {
            return Err(Error::Parse { line: 0, message: "need at least two rows".into() });
        }
        let step = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
        for (i, &x) in xs.iter().enumerate() {
            let expected = xs[0] + step * i as f64;
            if (x - expected).abs() > 1e-6 * step.abs() {
                return Err(Error::Parse { line: 0, message: format!("abscissa {x} breaks the uniform grid (expected {expected})") });
            }
        }
        Self::new(GridAxis::new(xs[0], step, xs.len())?, values)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (x, v) in self.x.nodes().zip(&self.values) {
            out.push_str(&format!("{x:.16e},{v:.16e}\n"));
        }
        out
    }
}

/// Bilinear f₀(ω₁, ω₂); zero outside the grid. `values` is row-major with
/// rows along ω₁.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedMode2d {
    pub x: GridAxis,
    pub y: GridAxis,
    pub values: Vec<f64>,
}

impl TabulatedMode2d {
    pub fn new(x: GridAxis, y: GridAxis, values: Vec<f64>) -> Result<Self> {
        if values.len() != x.count * y.count {
            return Err(Error::InvalidArgument(format!(
                "expected {}x{} values, got {}",
                x.count,
                y.count,
                values.len()
            )));
        }
        Ok(Self { x, y, values })
    }

    pub fn from_fn(x: GridAxis, y: GridAxis, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(x.count * y.count);
        for xi in x.nodes() {
            for yj in y.nodes() {
                values.push(f(xi, yj));
            }
        }
        Self { x, y, values }
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.y.count + j]
    }

    pub fn eval(&self, w1: f64, w2: f64) -> f64 {
        let (Some((i, s)), Some((j, t))) = (self.x.locate(w1), self.y.locate(w2)) else {
            return 0.0;
        };
        let a = self.at(i, j) * (1.0 - t) + self.at(i, j + 1) * t;
        let b = self.at(i + 1, j) * (1.0 - t) + self.at(i + 1, j + 1) * t;
        a * (1.0 - s) + b * s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut x = None;
        let mut y = None;
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if let Some(rest) = line.strip_prefix("# grid-x") {
                x = Some(parse_axis(rest, line_no + 1)?);
            } else if let Some(rest) = line.strip_prefix("# grid-y") {
                y = Some(parse_axis(rest, line_no + 1)?);
            }
        }
        let x = x.ok_or(Error::Parse { line: 0, message: "missing '# grid-x' header".into() })?;
        let y = y.ok_or(Error::Parse { line: 0, message: "missing '# grid-y' header".into() })?;
        let mut values = Vec::with_capacity(x.count * y.count);
        let mut rows = 0;
        for (line_no, line) in data_lines(text) {
            let fields = split_fields(line, line_no)?;
            if fields.len() != y.count {
                return Err(Error::Parse { line: line_no, message: format!("expected {} values, found {}", y.count, fields.len()) });
            }
            values.extend(fields);
            rows += 1;
        }
        if rows != x.count {
            return Err(Error::Parse { line: 0, message: format!("expected {} rows, found {rows}", x.count) });
        }
        Self::new(x, y, values)
    }

    pub fn to_text(&self) -> String {
        let mut out = format_axis_header("grid-x", &self.x);
        out.push_str(&format_axis_header("grid-y", &self.y));
        for row in self.values.chunks(self.y.count) {
            let line: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

pub(crate) fn format_axis_header(name: &str, axis: &GridAxis) -> String {
    format!("# {name} start={:.16e} step={:.16e} count={}\n", axis.start, axis.step, axis.count)
}

fn parse_axis(rest: &str, line: usize) -> Result<GridAxis> {
    let (mut start, mut step, mut count) = (None, None, None);
    for token in rest.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or(Error::Parse { line, message: format!("expected key=value, found '{token}'") })?;
        let bad = |_| Error::Parse { line, message: format!("bad value for {key}: '{value}'") };
        match key {
            "start" => start = Some(value.parse::<f64>().map_err(bad)?),
            "step" => step = Some(value.parse::<f64>().map_err(bad)?),
            "count" => count = Some(value.parse::<usize>().map_err(|_| Error::Parse { line, message: format!("bad count '{value}'") })?),
            other => return Err(Error::Parse { line, message: format!("unknown grid key '{other}'") }),
        }
    }
    match (start, step, count) {
        (Some(a), Some(s), Some(n)) => GridAxis::new(a, s, n).map_err(|e| Error::Parse { line, message: e.to_string() }),
        _ => Err(Error::Parse { line, message: "grid header needs start, step and count".into() }),
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn split_fields(line: &str, line_no: usize) -> Result<Vec<f64>> {
    line.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| Error::Parse { line: line_no, message: format!("not a number: '{s}'") })
        })
        .collect()
}
