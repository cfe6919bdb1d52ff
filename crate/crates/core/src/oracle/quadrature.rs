//! Composite Gauss–Legendre rules on panelled axes.

use std::f64::consts::PI;

/// Nodes and weights of the `order`-point Gauss–Legendre rule on [−1, 1].
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 1);
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    let n = order as f64;
    for i in 0..(order + 1) / 2 {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(order, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(order, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    if order % 2 == 1 {
        nodes[order / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(order: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=order {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let p = if order == 0 { 1.0 } else { p1 };
    let n = order as f64;
    let d = n * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// An integration interval carrying its own Gauss–Legendre order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Panel {
    pub lo: f64,
    pub hi: f64,
    pub order: usize,
}

/// Flattened quadrature nodes and weights for one axis.
#[derive(Debug, Clone, Default)]
pub struct AxisRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl AxisRule {
    /// Splits every panel into `2^level` equal sub-panels.
    pub fn build(panels: &[Panel], level: u32) -> Self {
        let mut rule = AxisRule::default();
        let split = 1usize << level;
        let mut cached: Option<(usize, Vec<f64>, Vec<f64>)> = None;
        for panel in panels {
            let (x, w) = match &cached {
                Some((order, x, w)) if *order == panel.order => (x.clone(), w.clone()),
                _ => {
                    let (x, w) = gauss_legendre(panel.order);
                    cached = Some((panel.order, x.clone(), w.clone()));
                    (x, w)
                }
            };
            let width = (panel.hi - panel.lo) / split as f64;
            for s in 0..split {
                let lo = panel.lo + width * s as f64;
                let half = 0.5 * width;
                let mid = lo + half;
                for (xi, wi) in x.iter().zip(&w) {
                    rule.nodes.push(mid + half * xi);
                    rule.weights.push(half * wi);
                }
            }
        }
        rule
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Merges overlapping `[lo, hi]` intervals.
pub fn merge_intervals(mut intervals: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
    for (lo, hi) in intervals {
        match merged.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    merged
}

/// Cuts each interval into panels no wider than `max_width`.
pub fn panelize(intervals: &[(f64, f64)], max_width: f64, order: usize) -> Vec<Panel> {
    let mut panels = Vec::new();
    for &(lo, hi) in intervals {
        let count = ((hi - lo) / max_width).ceil().max(1.0) as usize;
        let width = (hi - lo) / count as f64;
        for k in 0..count {
            let a = lo + width * k as f64;
            let b = if k + 1 == count { hi } else { a + width };
            panels.push(Panel { lo: a, hi: b, order });
        }
    }
    panels
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_integrate_polynomials() {
        for order in [1usize, 2, 5, 8, 16, 32] {
            let (x, w) = gauss_legendre(order);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13, "order {order}");
            // Exact for degree 2n − 1.
            let deg = 2 * order - 2;
            let integral: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
            assert!((integral - 2.0 / (deg as f64 + 1.0)).abs() < 1e-13, "order {order}");
        }
    }

    #[test]
    fn composite_rule_on_gaussian() {
        let panels = panelize(&[(-12.0, 12.0)], 3.0, 16);
        for level in 0..3 {
            let rule = AxisRule::build(&panels, level);
            let v = rule.integrate(|x| (-x * x).exp());
            assert!((v - PI.sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn merging() {
        let m = merge_intervals(vec![(3.0, 5.0), (0.0, 1.0), (0.5, 2.0), (4.0, 6.0)]);
        assert_eq!(m, vec![(0.0, 2.0), (3.0, 6.0)]);
    }
}
