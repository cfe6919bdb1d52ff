//! Peak and valley detection on sampled curves.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub index: usize,
    pub position: f64,
    pub value: f64,
    pub prominence: f64,
}

/// Strict local maxima of `ys` whose topographic prominence is at least
/// `min_prominence`. A flat run bounded by strictly lower samples counts
/// once, at its centre. Endpoints are never reported.
pub fn local_maxima(xs: &[f64], ys: &[f64], min_prominence: f64) -> Vec<Extremum> {
    assert_eq!(xs.len(), ys.len());
    let n = ys.len();
    let mut found = Vec::new();
    let mut i = 1;
    while i + 1 < n {
        if ys[i] > ys[i - 1] {
            let mut j = i;
            while j + 1 < n && ys[j + 1] == ys[i] {
                j += 1;
            }
            if j + 1 < n && ys[j + 1] < ys[i] {
                let index = (i + j) / 2;
                let prominence = prominence_of(ys, i, j);
                if prominence >= min_prominence {
                    found.push(Extremum { index, position: xs[index], value: ys[index], prominence });
                }
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    found
}

pub fn local_minima(xs: &[f64], ys: &[f64], min_prominence: f64) -> Vec<Extremum> {
    let negated: Vec<f64> = ys.iter().map(|v| -v).collect();
    local_maxima(xs, &negated, min_prominence)
        .into_iter()
        .map(|e| Extremum { value: -e.value, ..e })
        .collect()
}

fn prominence_of(ys: &[f64], first: usize, last: usize) -> f64 {
    let peak = ys[first];
    let mut left_base = peak;
    for k in (0..first).rev() {
        if ys[k] > peak {
            break;
        }
        left_base = left_base.min(ys[k]);
    }
    let mut right_base = peak;
    for &y in &ys[last + 1..] {
        if y > peak {
            break;
        }
        right_base = right_base.min(y);
    }
    peak - left_base.max(right_base)
}

/// A detected feature tagged as primary (main lobe) or secondary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifiedFeature {
    pub position: f64,
    pub value: f64,
    pub primary: bool,
}

/// Number of secondary features strictly between each adjacent pair of
/// primary features, in order of position.
pub fn secondary_counts_between_primaries(features: &[ClassifiedFeature]) -> Vec<usize> {
    let mut sorted = features.to_vec();
    sorted.sort_by(|a, b| a.position.total_cmp(&b.position));
    let primaries: Vec<usize> = sorted
        .iter()
        .enumerate()
        .filter(|(_, f)| f.primary)
        .map(|(i, _)| i)
        .collect();
    primaries
        .windows(2)
        .map(|w| sorted[w[0] + 1..w[1]].iter().filter(|f| !f.primary).count())
        .collect()
}
