//! The `sin(Nx)/sin(x)` kernel shared by every interference family.

use std::f64::consts::PI;

const NEAR_SINGULAR: f64 = 1e-6;

/// `D_N(x) = sin(Nx)/sin(x)`, total over the reals.
///
/// The argument is first reduced to `r ∈ [−π/2, π/2]` with `x = mπ + r`,
/// using `D_N(r + mπ) = (−1)^{m(N−1)} D_N(r)`. Close to the removable
/// singularity (`|sin r| < 1e−6`) the cosine sum `Σ_k cos((2k−N−1)r)` is used
/// instead of the quotient. At `x = mπ` the result is exactly `N·(−1)^{m(N−1)}`.
pub fn details_factor(n_modes: u32, x: f64) -> f64 {
    debug_assert!(n_modes >= 1);
    if n_modes == 1 {
        return 1.0;
    }
    let n = n_modes as f64;
    let (r, odd) = reduce_phase(x);
    let sign = if n_modes % 2 == 0 && odd { -1.0 } else { 1.0 };

    let s = r.sin();
    let value = if s.abs() < NEAR_SINGULAR {
        cosine_sum(n_modes, r)
    } else {
        (n * r).sin() / s
    };
    (sign * value).clamp(-n, n)
}

/// Splits `x = mπ + r` with `r ∈ [−π/2, π/2]`; the flag is `m` odd.
pub(crate) fn reduce_phase(x: f64) -> (f64, bool) {
    let m = (x / PI).round();
    (x - m * PI, m.rem_euclid(2.0) == 1.0)
}

/// `1 − D_N(x)/N`, accurate also where it is small: on branches where
/// `D_N(x) = D_N(r)` it is evaluated as `(2/N) Σ_k sin²((2k−N−1)r/2)`.
pub fn details_deficit(n_modes: u32, x: f64) -> f64 {
    if n_modes == 1 {
        return 0.0;
    }
    let n = n_modes as f64;
    let (r, odd) = reduce_phase(x);
    if n_modes % 2 == 0 && odd {
        return 1.0 - details_factor(n_modes, x) / n;
    }
    // Offsets ±c contribute equally: (4/N) Σ_{c>0} sin²(cr/2).
    let mut total = 0.0;
    let mut offset = n_modes % 2 + 1;
    while offset < n_modes {
        let h = (offset as f64 * r / 2.0).sin();
        total += h * h;
        offset += 2;
    }
    4.0 * total / n
}

/// `Σ_{k=1}^{N} cos((2k − N − 1) x)`, pairing the symmetric offsets.
pub fn cosine_sum(n_modes: u32, x: f64) -> f64 {
    let n = n_modes as i64;
    let mut total = if n % 2 == 1 { 1.0 } else { 0.0 };
    let mut offset = if n % 2 == 1 { 2 } else { 1 };
    while offset < n {
        total += 2.0 * (offset as f64 * x).cos();
        offset += 2;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Unpaired reference sum, written directly from the definition.
    fn reference_sum(n: u32, x: f64) -> f64 {
        (1..=n as i64).map(|k| ((2 * k - n as i64 - 1) as f64 * x).cos()).sum()
    }

    #[test]
    fn removable_singularities() {
        assert_eq!(details_factor(3, 0.0), 3.0);
        assert_eq!(details_factor(4, PI), -4.0);
        assert_eq!(details_factor(5, PI), 5.0);
        assert_eq!(details_factor(4, -PI), -4.0);
        assert_eq!(details_factor(4, 2.0 * PI), 4.0);
        assert!((details_factor(4, PI) - reference_sum(4, PI)).abs() < 1e-12);
    }

    #[test]
    fn simple_values() {
        assert!(details_factor(2, PI / 2.0).abs() < 1e-15);
        let expected = reference_sum(5, 0.3);
        assert!((details_factor(5, 0.3) - expected).abs() < 1e-13);
        assert_eq!(details_factor(1, 1.234), 1.0);
    }

    #[test]
    fn continuous_across_switch_threshold() {
        for &n in &[2u32, 7, 12] {
            for &r in &[0.9e-6, 1.1e-6, 5e-7, 2e-6] {
                for m in -3..=3 {
                    let x = m as f64 * PI + r;
                    let d = details_factor(n, x);
                    assert!((d - reference_sum(n, x)).abs() < 1e-9, "n={n} x={x}");
                }
            }
        }
    }

    #[test]
    fn deficit_matches_direct_form() {
        for n in 1..=9u32 {
            for &x in &[0.0, 1e-9, 0.3, 1.2, PI, PI + 0.4, -2.0 * PI + 0.1, 7.7] {
                let direct = 1.0 - details_factor(n, x) / n as f64;
                assert!((details_deficit(n, x) - direct).abs() < 1e-12, "N={n} x={x}");
            }
        }
        // Small deficits keep their relative precision.
        let x = 1e-7;
        let exact = (3.0 * 3.0 - 1.0) * x * x / 6.0;
        assert!((details_deficit(3, x) / exact - 1.0).abs() < 1e-8);
    }

    proptest! {
        #[test]
        fn matches_cosine_sum(n in 1u32..=12, x in -40.0f64..40.0) {
            prop_assert!((details_factor(n, x) - reference_sum(n, x)).abs() < 1e-10);
        }

        #[test]
        fn bounded_by_n(n in 1u32..=40, x in -100.0f64..100.0) {
            prop_assert!(details_factor(n, x).abs() <= n as f64);
        }

        #[test]
        fn reflection_parity(n in 1u32..=12, x in 0.01f64..3.13) {
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            let lhs = details_factor(n, PI - x);
            prop_assert!((lhs - sign * details_factor(n, x)).abs() < 1e-10);
        }
    }
}
