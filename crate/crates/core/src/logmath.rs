//! Log-domain accumulation helpers.

/// `ln(e^a + e^b)`.
#[inline]
pub fn log_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `ln Σ e^{x_i}`; `−∞` for an empty input.
pub fn log_sum_exp<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let xs: smallvec::SmallVec<[f64; 64]> = xs.into_iter().collect();
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    if max == f64::INFINITY {
        return max;
    }
    max + xs.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// `ln(1 − e^a)` for `a ≤ 0`, accurate when `e^a` is close to one.
#[inline]
pub fn log_one_minus_exp(a: f64) -> f64 {
    if a >= 0.0 {
        f64::NEG_INFINITY
    } else if a > -std::f64::consts::LN_2 {
        (-a.exp_m1()).ln()
    } else {
        (-a.exp()).ln_1p()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_add_matches_direct() {
        for (a, b) in [(0.0, 0.0), (-1.0, -3.0), (-700.0, -701.0), (5.0, -40.0)] {
            let direct = (f64::exp(a) + f64::exp(b)).ln();
            assert!((log_add(a, b) - direct).abs() < 1e-12 * direct.abs().max(1.0), "{a} {b}");
        }
        assert_eq!(log_add(f64::NEG_INFINITY, -2.0), -2.0);
        assert_eq!(log_add(f64::NEG_INFINITY, f64::NEG_INFINITY), f64::NEG_INFINITY);
    }

    #[test]
    fn log_sum_exp_handles_extremes() {
        assert_eq!(log_sum_exp(std::iter::empty()), f64::NEG_INFINITY);
        let v = log_sum_exp([-1000.0, -1000.0]);
        assert!((v - (-1000.0 + std::f64::consts::LN_2)).abs() < 1e-12);
    }

    #[test]
    fn log_one_minus_exp_small_and_large() {
        assert!((log_one_minus_exp(-1e-12) - (1e-12f64).ln()).abs() < 1e-6);
        assert!((log_one_minus_exp(-5.0) - (1.0 - (-5.0f64).exp()).ln()).abs() < 1e-15);
        assert_eq!(log_one_minus_exp(0.0), f64::NEG_INFINITY);
    }
}
