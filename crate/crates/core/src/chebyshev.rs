//! Chebyshev polynomials of the second kind and the two degree-2 sign
//! detectors used for the opposite-sign problem.
//!
//! `f₁(t) = U₀ + 2U₁ + U₂ = 4t(t+1)` is positive only for `t > 0` (on
//! `[-1, 1]`, away from `t = -1`), and `f₂(t) = f₁(-t)`. The product
//! `f₁(cos θ₁) f₂(cos θ₂)` is therefore positive only when the cosines have
//! opposite signs.

use num_rational::Ratio;

use crate::error::{domain, Result};

/// `U_k(t)` by the three-term recurrence `U_k = 2t U_{k-1} - U_{k-2}`.
///
/// The recurrence is carried with a compensated correction term, which keeps
/// it accurate on `[-1, 1]` well past `k = 10⁴`.
pub fn u_eval(k: u32, t: f64) -> f64 {
    match k {
        0 => 1.0,
        1 => 2.0 * t,
        _ => {
            let two_t = 2.0 * t;
            let (mut prev, mut cur) = (1.0_f64, two_t);
            let (mut prev_err, mut cur_err) = (0.0_f64, 0.0_f64);
            for _ in 2..=k {
                // next = 2t*cur - prev, with the rounding error of the fused
                // product-difference folded into `next_err`.
                let prod = two_t * cur;
                let prod_err = two_t.mul_add(cur, -prod);
                let next = prod - prev;
                let bb = next - prod;
                let sub_err = (prod - (next - bb)) + (-prev - bb);
                let next_err = prod_err + sub_err + two_t * cur_err - prev_err;
                prev = cur;
                prev_err = cur_err;
                cur = next;
                cur_err = next_err;
            }
            cur + cur_err
        }
    }
}

/// `U_k(cos θ) = sin((k+1)θ) / sin θ` for `θ ∈ (0, π)`.
///
/// The endpoints are rejected; the limits there are `k+1` and `(-1)^k (k+1)`,
/// which [`u_eval`] gives directly.
pub fn u_cos(k: u32, theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(domain("u_cos", "theta must lie in the open interval (0, pi)", theta));
    }
    Ok(((k as f64 + 1.0) * theta).sin() / theta.sin())
}

/// `Σ c_k U_k(t)` by Clenshaw's recurrence.
pub fn u_series(coeffs: &[f64], t: f64) -> f64 {
    let two_t = 2.0 * t;
    let (mut b1, mut b2) = (0.0_f64, 0.0_f64);
    for &c in coeffs.iter().rev() {
        let b0 = c + two_t * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    b1
}

/// Which of the two sign detectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Detector {
    /// `f₁(t) = 4t(t+1)`.
    Positive,
    /// `f₂(t) = 4t(t-1) = f₁(-t)`.
    Negative,
}

impl Detector {
    /// Coefficients in the `U₀, U₁, U₂` basis.
    pub fn coefficients(self) -> [i64; 3] {
        match self {
            Detector::Positive => [1, 2, 1],
            Detector::Negative => [1, -2, 1],
        }
    }
}

/// Closed-form value of the detector polynomial.
pub fn detector_eval(which: Detector, t: f64) -> f64 {
    match which {
        Detector::Positive => 4.0 * t * (t + 1.0),
        Detector::Negative => 4.0 * t * (t - 1.0),
    }
}

/// Detector value through its Chebyshev expansion.
pub fn detector_eval_ubasis(which: Detector, t: f64) -> f64 {
    which
        .coefficients()
        .iter()
        .enumerate()
        .map(|(k, &c)| c as f64 * u_eval(k as u32, t))
        .sum()
}

/// Chebyshev coefficients of the two detectors and of their tensor product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectorCoefficients {
    pub c1: [i64; 3],
    pub c2: [i64; 3],
    /// `cij[i][j]` is the coefficient of `Λ_{i⊗j}` in the product expansion.
    pub cij: [[i64; 3]; 3],
}

impl DetectorCoefficients {
    pub fn new() -> Self {
        let c1 = Detector::Positive.coefficients();
        let c2 = Detector::Negative.coefficients();
        let mut cij = [[0; 3]; 3];
        for (i, row) in cij.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                *c = c1[i] * c2[j];
            }
        }
        DetectorCoefficients { c1, c2, cij }
    }

    /// Iterate `(i, j, c_ij)` over the 3×3 grid.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        (0..3).flat_map(move |i| (0..3).map(move |j| (i, j, self.cij[i][j])))
    }
}

impl Default for DetectorCoefficients {
    fn default() -> Self {
        Self::new()
    }
}

/// Weights `w(i, j)` for [`cij_weighted_sum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CijWeight {
    /// `w = 1`.
    Count,
    /// `w = d_ij = (i+1)(j+1)`, the degree of the Rankin–Selberg L-function.
    Degree,
    /// `w = (1 - e_{i+j}) (i+1)(j+1)`: degree, skipping the one pair with a
    /// pole at `s = 1`.
    PoleFreeDegree,
    /// `w = i(j+1)`, the exponent of `N_{E₁}` in the conductor bound.
    ConductorExponent,
    /// `w = i(j+1) / |c₀|²`, the normalized main-term coefficient.
    Opt32,
}

/// `Σ |c_ij| w(i, j)` in exact rational arithmetic.
pub fn cij_weighted_sum(weight: CijWeight) -> Ratio<i64> {
    let coeffs = DetectorCoefficients::new();
    let total: i64 = coeffs
        .iter()
        .map(|(i, j, c)| {
            let (i, j) = (i as i64, j as i64);
            let w = match weight {
                CijWeight::Count => 1,
                CijWeight::Degree => (i + 1) * (j + 1),
                CijWeight::PoleFreeDegree if i + j == 0 => 0,
                CijWeight::PoleFreeDegree => (i + 1) * (j + 1),
                CijWeight::ConductorExponent | CijWeight::Opt32 => i * (j + 1),
            };
            c.abs() * w
        })
        .sum();
    match weight {
        CijWeight::Opt32 => {
            let c0 = coeffs.c1[0];
            Ratio::new(total, c0 * c0)
        }
        _ => Ratio::from_integer(total),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn low_order_values() {
        assert_eq!(u_eval(0, 0.3), 1.0);
        assert_eq!(u_eval(1, 0.5), 1.0);
        assert!(u_eval(3, FRAC_PI_4.cos()).abs() < 1e-15);
        assert_eq!(u_eval(2, 1.0), 3.0);
        assert_eq!(u_eval(5, -1.0), -6.0);
    }

    #[test]
    fn trig_form() {
        assert!((u_cos(2, FRAC_PI_2).unwrap() + 1.0).abs() < 1e-15);
        assert!((u_cos(0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        let a = u_cos(5, 0.7).unwrap();
        assert!((a - u_eval(5, 0.7_f64.cos())).abs() < 1e-12);
        assert!(u_cos(3, 0.0).is_err());
        assert!(u_cos(3, PI).is_err());
    }

    #[test]
    fn high_degree_stays_bounded() {
        for i in 0..=200 {
            let t = -1.0 + i as f64 / 100.0;
            let v = u_eval(10_000, t);
            assert!(v.abs() <= 10_001.0 + 1e-6, "t={t} v={v}");
        }
        // endpoint values are exact
        assert_eq!(u_eval(10_000, 1.0), 10_001.0);
        assert_eq!(u_eval(10_001, -1.0), -10_002.0);
    }

    #[test]
    fn clenshaw_matches_termwise_sum() {
        let coeffs = [0.3, -1.2, 0.5, 2.0, -0.25, 0.125];
        for i in 0..=40 {
            let t = -1.0 + i as f64 / 20.0;
            let direct: f64 = coeffs.iter().enumerate().map(|(k, c)| c * u_eval(k as u32, t)).sum();
            assert!((u_series(&coeffs, t) - direct).abs() < 1e-12);
        }
        assert_eq!(u_series(&[], 0.4), 0.0);
    }

    #[test]
    fn detectors() {
        assert_eq!(detector_eval(Detector::Positive, 1.0), 8.0);
        assert_eq!(detector_eval(Detector::Negative, 0.0), 0.0);
        let p = detector_eval(Detector::Positive, -0.5) * detector_eval(Detector::Negative, 0.5);
        assert_eq!(p, 1.0);
        for i in 0..=40 {
            let t = -1.0 + i as f64 / 20.0;
            for d in [Detector::Positive, Detector::Negative] {
                assert!((detector_eval(d, t) - detector_eval_ubasis(d, t)).abs() < 1e-12);
                assert!(detector_eval(d, t).abs() <= 8.0);
            }
        }
    }

    #[test]
    fn coefficient_grid() {
        let c = DetectorCoefficients::new();
        assert_eq!(c.cij[0], [1, -2, 1]);
        assert_eq!(c.cij[1], [2, -4, 2]);
        assert_eq!(c.cij[2], [1, -2, 1]);
    }

    #[test]
    fn weighted_sums_are_exact() {
        assert_eq!(cij_weighted_sum(CijWeight::Count), Ratio::from_integer(16));
        assert_eq!(cij_weighted_sum(CijWeight::Degree), Ratio::from_integer(64));
        assert_eq!(cij_weighted_sum(CijWeight::PoleFreeDegree), Ratio::from_integer(63));
        assert_eq!(cij_weighted_sum(CijWeight::ConductorExponent), Ratio::from_integer(32));
        assert_eq!(cij_weighted_sum(CijWeight::Opt32), Ratio::from_integer(32));
    }
}
