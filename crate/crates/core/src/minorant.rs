//! Beurling–Selberg minorants of an arc of the circle, folded into a
//! Chebyshev series in `cos θ`.

use std::f64::consts::{PI, TAU};

use num_rational::Ratio;
use serde::Serialize;

use crate::chebyshev::u_series;
use crate::error::{domain, Result};

/// Smallest admissible degree.
pub const MIN_DEGREE: u32 = 8;

/// A subinterval `[α, β]` of `[0, π]` with its Sato–Tate measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub alpha: f64,
    pub beta: f64,
    pub mu: f64,
}

impl Interval {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        Ok(Interval { alpha, beta, mu: mu_st(alpha, beta)? })
    }

    pub fn full() -> Self {
        Interval { alpha: 0.0, beta: PI, mu: 1.0 }
    }

    /// Closed-interval membership for `θ ∈ [0, π]`.
    pub fn contains(&self, theta: f64) -> bool {
        self.alpha <= theta && theta <= self.beta
    }

    /// Indicator of the arc `[α, β]` on the circle `ℝ / 2πℤ`.
    pub fn chi(&self, theta: f64) -> f64 {
        arc_chi(theta, self.alpha, self.beta)
    }
}

fn arc_chi(theta: f64, alpha: f64, beta: f64) -> f64 {
    let t = (theta - alpha).rem_euclid(TAU);
    if t <= beta - alpha {
        1.0
    } else {
        0.0
    }
}

/// `∫_α^β (2/π) sin²θ dθ`.
pub fn mu_st(alpha: f64, beta: f64) -> Result<f64> {
    if !(alpha >= 0.0) || alpha > PI {
        return Err(domain("mu_st", "alpha must lie in [0, pi]", alpha));
    }
    if !(beta <= PI) || beta < 0.0 {
        return Err(domain("mu_st", "beta must lie in [0, pi]", beta));
    }
    if !(alpha < beta) {
        return Err(domain("mu_st", "alpha must be smaller than beta", beta - alpha));
    }
    let anti = |t: f64| t - t.sin() * t.cos();
    Ok((anti(beta) - anti(alpha)) / PI)
}

/// `g(u) = -(1-u) cot πu - 1/π` on `(0, 1)`, and `0` for `u ≥ 1`.
pub fn g_eval(u: f64) -> Result<f64> {
    if !(u > 0.0) {
        return Err(domain("g_eval", "u must be positive", u));
    }
    if u >= 1.0 {
        return Ok(0.0);
    }
    let x = PI * u;
    Ok(-(1.0 - u) * x.cos() / x.sin() - 1.0 / PI)
}

fn g_grid(k: u32, m: u32) -> f64 {
    if k == 0 {
        return 0.0;
    }
    g_eval(k as f64 / (m as f64 + 1.0)).expect("k >= 1")
}

/// Vaaler's polynomial `V(x) = (M+1)⁻¹ Σ_{k=1}^M g(k/(M+1)) sin 2πkx`.
pub fn vaaler(x: f64, m: u32) -> f64 {
    let s: f64 = (1..=m).map(|k| g_grid(k, m) * (TAU * k as f64 * x).sin()).sum();
    s / (m as f64 + 1.0)
}

/// Fejér's kernel `Σ_{|k| ≤ N} (1 - |k|/N) e^{2πikx}`, equal to
/// `N⁻¹ (sin πNx / sin πx)²`.
pub fn fejer(x: f64, n: u32) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let nf = n as f64;
    let s = (PI * x).sin();
    if s.abs() > 1e-6 {
        let r = (PI * nf * x).sin() / s;
        r * r / nf
    } else {
        1.0 + 2.0 * (1..n).map(|k| (1.0 - k as f64 / nf) * (TAU * k as f64 * x).cos()).sum::<f64>()
    }
}

/// Beurling's polynomial `B(x) = V(x) + Δ(x) / (2(M+1))`.
///
/// The kernel is taken of order `M+1` (weights `1 - |k|/(M+1)`), the order
/// that makes `S` a trigonometric polynomial of degree `M` agreeing with its
/// Fourier expansion.
pub fn beurling_b(x: f64, m: u32) -> f64 {
    vaaler(x, m) + fejer(x, m + 1) / (2.0 * (m as f64 + 1.0))
}

fn arc_s(theta: f64, alpha: f64, beta: f64, m: u32) -> f64 {
    (beta - alpha) / TAU - beurling_b((beta - theta) / TAU, m) - beurling_b((theta - alpha) / TAU, m)
}

fn arc_s_fourier(theta: f64, alpha: f64, beta: f64, m: u32) -> f64 {
    let n = m as f64 + 1.0;
    let (u, v) = (beta - theta, theta - alpha);
    let mut acc = (beta - alpha) / TAU - 1.0 / n;
    for k in 1..=m {
        let kf = k as f64;
        let w = 1.0 - kf / n;
        acc -= w * ((kf * u).cos() + (kf * v).cos()) / n;
        acc -= g_grid(k, m) * ((kf * u).sin() + (kf * v).sin()) / n;
    }
    acc
}

/// The minorant `S(θ) = (β-α)/2π - B((β-θ)/2π) - B((θ-α)/2π)`.
pub fn minorant_s(theta: f64, interval: &Interval, m: u32) -> f64 {
    arc_s(theta, interval.alpha, interval.beta, m)
}

/// `S(θ)` summed from its exponential expansion instead of through `B`.
pub fn minorant_s_fourier(theta: f64, interval: &Interval, m: u32) -> f64 {
    arc_s_fourier(theta, interval.alpha, interval.beta, m)
}

/// `f(θ) = S(θ) + S(-θ)`.
pub fn minorant_f(theta: f64, interval: &Interval, m: u32) -> f64 {
    minorant_s(theta, interval, m) + minorant_s(-theta, interval, m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MinorantMode {
    /// `f(θ) = S(θ) + S(-θ)`.
    Symmetric,
    /// Minorant of `I ∪ I'`, with `I'` the reflection of `I` through its
    /// endpoint at `0` or `π`.
    Reflected,
}

/// An interval, a degree `M`, and the coefficients `Ξ₀..Ξ_M` of
/// `f(θ) = Σ Ξ_k U_k(cos θ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinorantSpec {
    pub interval: Interval,
    pub m: u32,
    pub mode: MinorantMode,
    pub xi: Vec<f64>,
}

fn check_degree(m: u32) -> Result<()> {
    if m < MIN_DEGREE {
        return Err(domain("minorant", "degree M must be at least 8", m as f64));
    }
    Ok(())
}

/// Coefficients of `S_J(θ) + S_J(-θ)` for the arc `J = [α, β]` (any reals).
fn arc_xi(alpha: f64, beta: f64, m: u32) -> Vec<f64> {
    let n = m as f64 + 1.0;
    let term = |k: u32| {
        let kf = k as f64;
        (1.0 - kf / n) * ((kf * alpha).cos() + (kf * beta).cos()) / n
            + g_grid(k, m) * ((kf * beta).sin() - (kf * alpha).sin()) / n
    };
    (0..=m)
        .map(|k| {
            let mut xi = -term(k);
            if k == 0 {
                xi += (beta - alpha) / PI;
            }
            if k + 2 <= m {
                xi += term(k + 2);
            }
            xi
        })
        .collect()
}

/// `Ξ_k` for the symmetric minorant `f(θ) = S(θ) + S(-θ)`.
pub fn xi_coefficients(interval: &Interval, m: u32) -> Result<MinorantSpec> {
    check_degree(m)?;
    Ok(MinorantSpec {
        interval: *interval,
        m,
        mode: MinorantMode::Symmetric,
        xi: arc_xi(interval.alpha, interval.beta, m),
    })
}

/// `Ξ_k` for the reflected minorant; `I` must have `0` or `π` as an endpoint.
pub fn xi_coefficients_reflected(interval: &Interval, m: u32) -> Result<MinorantSpec> {
    check_degree(m)?;
    let (a, b) = reflected_arc(interval)?;
    // S_J is even, so S_J(θ) + S_J(-θ) = 2 S_J(θ).
    let xi = arc_xi(a, b, m).into_iter().map(|x| x / 2.0).collect();
    Ok(MinorantSpec { interval: *interval, m, mode: MinorantMode::Reflected, xi })
}

fn reflected_arc(interval: &Interval) -> Result<(f64, f64)> {
    if interval.alpha == 0.0 {
        Ok((-interval.beta, interval.beta))
    } else if interval.beta == PI {
        Ok((interval.alpha, TAU - interval.alpha))
    } else {
        Err(domain("xi_coefficients_reflected", "interval must have 0 or pi as an endpoint", interval.alpha))
    }
}

impl MinorantSpec {
    /// `Σ Ξ_k U_k(cos θ)`.
    pub fn eval(&self, theta: f64) -> f64 {
        u_series(&self.xi, theta.cos())
    }

    /// The same function evaluated from the minorant `S` directly.
    pub fn eval_direct(&self, theta: f64) -> f64 {
        match self.mode {
            MinorantMode::Symmetric => minorant_f(theta, &self.interval, self.m),
            MinorantMode::Reflected => {
                let (a, b) = reflected_arc(&self.interval).expect("validated at construction");
                arc_s(theta, a, b, self.m)
            }
        }
    }

    /// `(θ, χ_I(θ), S(θ), f(θ))` on `n` equally spaced points of `[0, π]`.
    pub fn plot_rows(&self, n: usize) -> Vec<[f64; 4]> {
        let n = n.max(2);
        (0..n)
            .map(|i| {
                let theta = PI * i as f64 / (n - 1) as f64;
                let s = match self.mode {
                    MinorantMode::Symmetric => minorant_s(theta, &self.interval, self.m),
                    MinorantMode::Reflected => self.eval_direct(theta),
                };
                [theta, self.interval.chi(theta), s, self.eval(theta)]
            })
            .collect()
    }
}

/// Upper bound for `|Ξ₀ - μ|`.
pub fn xi0_envelope(m: u32) -> f64 {
    4.0 / (m as f64 + 1.0)
}

/// Upper bound for `|Ξ_k|`, `1 ≤ k ≤ M`.
pub fn xi_envelope(k: u32, m: u32) -> f64 {
    assert!(k >= 1 && k <= m, "envelope needs 1 <= k <= M");
    let n = m as f64 + 1.0;
    let e = if k == m { 1.0 } else { 0.0 };
    let gk = g_grid(k, m).abs();
    let gk2 = g_eval((k + 2) as f64 / n).expect("positive").abs();
    2.0 / n * (2.0 - (2.0 * k as f64 + 2.0) / n + e / n + gk + gk2)
}

/// `C = 32(1/3 + 1/π)`.
pub fn lemma_c() -> f64 {
    32.0 * (1.0 / 3.0 + 1.0 / PI)
}

/// The three coefficient-sum bounds at degree `M`, with the envelope sums
/// they are checked against.
#[derive(Debug, Clone, Serialize)]
pub struct XiSumBounds {
    pub m: u32,
    /// `(2/π) log M + 21/5`, `CM/16`, `CM/16 + (2/π) log M + π`.
    pub rhs: [f64; 3],
    /// `Σ|Ξ_k|`, `Σ k|Ξ_k|`, `Σ (k+1)|Ξ_k|` with each `|Ξ_k|` replaced by its
    /// envelope (and `|Ξ₀| ≤ 1 + 4/(M+1)`).
    pub envelope: [f64; 3],
    /// Closed-form expressions offered as upper bounds for the envelope
    /// sums. The first omits a factor 2 on the cotangent sum and is not an
    /// upper bound for the envelope once `M ≥ 51`.
    pub closed_form: [f64; 3],
    /// `envelope[i] ≤ rhs[i]`.
    pub holds: [bool; 3],
}

pub fn xi_sum_bounds(m: u32) -> Result<XiSumBounds> {
    check_degree(m)?;
    let mf = m as f64;
    let n = mf + 1.0;
    let log_m = mf.ln();
    let c = lemma_c();
    let rhs = [
        2.0 / PI * log_m + 21.0 / 5.0,
        c * mf / 16.0,
        c * mf / 16.0 + 2.0 / PI * log_m + PI,
    ];
    let xi0 = 1.0 + xi0_envelope(m);
    let (mut s0, mut s1) = (xi0, 0.0);
    for k in 1..=m {
        let e = xi_envelope(k, m);
        s0 += e;
        s1 += k as f64 * e;
    }
    let envelope = [s0, s1, s0 + s1];
    let gamma = crate::specfun::EULER_GAMMA;
    let imo = xi0
        + 2.0 * (mf * mf - mf + 1.0) / (n * n)
        + 2.0 / PI * (2.0 * mf / n + (mf / 2.0).ln() + gamma + 1.0 / (mf + 1.0 / 3.0));
    let tst = 2.0 / n * ((mf * mf - mf) / 3.0 + mf / n) + 2.0 * mf / PI;
    let closed_form = [imo, tst, imo + tst];
    let holds = [0, 1, 2].map(|i| envelope[i] <= rhs[i]);
    Ok(XiSumBounds { m, rhs, envelope, closed_form, holds })
}

/// `Σ|Ξ_k|`, `Σ k|Ξ_k|`, `Σ (k+1)|Ξ_k|` for actual coefficients.
pub fn xi_true_sums(spec: &MinorantSpec) -> [f64; 3] {
    let (mut s0, mut s1) = (0.0, 0.0);
    for (k, x) in spec.xi.iter().enumerate() {
        s0 += x.abs();
        s1 += k as f64 * x.abs();
    }
    [s0, s1, s0 + s1]
}

/// `Σ_{k=1}^M (2 - (2k+2)/(M+1) + e_{k,M}/(M+1))` and its `k`-weighted
/// analogue, in exact arithmetic, next to their closed forms
/// `(M²-M+1)/(M+1)` and `(M²-M)/3 + M/(M+1)`.
pub fn partial_sum_identities(m: u32) -> [(Ratio<i64>, Ratio<i64>); 2] {
    let mi = m as i64;
    let n = mi + 1;
    let term = |k: i64| {
        let e = if k == mi { 1 } else { 0 };
        Ratio::from_integer(2) - Ratio::new(2 * k + 2, n) + Ratio::new(e, n)
    };
    let plain: Ratio<i64> = (1..=mi).map(term).sum();
    let weighted: Ratio<i64> = (1..=mi).map(|k| term(k) * k).sum();
    [
        (plain, Ratio::new(mi * mi - mi + 1, n)),
        (weighted, Ratio::new(mi * mi - mi, 3) + Ratio::new(mi, n)),
    ]
}

/// `Σ_{k=1}^M (k/(M+1))(1 - k/(M+1)) cot(πk/(M+1))`, zero by antisymmetry.
pub fn antisymmetric_cot_sum(m: u32) -> f64 {
    let n = m as f64 + 1.0;
    (1..=m)
        .map(|k| {
            let u = k as f64 / n;
            u * (1.0 - u) / (PI * u).tan()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::u_eval;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn measure_values() {
        assert_abs_diff_eq!(mu_st(0.0, PI).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(mu_st(0.0, PI / 2.0).unwrap(), 0.5, epsilon = 1e-15);
        let third = mu_st(PI / 3.0, 2.0 * PI / 3.0).unwrap();
        assert_abs_diff_eq!(third, 1.0 / 3.0 + 3f64.sqrt() / (2.0 * PI), epsilon = 1e-15);
        assert_abs_diff_eq!(third, 0.6090, epsilon = 1e-4);
        assert!(mu_st(1.0, 1.0).is_err());
        assert!(mu_st(2.0, 1.0).is_err());
        assert!(mu_st(-0.1, 1.0).is_err());
        assert!(mu_st(0.0, 3.2).is_err());
        assert!(mu_st(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn g_values() {
        assert_abs_diff_eq!(g_eval(0.5).unwrap(), -1.0 / PI, epsilon = 1e-15);
        assert_eq!(g_eval(1.5).unwrap(), 0.0);
        assert_eq!(g_eval(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(g_eval(0.25).unwrap(), -0.75 - 1.0 / PI, epsilon = 1e-14);
        assert!(g_eval(0.0).is_err());
        assert!(g_eval(-0.3).is_err());
        // nonpositive and decreasing in magnitude on (0, 1)
        let mut prev = f64::INFINITY;
        for i in 1..1000 {
            let g = g_eval(i as f64 / 1000.0).unwrap();
            assert!(g <= 0.0);
            assert!(g.abs() <= prev);
            prev = g.abs();
        }
    }

    #[test]
    fn kernel_values() {
        for m in [1, 8, 9, 40] {
            assert_eq!(vaaler(0.0, m), 0.0);
            let direct: f64 = (-(m as i64)..=m as i64).map(|k| 1.0 - k.abs() as f64 / m as f64).sum();
            assert_abs_diff_eq!(fejer(0.0, m), direct, epsilon = 1e-12);
            assert_abs_diff_eq!(fejer(0.0, m), m as f64, epsilon = 1e-12);
        }
        // closed form against the exponential sum away from 0
        for i in 1..50 {
            let x = i as f64 * 0.0193;
            let m = 11;
            let direct = 1.0
                + 2.0 * (1..m).map(|k| (1.0 - k as f64 / m as f64) * (TAU * k as f64 * x).cos()).sum::<f64>();
            assert_abs_diff_eq!(fejer(x, m), direct, epsilon = 1e-12);
        }
    }

    proptest! {
        #[test]
        fn vaaler_is_bounded(x in -3.0f64..3.0, m in 1u32..200) {
            prop_assert!(vaaler(x, m).abs() <= 0.5 + 1e-12);
        }

        #[test]
        fn two_forms_of_s_agree(a in 0.0f64..3.1, w in 0.01f64..3.1, theta in -7.0f64..7.0, m in 8u32..80) {
            let b = (a + w).min(PI);
            prop_assume!(b > a);
            let i = Interval::new(a, b).unwrap();
            prop_assert!((minorant_s(theta, &i, m) - minorant_s_fourier(theta, &i, m)).abs() < 1e-9);
        }

        #[test]
        fn minorizes_and_reconstructs(a in 0.0f64..3.1, w in 0.01f64..3.1, theta in 0.0f64..TAU, m in 8u32..64) {
            let b = (a + w).min(PI);
            prop_assume!(b > a);
            let i = Interval::new(a, b).unwrap();
            let s = minorant_s(theta, &i, m);
            prop_assert!(s <= i.chi(theta) + 1e-9);
            prop_assert!(s.abs() <= 2.5);
            let spec = xi_coefficients(&i, m).unwrap();
            prop_assert!((spec.eval(theta) - minorant_f(theta, &i, m)).abs() < 1e-9);
            prop_assert!((spec.xi[0] - i.mu).abs() <= xi0_envelope(m));
            for k in 1..=m {
                prop_assert!(spec.xi[k as usize].abs() <= xi_envelope(k, m) + 1e-12);
            }
        }
    }

    #[test]
    fn full_interval_degree_nine() {
        let spec = xi_coefficients(&Interval::full(), 9).unwrap();
        assert_abs_diff_eq!(spec.xi[0], 0.96, epsilon = 1e-14);
        assert_abs_diff_eq!(spec.xi[0], 1.0 - 2.0 / 10.0 + 0.8 * 2.0 / 10.0, epsilon = 1e-14);
        assert_eq!(spec.xi.len(), 10);
        assert!(xi_coefficients(&Interval::full(), 7).is_err());
    }

    #[test]
    fn xi0_deviation() {
        let i = Interval::new(0.4, 2.2).unwrap();
        let m = 20;
        let n = m as f64 + 1.0;
        let spec = xi_coefficients(&i, m).unwrap();
        let (c2, s2) = ((2.0 * i.alpha).cos() + (2.0 * i.beta).cos(), (2.0 * i.beta).sin() - (2.0 * i.alpha).sin());
        let printed = -2.0 / n + (n - 2.0) / n * c2 / n;
        let sine = s2 * (g_eval(2.0 / n).unwrap() / n + 1.0 / TAU);
        assert_abs_diff_eq!(spec.xi[0] - i.mu, printed + sine, epsilon = 1e-14);
        // the two-term form omits the sine part, which is small but not zero
        assert!(sine.abs() > 1e-3 && sine.abs() < 1e-2);
        assert!((spec.xi[0] - i.mu).abs() <= xi0_envelope(m));
    }

    #[test]
    fn coefficients_match_quadrature() {
        // Ξ_k = (2/π) ∫₀^π f(θ) U_k(cos θ) sin²θ dθ
        let i = Interval::new(0.7, 1.9).unwrap();
        let m = 12;
        let spec = xi_coefficients(&i, m).unwrap();
        let steps = 4000;
        let h = PI / steps as f64;
        for k in 0..=m {
            let mut acc = 0.0;
            for s in 0..steps {
                let t = (s as f64 + 0.5) * h;
                acc += minorant_f(t, &i, m) * u_eval(k, t.cos()) * t.sin().powi(2);
            }
            assert_abs_diff_eq!(acc * h * 2.0 / PI, spec.xi[k as usize], epsilon = 1e-9);
        }
    }

    #[test]
    fn reflected_mode() {
        for i in [Interval::new(0.0, 1.1).unwrap(), Interval::new(2.0, PI).unwrap()] {
            let spec = xi_coefficients_reflected(&i, 16).unwrap();
            for s in 0..=2000 {
                let t = PI * s as f64 / 2000.0;
                let f = spec.eval(t);
                assert_abs_diff_eq!(f, spec.eval_direct(t), epsilon = 1e-9);
                if !i.contains(t) {
                    assert!(f <= 1e-9, "t={t} f={f}");
                }
            }
            let plain = xi_coefficients(&i, 16).unwrap();
            assert!(spec.xi[0] > 0.0 && plain.xi[0] > 0.0);
        }
        assert!(xi_coefficients_reflected(&Interval::new(0.5, 1.0).unwrap(), 16).is_err());
    }

    #[test]
    fn lemma_sums() {
        assert_abs_diff_eq!(lemma_c(), 20.853, epsilon = 1e-3);
        for m in [8, 9, 50] {
            let b = xi_sum_bounds(m).unwrap();
            assert_eq!(b.holds, [true; 3], "{b:?}");
        }
        // From M = 51 on, the envelope of Σ|Ξ_k| exceeds (2/π) log M + 21/5:
        // the two g-terms each contribute about (2/π) log M.
        for m in [51, 1000, 2000] {
            let b = xi_sum_bounds(m).unwrap();
            assert_eq!(b.holds, [false, true, true], "{b:?}");
            assert!(b.envelope[0] > b.closed_form[0]);
        }
        assert!(xi_sum_bounds(7).is_err());
    }

    #[test]
    fn cotangent_step_needs_factor_two() {
        // Σ_{k≤M} (1/(M+1))(1-u)cot πu < H_{⌊M/2⌋}/π holds, but twice it does not.
        for m in [20u32, 100, 1000] {
            let n = m as f64 + 1.0;
            let s: f64 = (1..=m)
                .map(|k| {
                    let u = k as f64 / n;
                    (1.0 - u) / (PI * u).tan() / n
                })
                .sum();
            let h: f64 = (1..=m / 2).map(|k| 1.0 / (PI * k as f64)).sum();
            assert!(s < h);
            assert!(2.0 * s > h);
        }
    }

    #[test]
    fn true_sums_below_bounds() {
        let mut rng = 0x2545F4914F6CDD1Du64;
        let mut next = || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            (rng >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..50 {
            let a = next() * PI;
            let b = a + (PI - a) * next().max(0.01);
            let i = Interval::new(a, b).unwrap();
            let m = 8 + (next() * 200.0) as u32;
            let spec = xi_coefficients(&i, m).unwrap();
            let bounds = xi_sum_bounds(m).unwrap();
            let t = xi_true_sums(&spec);
            for j in 0..3 {
                assert!(t[j] <= bounds.rhs[j], "{t:?} {bounds:?}");
            }
        }
    }

    #[test]
    fn exact_identities() {
        for m in 8..=200 {
            for (lhs, rhs) in partial_sum_identities(m) {
                assert_eq!(lhs, rhs, "M={m}");
            }
            assert!(antisymmetric_cot_sum(m).abs() < 1e-9);
        }
    }
}
