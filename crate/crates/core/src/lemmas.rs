//! Grid and sample suites for the digamma lemmas, the coefficient-sum lemma
//! and the minorant.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::minorant::{
    minorant_s, minorant_s_fourier, xi0_envelope, xi_coefficients, xi_sum_bounds, xi_true_sums, Interval,
};
use crate::specfun::{
    arouse_bound_holds, bitpar_bound, gamma_logderiv, rankin_digamma_bound, GammaKind, Regime,
};

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub violations: usize,
    /// Smallest `bound - value` seen.
    pub worst_slack: f64,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.violations == 0
    }
}

fn tally(name: &'static str, slacks: impl Iterator<Item = f64>) -> SuiteReport {
    let (mut checks, mut violations, mut worst) = (0, 0, f64::INFINITY);
    for s in slacks {
        checks += 1;
        // NaN counts as a violation
        if !(s >= 0.0) {
            violations += 1;
        }
        worst = worst.min(s);
    }
    SuiteReport { name, checks, violations, worst_slack: worst, notes: Vec::new() }
}

/// `|ψ(s)| ≤ 11/3 + log(|s|+1)` on a `side × side` grid of
/// `[1, 50] × [-50, 50]`.
pub fn digamma_grid(side: usize) -> SuiteReport {
    let side = side.max(2);
    let step = |i: usize, lo: f64, hi: f64| lo + (hi - lo) * i as f64 / (side - 1) as f64;
    let slacks: Vec<f64> = (0..side * side)
        .into_par_iter()
        .map(|n| {
            let s = Complex64::new(step(n / side, 1.0, 50.0), step(n % side, -50.0, 50.0));
            arouse_bound_holds(s).map_or(f64::NAN, |c| c.slack)
        })
        .collect();
    tally("digamma_grid", slacks.into_iter())
}

/// Excluded radius around the pole at `s = 0`.
pub const POLE_GAP: f64 = 1e-3;

/// `samples` points in each regime: `(-1/4, -10⁻³]` uniformly and
/// `[1, 10³]` log-spaced.
pub fn regime_samples(samples: usize) -> Vec<(Regime, f64)> {
    let samples = samples.max(2);
    let mut out = Vec::with_capacity(2 * samples);
    for i in 0..samples {
        // right-open at -1/4
        let t = (i + 1) as f64 / samples as f64;
        out.push((Regime::Negative, -0.25 + (0.25 - POLE_GAP) * t));
    }
    for i in 0..samples {
        let t = i as f64 / (samples - 1) as f64;
        out.push((Regime::Positive, (1000f64.ln() * t).exp()));
    }
    out
}

/// `|γ′_k/γ_k(s)|` against its bound for `k ≤ k_max`.
pub fn sym_power_domination(k_max: u32, samples: usize) -> SuiteReport {
    let pts = regime_samples(samples);
    let slacks: Vec<f64> = (0..=k_max)
        .into_par_iter()
        .flat_map_iter(|k| {
            pts.iter().map(move |&(r, s)| {
                let v = gamma_logderiv(GammaKind::SymPower(k), s);
                let b = bitpar_bound(k, s, r);
                match (v, b) {
                    (Ok(v), Ok(b)) => b - v.abs(),
                    _ => f64::NAN,
                }
            })
        })
        .collect();
    tally("sym_power_domination", slacks.into_iter())
}

/// `|γ′_{i⊗j}/γ_{i⊗j}(s)|` against its bound for all nine pairs.
pub fn rankin_domination(samples: usize) -> SuiteReport {
    let pts = regime_samples(samples);
    let slacks = (0..3u32).flat_map(|i| (0..3u32).map(move |j| (i, j))).flat_map(|(i, j)| {
        pts.iter().map(move |&(r, s)| {
            match (gamma_logderiv(GammaKind::Rankin(i, j), s), rankin_digamma_bound(i, j, s, r)) {
                (Ok(v), Ok(b)) => b - v.abs(),
                _ => f64::NAN,
            }
        })
    });
    tally("rankin_domination", slacks)
}

/// The three coefficient-sum bounds, with `|Ξ_k|` replaced by its envelope,
/// for every `M` in the range.
pub fn xi_sum_suite(m_lo: u32, m_hi: u32) -> SuiteReport {
    let rows: Vec<_> = (m_lo..=m_hi).into_par_iter().map(|m| xi_sum_bounds(m).expect("M >= 8")).collect();
    let mut report = tally(
        "xi_sum_envelope",
        rows.iter().flat_map(|r| (0..3).map(move |i| r.rhs[i] - r.envelope[i])),
    );
    let failing: Vec<u32> = rows.iter().filter(|r| !r.holds[0]).map(|r| r.m).collect();
    if let (Some(first), Some(last)) = (failing.first(), failing.last()) {
        report.notes.push(format!(
            "sum |Xi_k| envelope exceeds (2/pi) log M + 21/5 for {} values of M in [{first}, {last}]",
            failing.len()
        ));
    }
    for i in 1..3 {
        let n = rows.iter().filter(|r| !r.holds[i]).count();
        report.notes.push(format!("inequality {}: {n} violations", i + 1));
    }
    report
}

/// The same three bounds for actual coefficients of random intervals.
pub fn xi_true_sum_suite(intervals: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<(Interval, u32)> = (0..intervals)
        .map(|_| {
            let iv = random_interval(&mut rng);
            (iv, rng.gen_range(8..=2000))
        })
        .collect();
    let slacks: Vec<f64> = cases
        .par_iter()
        .flat_map_iter(|(iv, m)| {
            let spec = xi_coefficients(iv, *m).expect("M >= 8");
            let sums = xi_true_sums(&spec);
            let rhs = xi_sum_bounds(*m).expect("M >= 8").rhs;
            (0..3).map(move |i| rhs[i] - sums[i])
        })
        .collect();
    tally("xi_sum_true", slacks.into_iter())
}

/// A random subinterval of `[0, π]` with `μ ≥ 0.05`.
pub fn random_interval(rng: &mut impl Rng) -> Interval {
    loop {
        let a: f64 = rng.gen_range(0.0..PI);
        let b: f64 = rng.gen_range(0.0..PI);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        if let Ok(iv) = Interval::new(lo, hi) {
            if iv.mu >= 0.05 {
                return iv;
            }
        }
    }
}

/// Tolerance on the minorant property.
pub const MINORANT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct MinorantSuite {
    /// `S ≤ χ_I + 10⁻⁹`.
    pub below_indicator: SuiteReport,
    /// `|S| ≤ 5/2`.
    pub bounded: SuiteReport,
    /// `|Ξ₀ - μ| ≤ 4/(M+1)`.
    pub xi0: SuiteReport,
    /// Largest gap between `S` through `B` and `S` from its exponential
    /// expansion, and between the `U_k` series and `S(θ) + S(-θ)`.
    pub reconstruction_error: f64,
}

impl MinorantSuite {
    pub fn pass(&self) -> bool {
        self.below_indicator.pass() && self.bounded.pass() && self.xi0.pass() && self.reconstruction_error <= 1e-9
    }
}

/// Random intervals, `M = max(8, ⌈8/μ⌉)`, each checked on `points` angles
/// spread over the whole circle.
pub fn minorant_suite(intervals: usize, points: usize, seed: u64) -> MinorantSuite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<Interval> = (0..intervals).map(|_| random_interval(&mut rng)).collect();
    let per: Vec<(Vec<f64>, Vec<f64>, f64, f64)> = cases
        .par_iter()
        .map(|iv| {
            let m = ((8.0 / iv.mu).ceil() as u32).max(8);
            let spec = xi_coefficients(iv, m).expect("M >= 8");
            let mut below = Vec::with_capacity(points);
            let mut bounded = Vec::with_capacity(points);
            let mut err = 0f64;
            for i in 0..points {
                let theta = -PI + 2.0 * PI * (i as f64 + 0.5) / points as f64;
                let s = minorant_s(theta, iv, m);
                below.push(iv.chi(theta) + MINORANT_TOL - s);
                bounded.push(2.5 - s.abs());
                err = err.max((s - minorant_s_fourier(theta, iv, m)).abs());
                err = err.max((spec.eval(theta) - spec.eval_direct(theta)).abs());
            }
            let xi0 = xi0_envelope(m) - (spec.xi[0] - iv.mu).abs();
            (below, bounded, xi0, err)
        })
        .collect();
    MinorantSuite {
        below_indicator: tally("minorant_below_indicator", per.iter().flat_map(|p| p.0.iter().copied())),
        bounded: tally("minorant_bounded", per.iter().flat_map(|p| p.1.iter().copied())),
        xi0: tally("xi0_near_mu", per.iter().map(|p| p.2)),
        reconstruction_error: per.iter().map(|p| p.3).fold(0.0, f64::max),
    }
}
