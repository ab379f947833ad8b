//! Von Mangoldt-type coefficients at good primes and the weighted prime sums
//! `W`, `W'`, `W''` with the bounds on their differences.

use rayon::prelude::*;
use serde::Serialize;

use crate::chebyshev::{detector_eval, u_eval, Detector, DetectorCoefficients};
use crate::curves::{prime_power, trace, AngleSample, CurveModel, Method, TraceTable};
use crate::error::{domain, Error, Result};
use crate::minorant::MinorantSpec;

/// Neumaier's compensated summation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::default();
        iter.into_iter().for_each(|x| s.add(x));
        s
    }
}

/// `(n/x)^a log(x/n)`.
pub fn weight(n: f64, x: f64, a: f64) -> f64 {
    (n / x).powf(a) * (x / n).ln()
}

fn good_prime_power(curve: &CurveModel, n: u64) -> Result<Option<(AngleSample, u32)>> {
    let Some((p, m)) = prime_power(n) else { return Ok(None) };
    if curve.is_bad(p) {
        return Err(Error::BadPrime {
            label: curve.label.clone(),
            p,
            reason: "coefficient requested at a bad prime",
        });
    }
    Ok(Some((AngleSample::new(p, trace(curve, p, Method::Brute)?), m)))
}

/// `Λ_k(n) = log p · U_k(cos mθ_p)` for `n = p^m`, `p` good; `0` off prime
/// powers.
pub fn lambda_k(curve: &CurveModel, k: u32, n: u64) -> Result<f64> {
    Ok(match good_prime_power(curve, n)? {
        None => 0.0,
        Some((s, m)) => lambda_from_angle(k, &s, m),
    })
}

fn lambda_from_angle(k: u32, s: &AngleSample, m: u32) -> f64 {
    (s.p as f64).ln() * u_eval(k, (m as f64 * s.theta).cos())
}

/// `Λ_{i⊗j}(n) = log p · U_i(cos mθ_{1,p}) U_j(cos mθ_{2,p})`.
pub fn lambda_rankin(c1: &CurveModel, c2: &CurveModel, i: u32, j: u32, n: u64) -> Result<f64> {
    let (a, b) = (good_prime_power(c1, n)?, good_prime_power(c2, n)?);
    Ok(match (a, b) {
        (Some((s1, m)), Some((s2, _))) => {
            let lp = (s1.p as f64).ln();
            lp * u_eval(i, (m as f64 * s1.theta).cos()) * u_eval(j, (m as f64 * s2.theta).cos())
        }
        _ => 0.0,
    })
}

/// `Λ̃(p^m)` for the opposite-sign problem at a prime good for both curves,
/// summed through the `c_ij` expansion.
pub fn lambda_tilde_expanded(s1: &AngleSample, s2: &AngleSample, m: u32) -> f64 {
    let (t1, t2) = ((m as f64 * s1.theta).cos(), (m as f64 * s2.theta).cos());
    let lp = (s1.p as f64).ln();
    DetectorCoefficients::new()
        .iter()
        .map(|(i, j, c)| c as f64 * lp * u_eval(i as u32, t1) * u_eval(j as u32, t2))
        .sum()
}

/// `Λ̃(p^m) = log p · f₁(cos mθ₁) f₂(cos mθ₂)`.
pub fn lambda_tilde_direct(s1: &AngleSample, s2: &AngleSample, m: u32) -> f64 {
    let (t1, t2) = ((m as f64 * s1.theta).cos(), (m as f64 * s2.theta).cos());
    (s1.p as f64).ln() * detector_eval(Detector::Positive, t1) * detector_eval(Detector::Negative, t2)
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightedSumResult {
    pub value: f64,
    pub x: f64,
    pub a: f64,
    /// Primes (or prime powers) that contributed a term.
    pub terms: u64,
    pub skipped_bad: Vec<u64>,
}

/// Which terms beyond the good primes enter the sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PrimePowerVariant {
    /// Every prime `p ≤ x`, bad primes through their envelope.
    AllPrimes,
    /// Every prime power `p^m ≤ x`.
    AllPrimePowers,
}

/// The coefficient `Λ̃` of one of the two problems.
pub enum Problem<'a> {
    Opposite(&'a TraceTable, &'a TraceTable),
    Interval(&'a TraceTable, &'a MinorantSpec),
}

/// Primes per parallel block; blocks are merged in prime order, so the
/// result does not depend on the thread count.
const BLOCK: usize = 2048;

impl Problem<'_> {
    fn primary(&self) -> &TraceTable {
        match self {
            Problem::Opposite(t, _) | Problem::Interval(t, _) => t,
        }
    }

    fn check(&self, x: f64, a: f64) -> Result<()> {
        if !(x >= 2.0) {
            return Err(domain("weighted sum", "x must be at least 2", x));
        }
        if !(a > 0.0 && a <= 0.25) {
            return Err(domain("weighted sum", "a must lie in (0, 1/4]", a));
        }
        let covered = match self {
            Problem::Opposite(t1, t2) => t1.limit.min(t2.limit),
            Problem::Interval(t, _) => t.limit,
        };
        if (covered as f64) < x.floor() {
            return Err(domain("weighted sum", "trace table does not reach x", covered as f64));
        }
        Ok(())
    }

    fn is_bad(&self, p: u64) -> bool {
        match self {
            Problem::Opposite(t1, t2) => t1.is_bad(p) || t2.is_bad(p),
            Problem::Interval(t, _) => t.is_bad(p),
        }
    }

    /// `Λ̃(p^m)` at a good prime, or its nonnegative envelope at a bad one.
    fn coefficient(&self, idx: usize, m: u32) -> f64 {
        let (p, ap1) = self.primary().entries[idx];
        let lp = (p as f64).ln();
        match self {
            Problem::Opposite(t1, t2) => {
                let ap2 = t2.entries[idx].1;
                let (s1, s2) = (AngleSample::new(p, ap1), AngleSample::new(p, ap2));
                if !self.is_bad(p) {
                    return lambda_tilde_direct(&s1, &s2, m);
                }
                let factor = |bad: bool, s: &AngleSample, k: usize| {
                    if bad {
                        (p as f64).powf(-(k as f64) * m as f64 / 2.0)
                    } else {
                        u_eval(k as u32, (m as f64 * s.theta).cos()).abs()
                    }
                };
                DetectorCoefficients::new()
                    .iter()
                    .map(|(i, j, c)| {
                        c.unsigned_abs() as f64 * lp * factor(t1.is_bad(p), &s1, i) * factor(t2.is_bad(p), &s2, j)
                    })
                    .sum()
            }
            Problem::Interval(_, spec) => {
                if !self.is_bad(p) {
                    let s = AngleSample::new(p, ap1);
                    return lp * spec.eval(m as f64 * s.theta);
                }
                let r = (p as f64).powf(-(m as f64) / 2.0);
                let mut scale = 1.0;
                let mut acc = 0.0;
                for xi in &spec.xi {
                    acc += xi.abs() * scale;
                    scale *= r;
                }
                lp * acc
            }
        }
    }

    fn sum(&self, x: f64, a: f64, variant: Option<PrimePowerVariant>) -> Result<WeightedSumResult> {
        self.check(x, a)?;
        let entries = &self.primary().entries;
        let end = entries.partition_point(|e| (e.0 as f64) <= x);
        let blocks: Vec<(CompensatedSum, u64)> = (0..end)
            .collect::<Vec<_>>()
            .par_chunks(BLOCK)
            .map(|chunk| {
                let mut s = CompensatedSum::default();
                let mut terms = 0;
                for &idx in chunk {
                    let p = entries[idx].0;
                    let bad = self.is_bad(p);
                    if bad && variant.is_none() {
                        continue;
                    }
                    let max_m = match variant {
                        Some(PrimePowerVariant::AllPrimePowers) => u32::MAX,
                        _ => 1,
                    };
                    let mut m = 1;
                    let mut n = p as f64;
                    while m <= max_m && n <= x {
                        s.add(self.coefficient(idx, m) * weight(n, x, a));
                        terms += 1;
                        m += 1;
                        n *= p as f64;
                    }
                }
                (s, terms)
            })
            .collect();
        let mut total = CompensatedSum::default();
        let mut terms = 0;
        for (s, t) in &blocks {
            total.merge(s);
            terms += t;
        }
        let skipped_bad = entries[..end].iter().map(|e| e.0).filter(|&p| self.is_bad(p)).collect();
        Ok(WeightedSumResult { value: total.value(), x, a, terms, skipped_bad })
    }
}

/// `W = Σ_{p ≤ x, p ∤ N} log p · f₁(cos θ₁,p) f₂(cos θ₂,p) · (p/x)^a log(x/p)`.
pub fn sum_w_opposite(t1: &TraceTable, t2: &TraceTable, x: f64, a: f64) -> Result<WeightedSumResult> {
    check_aligned(t1, t2)?;
    Problem::Opposite(t1, t2).sum(x, a, None)
}

/// `W = Σ_{p ≤ x, p ∤ N} log p · f(θ_p) · (p/x)^a log(x/p)`.
pub fn sum_w_interval(t: &TraceTable, spec: &MinorantSpec, x: f64, a: f64) -> Result<WeightedSumResult> {
    Problem::Interval(t, spec).sum(x, a, None)
}

/// `W'` or `W''`: the sum extended to bad primes and, for `AllPrimePowers`,
/// to higher prime powers.
pub fn sum_w_primepower(problem: &Problem, x: f64, a: f64, variant: PrimePowerVariant) -> Result<WeightedSumResult> {
    if let Problem::Opposite(t1, t2) = problem {
        check_aligned(t1, t2)?;
    }
    problem.sum(x, a, Some(variant))
}

fn check_aligned(t1: &TraceTable, t2: &TraceTable) -> Result<()> {
    let n = t1.entries.len().min(t2.entries.len());
    if t1.entries[..n].iter().zip(&t2.entries[..n]).any(|(a, b)| a.0 != b.0) {
        return Err(domain("weighted sum", "trace tables list different primes", 0.0));
    }
    Ok(())
}

/// `2.002√x + 4x^{1/3}`.
pub fn prime_power_tail(x: f64) -> f64 {
    2.002 * x.sqrt() + 4.0 * x.cbrt()
}

/// The sums `W`, `W'`, `W''` at one cutoff, the differences and the bounds
/// they must respect.
#[derive(Debug, Clone, Serialize)]
pub struct TransitionCheck {
    pub x: f64,
    pub a: f64,
    pub w: f64,
    pub w_prime: f64,
    pub w_all: f64,
    /// `|W' - W|` against `64 log N log x` (opposite-sign only).
    pub prime_gap: Option<(f64, f64)>,
    /// `|W'' - W|` against `64(tail + log N log x)`, or `|W' - W|` against
    /// `5(tail + log N_E log x)` for the interval problem.
    pub power_gap: (f64, f64),
    pub holds: bool,
}

/// Checks `|W' - W| ≤ 64 log N log x` and
/// `|W'' - W| ≤ 64(2.002√x + 4x^{1/3} + log N log x)`, `N = N₁N₂`.
pub fn check_opposite_transition(t1: &TraceTable, t2: &TraceTable, x: f64, a: f64) -> Result<TransitionCheck> {
    let w = sum_w_opposite(t1, t2, x, a)?.value;
    let problem = Problem::Opposite(t1, t2);
    let w_prime = sum_w_primepower(&problem, x, a, PrimePowerVariant::AllPrimes)?.value;
    let w_all = sum_w_primepower(&problem, x, a, PrimePowerVariant::AllPrimePowers)?.value;
    let log_n = (t1.conductor as f64).ln() + (t2.conductor as f64).ln();
    let prime_gap = ((w_prime - w).abs(), 64.0 * log_n * x.ln());
    let power_gap = ((w_all - w).abs(), 64.0 * (prime_power_tail(x) + log_n * x.ln()));
    Ok(TransitionCheck {
        x,
        a,
        w,
        w_prime,
        w_all,
        prime_gap: Some(prime_gap),
        power_gap,
        holds: prime_gap.0 <= prime_gap.1 && power_gap.0 <= power_gap.1,
    })
}

/// Checks `|W' - W| ≤ 5(2.002√x + 4x^{1/3} + log N_E log x)` with `W'` the
/// sum over all prime powers.
pub fn check_interval_transition(t: &TraceTable, spec: &MinorantSpec, x: f64, a: f64) -> Result<TransitionCheck> {
    let w = sum_w_interval(t, spec, x, a)?.value;
    let problem = Problem::Interval(t, spec);
    let w_prime = sum_w_primepower(&problem, x, a, PrimePowerVariant::AllPrimes)?.value;
    let w_all = sum_w_primepower(&problem, x, a, PrimePowerVariant::AllPrimePowers)?.value;
    let log_n = (t.conductor as f64).ln();
    let power_gap = ((w_all - w).abs(), 5.0 * (prime_power_tail(x) + log_n * x.ln()));
    Ok(TransitionCheck { x, a, w, w_prime, w_all, prime_gap: None, power_gap, holds: power_gap.0 <= power_gap.1 })
}
