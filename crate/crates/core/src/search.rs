//! Least-prime searches, compared against the explicit bounds.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{main_bound_log, roar_bound, MainBoundReport, RoarBoundReport};
use crate::curves::{primes_up_to, trace, AngleSample, ApTable, CurveModel, Method};
use crate::error::Result;
use crate::minorant::Interval;

/// Where the traces of one curve come from.
#[derive(Debug, Clone, Copy)]
pub struct TraceSource<'a> {
    pub curve: &'a CurveModel,
    /// Values here take precedence over point counting.
    pub table: Option<&'a ApTable>,
    pub method: Method,
}

impl<'a> TraceSource<'a> {
    pub fn new(curve: &'a CurveModel) -> Self {
        TraceSource { curve, table: None, method: Method::Brute }
    }

    pub fn with_table(mut self, table: &'a ApTable) -> Self {
        self.table = Some(table);
        self
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn trace(&self, p: u64) -> Result<i64> {
        if let Some(&ap) = self.table.and_then(|t| t.get(&p)) {
            return Ok(ap);
        }
        trace(self.curve, p, self.method)
    }
}

/// Scan order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Scan {
    #[default]
    Sequential,
    /// Blocks of this many primes are examined in parallel; the result is
    /// still the global minimum.
    Blocks(usize),
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundSummary {
    OppositeSign(MainBoundReport),
    Angle(RoarBoundReport),
}

impl BoundSummary {
    pub fn x(&self) -> f64 {
        match self {
            BoundSummary::OppositeSign(r) => r.x,
            BoundSummary::Angle(r) => r.x,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub labels: Vec<String>,
    pub interval: Option<Interval>,
    pub x_max: u64,
    pub found_prime: Option<u64>,
    /// Traces and angles of each curve at the witness.
    pub found_data: Vec<AngleSample>,
    pub bound: BoundSummary,
    /// `None` when no witness was found below `x_max`.
    pub within_bound: Option<bool>,
    /// Good primes examined, up to and including the witness.
    pub primes_scanned: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Runs `test` on good primes up to `x_max` and returns the first prime it
/// accepts, with the number of good primes examined.
fn scan<F>(x_max: u64, is_bad: impl Fn(u64) -> bool + Sync, test: F, mode: Scan) -> Result<(Option<u64>, u64)>
where
    F: Fn(u64) -> Result<bool> + Sync,
{
    let good = primes_up_to(x_max).filter(|&p| !is_bad(p));
    match mode {
        Scan::Sequential => {
            let mut n = 0;
            for p in good {
                n += 1;
                if test(p)? {
                    return Ok((Some(p), n));
                }
            }
            Ok((None, n))
        }
        Scan::Blocks(size) => {
            let size = size.max(1);
            let mut n = 0;
            let mut block = Vec::with_capacity(size);
            let mut primes = good.peekable();
            while primes.peek().is_some() {
                block.clear();
                block.extend(primes.by_ref().take(size));
                let hits: Vec<bool> = block.par_iter().map(|&p| test(p)).collect::<Result<_>>()?;
                if let Some(i) = hits.iter().position(|&h| h) {
                    return Ok((Some(block[i]), n + i as u64 + 1));
                }
                n += block.len() as u64;
            }
            Ok((None, n))
        }
    }
}

/// Least good prime `p ≤ x_max` with `a₁(p) a₂(p) < 0`.
pub fn least_opposite_sign(s1: TraceSource, s2: TraceSource, x_max: u64, mode: Scan) -> Result<SearchReport> {
    let start = Instant::now();
    let (n1, n2) = (s1.curve.conductor, s2.curve.conductor);
    let mut bound = main_bound_log((n1 as f64).ln() + (n2 as f64).ln())?;
    bound.n = n1.checked_mul(n2);
    let is_bad = |p| s1.curve.is_bad(p) || s2.curve.is_bad(p);
    let test = |p| Ok(s1.trace(p)? * s2.trace(p)? < 0);
    let (found, scanned) = scan(x_max, is_bad, test, mode)?;
    let found_data = match found {
        Some(p) => vec![AngleSample::new(p, s1.trace(p)?), AngleSample::new(p, s2.trace(p)?)],
        None => Vec::new(),
    };
    Ok(SearchReport {
        labels: vec![s1.curve.label.clone(), s2.curve.label.clone()],
        interval: None,
        x_max,
        within_bound: found.map(|p| p as f64 <= bound.x),
        found_prime: found,
        found_data,
        bound: BoundSummary::OppositeSign(bound),
        primes_scanned: scanned,
        elapsed: start.elapsed(),
    })
}

/// Distance below which endpoint comparisons are decided exactly.
const TIE: f64 = 1e-12;

/// `a_p ≥ 2√p·c`; sides within [`TIE`] of each other count as equal, so an
/// angle on an endpoint is inside.
fn at_least(ap: i64, p: u64, c: f64) -> bool {
    let lhs = ap as f64 / (2.0 * (p as f64).sqrt());
    lhs >= c || (c - lhs) <= TIE
}

/// `θ_p ∈ [α, β]`, endpoints included.
pub fn angle_in_interval(ap: i64, p: u64, interval: &Interval) -> bool {
    let (lo, hi) = (interval.beta.cos(), interval.alpha.cos());
    at_least(ap, p, lo) && at_least(-ap, p, -hi)
}

/// Least good prime `p ≤ x_max` with `θ_p ∈ I`.
pub fn least_angle_in_interval(s: TraceSource, interval: &Interval, x_max: u64, mode: Scan) -> Result<SearchReport> {
    let start = Instant::now();
    let bound = roar_bound(s.curve.conductor, interval)?;
    let test = |p| Ok(angle_in_interval(s.trace(p)?, p, interval));
    let (found, scanned) = scan(x_max, |p| s.curve.is_bad(p), test, mode)?;
    let found_data = match found {
        Some(p) => vec![AngleSample::new(p, s.trace(p)?)],
        None => Vec::new(),
    };
    Ok(SearchReport {
        labels: vec![s.curve.label.clone()],
        interval: Some(*interval),
        x_max,
        within_bound: found.map(|p| p as f64 <= bound.x),
        found_prime: found,
        found_data,
        bound: BoundSummary::Angle(bound),
        primes_scanned: scanned,
        elapsed: start.elapsed(),
    })
}
