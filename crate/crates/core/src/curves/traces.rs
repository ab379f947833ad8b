use std::path::Path;

use rayon::prelude::*;

use super::count::{count_points, Method};
use super::model::{load_ap_table, write_ap_table, AngleSample, ApTable, CurveModel};
use super::sieve::primes_up_to;
use crate::error::{Error, Result};

/// `a_p = p + 1 - #E(F_p)` at any prime: bad primes and `p ∈ {2, 3}` come
/// from the curve record, everything else from point counting.
pub fn trace(curve: &CurveModel, p: u64, method: Method) -> Result<i64> {
    if let Some(ap) = curve.bad_trace(p) {
        return Ok(ap);
    }
    if p <= 3 {
        return curve.small_trace(p).ok_or_else(|| Error::BadPrime {
            label: curve.label.clone(),
            p,
            reason: "no trace supplied for this small prime",
        });
    }
    Ok(p as i64 + 1 - count_points(curve, p, method)? as i64)
}

/// The Sato–Tate angle at a good prime.
pub fn angle(curve: &CurveModel, p: u64) -> Result<AngleSample> {
    if curve.is_bad(p) {
        return Err(Error::BadPrime {
            label: curve.label.clone(),
            p,
            reason: "angles are only defined at good primes",
        });
    }
    Ok(AngleSample::new(p, trace(curve, p, Method::Brute)?))
}

/// Traces of one curve at every prime up to `limit`, in increasing order.
///
/// Entries from an external table take precedence over point counting.
#[derive(Debug, Clone)]
pub struct TraceTable {
    pub label: String,
    pub conductor: u64,
    pub limit: u64,
    /// `(p, a_p)` for every prime `p ≤ limit`, bad primes included.
    pub entries: Vec<(u64, i64)>,
}

impl TraceTable {
    pub fn compute(curve: &CurveModel, limit: u64, method: Method) -> Result<Self> {
        Self::compute_with(curve, limit, method, None)
    }

    pub fn compute_with(
        curve: &CurveModel,
        limit: u64,
        method: Method,
        overrides: Option<&ApTable>,
    ) -> Result<Self> {
        let primes: Vec<u64> = primes_up_to(limit).collect();
        let entries = primes
            .par_iter()
            .map(|&p| match overrides.and_then(|t| t.get(&p)) {
                Some(&ap) if !curve.is_bad(p) => Ok((p, ap)),
                _ => trace(curve, p, method).map(|ap| (p, ap)),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TraceTable { label: curve.label.clone(), conductor: curve.conductor, limit, entries })
    }

    /// Reuses a cached CSV when it covers `limit`; otherwise computes and
    /// rewrites the cache.
    pub fn cached(curve: &CurveModel, limit: u64, cache: impl AsRef<Path>) -> Result<Self> {
        let cache = cache.as_ref();
        if cache.exists() {
            let table = load_ap_table(cache)?;
            let primes: Vec<u64> = primes_up_to(limit).collect();
            if primes.iter().all(|p| table.contains_key(p)) {
                return Self::compute_with(curve, limit, Method::Brute, Some(&table));
            }
        }
        let fresh = Self::compute(curve, limit, Method::Brute)?;
        write_ap_table(cache, &fresh.to_ap_table())?;
        Ok(fresh)
    }

    pub fn to_ap_table(&self) -> ApTable {
        self.entries.iter().copied().collect()
    }

    pub fn is_bad(&self, p: u64) -> bool {
        self.conductor % p == 0
    }

    pub fn get(&self, p: u64) -> Option<i64> {
        self.entries.binary_search_by_key(&p, |e| e.0).ok().map(|i| self.entries[i].1)
    }

    /// Angle samples at the good primes `≤ x`.
    pub fn good_angles(&self, x: f64) -> impl Iterator<Item = AngleSample> + '_ {
        self.entries
            .iter()
            .take_while(move |e| (e.0 as f64) <= x)
            .filter(|e| !self.is_bad(e.0))
            .map(|&(p, ap)| AngleSample::new(p, ap))
    }
}
