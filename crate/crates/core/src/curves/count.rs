//! Point counting on `y² = x³ + a4·x + a6` over `F_p`, `p > 3`.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::model::CurveModel;
use super::sieve::{isqrt, mul_mod, pow_mod};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Quadratic-character sum, `O(p)`.
    #[default]
    Brute,
    /// Baby-step giant-step order search in the Hasse window.
    Bsgs,
}

/// `#E(F_p)`, point at infinity included.
pub fn count_points(curve: &CurveModel, p: u64, method: Method) -> Result<u64> {
    check_prime(curve, p)?;
    let (a4, a6) = reduce(curve, p);
    Ok(match method {
        Method::Brute => count_brute(a4, a6, p),
        Method::Bsgs => count_bsgs(a4, a6, p),
    })
}

fn check_prime(curve: &CurveModel, p: u64) -> Result<()> {
    let bad = |reason| Error::BadPrime { label: curve.label.clone(), p, reason };
    if p <= 3 {
        return Err(bad("short Weierstrass model is not valid at 2 and 3; use small_prime_traces"));
    }
    if curve.is_bad(p) {
        return Err(bad("prime divides the conductor"));
    }
    Ok(())
}

fn reduce(curve: &CurveModel, p: u64) -> (u64, u64) {
    let m = p as i64;
    (curve.a4.rem_euclid(m) as u64, curve.a6.rem_euclid(m) as u64)
}

pub(crate) fn count_brute(a4: u64, a6: u64, p: u64) -> u64 {
    let n = p as usize;
    let mut chi = vec![-1i8; n];
    chi[0] = 0;
    for y in 1..=n / 2 {
        chi[y * y % n] = 1;
    }
    let mut acc: i64 = 0;
    for x in 0..p {
        let rhs = (mul_mod(mul_mod(x, x, p) + a4, x, p) + a6) % p;
        acc += chi[rhs as usize] as i64;
    }
    (p as i64 + 1 + acc) as u64
}

type Point = Option<(u64, u64)>;

struct Curve {
    a4: u64,
    p: u64,
}

impl Curve {
    fn neg(&self, pt: Point) -> Point {
        pt.map(|(x, y)| (x, (self.p - y) % self.p))
    }

    fn add(&self, a: Point, b: Point) -> Point {
        let p = self.p;
        let ((x1, y1), (x2, y2)) = match (a, b) {
            (None, q) | (q, None) => return q,
            (Some(a), Some(b)) => (a, b),
        };
        let lambda = if x1 == x2 {
            if (y1 + y2) % p == 0 {
                return None;
            }
            let num = (3 * mul_mod(x1, x1, p) % p + self.a4) % p;
            mul_mod(num, inv_mod(2 * y1 % p, p), p)
        } else {
            mul_mod((y2 + p - y1) % p, inv_mod((x2 + p - x1) % p, p), p)
        };
        let x3 = (mul_mod(lambda, lambda, p) + 2 * p - x1 - x2) % p;
        let y3 = (mul_mod(lambda, (x1 + p - x3) % p, p) + p - y1) % p;
        Some((x3, y3))
    }

    fn mul(&self, mut n: u64, mut pt: Point) -> Point {
        let mut acc = None;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(acc, pt);
            }
            pt = self.add(pt, pt);
            n >>= 1;
        }
        acc
    }
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "{a} not invertible mod {m}");
    t0.rem_euclid(m as i128) as u64
}

/// Square root of a quadratic residue `n` modulo an odd prime (Tonelli–Shanks).
fn sqrt_mod(n: u64, p: u64) -> Option<u64> {
    let n = n % p;
    if n == 0 {
        return Some(0);
    }
    if pow_mod(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(n, (p + 1) / 4, p));
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Group orders in the Hasse window that kill every sampled point. Stops as
/// soon as one candidate remains; falls back to the character sum if several
/// survive the sampling budget.
pub(crate) fn count_bsgs(a4: u64, a6: u64, p: u64) -> u64 {
    const POINTS: usize = 24;
    let e = Curve { a4, p };
    let half = isqrt(4 * p);
    let lo = p + 1 - half;
    let width = 2 * half;
    let m = isqrt(width) + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ a4.rotate_left(21) ^ a6.rotate_left(42));
    let mut candidates: Option<BTreeSet<u64>> = None;
    let mut sampled = 0;
    while sampled < POINTS {
        let x = rng.gen_range(0..p);
        let rhs = (mul_mod(mul_mod(x, x, p) + a4, x, p) + a6) % p;
        let Some(y) = sqrt_mod(rhs, p) else { continue };
        sampled += 1;
        let pt = Some((x, y));

        let mut baby: HashMap<Point, Vec<u64>> = HashMap::with_capacity(m as usize);
        let mut cur: Point = None;
        for i in 0..m {
            baby.entry(cur).or_default().push(i);
            cur = e.add(cur, pt);
        }
        let step = e.neg(e.mul(m, pt));
        let mut target = e.neg(e.mul(lo, pt));
        let mut found = BTreeSet::new();
        for g in 0..=width / m {
            if let Some(is) = baby.get(&target) {
                for &i in is {
                    let j = g * m + i;
                    if j <= width {
                        found.insert(lo + j);
                    }
                }
            }
            target = e.add(target, step);
        }
        let next: BTreeSet<u64> = match candidates {
            None => found,
            Some(prev) => prev.intersection(&found).copied().collect(),
        };
        if next.len() == 1 {
            return *next.iter().next().unwrap();
        }
        candidates = Some(next);
    }
    count_brute(a4, a6, p)
}
