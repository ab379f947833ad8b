//! Segmented sieve of Eratosthenes and a deterministic primality test.

const SEGMENT: u64 = 1 << 16;

/// Streaming iterator over the primes `≤ limit`.
///
/// Memory is `O(√limit + SEGMENT)`: the base primes up to `√limit` plus one
/// segment bitmap.
pub struct PrimeIter {
    limit: u64,
    base: Vec<u64>,
    seg_lo: u64,
    segment: Vec<bool>,
    pos: usize,
}

impl PrimeIter {
    pub fn new(limit: u64) -> Self {
        let root = isqrt(limit);
        let base = small_sieve(root);
        let mut it = PrimeIter { limit, base, seg_lo: 0, segment: Vec::new(), pos: 0 };
        it.fill(2);
        it
    }

    /// Sieve the segment `[lo, lo + SEGMENT)` clipped to the limit.
    fn fill(&mut self, lo: u64) {
        self.seg_lo = lo;
        self.pos = 0;
        self.segment.clear();
        if lo > self.limit {
            return;
        }
        let hi = lo.saturating_add(SEGMENT).min(self.limit.saturating_add(1));
        self.segment.resize((hi - lo) as usize, true);
        for &p in &self.base {
            let p2 = p * p;
            if p2 >= hi {
                break;
            }
            let start = if p2 >= lo { p2 } else { lo.div_ceil(p) * p };
            let mut m = start;
            while m < hi {
                self.segment[(m - lo) as usize] = false;
                m += p;
            }
        }
    }
}

impl Iterator for PrimeIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if self.segment.is_empty() {
                return None;
            }
            while self.pos < self.segment.len() {
                let i = self.pos;
                self.pos += 1;
                if self.segment[i] {
                    return Some(self.seg_lo + i as u64);
                }
            }
            let next_lo = self.seg_lo + self.segment.len() as u64;
            self.fill(next_lo);
        }
    }
}

/// All primes `≤ limit`, in increasing order.
pub fn primes_up_to(limit: u64) -> PrimeIter {
    PrimeIter::new(limit)
}

fn small_sieve(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut is = vec![true; n + 1];
    is[0] = false;
    is[1] = false;
    let mut i = 2;
    while i * i <= n {
        if is[i] {
            let mut j = i * i;
            while j <= n {
                is[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    is.iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i as u64))
        .collect()
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `Some((p, m))` when `n = p^m` with `m ≥ 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = smallest_prime_factor(n);
    let mut rest = n;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

/// Distinct prime factors of `n`, and whether `n` is squarefree.
pub fn factor(n: u64) -> (Vec<u64>, bool) {
    let mut out = Vec::new();
    let mut squarefree = true;
    let mut rest = n;
    let mut d = 2;
    while d * d <= rest {
        if rest % d == 0 {
            out.push(d);
            rest /= d;
            if rest % d == 0 {
                squarefree = false;
                while rest % d == 0 {
                    rest /= d;
                }
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        out.push(rest);
    }
    (out, squarefree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_primes(n: u64) -> Vec<u64> {
        (2..=n).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
    }

    #[test]
    fn small_ranges() {
        assert_eq!(primes_up_to(10).collect::<Vec<_>>(), vec![2, 3, 5, 7]);
        assert_eq!(primes_up_to(1).count(), 0);
        assert_eq!(primes_up_to(2).collect::<Vec<_>>(), vec![2]);
        for n in [3, 50, 97, 1000, 65_537, 70_000] {
            assert_eq!(primes_up_to(n).collect::<Vec<_>>(), naive_primes(n), "n={n}");
        }
    }

    #[test]
    fn prime_counting() {
        assert_eq!(primes_up_to(1_000_000).count(), 78_498);
        // independent oracle: Miller-Rabin on every integer
        let mr = (0..=200_000u64).filter(|&n| is_prime(n)).count();
        assert_eq!(primes_up_to(200_000).count(), mr);
    }

    #[test]
    fn miller_rabin_edges() {
        assert!(is_prime(2) && is_prime(3) && !is_prime(1) && !is_prime(0));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        assert!(!is_prime(561));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(5), Some((5, 1)));
        assert_eq!(prime_power(1024), Some((2, 10)));
        assert_eq!(prime_power(243), Some((3, 5)));
    }

    #[test]
    fn factoring() {
        assert_eq!(factor(407), (vec![11, 37], true));
        assert_eq!(factor(121), (vec![11], false));
        assert_eq!(factor(1), (vec![], true));
    }
}
