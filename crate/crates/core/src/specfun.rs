//! Digamma and trigamma, the logarithmic derivative of ζ, and the
//! Gamma-factor log-derivatives of symmetric-power and Rankin–Selberg
//! L-functions, together with the explicit upper bounds used for them.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;
/// `ψ′(1) = π²/6`.
pub const TRIGAMMA_ONE: f64 = 1.644_934_066_848_226_436_472_415_166_646;
/// Upper bound for `ψ(x)/x` (Chebyshev's function), valid for all `x > 0`.
const CHEBYSHEV_PSI_RATIO: f64 = 1.03883;

/// `B_{2k} / (2k)` for `k = 1..=8`.
const DIGAMMA_ASYMPTOTIC: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// `B_{2k}` for `k = 1..=10`.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Real part at which the asymptotic series takes over. With eight terms the
/// truncation error there is below 1e-18.
const ASYMPTOTIC_THRESHOLD: f64 = 12.0;

fn is_gamma_pole(re: f64, im: f64) -> bool {
    im == 0.0 && re <= 0.0 && re == re.floor()
}

/// `Γ′/Γ(s)` for complex `s` away from the poles `0, -1, -2, …`.
pub fn digamma(s: Complex64) -> Result<Complex64> {
    if is_gamma_pole(s.re, s.im) {
        return Err(Error::Pole { op: "digamma", s: s.re, kappa: 0.0 });
    }
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(domain("digamma", "argument must be finite", s.re));
    }
    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < ASYMPTOTIC_THRESHOLD {
        shift -= z.inv();
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut tail = Complex64::new(0.0, 0.0);
    for &c in DIGAMMA_ASYMPTOTIC.iter().rev() {
        tail = (tail + c) * inv2;
    }
    Ok(shift + z.ln() - 0.5 * inv - tail)
}

/// Real digamma.
pub fn digamma_real(x: f64) -> Result<f64> {
    digamma(Complex64::new(x, 0.0)).map(|z| z.re)
}

/// `ψ′(s)` for real `s > 0`.
pub fn trigamma(s: f64) -> Result<f64> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(domain("trigamma", "argument must be positive", s));
    }
    let mut z = s;
    let mut shift = 0.0;
    while z < ASYMPTOTIC_THRESHOLD {
        shift += 1.0 / (z * z);
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut tail = 0.0;
    for &b in BERNOULLI_EVEN[..8].iter().rev() {
        tail = (tail + b) * inv2;
    }
    Ok(shift + inv + 0.5 * inv2 + tail * inv)
}

/// `ζ′/ζ(s)` for real `s > 1`, from Euler–Maclaurin evaluations of `ζ` and
/// `ζ′` (cut at 16 terms plus ten Bernoulli corrections, error < 1e-20 for
/// `s ≤ 10`).
pub fn zeta_logderiv(s: f64) -> Result<f64> {
    if !(s > 1.0 && s.is_finite()) {
        return Err(domain("zeta_logderiv", "argument must exceed 1", s));
    }
    let (z, dz) = zeta_and_derivative(s);
    Ok(dz / z)
}

fn zeta_and_derivative(s: f64) -> (f64, f64) {
    const CUT: usize = 16;
    let n = CUT as f64;
    let ln_n = n.ln();
    let mut z = 0.0;
    let mut dz = 0.0;
    for m in 1..CUT {
        let m = m as f64;
        let t = m.powf(-s);
        z += t;
        dz -= m.ln() * t;
    }
    let n1s = n.powf(1.0 - s);
    z += n1s / (s - 1.0);
    dz += n1s * (-ln_n / (s - 1.0) - 1.0 / ((s - 1.0) * (s - 1.0)));
    let ns = n.powf(-s);
    z += 0.5 * ns;
    dz -= 0.5 * ln_n * ns;

    // k-th correction: B_{2k}/(2k)! * P_k(s) * N^{-s-2k+1}, P_k(s) = Π_{j=0}^{2k-2} (s+j)
    let mut poly = 1.0;
    let mut dlog_poly = 0.0;
    let mut fact = 1.0;
    let mut j = 0usize;
    for (k, &b) in BERNOULLI_EVEN.iter().enumerate() {
        let k = k + 1;
        while j <= 2 * k - 2 {
            poly *= s + j as f64;
            dlog_poly += 1.0 / (s + j as f64);
            j += 1;
        }
        fact *= ((2 * k - 1) * (2 * k)) as f64;
        let power = n.powf(-s - (2 * k) as f64 + 1.0);
        let term = b / fact * poly * power;
        z += term;
        dz += term * (dlog_poly - ln_n);
    }
    (z, dz)
}

/// Partial sum of `-Σ Λ(n) n^{-s}` over `n ≤ cutoff` together with a
/// rigorous bound on the omitted tail.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SeriesEstimate {
    pub partial: f64,
    pub tail_bound: f64,
}

/// Dirichlet-series route to `ζ′/ζ(s)`. The tail uses `ψ(x) < 1.03883 x` and
/// partial summation: `Σ_{n>X} Λ(n) n^{-s} ≤ 1.03883 · s X^{1-s} / (s-1)`.
pub fn zeta_logderiv_dirichlet(s: f64, cutoff: usize) -> Result<SeriesEstimate> {
    if !(s > 1.0 && s.is_finite()) {
        return Err(domain("zeta_logderiv_dirichlet", "argument must exceed 1", s));
    }
    if cutoff < 2 {
        return Err(domain("zeta_logderiv_dirichlet", "cutoff must be at least 2", cutoff as f64));
    }
    let mut acc = crate::sums::CompensatedSum::default();
    for p in crate::curves::primes_up_to(cutoff as u64) {
        let lp = (p as f64).ln();
        let mut q = p;
        while q <= cutoff as u64 {
            acc.add(lp * (q as f64).powf(-s));
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
        }
    }
    let x = cutoff as f64;
    Ok(SeriesEstimate {
        partial: -acc.value(),
        tail_bound: CHEBYSHEV_PSI_RATIO * s * x.powf(1.0 - s) / (s - 1.0),
    })
}

/// A non-negative half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HalfInt(pub u32);

impl HalfInt {
    pub fn from_twice(twice: u32) -> Self {
        HalfInt(twice)
    }

    pub fn integer(n: u32) -> Self {
        HalfInt(2 * n)
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

/// Local parameters at infinity: `(κ, multiplicity)`, sorted by `κ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalParams {
    pub entries: Vec<(HalfInt, u32)>,
}

impl LocalParams {
    fn from_multiset(mut raw: Vec<HalfInt>) -> Self {
        raw.sort();
        let mut entries: Vec<(HalfInt, u32)> = Vec::new();
        for v in raw {
            match entries.last_mut() {
                Some((last, m)) if *last == v => *m += 1,
                _ => entries.push((v, 1)),
            }
        }
        LocalParams { entries }
    }

    pub fn degree(&self) -> u32 {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    pub fn multiplicity(&self, kappa: HalfInt) -> u32 {
        self.entries
            .iter()
            .find(|&&(v, _)| v == kappa)
            .map_or(0, |&(_, m)| m)
    }
}

/// Which Gamma factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GammaKind {
    /// `L(s, Sym^k E)`.
    SymPower(u32),
    /// `L(s, Sym^i E₁ ⊗ Sym^j E₂)` with `0 ≤ i, j ≤ 2`.
    Rankin(u32, u32),
}

fn sym_power_params(k: u32) -> Vec<HalfInt> {
    let mut out = Vec::with_capacity(k as usize + 1);
    if k == 0 {
        out.push(HalfInt::integer(0));
    } else if k % 2 == 1 {
        // (2j+1)/2 for j = 0..=(k+1)/2; 1/2 and (k+2)/2 once, the rest twice
        for j in 0..=(k + 1) / 2 {
            let twice = 2 * j + 1;
            let mult = if twice == 1 || twice == k + 2 { 1 } else { 2 };
            out.extend(std::iter::repeat(HalfInt::from_twice(twice)).take(mult));
        }
    } else if k % 4 == 2 {
        // j = 1..=k/2+1; (k+2)/2 once
        for j in 1..=k / 2 + 1 {
            let mult = if j == k / 2 + 1 { 1 } else { 2 };
            out.extend(std::iter::repeat(HalfInt::integer(j)).take(mult));
        }
    } else {
        // j = 0..=k/2+1; 0, 1 and (k+2)/2 once
        for j in 0..=k / 2 + 1 {
            let mult = if j == 0 || j == 1 || j == k / 2 + 1 { 1 } else { 2 };
            out.extend(std::iter::repeat(HalfInt::integer(j)).take(mult));
        }
    }
    out
}

/// Local parameters at infinity for the requested L-function.
pub fn local_params(kind: GammaKind) -> Result<LocalParams> {
    match kind {
        GammaKind::SymPower(k) => Ok(LocalParams::from_multiset(sym_power_params(k))),
        GammaKind::Rankin(i, j) => {
            if i > 2 || j > 2 {
                return Err(domain(
                    "local_params",
                    "Rankin-Selberg parameters are only provided for 0 <= i, j <= 2",
                    i.max(j) as f64,
                ));
            }
            let left = sym_power_params(i);
            let right = sym_power_params(j);
            let sums = left
                .iter()
                .flat_map(|a| right.iter().map(move |b| HalfInt(a.0 + b.0)))
                .collect();
            Ok(LocalParams::from_multiset(sums))
        }
    }
}

fn check_gamma_arg(op: &'static str, s: f64, kappa: f64) -> Result<()> {
    let arg = (s + kappa) / 2.0;
    if arg <= 0.0 && arg == arg.floor() {
        return Err(Error::Pole { op, s, kappa });
    }
    Ok(())
}

/// `γ′/γ(s) = Σ_κ mult(κ) [-½ log π + ½ ψ((s+κ)/2)]`.
pub fn gamma_logderiv(kind: GammaKind, s: f64) -> Result<f64> {
    let params = local_params(kind)?;
    let half_log_pi = 0.5 * PI.ln();
    let mut total = 0.0;
    for &(kappa, mult) in &params.entries {
        let kappa = kappa.value();
        check_gamma_arg("gamma_logderiv", s, kappa)?;
        total += mult as f64 * (-half_log_pi + 0.5 * digamma_real((s + kappa) / 2.0)?);
    }
    Ok(total)
}

/// Same quantity for `Sym^k`, computed from the product of `Γ_ℂ(s) =
/// 2(2π)^{-s}Γ(s)` and `Γ_ℝ(s) = π^{-s/2}Γ(s/2)` factors rather than from the
/// parameter list.
pub fn gamma_logderiv_complex_form(k: u32, s: f64) -> Result<f64> {
    let log_2pi = (2.0 * PI).ln();
    let pole = |z: f64| -> Result<()> {
        if z <= 0.0 && z == z.floor() {
            return Err(Error::Pole { op: "gamma_logderiv_complex_form", s, kappa: 2.0 * (z - s) });
        }
        Ok(())
    };
    let gamma_c = |z: f64| -> Result<f64> {
        pole(z)?;
        Ok(-log_2pi + digamma_real(z)?)
    };
    let gamma_r = |z: f64| -> Result<f64> {
        pole(z / 2.0)?;
        Ok(-0.5 * PI.ln() + 0.5 * digamma_real(z / 2.0)?)
    };
    let mut total = 0.0;
    if k % 2 == 1 {
        for j in 1..=(k + 1) / 2 {
            total += gamma_c(s + j as f64 - 0.5)?;
        }
    } else {
        let r = (k / 2) % 2;
        total += gamma_r(s + r as f64)?;
        for j in 1..=k / 2 {
            total += gamma_c(s + j as f64)?;
        }
    }
    Ok(total)
}

/// Result of checking a bound at one point.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundCheck {
    pub holds: bool,
    /// `bound - |value|`.
    pub slack: f64,
}

/// `τ = 11/3 + log π`.
pub fn tau() -> f64 {
    11.0 / 3.0 + PI.ln()
}

/// Checks `|ψ(s)| ≤ 11/3 + log(|s| + 1)` for `Re(s) ≥ 1`.
pub fn arouse_bound_holds(s: Complex64) -> Result<BoundCheck> {
    if !(s.re >= 1.0) {
        return Err(domain("arouse_bound_holds", "requires Re(s) >= 1", s.re));
    }
    let bound = 11.0 / 3.0 + (s.norm() + 1.0).ln();
    let slack = bound - digamma(s)?.norm();
    Ok(BoundCheck { holds: slack >= 0.0, slack })
}

/// The two real ranges on which the Gamma-factor bounds are stated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// `-1/4 < s < 0`.
    Negative,
    /// `s ≥ 1`.
    Positive,
}

impl Regime {
    fn check(self, op: &'static str, s: f64) -> Result<()> {
        let ok = match self {
            Regime::Negative => s > -0.25 && s < 0.0,
            Regime::Positive => s >= 1.0 && s.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(domain(op, "s lies outside the requested regime", s))
        }
    }
}

/// Upper bound for `|γ′_k/γ_k(s)|` on the two regimes.
pub fn bitpar_bound(k: u32, s: f64, regime: Regime) -> Result<f64> {
    regime.check("bitpar_bound", s)?;
    let half_deg = (k as f64 + 1.0) / 2.0;
    Ok(match regime {
        Regime::Negative => {
            let delta = if k % 4 == 0 { 1.0 } else { 0.0 };
            half_deg * (tau() + (s / 2.0 + (k as f64 + 24.0) / 8.0).ln()) + 28.0 / 5.0 + delta / s.abs()
        }
        Regime::Positive => half_deg * (tau() + (s / 2.0 + (k as f64 + 16.0) / 8.0).ln()) + 1.0,
    })
}

/// Upper bound for `|γ′_{i⊗j}/γ_{i⊗j}(s)|`, `0 ≤ i, j ≤ 2`.
pub fn rankin_digamma_bound(i: u32, j: u32, s: f64, regime: Regime) -> Result<f64> {
    if i > 2 || j > 2 {
        return Err(domain("rankin_digamma_bound", "requires 0 <= i, j <= 2", i.max(j) as f64));
    }
    regime.check("rankin_digamma_bound", s)?;
    let d = ((i + 1) * (j + 1)) as f64;
    let main = d / 2.0 * (tau() + (s / 2.0 + 3.0).ln());
    Ok(match regime {
        Regime::Negative => {
            let e = if i + j == 0 { 1.0 } else { 0.0 };
            main + 5.0 + e / s.abs()
        }
        Regime::Positive => main + 1.0,
    })
}
