use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::sieve::{factor, is_prime};
use crate::error::{Error, Result};

/// A prime together with a trace of Frobenius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeTrace {
    pub p: u64,
    pub ap: i64,
}

/// A semistable elliptic curve given by a short Weierstrass model
/// `y² = x³ + a4·x + a6` (valid at every prime `p > 3`), its conductor, and
/// the trace data the short model cannot provide.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveModel {
    pub label: String,
    pub a4: i64,
    pub a6: i64,
    pub conductor: u64,
    /// `a_p ∈ {-1, +1}` at each prime dividing the conductor.
    pub bad_primes: Vec<PrimeTrace>,
    /// Traces at good primes `p ∈ {2, 3}`.
    #[serde(default)]
    pub small_prime_traces: Vec<PrimeTrace>,
}

/// `|a| < 2√p`, checked in integers.
pub fn within_hasse(p: u64, ap: i64) -> bool {
    (ap as i128) * (ap as i128) < 4 * p as i128
}

impl CurveModel {
    /// Checks every model invariant.
    pub fn validate(&self) -> Result<()> {
        let invalid = |reason: String| Error::InvalidCurve { label: self.label.clone(), reason };
        let (a4, a6) = (self.a4 as i128, self.a6 as i128);
        if 4 * a4 * a4 * a4 + 27 * a6 * a6 == 0 {
            return Err(invalid("singular model (discriminant is zero)".into()));
        }
        if self.conductor < 2 {
            return Err(invalid(format!("conductor {} is not admissible", self.conductor)));
        }
        let (divisors, squarefree) = factor(self.conductor);
        if !squarefree {
            return Err(invalid(format!(
                "conductor {} is not squarefree, so the curve is not semistable",
                self.conductor
            )));
        }
        let listed: BTreeSet<u64> = self.bad_primes.iter().map(|b| b.p).collect();
        if listed.len() != self.bad_primes.len() {
            return Err(invalid("duplicate bad prime".into()));
        }
        for b in &self.bad_primes {
            if self.conductor % b.p != 0 || !is_prime(b.p) {
                return Err(invalid(format!("bad prime {} does not divide the conductor", b.p)));
            }
            if b.ap != 1 && b.ap != -1 {
                return Err(invalid(format!(
                    "bad prime {} has a_p = {}; multiplicative reduction needs ±1",
                    b.p, b.ap
                )));
            }
        }
        if listed != divisors.iter().copied().collect() {
            return Err(invalid(format!(
                "bad primes {:?} do not match the prime divisors {:?} of the conductor",
                listed, divisors
            )));
        }
        let mut seen = BTreeSet::new();
        for t in &self.small_prime_traces {
            if t.p != 2 && t.p != 3 {
                return Err(invalid(format!("small_prime_traces may only list 2 and 3, got {}", t.p)));
            }
            if self.conductor % t.p == 0 {
                return Err(invalid(format!("{} is a bad prime; list it under bad_primes", t.p)));
            }
            if !seen.insert(t.p) {
                return Err(invalid(format!("duplicate trace for {}", t.p)));
            }
            if !within_hasse(t.p, t.ap) {
                return Err(invalid(format!("a_{} = {} violates the Hasse bound", t.p, t.ap)));
            }
        }
        Ok(())
    }

    pub fn is_bad(&self, p: u64) -> bool {
        self.conductor % p == 0
    }

    pub fn bad_trace(&self, p: u64) -> Option<i64> {
        self.bad_primes.iter().find(|b| b.p == p).map(|b| b.ap)
    }

    /// Atkin–Lehner eigenvalue `λ_p = -a_p` at a bad prime (weight-2
    /// convention). Diagnostic only.
    pub fn atkin_lehner(&self, p: u64) -> Option<i64> {
        self.bad_trace(p).map(|a| -a)
    }

    pub fn small_trace(&self, p: u64) -> Option<i64> {
        self.small_prime_traces.iter().find(|t| t.p == p).map(|t| t.ap)
    }
}

/// Sato–Tate angle at a good prime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngleSample {
    pub p: u64,
    pub ap: i64,
    /// `θ_p ∈ [0, π]` with `a_p = 2√p cos θ_p`.
    pub theta: f64,
}

impl AngleSample {
    pub fn new(p: u64, ap: i64) -> Self {
        let c = (ap as f64 / (2.0 * (p as f64).sqrt())).clamp(-1.0, 1.0);
        AngleSample { p, ap, theta: c.acos() }
    }

    /// `cos θ_p = a_p / (2√p)`.
    pub fn cos_theta(&self) -> f64 {
        self.ap as f64 / (2.0 * (self.p as f64).sqrt())
    }
}

/// Reads a JSON-lines curve file. Blank lines and lines starting with `#`
/// are skipped.
pub fn load_curves(path: impl AsRef<Path>) -> Result<Vec<CurveModel>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
    parse_curves(path, &text)
}

pub(crate) fn parse_curves(path: &Path, text: &str) -> Result<Vec<CurveModel>> {
    let mut out = Vec::new();
    let mut labels = BTreeSet::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let parse_err = |reason: String| Error::Parse { path: path.into(), line: line_no, reason };
        let curve: CurveModel = serde_json::from_str(trimmed).map_err(|e| parse_err(e.to_string()))?;
        curve.validate().map_err(|e| parse_err(e.to_string()))?;
        if !labels.insert(curve.label.clone()) {
            return Err(parse_err(format!("duplicate label {}", curve.label)));
        }
        out.push(curve);
    }
    Ok(out)
}

/// A table of externally supplied traces `p → a_p`.
pub type ApTable = BTreeMap<u64, i64>;

/// Reads a two-column CSV (`p,ap`; an optional header row is allowed).
/// Rows with a non-prime `p` or with `|a_p| ≥ 2√p` are rejected.
pub fn load_ap_table(path: impl AsRef<Path>) -> Result<ApTable> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
    parse_ap_table(path, &text)
}

pub(crate) fn parse_ap_table(path: &Path, text: &str) -> Result<ApTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut table = ApTable::new();
    for (idx, record) in reader.records().enumerate() {
        let parse_err = |line: usize, reason: String| Error::Parse { path: path.into(), line, reason };
        let record = record.map_err(|e| {
            let line = e.position().map_or(idx + 1, |p| p.line() as usize);
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map_or(idx + 1, |p| p.line() as usize);
        if record.len() != 2 {
            return Err(parse_err(line, format!("expected 2 columns, found {}", record.len())));
        }
        if idx == 0 && record[0].eq_ignore_ascii_case("p") {
            continue;
        }
        let p: u64 = record[0]
            .parse()
            .map_err(|_| parse_err(line, format!("invalid prime {:?}", &record[0])))?;
        let ap: i64 = record[1]
            .parse()
            .map_err(|_| parse_err(line, format!("invalid trace {:?}", &record[1])))?;
        if !is_prime(p) {
            return Err(parse_err(line, format!("{p} is not prime")));
        }
        if !within_hasse(p, ap) {
            return Err(parse_err(line, format!("a_{p} = {ap} violates the Hasse bound |a_p| < 2 sqrt(p)")));
        }
        if table.insert(p, ap).is_some() {
            return Err(parse_err(line, format!("duplicate row for p = {p}")));
        }
    }
    Ok(table)
}

/// Writes a trace table in the format read by [`load_ap_table`].
pub fn write_ap_table(path: impl AsRef<Path>, table: &ApTable) -> Result<()> {
    let path = path.as_ref();
    let mut out = String::from("p,ap\n");
    for (p, ap) in table {
        out.push_str(&format!("{p},{ap}\n"));
    }
    fs::write(path, out).map_err(|source| Error::Io { path: path.into(), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    const C11: &str = r#"{"label":"11a1","a4":-13392,"a6":-1080432,"conductor":11,"bad_primes":[{"p":11,"ap":1}],"small_prime_traces":[{"p":2,"ap":-2},{"p":3,"ap":-1}]}"#;

    #[test]
    fn parses_well_formed_record() {
        let curves = parse_curves(Path::new("t.jsonl"), &format!("# sample\n\n{C11}\n")).unwrap();
        assert_eq!(curves.len(), 1);
        let c = &curves[0];
        assert_eq!(c.conductor, 11);
        assert_eq!(c.bad_trace(11), Some(1));
        assert_eq!(c.atkin_lehner(11), Some(-1));
        assert_eq!(c.small_trace(2), Some(-2));
    }

    #[test]
    fn rejects_square_conductor_with_line_number() {
        let bad = C11.replace("\"conductor\":11", "\"conductor\":121");
        let err = parse_curves(Path::new("t.jsonl"), &format!("{C11}\n{bad}\n")).unwrap_err();
        match err {
            Error::Parse { line, reason, .. } => {
                assert_eq!(line, 2);
                assert!(reason.contains("squarefree"), "{reason}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_other_invariant_violations() {
        let cases = [
            C11.replace("\"a4\":-13392,\"a6\":-1080432", "\"a4\":0,\"a6\":0"),
            C11.replace("{\"p\":11,\"ap\":1}", "{\"p\":11,\"ap\":0}"),
            C11.replace("{\"p\":11,\"ap\":1}", "{\"p\":13,\"ap\":1}"),
            C11.replace("{\"p\":2,\"ap\":-2}", "{\"p\":2,\"ap\":-3}"),
            C11.replace("{\"p\":2,\"ap\":-2}", "{\"p\":5,\"ap\":1}"),
            "{not json".to_string(),
        ];
        for case in cases {
            assert!(parse_curves(Path::new("t"), &case).is_err(), "{case}");
        }
        let dup = format!("{C11}\n{C11}");
        assert!(parse_curves(Path::new("t"), &dup).is_err());
    }

    #[test]
    fn ap_table_parsing() {
        let t = parse_ap_table(Path::new("a.csv"), "p,ap\n5,1\n7,-2\n13,4\n").unwrap();
        assert_eq!(t.get(&7), Some(&-2));
        let err = parse_ap_table(Path::new("a.csv"), "5,1\n7,6\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_ap_table(Path::new("a.csv"), "9,1\n").is_err());
        assert!(parse_ap_table(Path::new("a.csv"), "5,1,2\n").is_err());
        assert!(parse_ap_table(Path::new("a.csv"), "5,x\n").is_err());
    }

    #[test]
    fn angle_samples() {
        let s = AngleSample::new(7, 0);
        assert!((s.theta - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        let s = AngleSample::new(5, 1);
        assert!((s.theta - (1.0 / (2.0 * 5f64.sqrt())).acos()).abs() < 1e-15);
        assert!((s.theta - 1.3453).abs() < 1e-4);
        assert!((2.0 * 5f64.sqrt() * s.theta.cos() - 1.0).abs() < 1e-12);
        // extreme traces stay strictly inside (0, π)
        let s = AngleSample::new(101, 20);
        assert!(s.theta > 0.0);
        let s = AngleSample::new(101, -20);
        assert!(s.theta < std::f64::consts::PI);
    }
}
