use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Number, Value};

pub const SCHEMA: u32 = 1;
const DIGITS: usize = 12;

#[derive(Serialize)]
pub struct ReportEnvelope {
    pub command: String,
    pub version: &'static str,
    pub schema: u32,
    pub inputs: Value,
    pub results: Value,
    pub warnings: Vec<String>,
}

impl ReportEnvelope {
    pub fn new(command: &str, inputs: Value, results: Value) -> Self {
        ReportEnvelope {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION"),
            schema: SCHEMA,
            inputs,
            results,
            warnings: Vec::new(),
        }
    }
}

/// Rounds a float to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", DIGITS - 1, x).parse().unwrap_or(x)
}

/// Rounds every float in a JSON tree; non-finite values become null.
pub fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(normalize).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, normalize(v))).collect()),
        other => other,
    }
}

pub fn to_value<T: Serialize>(t: &T) -> Value {
    normalize(serde_json::to_value(t).expect("reports serialize"))
}

/// One JSON line.
pub fn write_json(out: &mut impl Write, env: &ReportEnvelope) -> std::io::Result<()> {
    let v = normalize(serde_json::to_value(env).expect("envelope serializes"));
    serde_json::to_writer(&mut *out, &v)?;
    writeln!(out)
}

fn flatten_into(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(o) => {
            for (k, v) in o {
                flatten_into(&key(k), v, out);
            }
        }
        Value::Array(a) => {
            for (i, v) in a.iter().enumerate() {
                flatten_into(&key(&i.to_string()), v, out);
            }
        }
        Value::Null => out.push((prefix.to_string(), String::new())),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

pub fn flatten(v: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    flatten_into("", v, &mut out);
    out
}

/// Rows as CSV with the header taken from the first row.
pub fn write_csv(out: &mut impl Write, rows: &[Value]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let flat: Vec<_> = rows.iter().map(|r| flatten(&normalize(r.clone()))).collect();
    if let Some(first) = flat.first() {
        w.write_record(first.iter().map(|(k, _)| k))?;
    }
    for row in &flat {
        w.write_record(row.iter().map(|(_, v)| v))?;
    }
    w.flush()?;
    Ok(())
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(2961543.123456789), 2961543.12346);
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
        assert_eq!(round_sig(-1.0 / 3.0), -0.333333333333);
        assert!(round_sig(f64::NAN).is_nan());
    }

    #[test]
    fn nonfinite_become_null() {
        let v = normalize(json!({"a": [1.5, 2], "b": "x"}));
        assert_eq!(v, json!({"a": [1.5, 2], "b": "x"}));
        let v = to_value(&vec![f64::INFINITY, 1.0]);
        assert_eq!(v, json!([null, 1.0]));
    }

    #[test]
    fn flattening() {
        let f = flatten(&json!({"a": {"b": 1}, "c": [true, null]}));
        let keys: Vec<_> = f.iter().map(|p| p.0.as_str()).collect();
        assert_eq!(keys, ["a.b", "c.0", "c.1"]);
    }
}
