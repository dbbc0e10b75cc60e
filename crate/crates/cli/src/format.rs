//! Number formatting and table output shared by the subcommands.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde_json::Value;

/// Scientific notation with 12 significant digits.
pub fn sci(x: f64) -> String {
    if !x.is_finite() {
        return non_finite(x);
    }
    format!("{x:.11e}")
}

/// 12 significant digits, positional for moderate magnitudes and scientific otherwise.
pub fn sig(x: f64) -> String {
    if !x.is_finite() {
        return non_finite(x);
    }
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{:.11e}", x.abs());
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        return sci(x);
    }
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let body = if exp >= 0 {
        let (int, frac) = digits.split_at(exp as usize + 1);
        if frac.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        }
    } else {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    };
    if x < 0.0 {
        format!("-{body}")
    } else {
        body
    }
}

fn non_finite(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// JSON number carrying the same 12 significant digits as the text output.
pub fn num(x: f64) -> Value {
    let rounded: f64 = sci(x).parse().unwrap_or(x);
    serde_json::Number::from_f64(rounded).map(Value::Number).unwrap_or(Value::Null)
}

pub fn opt_num(x: Option<f64>) -> Value {
    x.map(num).unwrap_or(Value::Null)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A table emitted either as CSV (header + rows) or as `{"command":…, …, "rows":[…]}`.
pub struct Table {
    pub command: &'static str,
    pub header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
    pub json_rows: Vec<Value>,
    pub extra: Vec<(&'static str, Value)>,
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = self.header.join(",");
                out.push('\n');
                for row in &self.csv_rows {
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let mut obj = serde_json::Map::new();
                obj.insert("command".into(), Value::String(self.command.into()));
                for (k, v) in &self.extra {
                    obj.insert((*k).into(), v.clone());
                }
                obj.insert("rows".into(), Value::Array(self.json_rows.clone()));
                let mut out = serde_json::to_string_pretty(&Value::Object(obj)).expect("valid json");
                out.push('\n');
                out
            }
        }
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(path) => File::create(path)?.write_all(text.as_bytes()),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig(1.5), "1.50000000000");
        assert_eq!(sig(0.11031780007632579), "0.110317800076");
        assert_eq!(sig(-2.0), "-2.00000000000");
        assert_eq!(sig(123456789012.0), "123456789012");
        assert_eq!(sig(1e-9), "1.00000000000e-9");
        assert_eq!(sig(0.0), "0");
        assert_eq!(sci(0.25), "2.50000000000e-1");
    }

    #[test]
    fn json_numbers_are_rounded() {
        assert_eq!(num(0.1 + 0.2), serde_json::json!(0.3));
        assert_eq!(num(f64::NAN), Value::Null);
    }
}
