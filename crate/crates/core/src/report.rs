//! Machine-readable check reports: newline-delimited JSON or CSV.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A parameter value in a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Float(f64),
    Text(String),
}

impl ParamValue {
    fn rank(&self) -> u8 {
        match self {
            ParamValue::Int(_) | ParamValue::Float(_) => 0,
            ParamValue::Text(_) => 1,
        }
    }

    fn as_f64(&self) -> Option<f64> {
        match self {
            ParamValue::Int(i) => Some(*i as f64),
            ParamValue::Float(x) => Some(*x),
            ParamValue::Text(_) => None,
        }
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ParamValue::Int(a), ParamValue::Int(b)) => a.cmp(b),
            (ParamValue::Text(a), ParamValue::Text(b)) => a.cmp(b),
            _ => match (self.as_f64(), other.as_f64()) {
                (Some(a), Some(b)) => a.total_cmp(&b),
                _ => self.rank().cmp(&other.rank()),
            },
        }
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(i) => write!(f, "{i}"),
            ParamValue::Float(x) => write!(f, "{x:?}"),
            ParamValue::Text(s) => f.write_str(s),
        }
    }
}

impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<u64> for ParamValue {
    fn from(v: u64) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<i64> for ParamValue {
    fn from(v: i64) -> Self {
        ParamValue::Int(v)
    }
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        ParamValue::Float(v)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_string())
    }
}

pub type Params = BTreeMap<String, ParamValue>;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_name: String,
    pub params: Params,
    pub residuals: BTreeMap<String, f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub runtime_ms: u64,
}

impl CheckReport {
    /// Builds a report; `pass` is `all residuals < tolerance`.
    ///
    /// Non-finite residuals are stored as `f64::MAX` (JSON has no NaN) and
    /// always fail.
    pub fn new(
        check_name: impl Into<String>,
        params: Params,
        residuals: impl IntoIterator<Item = (impl Into<String>, f64)>,
        tolerance: f64,
        runtime_ms: u64,
    ) -> Self {
        let residuals: BTreeMap<String, f64> = residuals
            .into_iter()
            .map(|(k, v)| (k.into(), if v.is_finite() { v.abs() } else { f64::MAX }))
            .collect();
        let mut report = CheckReport {
            check_name: check_name.into(),
            params,
            residuals,
            tolerance,
            pass: false,
            runtime_ms,
        };
        report.pass = report.evaluate();
        report
    }

    fn evaluate(&self) -> bool {
        self.residuals.values().all(|&v| v < self.tolerance && v != f64::MAX)
    }

    /// Replaces the tolerance and recomputes `pass`.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.pass = self.evaluate();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports contain only finite numbers and strings")
    }

    pub fn from_json(line: &str) -> serde_json::Result<Self> {
        serde_json::from_str(line)
    }

    /// Canonical order: by `check_name`, then by parameters.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.check_name.cmp(&other.check_name).then_with(|| {
            let mut a = self.params.iter();
            let mut b = other.params.iter();
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(_), None) => return Ordering::Greater,
                    (Some((ka, va)), Some((kb, vb))) => {
                        let o = ka.cmp(kb).then_with(|| va.total_cmp(vb));
                        if o != Ordering::Equal {
                            return o;
                        }
                    }
                }
            }
        })
    }
}

pub fn sort_reports(reports: &mut [CheckReport]) {
    reports.sort_by(CheckReport::canonical_cmp);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

fn joined<'a, V: fmt::Display + 'a>(items: impl Iterator<Item = (&'a String, V)>) -> String {
    items.map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

/// Newline-delimited JSON, one report per line.
pub fn emit_json(reports: &[CheckReport]) -> String {
    reports.iter().map(|r| r.to_json() + "\n").collect()
}

/// CSV with a header row; params and residuals as `key=value` lists joined by `;`.
pub fn emit_csv(reports: &[CheckReport]) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["check_name", "params", "residuals", "tolerance", "pass", "runtime_ms"])?;
    for r in reports {
        w.write_record([
            r.check_name.clone(),
            joined(r.params.iter()),
            joined(r.residuals.iter().map(|(k, v)| (k, format!("{v:e}")))),
            format!("{:e}", r.tolerance),
            r.pass.to_string(),
            r.runtime_ms.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn emit(reports: &[CheckReport], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => emit_json(reports),
        OutputFormat::Csv => emit_csv(reports).expect("writing csv to memory cannot fail"),
    }
}

/// Parses newline-delimited JSON; blank lines are skipped.
pub fn parse_json_lines(text: &str) -> serde_json::Result<Vec<CheckReport>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(CheckReport::from_json)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CheckReport {
        let mut params = Params::new();
        params.insert("n".into(), 3usize.into());
        params.insert("r".into(), 0.3.into());
        params.insert("ambient".into(), "quadric".into());
        CheckReport::new("x", params, [("a", 1e-13), ("b", 0.1 + 0.2)], 1.0, 4)
    }

    #[test]
    fn json_round_trip_is_exact() {
        let r = sample();
        assert_eq!(CheckReport::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn pass_is_strict() {
        let r = CheckReport::new("x", Params::new(), [("a", 1.0)], 1.0, 0);
        assert!(!r.pass);
        assert!(r.with_tolerance(1.5).pass);
        let nan = CheckReport::new("x", Params::new(), [("a", f64::NAN)], 1e300, 0);
        assert!(!nan.pass);
        assert_eq!(CheckReport::from_json(&nan.to_json()).unwrap(), nan);
    }

    #[test]
    fn ordering_by_name_then_params() {
        let mk = |name: &str, n: usize, r: f64| {
            let mut p = Params::new();
            p.insert("n".into(), n.into());
            p.insert("r".into(), r.into());
            CheckReport::new(name, p, [("a", 0.0)], 1.0, 0)
        };
        let mut v = vec![mk("b", 3, 0.1), mk("a", 4, 0.1), mk("a", 3, 0.5), mk("a", 3, 0.2)];
        sort_reports(&mut v);
        let keys: Vec<_> = v.iter().map(|r| (r.check_name.clone(), r.params["r"].to_string())).collect();
        assert_eq!(keys[0], ("a".to_string(), "0.2".to_string()));
        assert_eq!(keys[1], ("a".to_string(), "0.5".to_string()));
        assert_eq!(v[2].params["n"], ParamValue::Int(4));
        assert_eq!(v[3].check_name, "b");
    }

    #[test]
    fn csv_has_header_and_rows() {
        let out = emit_csv(&[sample()]).unwrap();
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("check_name,params"));
        assert!(lines[1].contains("ambient=quadric;n=3;r=0.3"));
    }
}
