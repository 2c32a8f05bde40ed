//! Report values, precision-doubling comparison, and file emission.

use std::io::Write as _;
use std::path::Path;

use serde_json::{json, Map, Value as Json};

use crate::arith::BigScalar;
use crate::asymptotics::{Estimate, Trace};
use crate::geometries::write_atomic;
use crate::{Error, Result};

/// Significant digits used for curve data in CSV files.
const CURVE_DIGITS: u32 = 30;

/// One entry of an analysis report.
#[derive(Clone, Debug)]
pub(super) enum Value {
    /// Exact quantity rendered once (rationals, big integers).
    Exact(String),
    Int(i64),
    Bool(bool),
    Text(String),
    /// Double-precision diagnostic; not compared across precisions.
    Float(f64),
    Real {
        value: BigScalar,
        uncertainty: Option<BigScalar>,
    },
    List(Vec<Value>),
    Map(Vec<(String, Value)>),
}

impl Value {
    pub(super) fn real(value: BigScalar) -> Self {
        Value::Real { value, uncertainty: None }
    }

    pub(super) fn estimate(e: &Estimate) -> Self {
        Value::Real {
            value: e.value.clone(),
            uncertainty: Some(e.uncertainty.clone()),
        }
    }

    pub(super) fn map<K: Into<String>>(entries: impl IntoIterator<Item = (K, Value)>) -> Self {
        Value::Map(entries.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

/// A named series for the CSV output.
#[derive(Clone, Debug)]
pub(super) struct Curve {
    pub series: String,
    pub x_label: &'static str,
    pub points: Vec<(f64, BigScalar)>,
}

impl Curve {
    pub(super) fn from_trace(prefix: &str, x_label: &'static str, trace: &Trace) -> Self {
        let series = if prefix.is_empty() {
            trace.label.clone()
        } else {
            format!("{prefix} {}", trace.label)
        };
        Curve {
            series,
            x_label,
            points: trace.sequence.points().iter().map(|(n, v)| (*n as f64, v.clone())).collect(),
        }
    }
}

/// Output of one analysis run at a fixed precision.
#[derive(Clone, Debug, Default)]
pub(super) struct Outcome {
    pub results: Vec<(String, Value)>,
    pub curves: Vec<Curve>,
}

impl Outcome {
    pub(super) fn push(&mut self, key: impl Into<String>, value: Value) {
        self.results.push((key.into(), value));
    }

    pub(super) fn traces(&mut self, prefix: &str, x_label: &'static str, traces: &[Trace]) {
        self.curves.extend(traces.iter().map(|t| Curve::from_trace(prefix, x_label, t)));
    }
}

/// Renders `primary` keeping only digits confirmed by `check` (the same
/// computation at doubled precision) and by any uncertainty estimate.
/// Tracks the smallest digit count seen.
pub(super) struct Stabilizer {
    pub min_digits: Option<u32>,
}

impl Stabilizer {
    pub(super) fn new() -> Self {
        Stabilizer { min_digits: None }
    }

    pub(super) fn merge(&mut self, path: &str, primary: &Value, check: &Value) -> Result<Json> {
        let mismatch = || Error::Inconsistent(format!("report entry '{path}' changed under precision doubling"));
        Ok(match (primary, check) {
            (Value::Exact(a), Value::Exact(b)) if a == b => json!(a),
            (Value::Int(a), Value::Int(b)) if a == b => json!(a),
            (Value::Bool(a), Value::Bool(b)) if a == b => json!(a),
            (Value::Text(a), Value::Text(b)) if a == b => json!(a),
            (Value::Float(a), Value::Float(_)) => float_json(*a),
            (
                Value::Real { value, uncertainty },
                Value::Real { value: other, .. },
            ) => {
                let cap = value.precision().decimal_digits();
                let mut digits = value.agreement_digits(other).min(cap);
                if let Some(u) = uncertainty {
                    let e = Estimate {
                        value: value.clone(),
                        uncertainty: u.clone(),
                    };
                    digits = digits.min(e.reliable_digits());
                }
                self.min_digits = Some(self.min_digits.map_or(digits, |m| m.min(digits)));
                let mut obj = Map::new();
                obj.insert("value".into(), json!(value.to_decimal(digits.max(1))));
                obj.insert("digits".into(), json!(digits));
                if let Some(u) = uncertainty {
                    obj.insert("uncertainty".into(), json!(u.to_decimal(3)));
                }
                Json::Object(obj)
            }
            (Value::List(a), Value::List(b)) if a.len() == b.len() => Json::Array(
                a.iter()
                    .zip(b)
                    .enumerate()
                    .map(|(i, (x, y))| self.merge(&format!("{path}[{i}]"), x, y))
                    .collect::<Result<_>>()?,
            ),
            (Value::Map(a), Value::Map(b)) if a.len() == b.len() => {
                let mut obj = Map::new();
                for ((ka, va), (kb, vb)) in a.iter().zip(b) {
                    if ka != kb {
                        return Err(mismatch());
                    }
                    obj.insert(ka.clone(), self.merge(&format!("{path}.{ka}"), va, vb)?);
                }
                Json::Object(obj)
            }
            _ => return Err(mismatch()),
        })
    }
}

fn float_json(x: f64) -> Json {
    // fixed significant digits keep the text independent of float noise
    if x.is_finite() {
        let rounded: f64 = format!("{x:.9e}").parse().unwrap_or(x);
        json!(rounded)
    } else {
        Json::Null
    }
}

/// CSV text with columns `series,x_label,x,value,imag`.
pub(super) fn curves_csv(curves: &[Curve]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Inconsistent(format!("CSV encoding failed: {e}"));
    w.write_record(["series", "x_label", "x", "value", "imag"]).map_err(csv_err)?;
    for c in curves {
        for (x, v) in &c.points {
            let re = BigScalar::from_float(v.re().clone()).to_decimal(CURVE_DIGITS);
            let im = BigScalar::from_float(v.im().clone()).to_decimal(CURVE_DIGITS);
            w.write_record([c.series.as_str(), c.x_label, &x.to_string(), &re, &im]).map_err(csv_err)?;
        }
    }
    w.into_inner().map_err(|e| Error::Inconsistent(format!("CSV encoding failed: {e}")))
}

/// Write to `path` atomically, or to stdout when no path is given.
pub(super) fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)
                .and_then(|()| out.flush())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

pub(super) fn to_pretty(json: &Json) -> Vec<u8> {
    let mut text = serde_json::to_string_pretty(json).expect("JSON values always serialize");
    text.push('\n');
    text.into_bytes()
}
