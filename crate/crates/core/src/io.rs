//! JSON state and multipole files.
//!
//! Every number is written in scientific notation with 17 significant digits,
//! which is enough to round-trip any `f64` exactly.
//!
//! ```text
//! { "two_j": 4, "coefficients": [[re, im], ...], "metadata": { ... } }
//! { "degree": 2, "amplitude": a, "directions": [[x, y, z], ...], "residuals": { ... } }
//! ```

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Deserialize;
use serde_json::{Map, Number, Value};
use thiserror::Error;

use crate::degree::Degree;
use crate::harmonics::SpinState;
use crate::multipole::MultipoleSet;
use crate::sphere::UnitVector;

/// Tolerance on the length of direction triples read from a file.
pub const DIRECTION_NORM_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid file contents: {0}")]
    Invalid(String),
}

/// `f64` as a JSON number with 17 significant digits.
pub fn number(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{x:.16e}");
    Value::Number(Number::from_str(&text).expect("formatted float is a JSON number"))
}

fn pair(z: Complex64) -> Value {
    Value::Array(vec![number(z.re), number(z.im)])
}

pub fn to_pretty_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Serialized spin state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateFile {
    pub state: SpinState,
    pub metadata: BTreeMap<String, Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawState {
    #[serde(alias = "degree")]
    two_j: u32,
    coefficients: Vec<[f64; 2]>,
    #[serde(default)]
    metadata: BTreeMap<String, Value>,
}

impl StateFile {
    pub fn new(state: SpinState) -> Self {
        StateFile {
            state,
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_metadata(mut self, key: &str, value: Value) -> Self {
        self.metadata.insert(key.to_string(), value);
        self
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("two_j".into(), Value::from(self.state.degree().two_j()));
        m.insert(
            "coefficients".into(),
            Value::Array(self.state.coeffs().iter().copied().map(pair).collect()),
        );
        if !self.metadata.is_empty() {
            m.insert(
                "metadata".into(),
                Value::Object(self.metadata.clone().into_iter().collect()),
            );
        }
        Value::Object(m)
    }

    pub fn to_string_pretty(&self) -> String {
        to_pretty_string(&self.to_json())
    }

    pub fn from_value(v: Value) -> Result<Self, FileError> {
        let raw: RawState = serde_json::from_value(v)?;
        let coeffs: Vec<Complex64> = raw
            .coefficients
            .iter()
            .map(|[re, im]| Complex64::new(*re, *im))
            .collect();
        let state = SpinState::new(Degree::from_doubled(raw.two_j), coeffs)
            .map_err(|e| FileError::Invalid(e.to_string()))?;
        Ok(StateFile {
            state,
            metadata: raw.metadata,
        })
    }

    pub fn parse(text: &str) -> Result<Self, FileError> {
        Self::from_value(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self, FileError> {
        Self::parse(&read_text(path)?)
    }
}

/// Serialized multipole set plus whatever residuals were measured when it was made.
#[derive(Debug, Clone, PartialEq)]
pub struct MultipoleFile {
    pub multipoles: MultipoleSet,
    pub residuals: BTreeMap<String, f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMultipoles {
    degree: u32,
    amplitude: f64,
    directions: Vec<[f64; 3]>,
    #[serde(default)]
    residuals: BTreeMap<String, Value>,
}

impl MultipoleFile {
    pub fn new(multipoles: MultipoleSet) -> Self {
        MultipoleFile {
            multipoles,
            residuals: BTreeMap::new(),
        }
    }

    pub fn with_residual(mut self, key: &str, value: f64) -> Self {
        self.residuals.insert(key.to_string(), value);
        self
    }

    pub fn to_json(&self) -> Value {
        let mp = &self.multipoles;
        let mut m = Map::new();
        m.insert("degree".into(), Value::from(mp.degree()));
        m.insert("amplitude".into(), number(mp.amplitude()));
        m.insert(
            "directions".into(),
            Value::Array(
                mp.directions()
                    .iter()
                    .map(|d| Value::Array(d.to_array().iter().map(|&c| number(c)).collect()))
                    .collect(),
            ),
        );
        if !self.residuals.is_empty() {
            m.insert(
                "residuals".into(),
                Value::Object(
                    self.residuals
                        .iter()
                        .map(|(k, v)| (k.clone(), number(*v)))
                        .collect(),
                ),
            );
        }
        Value::Object(m)
    }

    pub fn to_string_pretty(&self) -> String {
        to_pretty_string(&self.to_json())
    }

    pub fn from_value(v: Value) -> Result<Self, FileError> {
        let raw: RawMultipoles = serde_json::from_value(v)?;
        let mut directions = Vec::with_capacity(raw.directions.len());
        for [x, y, z] in raw.directions {
            let n = (x * x + y * y + z * z).sqrt();
            if !((n - 1.0).abs() <= DIRECTION_NORM_TOL) {
                return Err(FileError::Invalid(format!(
                    "direction [{x}, {y}, {z}] has length {n}"
                )));
            }
            directions.push(UnitVector::new(x, y, z).map_err(|e| FileError::Invalid(e.to_string()))?);
        }
        let multipoles = MultipoleSet::new(raw.degree, directions, raw.amplitude)
            .map_err(|e| FileError::Invalid(e.to_string()))?;
        let residuals = raw
            .residuals
            .into_iter()
            .filter_map(|(k, v)| v.as_f64().map(|x| (k, x)))
            .collect();
        Ok(MultipoleFile {
            multipoles,
            residuals,
        })
    }

    pub fn parse(text: &str) -> Result<Self, FileError> {
        Self::from_value(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self, FileError> {
        Self::parse(&read_text(path)?)
    }
}

/// Either kind of input file, told apart by its fields.
#[derive(Debug, Clone, PartialEq)]
pub enum InputFile {
    State(StateFile),
    Multipoles(MultipoleFile),
}

impl InputFile {
    pub fn parse(text: &str) -> Result<Self, FileError> {
        let v: Value = serde_json::from_str(text)?;
        if v.get("directions").is_some() {
            Ok(InputFile::Multipoles(MultipoleFile::from_value(v)?))
        } else {
            Ok(InputFile::State(StateFile::from_value(v)?))
        }
    }

    pub fn read(path: &Path) -> Result<Self, FileError> {
        Self::parse(&read_text(path)?)
    }
}

fn read_text(path: &Path) -> Result<String, FileError> {
    std::fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_have_seventeen_digits() {
        assert_eq!(number(0.1).to_string(), "1.0000000000000001e-1");
        assert_eq!(number(-2.0).to_string(), "-2.0000000000000000e+0");
        assert_eq!(number(f64::NAN), Value::Null);
    }

    #[test]
    fn state_roundtrip_is_lossless() {
        let s = SpinState::new(
            Degree::from_doubled(3),
            vec![
                Complex64::new(0.1, -1.0 / 3.0),
                Complex64::new(std::f64::consts::PI, 0.0),
                Complex64::new(-1e-300, 7.0e12),
                Complex64::new(2.0f64.sqrt(), -0.0),
            ],
        )
        .unwrap();
        let file = StateFile::new(s.clone()).with_metadata("source", Value::from("test"));
        let back = StateFile::parse(&file.to_string_pretty()).unwrap();
        assert_eq!(back.state, s);
        assert_eq!(back.metadata["source"], Value::from("test"));
    }

    #[test]
    fn state_rejects_bad_input() {
        assert!(StateFile::parse(r#"{"two_j": 2, "coefficients": [[1, 0]]}"#).is_err());
        assert!(StateFile::parse(r#"{"two_j": 0, "coefficients": [[1]]}"#).is_err());
        assert!(StateFile::parse(r#"{"two_j": 0}"#).is_err());
        assert!(StateFile::parse("not json").is_err());
        assert!(StateFile::parse(r#"{"degree": 0, "coefficients": [[1, 0]]}"#).is_ok());
    }

    #[test]
    fn multipole_roundtrip_and_validation() {
        let mp = MultipoleSet::new(2, vec![UnitVector::PLUS_X, UnitVector::PLUS_Z], -0.75).unwrap();
        let file = MultipoleFile::new(mp.clone()).with_residual("roundtrip", 1.5e-15);
        let back = MultipoleFile::parse(&file.to_string_pretty()).unwrap();
        assert_eq!(back.multipoles, mp);
        assert_eq!(back.residuals["roundtrip"], 1.5e-15);
        let bad = r#"{"degree": 1, "amplitude": 1, "directions": [[1, 1, 0]]}"#;
        assert!(matches!(MultipoleFile::parse(bad), Err(FileError::Invalid(_))));
        let short = r#"{"degree": 2, "amplitude": 1, "directions": [[1, 0, 0]]}"#;
        assert!(MultipoleFile::parse(short).is_err());
    }

    #[test]
    fn input_kind_detection() {
        let s = r#"{"two_j": 0, "coefficients": [[1, 0]]}"#;
        assert!(matches!(InputFile::parse(s).unwrap(), InputFile::State(_)));
        let m = r#"{"degree": 0, "amplitude": 1, "directions": []}"#;
        assert!(matches!(InputFile::parse(m).unwrap(), InputFile::Multipoles(_)));
    }
}
