//! JSON file formats and canonical serialization.
//!
//! Canonical output has sorted object keys and no insignificant whitespace,
//! so equal values always produce identical bytes.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::construct::{BuildMode, Parameters, StackedSpec, UniversalLineSequence};
use crate::error::{Error, Result};
use crate::exact::Vector;
use crate::flats::Flat;
use crate::lines::OrientedLine;
use crate::points::PointSequence;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointFile {
    pub d: usize,
    pub points: Vec<Vector>,
}

impl PointFile {
    pub fn into_sequence(self) -> Result<PointSequence> {
        PointSequence::new(self.d, self.points)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineFile {
    pub d: usize,
    #[serde(default = "default_oriented")]
    pub oriented: bool,
    pub lines: Vec<OrientedLine>,
}

fn default_oriented() -> bool {
    true
}

impl LineFile {
    pub fn new(d: usize, lines: Vec<OrientedLine>) -> Self {
        LineFile {
            d,
            oriented: true,
            lines,
        }
    }

    /// Checks dimensions and nonzero directions.
    pub fn validate(&self) -> Result<()> {
        for l in &self.lines {
            OrientedLine::new(l.a.clone(), l.v.clone())?;
            if l.dim() != self.d {
                return Err(Error::DimensionMismatch {
                    expected: self.d,
                    got: l.dim(),
                });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatFile {
    pub d: usize,
    pub k: usize,
    pub flats: Vec<Flat>,
}

impl FlatFile {
    pub fn validate(&self) -> Result<()> {
        for f in &self.flats {
            Flat::new(f.a.clone(), f.basis.clone())?;
            if f.dim() != self.d {
                return Err(Error::DimensionMismatch {
                    expected: self.d,
                    got: f.dim(),
                });
            }
            if f.k() != self.k {
                return Err(Error::InvalidParameter(format!(
                    "flat of dimension {} in a file declaring k = {}",
                    f.k(),
                    self.k
                )));
            }
        }
        Ok(())
    }
}

/// Sidecar written next to a constructed line sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub spec: StackedSpec,
    pub mode: BuildMode,
    pub parameters: Parameters,
    pub verified: bool,
}

impl Manifest {
    pub fn of(seq: &UniversalLineSequence) -> Self {
        Manifest {
            spec: seq.spec.clone(),
            mode: seq.mode,
            parameters: seq.parameters.clone(),
            verified: seq.verified,
        }
    }
}

pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    serde_json::to_string(&v).map_err(|e| Error::Parse(e.to_string()))
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    from_json(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Writes canonical JSON followed by a newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = to_canonical_json(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactScalar;

    #[test]
    fn keys_are_sorted_and_compact() {
        let f = LineFile::new(
            2,
            vec![OrientedLine::new(
                Vector::new(vec![ExactScalar::ratio(1, 2), ExactScalar::from(-3)]),
                Vector::from_ints(&[0, 1]),
            )
            .unwrap()],
        );
        let s = to_canonical_json(&f).unwrap();
        assert_eq!(s, r#"{"d":2,"lines":[{"a":["1/2","-3"],"v":["0","1"]}],"oriented":true}"#);
        let back: LineFile = from_json(&s).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn flats_use_capital_b() {
        let text = r#"{"d":3,"k":1,"flats":[{"a":["0","0","0"],"B":[["1","0","0"]]}]}"#;
        let f: FlatFile = from_json(text).unwrap();
        f.validate().unwrap();
        assert!(to_canonical_json(&f).unwrap().contains(r#""B":[["1","0","0"]]"#));
    }

    #[test]
    fn bad_scalar_is_a_parse_error() {
        let r: Result<PointFile> = from_json(r#"{"d":1,"points":[["1/0"]]}"#);
        assert!(matches!(r, Err(Error::Parse(_))));
    }

    #[test]
    fn zero_direction_rejected() {
        let f: LineFile =
            from_json(r#"{"d":2,"oriented":true,"lines":[{"a":["0","0"],"v":["0","0"]}]}"#).unwrap();
        assert!(f.validate().is_err());
    }
}
