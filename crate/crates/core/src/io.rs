//! File formats: JSON for states, constellations, King data and search
//! results; CSV for sweeps and grids. Every write goes through a temporary
//! file in the target directory followed by a rename.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use tempfile::NamedTempFile;

use crate::error::{Error, Result};
use crate::spin::{Constellation, SpinLabel, SpinState, Star};

/// Normalization tolerance applied to amplitude files.
pub const FILE_NORM_TOLERANCE: f64 = 1e-9;

/// `{"two_s": int, "amps": [[re, im], …]}`, basis order `m = −S … S`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub two_s: u32,
    pub amps: Vec<[f64; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StarFile {
    pub theta: f64,
    pub phi: f64,
}

/// `{"two_s": int, "stars": [{"theta": …, "phi": …}, …]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstellationFile {
    pub two_s: u32,
    pub stars: Vec<StarFile>,
}

/// A King constellation with its declared anticoherence order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KingFile {
    pub name: String,
    pub two_s: u32,
    pub order: u32,
    pub stars: Vec<StarFile>,
}

impl From<&SpinState> for StateFile {
    fn from(state: &SpinState) -> Self {
        Self {
            two_s: state.spin().two_s(),
            amps: state.amps().iter().map(|a| [a.re, a.im]).collect(),
        }
    }
}

impl StateFile {
    pub fn to_state(&self) -> Result<SpinState> {
        let amps = self.amps.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        SpinState::from_normalized(SpinLabel::new(self.two_s), amps, FILE_NORM_TOLERANCE)
    }
}

fn stars_to_file(stars: &[Star]) -> Vec<StarFile> {
    stars
        .iter()
        .map(|s| StarFile {
            theta: s.theta(),
            phi: s.phi(),
        })
        .collect()
}

fn stars_from_file(stars: &[StarFile]) -> Result<Vec<Star>> {
    stars
        .iter()
        .map(|s| {
            if !(0.0..=std::f64::consts::PI).contains(&s.theta) || !s.phi.is_finite() {
                return Err(Error::OutOfRange(format!("star angles ({}, {})", s.theta, s.phi)));
            }
            Ok(Star::from_angles(s.theta, s.phi))
        })
        .collect()
}

impl From<&Constellation> for ConstellationFile {
    fn from(c: &Constellation) -> Self {
        Self {
            two_s: c.spin().two_s(),
            stars: stars_to_file(c.stars()),
        }
    }
}

impl ConstellationFile {
    pub fn to_constellation(&self) -> Result<Constellation> {
        Constellation::new(SpinLabel::new(self.two_s), stars_from_file(&self.stars)?)
    }
}

impl KingFile {
    pub fn constellation(&self) -> Result<Constellation> {
        Constellation::new(SpinLabel::new(self.two_s), stars_from_file(&self.stars)?)
    }
}

/// Contents of a JSON input that may hold either representation.
#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    State(SpinState),
    Constellation(Constellation),
}

/// Parses a state (`amps`) or constellation (`stars`) document.
pub fn parse_document(text: &str) -> Result<Document> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("amps").is_some() {
        let file: StateFile = serde_json::from_value(value)?;
        Ok(Document::State(file.to_state()?))
    } else if value.get("stars").is_some() {
        let file: ConstellationFile = serde_json::from_value(value)?;
        Ok(Document::Constellation(file.to_constellation()?))
    } else {
        Err(Error::InvalidParameter("document has neither \"amps\" nor \"stars\"".into()))
    }
}

pub fn read_document(path: &Path) -> Result<Document> {
    parse_document(&fs::read_to_string(path)?)
}

pub fn read_state(path: &Path) -> Result<SpinState> {
    let file: StateFile = serde_json::from_str(&fs::read_to_string(path)?)?;
    file.to_state()
}

pub fn read_constellation(path: &Path) -> Result<Constellation> {
    let file: ConstellationFile = serde_json::from_str(&fs::read_to_string(path)?)?;
    file.to_constellation()
}

pub fn state_to_json(state: &SpinState) -> String {
    to_json(&StateFile::from(state))
}

pub fn constellation_to_json(c: &Constellation) -> String {
    to_json(&ConstellationFile::from(c))
}

/// Pretty JSON with a trailing newline. Floats use the shortest
/// representation that parses back to the same bits.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("plain data serializes");
    text.push('\n');
    text
}

/// Writes through a temporary sibling file and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// A float with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Minimal CSV table builder.
#[derive(Clone, Debug, Default)]
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut text = header.join(",");
        text.push('\n');
        Self { text }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.text.push_str(&fields.join(","));
        self.text.push('\n');
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn into_string(self) -> String {
        self.text
    }
}
