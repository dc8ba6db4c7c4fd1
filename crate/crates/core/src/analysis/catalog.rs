//! Named states: coherent, NOON, basis states and King constellations.

use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::convert::state_from_constellation;
use crate::error::{Error, Result};
use crate::io::KingFile;
use crate::multipoles::multipoles_from_state;
use crate::spin::{ExtComplex, SpinLabel, SpinState};

/// Threshold below which a multipole counts as absent for anticoherence.
pub const ANTICOHERENCE_TOLERANCE: f64 = 1e-8;

const BUILTIN_KINGS: [(&str, &str); 4] = [
    ("tetrahedron", include_str!("../../data/kings/tetrahedron.json")),
    ("octahedron", include_str!("../../data/kings/octahedron.json")),
    ("cube", include_str!("../../data/kings/cube.json")),
    ("icosahedron", include_str!("../../data/kings/icosahedron.json")),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StateSource {
    Builtin,
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedState {
    pub name: String,
    pub spin: SpinLabel,
    pub source: StateSource,
    pub state: SpinState,
}

/// Names understood by [`catalog_get`].
pub fn catalog_names() -> Vec<String> {
    let mut names = vec!["coherent".to_string(), "coherent(z0)".into(), "noon".into(), "basis(m)".into(), "king".into()];
    names.extend(BUILTIN_KINGS.iter().map(|(n, _)| format!("king:{n}")));
    names
}

/// Looks up a named state.
///
/// * `coherent` or `coherent(z0)` with `z0` like `0.5-1.2i`, `2`, `i` or `inf`
/// * `noon`
/// * `basis(m)` with `m` like `1`, `-3/2`, `S`, `-S`, optionally written `m=…`
/// * `king` (the bundled King for this spin) or `king:<solid>`
pub fn catalog_get(name: &str, spin: SpinLabel) -> Result<NamedState> {
    let name = name.trim();
    let builtin = |state| {
        Ok(NamedState {
            name: name.to_string(),
            spin,
            source: StateSource::Builtin,
            state,
        })
    };
    if name == "noon" {
        return builtin(SpinState::noon(spin));
    }
    if name == "coherent" {
        return builtin(SpinState::coherent(spin, ExtComplex::Finite(Complex64::new(0.0, 0.0))));
    }
    if let Some(arg) = call_argument(name, "coherent") {
        return builtin(SpinState::coherent(spin, parse_extended(arg)?));
    }
    if let Some(arg) = call_argument(name, "basis") {
        let two_m = parse_two_m(arg, spin)?;
        return builtin(SpinState::basis(spin, two_m)?);
    }
    if name == "king" || name.starts_with("king:") {
        let wanted = name.strip_prefix("king:");
        for (solid, text) in BUILTIN_KINGS {
            let file: KingFile = serde_json::from_str(text)?;
            let matches = match wanted {
                Some(w) => w == solid,
                None => file.two_s == spin.two_s(),
            };
            if matches {
                if file.two_s != spin.two_s() {
                    return Err(Error::DimensionMismatch {
                        expected: spin.dim(),
                        found: file.two_s as usize + 1,
                    });
                }
                let state = validate_king(&file)?;
                return Ok(NamedState {
                    name: file.name,
                    spin,
                    source: StateSource::Builtin,
                    state,
                });
            }
        }
    }
    Err(Error::UnknownState(format!("{name} for 2S = {}", spin.two_s())))
}

/// Loads a King file and checks its declared anticoherence order.
pub fn load_king(path: &Path) -> Result<NamedState> {
    let file: KingFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let state = validate_king(&file)?;
    Ok(NamedState {
        name: file.name,
        spin: SpinLabel::new(file.two_s),
        source: StateSource::File(path.to_path_buf()),
        state,
    })
}

/// State of a King file, after checking `ρ_1² … ρ_M² < 1e-8`.
pub fn validate_king(file: &KingFile) -> Result<SpinState> {
    if file.order > file.two_s {
        return Err(Error::OutOfRange(format!("declared order {} for 2S = {}", file.order, file.two_s)));
    }
    let state = state_from_constellation(&file.constellation()?)?;
    let lengths = multipoles_from_state(&state).lengths().to_vec();
    for k in 1..=file.order {
        let value = lengths[k as usize];
        if !(value < ANTICOHERENCE_TOLERANCE) {
            return Err(Error::AnticoherenceViolation {
                name: file.name.clone(),
                order: file.order,
                k,
                value,
                tolerance: ANTICOHERENCE_TOLERANCE,
            });
        }
    }
    Ok(state)
}

/// Largest `M` with `ρ_1² … ρ_M²` all below the anticoherence tolerance.
pub fn anticoherence_order(state: &SpinState) -> u32 {
    multipoles_from_state(state)
        .lengths()
        .iter()
        .skip(1)
        .take_while(|&&v| v < ANTICOHERENCE_TOLERANCE)
        .count() as u32
}

fn call_argument<'a>(name: &'a str, function: &str) -> Option<&'a str> {
    name.strip_prefix(function)?.trim().strip_prefix('(')?.strip_suffix(')').map(str::trim)
}

fn bad(text: &str, what: &str) -> Error {
    Error::InvalidParameter(format!("cannot parse {what} from {text:?}"))
}

/// `a`, `a+bi`, `a-bi`, `bi`, `i`, `inf`.
pub fn parse_extended(text: &str) -> Result<ExtComplex> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if matches!(t.as_str(), "inf" | "infinity" | "∞") {
        return Ok(ExtComplex::Infinity);
    }
    let imag = |s: &str| -> Result<f64> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => s.parse().map_err(|_| bad(text, "a complex number")),
        }
    };
    let Some(body) = t.strip_suffix('i') else {
        return t.parse().map(|re| ExtComplex::Finite(Complex64::new(re, 0.0))).map_err(|_| bad(text, "a complex number"));
    };
    // split at the last sign that is not part of an exponent or the leading sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (
            body[..i].parse::<f64>().map_err(|_| bad(text, "a complex number"))?,
            imag(&body[i..])?,
        ),
        None => (0.0, imag(body)?),
    };
    Ok(ExtComplex::Finite(Complex64::new(re, im)))
}

/// `2m` from `m`, `m=…`, a fraction `p/2`, or `±S`.
pub fn parse_two_m(text: &str, spin: SpinLabel) -> Result<i64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.strip_prefix("m=").unwrap_or(&t);
    let two_s = i64::from(spin.two_s());
    let two_m = match t {
        "S" | "+S" => two_s,
        "-S" => -two_s,
        _ => match t.split_once('/') {
            Some((num, "2")) => num.parse::<i64>().map_err(|_| bad(text, "m"))?,
            Some(_) => return Err(bad(text, "m")),
            None => 2 * t.parse::<i64>().map_err(|_| bad(text, "m"))?,
        },
    };
    Ok(two_m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convert::constellation_from_state;
    use crate::spin::state_equiv;
    use std::f64::consts::PI;

    #[test]
    fn builtin_states() {
        let spin = SpinLabel::new(12);
        let noon = catalog_get("noon", spin).unwrap();
        let stars = constellation_from_state(&noon.state).unwrap();
        assert_eq!(stars.stars().len(), 12);
        assert!(stars.stars().iter().all(|s| (s.theta() - PI / 2.0).abs() < 1e-12));
        let top = catalog_get("basis(m=S)", spin).unwrap();
        assert_eq!(top.state.amps().iter().filter(|a| a.norm() > 0.0).count(), 1);
        assert_eq!(top.state.amp(12).norm(), 1.0);
        let down = catalog_get("basis(-3/2)", SpinLabel::new(3)).unwrap();
        assert_eq!(down.state.amp(-3).norm(), 1.0);
        assert!(catalog_get("basis(1/2)", SpinLabel::new(4)).is_err());
        let coh = catalog_get("coherent(0.5-1.5i)", spin).unwrap();
        let expected = SpinState::coherent(spin, ExtComplex::Finite(Complex64::new(0.5, -1.5)));
        assert!(state_equiv(&coh.state, &expected, 1e-14).unwrap());
        assert!(matches!(catalog_get("squeezed", spin), Err(Error::UnknownState(_))));
    }

    #[test]
    fn complex_parsing() {
        let z = |t| parse_extended(t).unwrap().finite().unwrap();
        assert_eq!(z("2"), Complex64::new(2.0, 0.0));
        assert_eq!(z("-i"), Complex64::new(0.0, -1.0));
        assert_eq!(z("1e-3+2.5i"), Complex64::new(1e-3, 2.5));
        assert_eq!(z("-1.5-2e-1i"), Complex64::new(-1.5, -0.2));
        assert!(parse_extended("inf").unwrap().is_infinite());
        assert!(parse_extended("abc").is_err());
    }

    #[test]
    fn kings_meet_declared_order() {
        for (two_s, order) in [(4, 2), (6, 3), (8, 3), (12, 5)] {
            let spin = SpinLabel::new(two_s);
            let king = catalog_get("king", spin).unwrap();
            assert_eq!(anticoherence_order(&king.state), order, "2S = {two_s}");
            let lengths = multipoles_from_state(&king.state).lengths().to_vec();
            assert!(lengths[order as usize + 1] > 1e-3);
        }
        assert!(catalog_get("king", SpinLabel::new(5)).is_err());
        assert!(catalog_get("king:cube", SpinLabel::new(4)).is_err());
    }

    #[test]
    fn king_file_validation() {
        let dir = tempfile::tempdir().unwrap();
        let mut file: KingFile = serde_json::from_str(BUILTIN_KINGS[1].1).unwrap();
        let good = dir.path().join("oct.json");
        std::fs::write(&good, serde_json::to_string(&file).unwrap()).unwrap();
        let loaded = load_king(&good).unwrap();
        assert_eq!(loaded.source, StateSource::File(good.clone()));
        file.order = 4;
        let bad_path = dir.path().join("bad.json");
        std::fs::write(&bad_path, serde_json::to_string(&file).unwrap()).unwrap();
        assert!(matches!(load_king(&bad_path), Err(Error::AnticoherenceViolation { k: 4, .. })));
    }
}
