//! Side-by-side multipole spectra of named states.

use crate::analysis::catalog::NamedState;
use crate::error::{Error, Result};
use crate::io::{fmt_f64, Csv};
use crate::multipoles::{self, multipoles_from_state};
use crate::spin::SpinLabel;

/// `ρ_K²` for each state, one row per state.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumTable {
    pub spin: SpinLabel,
    pub normalized_excluding_monopole: bool,
    pub rows: Vec<(String, Vec<f64>)>,
}

impl SpectrumTable {
    /// Long format `state,K,rho_sq`.
    pub fn to_csv(&self) -> String {
        let mut csv = Csv::new(&["state", "K", "rho_sq"]);
        for (name, lengths) in &self.rows {
            for (k, v) in lengths.iter().enumerate() {
                csv.row(&[csv_field(name), k.to_string(), fmt_f64(*v)]);
            }
        }
        csv.into_string()
    }
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

/// Spectra of states sharing one spin; optionally rescaled so that the
/// orders `K ≥ 1` add up to one.
pub fn spectrum_report(states: &[NamedState], normalize_excluding_monopole: bool) -> Result<SpectrumTable> {
    let Some(first) = states.first() else {
        return Err(Error::InvalidParameter("empty spectrum report".into()));
    };
    let spin = first.spin;
    let mut rows = Vec::with_capacity(states.len());
    for named in states {
        if named.spin != spin {
            return Err(Error::MixedSpins(spin.two_s(), named.spin.two_s()));
        }
        let lengths = multipoles_from_state(&named.state).lengths().to_vec();
        let lengths = if normalize_excluding_monopole {
            multipoles::normalize_excluding_monopole(&lengths)
        } else {
            lengths
        };
        rows.push((named.name.clone(), lengths));
    }
    Ok(SpectrumTable {
        spin,
        normalized_excluding_monopole: normalize_excluding_monopole,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::catalog::catalog_get;

    #[test]
    fn s6_figure_states() {
        let spin = SpinLabel::new(12);
        let states: Vec<NamedState> = ["coherent", "noon", "king"].iter().map(|n| catalog_get(n, spin).unwrap()).collect();
        let table = spectrum_report(&states, false).unwrap();
        let coherent = &table.rows[0].1;
        assert!((coherent.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let noon = &table.rows[1].1;
        for k in (1..12).step_by(2) {
            assert!(noon[k] < 1e-12);
        }
        let king = &table.rows[2].1;
        assert!(king[1..=5].iter().all(|&v| v < 1e-8));
        assert!(king[6] > 1e-3);
        let normalized = spectrum_report(&states, true).unwrap();
        for (_, row) in &normalized.rows {
            assert_eq!(row[0], 0.0);
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        let csv = table.to_csv();
        assert!(csv.starts_with("state,K,rho_sq\ncoherent,0,"));
        assert_eq!(csv.lines().count(), 1 + 3 * 13);
    }

    #[test]
    fn rejects_mixed_spins() {
        let a = catalog_get("noon", SpinLabel::new(4)).unwrap();
        let b = catalog_get("noon", SpinLabel::new(6)).unwrap();
        assert!(matches!(spectrum_report(&[a, b], false), Err(Error::MixedSpins(4, 6))));
        assert!(spectrum_report(&[], false).is_err());
    }
}
