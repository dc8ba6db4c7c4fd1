//! Command-line front end.
//!
//! `run` returns the process exit code: 0 on success, 1 when the inputs are
//! well-formed but fail a domain check, 2 on a usage error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use crate::analysis::catalog::{catalog_get, catalog_names, load_king};
use crate::analysis::search::{max_multipole_search_with, Sampler, SearchConfig, SearchResultFile};
use crate::angular::{clebsch_gordan, CGKey};
use crate::convert::{constellation_from_state, equiangular_grid, husimi, state_from_constellation};
use crate::error::{Error, Result};
use crate::io::{constellation_to_json, fmt_f64, read_document, state_to_json, to_json, write_atomic, Csv, Document};
use crate::multipoles::{basis_state_lengths_exact, coherent_multipole_exact, multipoles_from_state, normalize_excluding_monopole};
use crate::spin::{SpinLabel, SpinState};
use crate::transitions::{transition_sweep, TransitionKind};

#[derive(Debug, Parser)]
#[command(name = "majorana", version, about = "Majorana constellations and state multipoles of spin-S states")]
struct Cli {
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Use big-rational factorial ratios where supported.
    #[arg(long, global = true)]
    exact: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Representation {
    State,
    Constellation,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Ring,
    Spread,
    SpreadSym,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SamplerArg {
    Haar,
    Stars,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert between amplitude and constellation JSON.
    Convert {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        to: Representation,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multipole lengths of a state or constellation as CSV.
    Spectrum {
        #[arg(long = "in")]
        input: PathBuf,
        /// Drop the monopole and rescale the rest to unit sum.
        #[arg(long)]
        normalize_excluding_monopole: bool,
        /// Also write the components `K,q,re,im` to this file.
        #[arg(long)]
        components: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Husimi function on an equiangular θ×φ grid as CSV.
    Husimi {
        #[arg(long = "in")]
        input: PathBuf,
        /// `N_THETAxN_PHI`
        #[arg(long, default_value = "181x360", value_parser = parse_grid)]
        grid: (usize, usize),
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multipole sweep along a constellation family.
    Transition {
        #[arg(long)]
        kind: Kind,
        #[arg(long)]
        two_s: u32,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest multipole per order over random states.
    Search {
        #[arg(long)]
        two_s: u32,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "haar")]
        sampler: SamplerArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Clebsch-Gordan coefficients `⟨S m; K q|S m+q⟩` for one spin.
    CgTable {
        #[arg(long)]
        two_s: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Named states (coherent, NOON, basis, King) as JSON.
    Catalog {
        /// Catalog entry, e.g. `noon`, `coherent(0.5-1i)`, `basis(m=S)`, `king`.
        #[arg(long, required_unless_present_any = ["list", "king_file"])]
        name: Option<String>,
        #[arg(long, required_unless_present_any = ["list", "king_file"])]
        two_s: Option<u32>,
        /// Load and validate a King constellation file instead.
        #[arg(long, conflicts_with = "name")]
        king_file: Option<PathBuf>,
        #[arg(long, default_value = "state")]
        to: Representation,
        /// List the known names.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Error::InvalidParameter(e.to_string())),
        },
        None => execute(&cli),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn check_input(path: &Path) -> Result<()> {
    if !path.is_file() {
        return Err(Error::InvalidParameter(format!("input {} is not a readable file", path.display())));
    }
    Ok(())
}

fn check_output(path: Option<&Path>) -> Result<()> {
    if let Some(p) = path {
        let dir = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
        if !dir.is_dir() {
            return Err(Error::InvalidParameter(format!("output directory {} does not exist", dir.display())));
        }
    }
    Ok(())
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_state(input: &Path) -> Result<SpinState> {
    match read_document(input)? {
        Document::State(s) => Ok(s),
        Document::Constellation(c) => state_from_constellation(&c),
    }
}

fn execute(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Convert { input, to, out } => {
            check_input(input)?;
            check_output(out.as_deref())?;
            let doc = read_document(input)?;
            let text = match (doc, to) {
                (Document::State(s), Representation::Constellation) => constellation_to_json(&constellation_from_state(&s)?),
                (Document::State(s), Representation::State) => state_to_json(&s),
                (Document::Constellation(c), Representation::State) => state_to_json(&state_from_constellation(&c)?),
                (Document::Constellation(c), Representation::Constellation) => constellation_to_json(&c),
            };
            emit(out.as_deref(), &text)
        }
        Command::Spectrum {
            input,
            normalize_excluding_monopole: normalize,
            components,
            out,
        } => {
            check_input(input)?;
            check_output(out.as_deref())?;
            if let Some(path) = components {
                check_output(Some(path))?;
            }
            let state = load_state(input)?;
            if let Some(path) = components {
                write_atomic(path, components_csv(&state).as_bytes())?;
            }
            emit(out.as_deref(), &spectrum_csv(&state, *normalize, cli.exact)?)
        }
        Command::Husimi { input, grid, out } => {
            check_input(input)?;
            check_output(out.as_deref())?;
            let (n_theta, n_phi) = *grid;
            let state = load_state(input)?;
            let points = equiangular_grid(n_theta, n_phi);
            let q = husimi(&state, &points);
            let mut csv = Csv::new(&["theta", "phi", "Q"]);
            for (idx, value) in q.iter().enumerate() {
                let (i, j) = (idx / n_phi, idx % n_phi);
                let theta = if n_theta > 1 { std::f64::consts::PI * i as f64 / (n_theta - 1) as f64 } else { 0.0 };
                let phi = std::f64::consts::TAU * j as f64 / n_phi as f64;
                csv.row(&[fmt_f64(theta), fmt_f64(phi), fmt_f64(*value)]);
            }
            emit(out.as_deref(), csv.as_str())
        }
        Command::Transition { kind, two_s, samples, out } => {
            check_output(out.as_deref())?;
            let kind = match kind {
                Kind::Ring => TransitionKind::Ring,
                Kind::Spread => TransitionKind::SpreadUnidirectional,
                Kind::SpreadSym => TransitionKind::SpreadSymmetric,
            };
            let rows = transition_sweep(kind, SpinLabel::new(*two_s), *samples)?;
            let mut csv = Csv::new(&["param", "K", "rho_sq_pipeline", "rho_sq_closed_form"]);
            for r in rows {
                csv.row(&[
                    fmt_f64(r.parameter),
                    r.k.to_string(),
                    fmt_f64(r.pipeline),
                    r.closed_form.map(fmt_f64).unwrap_or_default(),
                ]);
            }
            emit(out.as_deref(), csv.as_str())
        }
        Command::Search {
            two_s,
            samples,
            seed,
            sampler,
            out,
        } => {
            check_output(out.as_deref())?;
            let config = SearchConfig {
                samples: *samples,
                seed: *seed,
                sampler: match sampler {
                    SamplerArg::Haar => Sampler::Haar,
                    SamplerArg::Stars => Sampler::Stars,
                },
            };
            let result = max_multipole_search_with(SpinLabel::new(*two_s), config)?;
            emit(out.as_deref(), &to_json(&SearchResultFile::from(&result)))
        }
        Command::CgTable { two_s, out } => {
            check_output(out.as_deref())?;
            emit(out.as_deref(), &cg_table_csv(SpinLabel::new(*two_s), cli.exact))
        }
        Command::Catalog {
            name,
            two_s,
            king_file,
            to,
            list,
            out,
        } => {
            check_output(out.as_deref())?;
            if *list {
                return emit(out.as_deref(), &(catalog_names().join("\n") + "\n"));
            }
            let named = match (king_file, name, two_s) {
                (Some(path), _, _) => {
                    check_input(path)?;
                    load_king(path)?
                }
                (None, Some(name), Some(two_s)) => catalog_get(name, SpinLabel::new(*two_s))?,
                _ => return Err(Error::InvalidParameter("catalog needs --name and --two-s".into())),
            };
            let text = match to {
                Representation::State => state_to_json(&named.state),
                Representation::Constellation => constellation_to_json(&constellation_from_state(&named.state)?),
            };
            emit(out.as_deref(), &text)
        }
    }
}

/// `N_THETAxN_PHI`, both at least 1.
fn parse_grid(text: &str) -> std::result::Result<(usize, usize), String> {
    let bad = || format!("grid {text:?} is not of the form 181x360");
    let (a, b) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || b == 0 {
        return Err(bad());
    }
    Ok((a, b))
}

/// Exact lengths when the state is a coherent state or a basis state.
fn exact_lengths(state: &SpinState) -> Result<Option<Vec<BigRational>>> {
    let spin = state.spin();
    let nonzero: Vec<usize> = (0..spin.dim()).filter(|&k| state.amps()[k].norm() > 0.0).collect();
    if let [k] = nonzero[..] {
        let two_m = 2 * k as i32 - spin.two_s() as i32;
        return basis_state_lengths_exact(spin, two_m).map(Some);
    }
    // |⟨S⟩| = S only for coherent states
    let v = state.spin_expectation();
    let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if (spin.s() - norm).abs() <= 1e-12 * spin.s().max(1.0) {
        return (0..=spin.two_s()).map(|k| coherent_multipole_exact(spin, k)).collect::<Result<_>>().map(Some);
    }
    Ok(None)
}

fn spectrum_csv(state: &SpinState, normalize: bool, exact: bool) -> Result<String> {
    let lengths = multipoles_from_state(state).lengths().to_vec();
    let lengths = if normalize { normalize_excluding_monopole(&lengths) } else { lengths };
    let exact_values = if exact && !normalize { exact_lengths(state)? } else { None };
    let mut header = vec!["K", "rho_sq"];
    if exact {
        header.push("rho_sq_exact");
    }
    let mut csv = Csv::new(&header);
    for (k, v) in lengths.iter().enumerate() {
        let mut row = vec![k.to_string(), fmt_f64(*v)];
        if exact {
            row.push(exact_values.as_ref().map(|e| e[k].to_string()).unwrap_or_default());
        }
        csv.row(&row);
    }
    Ok(csv.into_string())
}

fn components_csv(state: &SpinState) -> String {
    let mut csv = Csv::new(&["K", "q", "re", "im"]);
    for (k, q, value) in multipoles_from_state(state).components() {
        csv.row(&[k.to_string(), q.to_string(), fmt_f64(value.re), fmt_f64(value.im)]);
    }
    csv.into_string()
}

fn cg_table_csv(spin: SpinLabel, exact: bool) -> String {
    let mut header = vec!["two_s", "two_m", "two_k", "two_q", "value"];
    if exact {
        header.push("signed_square");
    }
    let mut csv = Csv::new(&header);
    let two_s = spin.two_s() as i32;
    for k in 0..=spin.two_s() {
        for q in -(k as i32)..=(k as i32) {
            for two_m in (-two_s..=two_s).step_by(2) {
                if (two_m + 2 * q).abs() > two_s {
                    continue;
                }
                let cg = clebsch_gordan(CGKey::new(spin, two_m, k, q));
                let mut row = vec![
                    two_s.to_string(),
                    two_m.to_string(),
                    (2 * k).to_string(),
                    (2 * q).to_string(),
                    fmt_f64(cg.float_value),
                ];
                if exact {
                    row.push(cg.signed_square.to_string());
                }
                csv.row(&row);
            }
        }
    }
    csv.into_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("181x360").unwrap(), (181, 360));
        assert_eq!(parse_grid("2X3").unwrap(), (2, 3));
        assert!(parse_grid("0x3").is_err());
        assert!(parse_grid("181").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["majorana"]), 2);
        assert_eq!(run(["majorana", "frobnicate"]), 2);
        assert_eq!(run(["majorana", "transition", "--kind", "zigzag", "--two-s", "2"]), 2);
        assert_eq!(run(["majorana", "--help"]), 0);
    }

    #[test]
    fn cg_table_rows() {
        let csv = cg_table_csv(SpinLabel::new(1), true);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "two_s,two_m,two_k,two_q,value,signed_square");
        // K = 0: two rows, K = 1: q = −1, 0, 1 with 1, 2, 1 rows
        assert_eq!(lines.len(), 1 + 2 + 4);
        assert!(lines.contains(&"1,-1,2,2,-8.1649658092772603e-1,-2/3"));
    }

    #[test]
    fn exact_spectrum_for_coherent_and_basis() {
        let spin = SpinLabel::new(2);
        let coh = SpinState::coherent(spin, crate::spin::ExtComplex::Finite(num_complex::Complex64::new(0.3, 0.4)));
        let csv = spectrum_csv(&coh, false, true).unwrap();
        assert!(csv.lines().nth(1).unwrap().ends_with(",1/3"));
        assert!(csv.lines().nth(3).unwrap().ends_with(",1/6"));
        let basis = SpinState::basis(spin, 0).unwrap();
        let csv = spectrum_csv(&basis, false, true).unwrap();
        assert!(csv.lines().nth(2).unwrap().ends_with(",0"));
        let noon = SpinState::noon(spin);
        assert!(spectrum_csv(&noon, false, true).unwrap().lines().nth(1).unwrap().ends_with(','));
    }
}
