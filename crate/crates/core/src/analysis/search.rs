//! Random states and the maximal-multipole search.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::convert::{constellation_from_state, state_from_constellation};
use crate::error::{Error, Result};
use crate::io::{ConstellationFile, StateFile};
use crate::multipoles::multipoles_from_state;
use crate::spin::{Constellation, ExtComplex, SpinLabel, SpinState, Star};

/// Measure used to draw random states.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampler {
    /// Haar measure on pure states: normalized complex Gaussian amplitudes.
    #[default]
    Haar,
    /// Every star drawn independently and uniformly on the sphere.
    Stars,
}

impl std::str::FromStr for Sampler {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "haar" => Ok(Sampler::Haar),
            "stars" => Ok(Sampler::Stars),
            other => Err(Error::InvalidParameter(format!("unknown sampler {other:?}"))),
        }
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Haar-random pure state, reproducible from `seed`.
pub fn random_state(spin: SpinLabel, seed: u64) -> SpinState {
    haar_state(spin, &mut stream_rng(seed, 0))
}

pub fn haar_state<R: Rng + ?Sized>(spin: SpinLabel, rng: &mut R) -> SpinState {
    loop {
        let amps: Vec<Complex64> = (0..spin.dim())
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        if let Ok(state) = SpinState::new(spin, amps) {
            return state;
        }
    }
}

/// A uniformly distributed point on the sphere.
pub fn uniform_star<R: Rng + ?Sized>(rng: &mut R) -> Star {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..2.0 * PI);
    Star::from_angles(z.acos(), phi)
}

/// `2S` independent uniform stars.
pub fn random_constellation<R: Rng + ?Sized>(spin: SpinLabel, rng: &mut R) -> Constellation {
    let stars = (0..spin.n_stars()).map(|_| uniform_star(rng)).collect();
    Constellation::new(spin, stars).expect("star count matches spin")
}

/// The `index`-th sample of a search; each index owns its own RNG stream.
pub fn sample_state(spin: SpinLabel, sampler: Sampler, seed: u64, index: u64) -> Result<SpinState> {
    let mut rng = stream_rng(seed, index);
    match sampler {
        Sampler::Haar => Ok(haar_state(spin, &mut rng)),
        Sampler::Stars => state_from_constellation(&random_constellation(spin, &mut rng)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchConfig {
    pub samples: usize,
    pub seed: u64,
    pub sampler: Sampler,
}

/// Where a champion came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "index")]
pub enum Candidate {
    Coherent,
    Noon,
    Sample(u64),
}

/// Best state found for one multipole order.
#[derive(Clone, Debug, PartialEq)]
pub struct Champion {
    pub k: u32,
    pub best_value: f64,
    pub source: Candidate,
    pub best_state: SpinState,
    pub best_constellation: Constellation,
    /// Full spectrum `ρ_0² … ρ_{2S}²` of the champion.
    pub spectrum: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    pub spin: SpinLabel,
    pub samples: usize,
    pub seed: u64,
    pub sampler: Sampler,
    pub per_k: Vec<Champion>,
}

fn candidate_state(spin: SpinLabel, config: &SearchConfig, candidate: Candidate) -> Result<SpinState> {
    match candidate {
        Candidate::Coherent => Ok(SpinState::coherent(spin, ExtComplex::Finite(Complex64::new(0.0, 0.0)))),
        Candidate::Noon => Ok(SpinState::noon(spin)),
        Candidate::Sample(i) => sample_state(spin, config.sampler, config.seed, i),
    }
}

fn lexicographic(a: &SpinState, b: &SpinState) -> Ordering {
    for (x, y) in a.amps().iter().zip(b.amps()) {
        let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

/// Per-order maximum of `ρ_K²` over `n_samples` Haar states plus the
/// coherent and NOON states.
pub fn max_multipole_search(spin: SpinLabel, n_samples: usize, seed: u64) -> Result<SearchResult> {
    max_multipole_search_with(
        spin,
        SearchConfig {
            samples: n_samples,
            seed,
            sampler: Sampler::Haar,
        },
    )
}

pub fn max_multipole_search_with(spin: SpinLabel, config: SearchConfig) -> Result<SearchResult> {
    if config.samples == 0 {
        return Err(Error::InvalidParameter("search needs at least one sample".into()));
    }
    let n_k = spin.two_s() as usize + 1;
    let candidates: Vec<Candidate> = [Candidate::Coherent, Candidate::Noon]
        .into_iter()
        .chain((0..config.samples as u64).map(Candidate::Sample))
        .collect();

    type Best = Vec<Option<(f64, Candidate)>>;
    let better = |value: f64, cand: Candidate, current: Option<(f64, Candidate)>| -> Result<bool> {
        Ok(match current {
            None => true,
            Some((v, c)) => match value.total_cmp(&v) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => {
                    let a = candidate_state(spin, &config, cand)?.fix_phase();
                    let b = candidate_state(spin, &config, c)?.fix_phase();
                    match lexicographic(&a, &b) {
                        Ordering::Less => true,
                        Ordering::Greater => false,
                        Ordering::Equal => cand < c,
                    }
                }
            },
        })
    };
    let merge = |mut best: Best, value: f64, k: usize, cand: Candidate| -> Result<Best> {
        if better(value, cand, best[k])? {
            best[k] = Some((value, cand));
        }
        Ok(best)
    };

    let best: Best = candidates
        .par_iter()
        .map(|&cand| -> Result<(Candidate, Vec<f64>)> {
            let state = candidate_state(spin, &config, cand)?;
            Ok((cand, multipoles_from_state(&state).lengths().to_vec()))
        })
        .try_fold(
            || vec![None; n_k],
            |mut best, item| {
                let (cand, lengths) = item?;
                for (k, &v) in lengths.iter().enumerate() {
                    best = merge(best, v, k, cand)?;
                }
                Ok::<Best, Error>(best)
            },
        )
        .try_reduce(
            || vec![None; n_k],
            |mut a, b| {
                for (k, entry) in b.into_iter().enumerate() {
                    if let Some((v, c)) = entry {
                        a = merge(a, v, k, c)?;
                    }
                }
                Ok(a)
            },
        )?;

    let per_k = best
        .into_iter()
        .enumerate()
        .map(|(k, entry)| {
            let (value, source) = entry.expect("every order sees the injected states");
            let state = candidate_state(spin, &config, source)?;
            let spectrum = multipoles_from_state(&state).lengths().to_vec();
            Ok(Champion {
                k: k as u32,
                best_value: value,
                source,
                best_constellation: constellation_from_state(&state)?,
                best_state: state,
                spectrum,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SearchResult {
        spin,
        samples: config.samples,
        seed: config.seed,
        sampler: config.sampler,
        per_k,
    })
}

/// JSON layout of a [`SearchResult`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResultFile {
    pub two_s: u32,
    pub samples: usize,
    pub seed: u64,
    pub sampler: Sampler,
    pub champions: Vec<ChampionFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChampionFile {
    #[serde(rename = "K")]
    pub k: u32,
    pub best_value: f64,
    pub source: Candidate,
    pub state: StateFile,
    pub constellation: ConstellationFile,
    pub spectrum: Vec<f64>,
}

impl From<&SearchResult> for SearchResultFile {
    fn from(r: &SearchResult) -> Self {
        Self {
            two_s: r.spin.two_s(),
            samples: r.samples,
            seed: r.seed,
            sampler: r.sampler,
            champions: r
                .per_k
                .iter()
                .map(|c| ChampionFile {
                    k: c.k,
                    best_value: c.best_value,
                    source: c.source,
                    state: StateFile::from(&c.best_state),
                    constellation: ConstellationFile::from(&c.best_constellation),
                    spectrum: c.spectrum.clone(),
                })
                .collect(),
        }
    }
}
