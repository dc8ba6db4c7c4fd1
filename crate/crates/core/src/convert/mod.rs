//! Constellation ↔ state conversions, stellar-polynomial evaluation and the
//! Husimi function.
//!
//! The stellar polynomial of `ψ` is `f(z) = Σ_k 𝔣_k z^k` with
//! `𝔣_k = √C(2S, k)·ψ_{k−S}`. Its roots are the star coordinates; a degree
//! drop of `d` means `d` stars at the south pole. Going the other way, Vieta's
//! formulas give `𝔣_k = (−1)^{r−k}·L·e_{r−k}(ζ)` for the `r` finite stars,
//! where the leading coefficient `L > 0` is fixed by normalization.

pub mod roots;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::spin::{binomial_f64, Constellation, ExtComplex, RotationSU2, SpinLabel, SpinState, Star};
use crate::sympoly::elementary_from_roots;

/// Relative size below which a stellar coefficient counts as zero.
pub const DEGREE_DROP_TOLERANCE: f64 = 1e-12;

/// Stars with `|ζ|` above this trigger the conditioning rotation.
pub const CONDITIONING_THRESHOLD: f64 = 1e3;

/// Options for the conversions.
#[derive(Clone, Copy, Debug)]
pub struct ConvertOptions {
    /// Work in a tilted frame whenever a star lies close to, but not at, the
    /// south pole.
    pub condition_south_pole: bool,
}

impl Default for ConvertOptions {
    fn default() -> Self {
        Self {
            condition_south_pole: true,
        }
    }
}

fn conditioning_rotation() -> RotationSU2 {
    RotationSU2::from_axis_angle([0.0, 1.0, 0.0], std::f64::consts::FRAC_PI_2)
}

/// The stellar polynomial of a state.
#[derive(Clone, Debug, PartialEq)]
pub struct StellarPoly {
    spin: SpinLabel,
    coeffs: Vec<Complex64>,
}

impl StellarPoly {
    pub fn from_state(state: &SpinState) -> Self {
        let n = state.spin().two_s();
        let coeffs = state
            .amps()
            .iter()
            .enumerate()
            .map(|(k, a)| a * binomial_f64(n, k as u32).sqrt())
            .collect();
        Self {
            spin: state.spin(),
            coeffs,
        }
    }

    pub fn spin(&self) -> SpinLabel {
        self.spin
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Back to amplitudes, normalized.
    pub fn to_state(&self) -> Result<SpinState> {
        let n = self.spin.two_s();
        let amps = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c / binomial_f64(n, k as u32).sqrt())
            .collect();
        SpinState::new(self.spin, amps)
    }

    /// Horner evaluation of `Σ 𝔣_k z^k`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// Degree after dropping negligible top coefficients.
    pub fn effective_degree(&self) -> Option<usize> {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if !(scale > 0.0) {
            return None;
        }
        self.coeffs
            .iter()
            .rposition(|c| c.norm() > DEGREE_DROP_TOLERANCE * scale)
    }

    /// Polynomial of the state whose stars are those of `self` moved by
    /// `rotation`: `f'(z) = Σ_k 𝔣_k (ᾱz − β̄)^k (βz + α)^{2S−k}`.
    pub fn rotate(&self, rotation: &RotationSU2) -> StellarPoly {
        let n = self.spin.n_stars();
        let (a, b) = (rotation.alpha(), rotation.beta());
        let numer = [-b.conj(), a.conj()];
        let denom = [a, b];
        let numer_powers = linear_powers(numer, n);
        let denom_powers = linear_powers(denom, n);
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c.norm() == 0.0 {
                continue;
            }
            let p = &numer_powers[k];
            let q = &denom_powers[n - k];
            for (i, pi) in p.iter().enumerate() {
                let cp = c * pi;
                for (j, qj) in q.iter().enumerate() {
                    out[i + j] += cp * qj;
                }
            }
        }
        StellarPoly {
            spin: self.spin,
            coeffs: out,
        }
    }
}

/// Coefficient lists of `(l[0] + l[1] z)^j` for `j = 0 … n`.
fn linear_powers(l: [Complex64; 2], n: usize) -> Vec<Vec<Complex64>> {
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(vec![Complex64::new(1.0, 0.0)]);
    for j in 1..=n {
        let prev: &Vec<Complex64> = &powers[j - 1];
        let mut next = vec![Complex64::new(0.0, 0.0); j + 1];
        for (i, c) in prev.iter().enumerate() {
            next[i] += c * l[0];
            next[i + 1] += c * l[1];
        }
        powers.push(next);
    }
    powers
}

/// See [`StellarPoly::eval`].
pub fn stellar_eval(p: &StellarPoly, z: Complex64) -> Complex64 {
    p.eval(z)
}

/// SU(2) image of a state: rigidly rotates its constellation by `rotation`.
pub fn rotate_state(state: &SpinState, rotation: &RotationSU2) -> SpinState {
    StellarPoly::from_state(state)
        .rotate(rotation)
        .to_state()
        .expect("rotation is unitary")
}

/// Vieta route from stars to amplitudes, with default options.
pub fn state_from_constellation(c: &Constellation) -> Result<SpinState> {
    state_from_constellation_with(c, ConvertOptions::default())
}

pub fn state_from_constellation_with(c: &Constellation, options: ConvertOptions) -> Result<SpinState> {
    Constellation::new(c.spin(), c.stars().to_vec())?;
    let needs_conditioning = options.condition_south_pole
        && c.stars()
            .iter()
            .any(|s| s.zeta().finite().is_some_and(|z| z.norm() > CONDITIONING_THRESHOLD));
    if needs_conditioning {
        let r = conditioning_rotation();
        let rotated = vieta_state(&c.rotate(&r))?;
        return Ok(rotate_state(&rotated, &r.inverse()).fix_phase());
    }
    vieta_state(c)
}

fn vieta_state(c: &Constellation) -> Result<SpinState> {
    let spin = c.spin();
    let n = spin.two_s();
    let finite = c.finite_zetas();
    let r = finite.len();
    let e = elementary_from_roots(&finite);
    let mut amps = vec![Complex64::new(0.0, 0.0); spin.dim()];
    for k in 0..=r {
        let sign = if (r - k) % 2 == 0 { 1.0 } else { -1.0 };
        amps[k] = e.get(r - k) * sign / binomial_f64(n, k as u32).sqrt();
    }
    // dividing by the norm is the normalization of the leading coefficient
    SpinState::new(spin, amps).map(SpinState::fix_phase)
}

/// Stars of a state: roots of the stellar polynomial plus `2S − r` stars at
/// the south pole for a degree-`r` polynomial.
pub fn constellation_from_state(state: &SpinState) -> Result<Constellation> {
    constellation_from_state_with(state, ConvertOptions::default())
}

pub fn constellation_from_state_with(state: &SpinState, options: ConvertOptions) -> Result<Constellation> {
    let poly = StellarPoly::from_state(state);
    let degree = poly.effective_degree().ok_or(Error::ZeroState)?;
    let stars = stars_of(&poly)?;
    let near_south = stars
        .iter()
        .any(|s| s.zeta().finite().is_some_and(|z| z.norm() > CONDITIONING_THRESHOLD));
    // coefficients under the drop tolerance that are not exactly zero belong
    // to stars close to, but not at, the south pole
    let dropped_nonzero = poly.coeffs()[degree + 1..].iter().any(|c| c.norm() > 0.0);
    if !(options.condition_south_pole && (near_south || dropped_nonzero)) {
        return Constellation::new(state.spin(), stars);
    }
    // exact zeros on top stay exact stars at infinity; the rest is solved in
    // whichever tilted frame leaves its leading coefficient largest
    let exact = poly.coeffs().iter().rposition(|c| c.norm() > 0.0).ok_or(Error::ZeroState)?;
    let finite_part = StellarPoly {
        spin: SpinLabel::new(exact as u32),
        coeffs: poly.coeffs()[..=exact].to_vec(),
    };
    let (rotation, rotated) = conditioning_rotations()
        .into_iter()
        .map(|r| (r, finite_part.rotate(&r)))
        .max_by(|a, b| leading_ratio(&a.1).total_cmp(&leading_ratio(&b.1)))
        .expect("candidate rotations");
    let back = rotation.inverse();
    let mut stars: Vec<Star> = stars_of(&rotated)?.iter().map(|s| back.apply_star(s)).collect();
    stars.extend(std::iter::repeat_n(Star::south(), poly.spin().n_stars() - exact));
    Constellation::new(state.spin(), stars)
}

/// Quarter turns about ±x and ±y: one of them keeps every star well away
/// from the south pole.
fn conditioning_rotations() -> Vec<RotationSU2> {
    let quarter = std::f64::consts::FRAC_PI_2;
    [[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [-1.0, 0.0, 0.0]]
        .into_iter()
        .map(|axis| RotationSU2::from_axis_angle(axis, quarter))
        .collect()
}

fn leading_ratio(poly: &StellarPoly) -> f64 {
    let scale = poly.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    poly.coeffs.last().map_or(0.0, |c| c.norm() / scale)
}

fn stars_of(poly: &StellarPoly) -> Result<Vec<Star>> {
    let degree = poly.effective_degree().ok_or(Error::ZeroState)?;
    let found = roots::find_roots(&poly.coeffs()[..=degree]);
    let mut stars: Vec<Star> = found.roots.into_iter().map(Star::from_complex).collect();
    stars.extend(std::iter::repeat_n(Star::south(), poly.spin().n_stars() - degree));
    Ok(stars)
}

/// `ln Q` at the sphere point with stereographic coordinate `z`, where
/// `Q = |f(z*)|² / (1 + |z|²)^{2S} = |⟨z|ψ⟩|²`.
fn ln_husimi(poly: &StellarPoly, z: ExtComplex) -> f64 {
    let n = poly.spin().n_stars();
    let two_s = n as f64;
    match z {
        ExtComplex::Infinity => 2.0 * poly.coeffs()[n].norm().ln(),
        ExtComplex::Finite(z) if z.norm() <= 1.0 => {
            2.0 * poly.eval(z.conj()).norm().ln() - two_s * z.norm_sqr().ln_1p()
        }
        ExtComplex::Finite(z) => {
            // f(z*) = z*^{2S} g(1/z*) with g the reversed polynomial
            let w = z.conj().inv();
            let g = poly
                .coeffs()
                .iter()
                .fold(Complex64::new(0.0, 0.0), |acc, c| acc * w + c);
            2.0 * g.norm().ln() - two_s * w.norm_sqr().ln_1p()
        }
    }
}

/// Husimi function on a list of sphere points.
pub fn husimi(state: &SpinState, grid: &[Star]) -> Vec<f64> {
    let poly = StellarPoly::from_state(state);
    grid.par_iter().map(|s| ln_husimi(&poly, s.zeta()).exp()).collect()
}

/// Equiangular grid, row-major in θ: `θ_i = π i/(n_θ − 1)`, `φ_j = 2π j/n_φ`.
pub fn equiangular_grid(n_theta: usize, n_phi: usize) -> Vec<Star> {
    let mut grid = Vec::with_capacity(n_theta * n_phi);
    for i in 0..n_theta {
        let theta = if n_theta > 1 {
            std::f64::consts::PI * i as f64 / (n_theta - 1) as f64
        } else {
            0.0
        };
        for j in 0..n_phi {
            let phi = std::f64::consts::TAU * j as f64 / n_phi as f64;
            grid.push(Star::from_angles(theta, phi));
        }
    }
    grid
}
