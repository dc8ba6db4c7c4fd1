//! State multipoles `ρ_Kq = Tr(ρ T_Kq†)`, their lengths `ρ_K²`, closed forms
//! for coherent and NOON states, Stokes moments from the stars, and the
//! star-addition formula.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::angular::{cg_bands, clebsch_gordan, factorial, CGKey};
use crate::convert::state_from_constellation;
use crate::error::{Error, Result};
use crate::spin::{binomial_f64, Constellation, RotationSU2, SpinLabel, SpinState};
use crate::sympoly::elementary_from_roots;

/// Multipole components and lengths of a pure state.
#[derive(Clone, Debug, PartialEq)]
pub struct MultipoleSpectrum {
    spin: SpinLabel,
    /// `rho[K][q + K]`
    rho: Vec<Vec<Complex64>>,
    lengths: Vec<f64>,
}

impl MultipoleSpectrum {
    pub fn spin(&self) -> SpinLabel {
        self.spin
    }

    /// `ρ_Kq`; panics outside `0 ≤ K ≤ 2S`, `|q| ≤ K`.
    pub fn get(&self, k: u32, q: i32) -> Complex64 {
        self.rho[k as usize][(q + k as i32) as usize]
    }

    /// `ρ_K² = Σ_q |ρ_Kq|²` for `K = 0 … 2S`.
    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    /// Iterates over `(K, q, ρ_Kq)`.
    pub fn components(&self) -> impl Iterator<Item = (u32, i32, Complex64)> + '_ {
        self.rho.iter().enumerate().flat_map(|(k, row)| {
            row.iter()
                .enumerate()
                .map(move |(i, &v)| (k as u32, i as i32 - k as i32, v))
        })
    }

    /// `|1 − Σ_K ρ_K²|`.
    pub fn sum_rule_error(&self) -> f64 {
        (1.0 - self.lengths.iter().sum::<f64>()).abs()
    }

    /// `max |ρ_{K,−q} − (−1)^q ρ*_{Kq}|`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (k, q, v) in self.components() {
            let sign = if q.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            worst = worst.max((self.get(k, -q) - v.conj() * sign).norm());
        }
        worst
    }

    /// `|ρ_00 − 1/√(2S+1)|`.
    pub fn monopole_error(&self) -> f64 {
        (self.get(0, 0) - Complex64::new(1.0 / (self.spin.dim() as f64).sqrt(), 0.0)).norm()
    }

    /// Lengths for `K ≥ 1` rescaled to add up to one (the monopole is set to 0).
    pub fn lengths_excluding_monopole(&self) -> Vec<f64> {
        normalize_excluding_monopole(&self.lengths)
    }
}

/// Rescales `lengths[1..]` to unit sum and zeroes `lengths[0]`.
pub fn normalize_excluding_monopole(lengths: &[f64]) -> Vec<f64> {
    let rest: f64 = lengths.iter().skip(1).sum();
    lengths
        .iter()
        .enumerate()
        .map(|(k, &v)| if k == 0 || rest == 0.0 { 0.0 } else { v / rest })
        .collect()
}

/// Band-wise multipoles:
/// `ρ_Kq = √((2K+1)/(2S+1)) Σ_m C^{S,m+q}_{S m,K q} ψ_{m+q} ψ*_m`.
pub fn multipoles_from_state(state: &SpinState) -> MultipoleSpectrum {
    let spin = state.spin();
    let n = spin.two_s();
    let dim = spin.dim();
    let psi = state.amps();
    let bands = cg_bands(spin);
    let mut rho: Vec<Vec<Complex64>> = (0..=n)
        .map(|k| vec![Complex64::new(0.0, 0.0); 2 * k as usize + 1])
        .collect();
    for q in -(n as i32)..=(n as i32) {
        // products along the q-th diagonal of |ψ⟩⟨ψ|
        let products: Vec<Complex64> = (0..dim)
            .map(|k| {
                let out = k as i32 + q;
                if out < 0 || out >= dim as i32 {
                    Complex64::new(0.0, 0.0)
                } else {
                    psi[out as usize] * psi[k].conj()
                }
            })
            .collect();
        if products.iter().all(|p| p.norm() == 0.0) {
            continue;
        }
        for k in q.unsigned_abs()..=n {
            let band = bands.band(k, q);
            let sum: Complex64 = band.iter().zip(&products).map(|(c, p)| p * *c).sum();
            let pref = ((2 * k + 1) as f64 / dim as f64).sqrt();
            rho[k as usize][(q + k as i32) as usize] = sum * pref;
        }
    }
    let lengths = rho.iter().map(|row| row.iter().map(|v| v.norm_sqr()).sum()).collect();
    let spectrum = MultipoleSpectrum { spin, rho, lengths };
    record_audit(&spectrum);
    spectrum
}

static AUDIT_COUNT: AtomicU64 = AtomicU64::new(0);
static AUDIT_SUM_RULE: AtomicU64 = AtomicU64::new(0);
static AUDIT_HERMITICITY: AtomicU64 = AtomicU64::new(0);

/// Worst invariant violations over every spectrum computed in this process.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumAudit {
    pub count: u64,
    pub worst_sum_rule: f64,
    pub worst_hermiticity: f64,
}

fn record_audit(spectrum: &MultipoleSpectrum) {
    // non-negative floats order like their bit patterns
    AUDIT_SUM_RULE.fetch_max(spectrum.sum_rule_error().to_bits(), Ordering::Relaxed);
    AUDIT_HERMITICITY.fetch_max(spectrum.hermiticity_error().to_bits(), Ordering::Relaxed);
    AUDIT_COUNT.fetch_add(1, Ordering::Relaxed);
}

pub fn spectrum_audit() -> SpectrumAudit {
    SpectrumAudit {
        count: AUDIT_COUNT.load(Ordering::Relaxed),
        worst_sum_rule: f64::from_bits(AUDIT_SUM_RULE.load(Ordering::Relaxed)),
        worst_hermiticity: f64::from_bits(AUDIT_HERMITICITY.load(Ordering::Relaxed)),
    }
}

/// Multipoles of the state carried by a constellation.
pub fn multipoles_from_constellation(c: &Constellation) -> Result<MultipoleSpectrum> {
    Ok(multipoles_from_state(&state_from_constellation(c)?))
}

/// `ln n!`, summed with compensation and tabulated.
pub fn ln_factorial(n: usize) -> f64 {
    static TABLE: OnceLock<RwLock<Vec<f64>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| RwLock::new(vec![0.0]));
    if let Some(&v) = table.read().expect("ln factorial table poisoned").get(n) {
        return v;
    }
    let mut t = table.write().expect("ln factorial table poisoned");
    // Kahan summation of ln 1 + ln 2 + …, restarted from scratch to keep
    // the compensation term
    let target = (n + 1).max(2 * t.len());
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    t.clear();
    t.push(0.0);
    for i in 1..target {
        let y = (i as f64).ln() - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        t.push(sum);
    }
    t[n]
}

fn check_k(spin: SpinLabel, k: u32) -> Result<()> {
    if k > spin.two_s() {
        return Err(Error::OutOfRange(format!("K = {k} for 2S = {}", spin.two_s())));
    }
    Ok(())
}

/// `ρ²_{K,coh} = (2K+1)(2S)!² / ((2S−K)!(2S+K+1)!)`, evaluated in log space.
pub fn coherent_multipole_closed_form(spin: SpinLabel, k: u32) -> Result<f64> {
    check_k(spin, k)?;
    Ok(ln_coherent_multipole(spin, k).exp())
}

/// Natural log of [`coherent_multipole_closed_form`].
pub fn ln_coherent_multipole(spin: SpinLabel, k: u32) -> f64 {
    let n = spin.n_stars();
    let k = k as usize;
    ((2 * k + 1) as f64).ln() + 2.0 * ln_factorial(n) - ln_factorial(n - k) - ln_factorial(n + k + 1)
}

/// Exact rational value of the coherent closed form.
pub fn coherent_multipole_exact(spin: SpinLabel, k: u32) -> Result<BigRational> {
    check_k(spin, k)?;
    let n = spin.n_stars();
    let k = k as usize;
    let fact = factorial(n);
    let num = BigUint::from(2 * k + 1) * &fact * &fact;
    let den = factorial(n - k) * factorial(n + k + 1);
    Ok(BigRational::new(num.into(), den.into()))
}

/// Whole coherent spectrum `K = 0 … 2S`.
pub fn coherent_spectrum(spin: SpinLabel) -> Vec<f64> {
    (0..=spin.two_s())
        .map(|k| ln_coherent_multipole(spin, k).exp())
        .collect()
}

/// `ρ²_{2S}` of the NOON state: `1/2 + 1/C(4S, 2S)` for integer S, `1/2` otherwise.
pub fn noon_last_multipole(spin: SpinLabel) -> f64 {
    if spin.is_integer() {
        let n = spin.n_stars();
        let ln_binom = ln_factorial(2 * n) - 2.0 * ln_factorial(n);
        0.5 + (-ln_binom).exp()
    } else {
        0.5
    }
}

pub fn noon_last_multipole_exact(spin: SpinLabel) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if spin.is_integer() {
        let n = spin.n_stars();
        let binom = factorial(2 * n) / (factorial(n) * factorial(n));
        half + BigRational::new(BigInt::one(), binom.into())
    } else {
        half
    }
}

/// Exact lengths of the basis state `|S, m⟩`: `ρ_K² = (2K+1)/(2S+1)·|C^{S m}_{S m,K 0}|²`.
pub fn basis_state_lengths_exact(spin: SpinLabel, two_m: i32) -> Result<Vec<BigRational>> {
    if spin.index_of_two_m(i64::from(two_m)).is_none() {
        return Err(Error::OutOfRange(format!("2m = {two_m} for 2S = {}", spin.two_s())));
    }
    let dim = BigInt::from(spin.dim());
    Ok((0..=spin.two_s())
        .map(|k| {
            let cg = clebsch_gordan(CGKey::new(spin, two_m, k, 0)).signed_square.abs();
            BigRational::new(BigInt::from(2 * k + 1), dim.clone()) * cg
        })
        .collect())
}

/// Options for the Stokes moments.
#[derive(Clone, Copy, Debug)]
pub struct StokesOptions {
    /// Accept stars at the south pole (the moment formula is then taken over
    /// the reduced-degree polynomial).
    pub allow_infinite: bool,
}

impl Default for StokesOptions {
    fn default() -> Self {
        Self { allow_infinite: true }
    }
}

/// `⟨S_z^n⟩ = |𝔣_{2S}|² Σ_m (m−S)^n C(2S,m)^{−1} |e_{2S−m}|²` from the stars.
pub fn stokes_moment_z(c: &Constellation, n: u32) -> Result<f64> {
    stokes_moment_z_with(c, n, StokesOptions::default())
}

pub fn stokes_moment_z_with(c: &Constellation, n: u32, options: StokesOptions) -> Result<f64> {
    let infinite = c.n_infinite();
    if infinite > 0 && !options.allow_infinite {
        return Err(Error::StarAtInfinity);
    }
    let spin = c.spin();
    let two_s = spin.two_s();
    let finite = c.finite_zetas();
    let r = finite.len();
    let e = elementary_from_roots(&finite);
    // |𝔣_k|² ∝ |e_{r−k}|², k ≤ r; scaled by the largest term to avoid overflow
    let weights: Vec<f64> = (0..=r)
        .map(|k| e.get(r - k).norm_sqr() / binomial_f64(two_s, k as u32))
        .collect();
    let total: f64 = weights.iter().sum();
    let s = spin.s();
    let moment: f64 = weights
        .iter()
        .enumerate()
        .map(|(k, w)| (k as f64 - s).powi(n as i32) * w)
        .sum();
    Ok(moment / total)
}

/// `(⟨S_x⟩, ⟨S_y⟩, ⟨S_z⟩)` by rigidly rotating each axis onto z.
pub fn stokes_vector(c: &Constellation) -> Result<[f64; 3]> {
    // a star at u carries spin along (−u_x, u_y, u_z); pull the matching
    // star-space direction onto +z
    let star_dirs = [[-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let mut out = [0.0; 3];
    for (slot, dir) in out.iter_mut().zip(star_dirs) {
        let r = RotationSU2::aligning(dir, [0.0, 0.0, 1.0]);
        *slot = stokes_moment_z(&c.rotate(&r), 1)?;
    }
    Ok(out)
}

/// Multipole lengths after adding a star at `zeta_new` to `2S − 1` stars at
/// the north pole; `spin` is the spin after the addition.
///
/// `ρ_K² = c(K,S)[4S² + 4S|ζ|² + ((K²+K−2S)²/4S²)|ζ|⁴]`,
/// `c(K,S) = (2K+1)(2S−1)!²|ψ_S|⁴ / ((2S−K)!(2S+K+1)!)`.
pub fn star_addition_update(spin: SpinLabel, zeta_new: Complex64) -> Result<Vec<f64>> {
    let two_s = spin.two_s();
    if two_s < 1 {
        return Err(Error::InvalidParameter("star addition needs 2S ≥ 1".into()));
    }
    let s = spin.s();
    let n = two_s as usize;
    let r2 = zeta_new.norm_sqr();
    // |ψ_S|² = 1 / (1 + |ζ|²/2S)
    let ln_psi4 = -2.0 * (r2 / f64::from(two_s)).ln_1p();
    Ok((0..=two_s)
        .map(|k| {
            let kf = f64::from(k);
            let ku = k as usize;
            let ln_c = (2.0 * kf + 1.0).ln() + 2.0 * ln_factorial(n - 1) + ln_psi4
                - ln_factorial(n - ku)
                - ln_factorial(n + ku + 1);
            let bracket = 4.0 * s * s + 4.0 * s * r2 + (kf * kf + kf - 2.0 * s).powi(2) / (4.0 * s * s) * r2 * r2;
            ln_c.exp() * bracket
        })
        .collect())
}

/// `|Σ_j u_j|` over the star unit vectors, written through the stereographic
/// constraints `Σ ζ/(1+|ζ|²) = 0` and `Σ (1−|ζ|²)/(1+|ζ|²) = 0`.
pub fn one_design_residual(c: &Constellation) -> f64 {
    let mut planar = Complex64::new(0.0, 0.0);
    let mut polar = 0.0;
    for star in c.stars() {
        match star.zeta().finite() {
            Some(z) => {
                let d = 1.0 + z.norm_sqr();
                planar += z / d;
                polar += (1.0 - z.norm_sqr()) / d;
            }
            None => polar -= 1.0,
        }
    }
    // ζ/(1+|ζ|²) = ½ sinθ e^{−iφ}
    ((2.0 * planar).norm_sqr() + polar * polar).sqrt()
}

/// `ρ_1² = 3|⟨S⟩|² / (S(S+1)(2S+1))` for a pure state.
pub fn dipole_from_spin_vector(spin: SpinLabel, v: [f64; 3]) -> f64 {
    let s = spin.s();
    3.0 * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]) / (s * (s + 1.0) * (2.0 * s + 1.0))
}

/// Exact sum `Σ_K` of a list of rationals; handy for sum-rule checks.
pub fn exact_sum(values: &[BigRational]) -> BigRational {
    values.iter().fold(BigRational::zero(), |acc, v| acc + v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular::tensor_operator;
    use crate::spin::{ExtComplex, Star};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn noon_constellation(spin: SpinLabel) -> Constellation {
        let s = spin.s();
        Constellation::from_zetas((1..=spin.n_stars()).map(|j| ExtComplex::Finite(Complex64::from_polar(1.0, PI * j as f64 / s))))
    }

    fn sample_state(spin: SpinLabel, seed: u64) -> SpinState {
        // deterministic, irregular amplitudes
        let amps = (0..spin.dim())
            .map(|k| {
                let x = ((k as u64 + 1) * 2654435761 + seed * 40503) % 1000;
                let y = ((k as u64 + 7) * 97 + seed * 131) % 1000;
                c(x as f64 / 1000.0 - 0.5, y as f64 / 1000.0 - 0.5)
            })
            .collect();
        SpinState::new(spin, amps).unwrap()
    }

    #[test]
    fn matches_trace_definition() {
        for two_s in 1..=8u32 {
            let spin = SpinLabel::new(two_s);
            let psi = sample_state(spin, u64::from(two_s));
            let v = nalgebra::DVector::from_column_slice(psi.amps());
            let rho = &v * v.adjoint();
            let spec = multipoles_from_state(&psi);
            for (k, q, value) in spec.components() {
                let t = tensor_operator(spin, k, q).unwrap();
                let expected = crate::angular::hs_inner(&rho, &t.matrix);
                assert!((value - expected).norm() < 1e-12, "K={k} q={q}");
            }
            assert!(spec.sum_rule_error() < 1e-12);
            assert!(spec.hermiticity_error() < 1e-12);
            assert!(spec.monopole_error() < 1e-12);
        }
    }

    #[test]
    fn basis_states_only_have_q_zero() {
        let spin = SpinLabel::new(5);
        for two_m in (-5..=5).step_by(2) {
            let spec = multipoles_from_state(&SpinState::basis(spin, two_m).unwrap());
            for (_, q, v) in spec.components() {
                if q != 0 {
                    assert_eq!(v, c(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn coherent_closed_form_examples() {
        assert_abs_diff_eq!(coherent_multipole_closed_form(SpinLabel::new(1), 1).unwrap(), 0.5, epsilon = 1e-15);
        for two_s in 0..30 {
            let spin = SpinLabel::new(two_s);
            assert_abs_diff_eq!(
                coherent_multipole_closed_form(spin, 0).unwrap(),
                1.0 / spin.dim() as f64,
                epsilon = 1e-14
            );
        }
        assert!(coherent_multipole_closed_form(SpinLabel::new(3), 4).is_err());
        let exact = coherent_multipole_exact(SpinLabel::new(1), 1).unwrap();
        assert_eq!(exact, BigRational::new(1.into(), 2.into()));
        let total = exact_sum(&(0..=20).map(|k| coherent_multipole_exact(SpinLabel::new(20), k).unwrap()).collect::<Vec<_>>());
        assert_eq!(total, BigRational::one());
    }

    #[test]
    fn coherent_pipeline_matches_closed_form() {
        for two_s in 1..=12u32 {
            let spin = SpinLabel::new(two_s);
            for z0 in [c(0.0, 0.0), c(0.5, -1.5), c(3.0, 0.2)] {
                let spec = multipoles_from_state(&SpinState::coherent(spin, z0.into()));
                for k in 0..=two_s {
                    let expected = coherent_multipole_closed_form(spin, k).unwrap();
                    assert!((spec.lengths()[k as usize] - expected).abs() < 1e-12);
                }
            }
            let exact = basis_state_lengths_exact(spin, two_s as i32).unwrap();
            for k in 0..=two_s {
                assert_eq!(exact[k as usize], coherent_multipole_exact(spin, k).unwrap());
            }
        }
    }

    #[test]
    fn noon_examples() {
        assert_abs_diff_eq!(noon_last_multipole(SpinLabel::new(2)), 2.0 / 3.0, epsilon = 1e-15);
        assert_eq!(noon_last_multipole(SpinLabel::new(3)), 0.5);
        let s60 = noon_last_multipole_exact(SpinLabel::new(120)) - BigRational::new(1.into(), 2.into());
        assert!(s60.is_positive());
        assert!(s60 < BigRational::new(1.into(), BigInt::from(10).pow(30)));
        for two_s in 1..=12u32 {
            let spin = SpinLabel::new(two_s);
            let spec = multipoles_from_state(&SpinState::noon(spin));
            let coh = coherent_spectrum(spin);
            for k in 1..two_s as usize {
                if k % 2 == 1 {
                    assert!(spec.lengths()[k] < 1e-14);
                } else {
                    assert_abs_diff_eq!(spec.lengths()[k], coh[k], epsilon = 1e-13);
                }
            }
            assert_abs_diff_eq!(spec.lengths()[two_s as usize], noon_last_multipole(spin), epsilon = 1e-13);
            // order-2S symmetry about z: only q ≡ 0 mod 2S survives
            for (_, q, v) in spec.components() {
                if q.rem_euclid(two_s as i32) != 0 {
                    assert!(v.norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn stokes_examples() {
        let spin = SpinLabel::new(4);
        let north = Constellation::new(spin, vec![Star::north(); 4]).unwrap();
        assert_abs_diff_eq!(stokes_moment_z(&north, 1).unwrap(), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(stokes_moment_z(&north, 0).unwrap(), 1.0, epsilon = 1e-15);
        let noon = noon_constellation(spin);
        assert_abs_diff_eq!(stokes_moment_z(&noon, 1).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(stokes_moment_z(&noon, 2).unwrap(), 4.0, epsilon = 1e-13);
        let v = stokes_vector(&noon).unwrap();
        assert!(v.iter().all(|x| x.abs() < 1e-12));
        let v = stokes_vector(&north).unwrap();
        assert_abs_diff_eq!(v[2], 2.0, epsilon = 1e-12);
        let east = Constellation::new(spin, vec![Star::from_complex(c(1.0, 0.0)); 4]).unwrap();
        let v = stokes_vector(&east).unwrap();
        assert_abs_diff_eq!(v[0], -2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v[1], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v[2], 0.0, epsilon = 1e-12);
        let with_south = Constellation::new(spin, vec![Star::south(), Star::north(), Star::north(), Star::north()]).unwrap();
        assert!(matches!(
            stokes_moment_z_with(&with_south, 1, StokesOptions { allow_infinite: false }),
            Err(Error::StarAtInfinity)
        ));
        let psi = state_from_constellation(&with_south).unwrap();
        assert_abs_diff_eq!(stokes_moment_z(&with_south, 3).unwrap(), psi.sz_moment(3), epsilon = 1e-12);
    }

    #[test]
    fn stokes_vector_matches_amplitudes_and_dipole() {
        for two_s in 1..=7u32 {
            let spin = SpinLabel::new(two_s);
            let psi = sample_state(spin, 11 + u64::from(two_s));
            let cst = crate::convert::constellation_from_state(&psi).unwrap();
            let v = stokes_vector(&cst).unwrap();
            let direct = psi.spin_expectation();
            for i in 0..3 {
                assert_abs_diff_eq!(v[i], direct[i], epsilon = 1e-9);
            }
            let spec = multipoles_from_state(&psi);
            assert_abs_diff_eq!(spec.lengths()[1], dipole_from_spin_vector(spin, direct), epsilon = 1e-12);
        }
    }

    #[test]
    fn star_addition_examples() {
        for two_s in 1..=6u32 {
            let spin = SpinLabel::new(two_s);
            let at_zero = star_addition_update(spin, c(0.0, 0.0)).unwrap();
            for (k, v) in at_zero.iter().enumerate() {
                assert_abs_diff_eq!(*v, coherent_multipole_closed_form(spin, k as u32).unwrap(), epsilon = 1e-14);
            }
            for zeta in [c(1.0, 0.0), c(-0.3, 0.8), c(1e3, 0.0)] {
                let mut stars = vec![Star::north(); two_s as usize - 1];
                stars.push(Star::from_complex(zeta));
                let pipeline = multipoles_from_constellation(&Constellation::new(spin, stars).unwrap()).unwrap();
                let formula = star_addition_update(spin, zeta).unwrap();
                for (a, b) in formula.iter().zip(pipeline.lengths()) {
                    assert_abs_diff_eq!(*a, *b, epsilon = 1e-10);
                }
            }
        }
        assert!(star_addition_update(SpinLabel::new(0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn one_design_examples() {
        for two_s in 1..=10u32 {
            let spin = SpinLabel::new(two_s);
            if two_s >= 2 {
                assert!(one_design_residual(&noon_constellation(spin)) < 1e-12);
            }
            for star in [Star::north(), Star::south(), Star::from_angles(1.1, 2.3)] {
                let coh = Constellation::new(spin, vec![star; two_s as usize]).unwrap();
                assert_abs_diff_eq!(one_design_residual(&coh), f64::from(two_s), epsilon = 1e-12);
            }
        }
        let pair = Constellation::from_stars(vec![Star::from_angles(0.7, 1.0), Star::from_angles(PI - 0.7, 1.0 + PI)]);
        assert!(one_design_residual(&pair) < 1e-12);
        let poles = Constellation::from_stars(vec![Star::north(), Star::south()]);
        assert!(one_design_residual(&poles) < 1e-15);
    }

    #[test]
    fn normalization_excluding_monopole() {
        let spec = multipoles_from_state(&SpinState::noon(SpinLabel::new(6)));
        let n = spec.lengths_excluding_monopole();
        assert_eq!(n[0], 0.0);
        assert_abs_diff_eq!(n.iter().sum::<f64>(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn ln_factorial_table() {
        assert_eq!(ln_factorial(0), 0.0);
        assert_abs_diff_eq!(ln_factorial(5), 120f64.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(ln_factorial(170), crate::angular::ratio_to_f64(&factorial(170), &BigUint::one()).ln(), epsilon = 1e-11);
    }
}
