//! Spin labels, pure states, Majorana stars and rigid rotations.
//!
//! Stereographic convention used throughout the crate:
//! `ζ = tan(θ/2)·e^{−iφ}`, with the south pole (θ = π) sent to the point at
//! infinity. Basis ordering is `k = S + m` ascending, so `amps[0]` is the
//! `m = −S` amplitude.

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on Σ|ψ|² accepted by constructors that do not renormalize.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Chordal tolerance used by [`Constellation::approx_eq`] when none is given.
pub const STAR_MATCH_TOLERANCE: f64 = 1e-8;

/// A spin quantum number stored as `2S` so half-integers stay exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinLabel {
    two_s: u32,
}

impl SpinLabel {
    pub const fn new(two_s: u32) -> Self {
        Self { two_s }
    }

    pub fn two_s(self) -> u32 {
        self.two_s
    }

    /// `S` as a float.
    pub fn s(self) -> f64 {
        f64::from(self.two_s) / 2.0
    }

    /// Hilbert-space dimension `2S + 1`.
    pub fn dim(self) -> usize {
        self.two_s as usize + 1
    }

    /// Number of Majorana stars, `2S`.
    pub fn n_stars(self) -> usize {
        self.two_s as usize
    }

    pub fn is_integer(self) -> bool {
        self.two_s % 2 == 0
    }

    /// Magnetic quantum number `m = k − S` of basis index `k`.
    pub fn m_of(self, k: usize) -> f64 {
        k as f64 - self.s()
    }

    /// Basis index of doubled magnetic number `2m`, if it is valid for this spin.
    pub fn index_of_two_m(self, two_m: i64) -> Option<usize> {
        let two_s = i64::from(self.two_s);
        if two_m.abs() > two_s || (two_m + two_s) % 2 != 0 {
            return None;
        }
        Some(((two_m + two_s) / 2) as usize)
    }
}

impl fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.two_s / 2)
        } else {
            write!(f, "{}/2", self.two_s)
        }
    }
}

/// A normalized pure spin-S state in the `|S, m⟩` basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinState {
    spin: SpinLabel,
    amps: Vec<Complex64>,
}

impl SpinState {
    /// Builds a state, normalizing the amplitudes.
    pub fn new(spin: SpinLabel, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != spin.dim() {
            return Err(Error::DimensionMismatch {
                expected: spin.dim(),
                found: amps.len(),
            });
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::ZeroState);
        }
        let amps = amps.into_iter().map(|a| a / norm).collect();
        Ok(Self { spin, amps })
    }

    /// Builds a state from amplitudes that must already be normalized within
    /// `tolerance`; a residual above rounding level is then removed.
    pub fn from_normalized(spin: SpinLabel, amps: Vec<Complex64>, tolerance: f64) -> Result<Self> {
        if amps.len() != spin.dim() {
            return Err(Error::DimensionMismatch {
                expected: spin.dim(),
                found: amps.len(),
            });
        }
        let deviation = 1.0 - amps.iter().map(|a| a.norm_sqr()).sum::<f64>();
        if !(deviation.abs() <= tolerance) {
            return Err(Error::NotNormalized {
                deviation,
                tolerance,
            });
        }
        if deviation.abs() <= 4.0 * f64::EPSILON * spin.dim() as f64 {
            return Ok(Self { spin, amps });
        }
        Self::new(spin, amps)
    }

    /// The basis state `|S, m⟩` with `m = two_m / 2`.
    pub fn basis(spin: SpinLabel, two_m: i64) -> Result<Self> {
        let k = spin
            .index_of_two_m(two_m)
            .ok_or_else(|| Error::OutOfRange(format!("2m = {two_m} for 2S = {}", spin.two_s())))?;
        let mut amps = vec![Complex64::new(0.0, 0.0); spin.dim()];
        amps[k] = Complex64::new(1.0, 0.0);
        Ok(Self { spin, amps })
    }

    /// Spin coherent state `|z₀⟩ ∝ exp(z₀ S₊)|S, −S⟩`; its single star sits at
    /// `ζ = −1/z₀` with multiplicity 2S.
    pub fn coherent(spin: SpinLabel, z0: ExtComplex) -> Self {
        let n = spin.two_s();
        let amps = match z0 {
            ExtComplex::Infinity => {
                let mut a = vec![Complex64::new(0.0, 0.0); spin.dim()];
                a[n as usize] = Complex64::new(1.0, 0.0);
                a
            }
            ExtComplex::Finite(z) => {
                let scale = (1.0 + z.norm_sqr()).powf(-spin.s());
                let mut power = Complex64::new(1.0, 0.0);
                (0..=n)
                    .map(|k| {
                        let a = power * binomial_f64(n, k).sqrt() * scale;
                        power *= z;
                        a
                    })
                    .collect()
            }
        };
        Self::new(spin, amps).expect("coherent amplitudes are nonzero")
    }

    /// `(|S, S⟩ − |S, −S⟩)/√2`.
    pub fn noon(spin: SpinLabel) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); spin.dim()];
        let h = std::f64::consts::FRAC_1_SQRT_2;
        amps[spin.n_stars()] += Complex64::new(h, 0.0);
        amps[0] -= Complex64::new(h, 0.0);
        Self::new(spin, amps).expect("noon amplitudes are nonzero")
    }

    pub fn spin(&self) -> SpinLabel {
        self.spin
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    /// Amplitude `ψ_m` for `m = two_m / 2`; zero outside the valid range.
    pub fn amp(&self, two_m: i64) -> Complex64 {
        self.spin
            .index_of_two_m(two_m)
            .map_or(Complex64::new(0.0, 0.0), |k| self.amps[k])
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &SpinState) -> Result<Complex64> {
        if self.spin != other.spin {
            return Err(Error::DimensionMismatch {
                expected: self.spin.dim(),
                found: other.spin.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Multiplies by the global phase that makes the highest nonzero amplitude
    /// real and positive.
    pub fn fix_phase(mut self) -> Self {
        let scale = self.amps.iter().map(|a| a.norm()).fold(0.0, f64::max);
        if let Some(top) = self
            .amps
            .iter()
            .rev()
            .find(|a| a.norm() > 1e-12 * scale)
            .copied()
        {
            let phase = top.conj() / top.norm();
            for a in &mut self.amps {
                *a *= phase;
            }
        }
        self
    }

    /// `⟨S_z^n⟩` computed directly from the amplitudes.
    pub fn sz_moment(&self, n: u32) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(k, a)| self.spin.m_of(k).powi(n as i32) * a.norm_sqr())
            .sum()
    }

    /// `(⟨S_x⟩, ⟨S_y⟩, ⟨S_z⟩)` from the ladder-operator matrix elements.
    pub fn spin_expectation(&self) -> [f64; 3] {
        let s = self.spin.s();
        // ⟨S₊⟩ = Σ_m √(S(S+1) − m(m+1)) ψ*_{m+1} ψ_m
        let mut plus = Complex64::new(0.0, 0.0);
        for k in 0..self.amps.len().saturating_sub(1) {
            let m = self.spin.m_of(k);
            let c = (s * (s + 1.0) - m * (m + 1.0)).sqrt();
            plus += self.amps[k + 1].conj() * self.amps[k] * c;
        }
        [plus.re, plus.im, self.sz_moment(1)]
    }
}

/// Projective equality: `|⟨a|b⟩| > 1 − tol`.
pub fn state_equiv(a: &SpinState, b: &SpinState, tol: f64) -> Result<bool> {
    Ok(a.inner(b)?.norm() > 1.0 - tol)
}

/// A point of the extended complex plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtComplex {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            ExtComplex::Finite(z) => Some(z),
            ExtComplex::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtComplex::Infinity)
    }

    pub fn conj(self) -> Self {
        match self {
            ExtComplex::Finite(z) => ExtComplex::Finite(z.conj()),
            ExtComplex::Infinity => ExtComplex::Infinity,
        }
    }
}

impl From<Complex64> for ExtComplex {
    fn from(z: Complex64) -> Self {
        ExtComplex::Finite(z)
    }
}

/// One Majorana star, kept both as angles and as its stereographic image.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Star {
    theta: f64,
    phi: f64,
    zeta: ExtComplex,
}

impl Star {
    pub fn north() -> Self {
        Self::from_zeta(ExtComplex::Finite(Complex64::new(0.0, 0.0)))
    }

    pub fn south() -> Self {
        Self::from_zeta(ExtComplex::Infinity)
    }

    /// Star at polar angle `theta ∈ [0, π]` and azimuth `phi` (any real, reduced
    /// mod 2π; set to 0 at the poles).
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let theta = theta.clamp(0.0, PI);
        if theta == PI {
            return Self::south();
        }
        let mut phi = normalize_angle(phi);
        if theta == 0.0 {
            phi = 0.0;
        }
        let r = (theta / 2.0).tan();
        let zeta = ExtComplex::Finite(Complex64::from_polar(r, -phi));
        Self { theta, phi, zeta }
    }

    /// Inverse stereographic projection: `θ = 2·atan|ζ|`, `φ = −arg ζ`.
    pub fn from_zeta(zeta: ExtComplex) -> Self {
        match zeta {
            ExtComplex::Infinity => Self {
                theta: PI,
                phi: 0.0,
                zeta,
            },
            ExtComplex::Finite(z) => {
                let r = z.norm();
                if !r.is_finite() {
                    return Self::south();
                }
                let theta = 2.0 * r.atan();
                let phi = if r == 0.0 { 0.0 } else { normalize_angle(-z.arg()) };
                Self { theta, phi, zeta }
            }
        }
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::from_zeta(ExtComplex::Finite(z))
    }

    /// Star at the direction of `v` (need not be normalized).
    pub fn from_vector(v: [f64; 3]) -> Self {
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let z = (v[2] / r).clamp(-1.0, 1.0);
        let rho = v[0].hypot(v[1]) / r;
        if rho == 0.0 {
            return if z > 0.0 { Self::north() } else { Self::south() };
        }
        // tan(θ/2) = ρ / (1 + z) is accurate away from the south pole,
        // (1 − z) / ρ away from the north pole
        let half_tan = if z >= 0.0 { rho / (1.0 + z) } else { (1.0 - z) / rho };
        let phi = normalize_angle(v[1].atan2(v[0]));
        let theta = 2.0 * half_tan.atan();
        Self {
            theta,
            phi,
            zeta: ExtComplex::Finite(Complex64::from_polar(half_tan, -phi)),
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn zeta(&self) -> ExtComplex {
        self.zeta
    }

    pub fn is_south_pole(&self) -> bool {
        self.zeta.is_infinite()
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Euclidean distance between the two points on the unit sphere.
    pub fn chordal(&self, other: &Star) -> f64 {
        let a = self.unit_vector();
        let b = other.unit_vector();
        ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
    }
}

/// See [`Star::from_zeta`].
pub fn stereographic_to_sphere(zeta: ExtComplex) -> Star {
    Star::from_zeta(zeta)
}

fn normalize_angle(phi: f64) -> f64 {
    let p = phi.rem_euclid(TAU);
    if p >= TAU {
        0.0
    } else {
        p
    }
}

/// The unordered multiset of 2S stars of a spin-S state.
#[derive(Clone, Debug, PartialEq)]
pub struct Constellation {
    spin: SpinLabel,
    stars: Vec<Star>,
}

impl Constellation {
    pub fn new(spin: SpinLabel, stars: Vec<Star>) -> Result<Self> {
        if stars.len() != spin.n_stars() {
            return Err(Error::StarCount {
                two_s: spin.two_s(),
                found: stars.len(),
            });
        }
        Ok(Self { spin, stars })
    }

    /// Constellation whose spin is fixed by the number of stars.
    pub fn from_stars(stars: Vec<Star>) -> Self {
        Self {
            spin: SpinLabel::new(stars.len() as u32),
            stars,
        }
    }

    pub fn from_zetas(zetas: impl IntoIterator<Item = ExtComplex>) -> Self {
        Self::from_stars(zetas.into_iter().map(Star::from_zeta).collect())
    }

    pub fn spin(&self) -> SpinLabel {
        self.spin
    }

    pub fn stars(&self) -> &[Star] {
        &self.stars
    }

    pub fn finite_zetas(&self) -> Vec<Complex64> {
        self.stars.iter().filter_map(|s| s.zeta.finite()).collect()
    }

    pub fn n_infinite(&self) -> usize {
        self.stars.iter().filter(|s| s.is_south_pole()).count()
    }

    /// Applies the rotation to every star.
    pub fn rotate(&self, rotation: &RotationSU2) -> Constellation {
        Self {
            spin: self.spin,
            stars: self.stars.iter().map(|s| rotation.apply_star(s)).collect(),
        }
    }

    /// Largest chordal distance between paired stars under the best pairing
    /// found; `f64::INFINITY` for mismatched spins.
    pub fn match_distance(&self, other: &Constellation) -> f64 {
        if self.spin != other.spin {
            return f64::INFINITY;
        }
        if self.stars.is_empty() {
            return 0.0;
        }
        let cost: Vec<Vec<f64>> = self
            .stars
            .iter()
            .map(|a| other.stars.iter().map(|b| a.chordal(b)).collect())
            .collect();
        let (greedy, ambiguous) = greedy_pairing(&cost, STAR_MATCH_TOLERANCE);
        if !ambiguous && greedy <= STAR_MATCH_TOLERANCE {
            return greedy;
        }
        let assignment = crate::matching::min_cost_assignment(&cost);
        let optimal = assignment
            .iter()
            .enumerate()
            .map(|(i, &j)| cost[i][j])
            .fold(0.0, f64::max);
        greedy.min(optimal)
    }

    /// Multiset equality up to chordal distance `tol` per star.
    pub fn approx_eq(&self, other: &Constellation, tol: f64) -> bool {
        self.match_distance(other) < tol
    }
}

/// Greedy nearest-neighbour pairing. Returns the worst pair distance and
/// whether some star had more than one candidate within `tie`.
fn greedy_pairing(cost: &[Vec<f64>], tie: f64) -> (f64, bool) {
    let n = cost.len();
    let mut used = vec![false; n];
    let mut worst: f64 = 0.0;
    let mut ambiguous = false;
    for row in cost {
        let mut best = None;
        let mut close = 0;
        for (j, &c) in row.iter().enumerate() {
            if used[j] {
                continue;
            }
            if c < tie {
                close += 1;
            }
            if best.is_none_or(|(_, b)| c < b) {
                best = Some((j, c));
            }
        }
        let (j, c) = best.expect("square cost matrix");
        ambiguous |= close > 1;
        used[j] = true;
        worst = worst.max(c);
    }
    (worst, ambiguous)
}

/// An SU(2) element `[[α, −β̄], [β, ᾱ]]` acting on star coordinates by
/// `ζ ↦ (αζ + β̄)/(−βζ + ᾱ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationSU2 {
    alpha: Complex64,
    beta: Complex64,
}

impl RotationSU2 {
    pub fn identity() -> Self {
        Self {
            alpha: Complex64::new(1.0, 0.0),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    /// Cayley–Klein parameters; rescaled onto `|α|² + |β|² = 1`.
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidParameter("zero Cayley-Klein parameters".into()));
        }
        Ok(Self {
            alpha: alpha / norm,
            beta: beta / norm,
        })
    }

    /// Rotation of star unit vectors by `angle` (right-handed) about `axis`.
    pub fn from_axis_angle(axis: [f64; 3], angle: f64) -> Self {
        let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        let n = if norm > 0.0 {
            [axis[0] / norm, axis[1] / norm, axis[2] / norm]
        } else {
            [0.0, 0.0, 1.0]
        };
        let (s, c) = (angle / 2.0).sin_cos();
        Self {
            alpha: Complex64::new(c, -s * n[2]),
            beta: Complex64::new(s * n[1], -s * n[0]),
        }
    }

    /// `R_z(alpha) · R_y(beta) · R_z(gamma)` acting on star unit vectors.
    pub fn from_euler_zyz(alpha: f64, beta: f64, gamma: f64) -> Self {
        let z = [0.0, 0.0, 1.0];
        let y = [0.0, 1.0, 0.0];
        Self::from_axis_angle(z, gamma)
            .then(&Self::from_axis_angle(y, beta))
            .then(&Self::from_axis_angle(z, alpha))
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn determinant(&self) -> f64 {
        self.alpha.norm_sqr() + self.beta.norm_sqr()
    }

    pub fn inverse(&self) -> Self {
        Self {
            alpha: self.alpha.conj(),
            beta: -self.beta,
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &RotationSU2) -> Self {
        let (a1, b1) = (self.alpha, self.beta);
        let (a2, b2) = (next.alpha, next.beta);
        Self {
            alpha: a2 * a1 - b2.conj() * b1,
            beta: b2 * a1 + a2.conj() * b1,
        }
    }

    /// Möbius action on a stereographic coordinate.
    pub fn apply(&self, zeta: ExtComplex) -> ExtComplex {
        let (num, den) = match zeta {
            ExtComplex::Infinity => (self.alpha, -self.beta),
            ExtComplex::Finite(z) => (self.alpha * z + self.beta.conj(), self.alpha.conj() - self.beta * z),
        };
        if den.norm() == 0.0 {
            ExtComplex::Infinity
        } else {
            let w = num / den;
            if w.re.is_finite() && w.im.is_finite() {
                ExtComplex::Finite(w)
            } else {
                ExtComplex::Infinity
            }
        }
    }

    pub fn apply_star(&self, star: &Star) -> Star {
        Star::from_zeta(self.apply(star.zeta))
    }

    /// SO(3) matrix of the induced rotation on star unit vectors.
    pub fn rotation_matrix(&self) -> [[f64; 3]; 3] {
        // unit quaternion (w, x, y, z) of the star-space rotation
        let w = self.alpha.re;
        let (x, y, z) = (-self.beta.im, self.beta.re, -self.alpha.im);
        [
            [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
            [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
            [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
        ]
    }

    pub fn rotate_vector(&self, v: [f64; 3]) -> [f64; 3] {
        let m = self.rotation_matrix();
        [0, 1, 2].map(|i| m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2])
    }

    /// A rotation taking direction `from` onto direction `to`.
    pub fn aligning(from: [f64; 3], to: [f64; 3]) -> Self {
        let unit = |v: [f64; 3]| {
            let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            [v[0] / r, v[1] / r, v[2] / r]
        };
        let (a, b) = (unit(from), unit(to));
        let cross = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        let dot = (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]).clamp(-1.0, 1.0);
        let sin = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
        if sin < 1e-15 {
            if dot > 0.0 {
                return Self::identity();
            }
            // antiparallel: any axis orthogonal to `a`
            let trial = if a[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
            let axis = [
                a[1] * trial[2] - a[2] * trial[1],
                a[2] * trial[0] - a[0] * trial[2],
                a[0] * trial[1] - a[1] * trial[0],
            ];
            return Self::from_axis_angle(axis, PI);
        }
        Self::from_axis_angle(cross, sin.atan2(dot))
    }
}

/// `C(n, k)` as a float (exact below 2^53).
pub fn binomial_f64(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rodrigues(axis: [f64; 3], angle: f64, v: [f64; 3]) -> [f64; 3] {
        let r = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        let k = [axis[0] / r, axis[1] / r, axis[2] / r];
        let (s, co) = angle.sin_cos();
        let kxv = [
            k[1] * v[2] - k[2] * v[1],
            k[2] * v[0] - k[0] * v[2],
            k[0] * v[1] - k[1] * v[0],
        ];
        let kv = k[0] * v[0] + k[1] * v[1] + k[2] * v[2];
        [0, 1, 2].map(|i| v[i] * co + kxv[i] * s + k[i] * kv * (1.0 - co))
    }

    #[test]
    fn stereographic_examples() {
        let n = stereographic_to_sphere(ExtComplex::Finite(c(0.0, 0.0)));
        assert_eq!((n.theta(), n.phi()), (0.0, 0.0));
        let s = stereographic_to_sphere(ExtComplex::Infinity);
        assert_eq!((s.theta(), s.phi()), (PI, 0.0));
        let e = stereographic_to_sphere(ExtComplex::Finite(c(1.0, 0.0)));
        assert_abs_diff_eq!(e.theta(), PI / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.phi(), 0.0, epsilon = 1e-15);
        // minus sign in the phase convention
        let w = stereographic_to_sphere(ExtComplex::Finite(c(0.0, 1.0)));
        assert_abs_diff_eq!(w.phi(), 1.5 * PI, epsilon = 1e-15);
    }

    #[test]
    fn angles_round_trip() {
        for &(t, p) in &[(0.3, 1.2), (2.9, 6.0), (PI / 2.0, 0.0), (1e-7, 3.0), (PI - 1e-6, 0.4)] {
            let s = Star::from_angles(t, p);
            let back = Star::from_zeta(s.zeta());
            assert_abs_diff_eq!(back.theta(), t, epsilon = 1e-12);
            assert!(s.chordal(&back) < 1e-12);
            let v = Star::from_vector(s.unit_vector());
            assert!(v.chordal(&s) < 1e-12);
        }
        assert!(Star::from_angles(PI, 1.0).is_south_pole());
        assert_eq!(Star::from_angles(0.0, 1.0).phi(), 0.0);
    }

    #[test]
    fn mobius_action_matches_so3() {
        let axes = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.3, -0.5, 0.8]];
        let stars = [
            Star::from_angles(0.4, 2.0),
            Star::from_angles(2.5, 5.0),
            Star::north(),
            Star::south(),
            Star::from_angles(PI / 2.0, 0.7),
        ];
        for axis in axes {
            for &angle in &[0.3, 1.7, -2.2, PI] {
                let r = RotationSU2::from_axis_angle(axis, angle);
                assert_abs_diff_eq!(r.determinant(), 1.0, epsilon = 1e-12);
                for s in &stars {
                    let moved = r.apply_star(s).unit_vector();
                    let expected = rodrigues(axis, angle, s.unit_vector());
                    for i in 0..3 {
                        assert_abs_diff_eq!(moved[i], expected[i], epsilon = 1e-10);
                    }
                    let m = r.rotate_vector(s.unit_vector());
                    for i in 0..3 {
                        assert_abs_diff_eq!(m[i], expected[i], epsilon = 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn rotation_examples() {
        let noon = Constellation::from_zetas([c(1.0, 0.0), c(-1.0, 0.0)].map(ExtComplex::Finite));
        assert!(noon.rotate(&RotationSU2::identity()).approx_eq(&noon, 1e-12));
        let flip = RotationSU2::from_axis_angle([1.0, 0.0, 0.0], PI);
        assert!(flip.apply_star(&Star::north()).chordal(&Star::south()) < 1e-12);
        let half_turn = RotationSU2::from_axis_angle([0.0, 0.0, 1.0], PI);
        assert!(noon.rotate(&half_turn).approx_eq(&noon, 1e-12));
        let quarter = RotationSU2::from_axis_angle([0.0, 0.0, 1.0], PI / 2.0);
        let expected = Constellation::from_zetas([c(0.0, 1.0), c(0.0, -1.0)].map(ExtComplex::Finite));
        assert!(noon.rotate(&quarter).approx_eq(&expected, 1e-12));
    }

    #[test]
    fn composition_and_inverse() {
        let a = RotationSU2::from_axis_angle([0.2, 0.4, -1.0], 0.9);
        let b = RotationSU2::from_euler_zyz(0.3, 1.1, -0.4);
        let v = [0.36, 0.48, 0.8];
        let ab = a.then(&b).rotate_vector(v);
        let seq = b.rotate_vector(a.rotate_vector(v));
        for i in 0..3 {
            assert_abs_diff_eq!(ab[i], seq[i], epsilon = 1e-12);
        }
        let star = Star::from_angles(1.0, 2.0);
        let back = a.inverse().apply_star(&a.apply_star(&star));
        assert!(back.chordal(&star) < 1e-12);
        let al = RotationSU2::aligning([1.0, 2.0, 3.0], [0.0, 0.0, 1.0]);
        let moved = al.rotate_vector([1.0 / 14f64.sqrt(), 2.0 / 14f64.sqrt(), 3.0 / 14f64.sqrt()]);
        assert_abs_diff_eq!(moved[2], 1.0, epsilon = 1e-12);
        let anti = RotationSU2::aligning([0.0, 0.0, -1.0], [0.0, 0.0, 1.0]);
        assert_abs_diff_eq!(anti.rotate_vector([0.0, 0.0, -1.0])[2], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn state_equiv_examples() {
        let spin = SpinLabel::new(3);
        let psi = SpinState::new(spin, vec![c(0.1, 0.2), c(-0.5, 0.0), c(0.3, 0.3), c(0.0, 0.7)]).unwrap();
        let phase = Complex64::from_polar(1.0, PI / 7.0);
        let rotated = SpinState::new(spin, psi.amps().iter().map(|a| a * phase).collect()).unwrap();
        assert!(state_equiv(&psi, &rotated, 1e-10).unwrap());
        let up = SpinState::basis(spin, 3).unwrap();
        let down = SpinState::basis(spin, -3).unwrap();
        assert!(!state_equiv(&up, &down, 1e-10).unwrap());
        let a = SpinState::coherent(spin, c(0.0, 0.0).into());
        let b = SpinState::coherent(spin, c(0.001, 0.0).into());
        // |⟨0|z⟩| = (1 + |z|²)^{-S}
        let overlap = a.inner(&b).unwrap().norm();
        assert_abs_diff_eq!(overlap, (1.0f64 + 1e-6).powf(-1.5), epsilon = 1e-15);
        assert!(!state_equiv(&a, &b, 1e-12).unwrap());
        assert!(state_equiv(&a, &SpinState::basis(SpinLabel::new(1), 1).unwrap(), 1e-10).is_err());
    }

    #[test]
    fn constructors_validate() {
        let spin = SpinLabel::new(2);
        assert!(matches!(
            SpinState::new(spin, vec![c(0.0, 0.0); 3]),
            Err(Error::ZeroState)
        ));
        assert!(matches!(
            SpinState::new(spin, vec![c(1.0, 0.0); 2]),
            Err(Error::DimensionMismatch { .. })
        ));
        let err = SpinState::from_normalized(spin, vec![c(1.0, 0.0), c(0.02, 0.0), c(0.0, 0.0)], 1e-9).unwrap_err();
        assert!(err.to_string().starts_with("normalization 1-Σ|ψ|² = -4.00e-4 exceeds 1e-9"));
        assert!(Constellation::new(spin, vec![Star::north()]).is_err());
        assert!(SpinState::basis(spin, 1).is_err());
        let s = SpinState::new(spin, vec![c(3.0, 0.0), c(0.0, 4.0), c(0.0, 0.0)]).unwrap();
        assert_abs_diff_eq!(s.amps().iter().map(|a| a.norm_sqr()).sum::<f64>(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn expectation_of_coherent_states() {
        // a single star at ζ points ⟨S⟩ along (−x, y, z) of the star direction
        let spin = SpinLabel::new(4);
        for star in [Star::from_angles(0.7, 1.3), Star::from_angles(2.2, 4.0)] {
            let z0 = match star.zeta() {
                ExtComplex::Finite(z) => -1.0 / z,
                ExtComplex::Infinity => unreachable!(),
            };
            let psi = SpinState::coherent(spin, z0.into());
            let v = star.unit_vector();
            let e = psi.spin_expectation();
            assert_abs_diff_eq!(e[0], -2.0 * v[0], epsilon = 1e-12);
            assert_abs_diff_eq!(e[1], 2.0 * v[1], epsilon = 1e-12);
            assert_abs_diff_eq!(e[2], 2.0 * v[2], epsilon = 1e-12);
        }
    }

    #[test]
    fn matching_handles_degenerate_stars() {
        let a = Constellation::from_stars(vec![Star::north(), Star::north(), Star::from_angles(1.0, 1.0)]);
        let b = Constellation::from_stars(vec![Star::from_angles(1.0, 1.0), Star::north(), Star::from_angles(1e-10, 0.0)]);
        assert!(a.approx_eq(&b, 1e-8));
        let c2 = Constellation::from_stars(vec![Star::north(), Star::from_angles(1.0, 1.0), Star::from_angles(1.0, 1.0)]);
        assert!(!a.approx_eq(&c2, 1e-8));
    }

    #[test]
    fn display_spin() {
        assert_eq!(SpinLabel::new(3).to_string(), "3/2");
        assert_eq!(SpinLabel::new(4).to_string(), "2");
    }
}
