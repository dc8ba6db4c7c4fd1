//! Constellation families interpolating between coherent and NOON states:
//! the polar ring, unidirectional equatorial spreading and symmetric
//! spreading, with their closed-form symmetric polynomials and multipoles.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::multipoles::{coherent_spectrum, multipoles_from_constellation};
use crate::spin::{binomial_f64, Constellation, SpinLabel, Star};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransitionKind {
    /// All stars on one circle of latitude, polar angle θ ∈ [0, π].
    Ring,
    /// Equatorial stars fanning out from ζ = 1 in one direction, t ∈ [0, 1].
    SpreadUnidirectional,
    /// Equatorial stars fanning out from ζ = 1 in both directions, t ∈ [0, 1].
    SpreadSymmetric,
}

impl TransitionKind {
    /// Parameter interval of the family.
    pub fn range(self) -> (f64, f64) {
        match self {
            TransitionKind::Ring => (0.0, PI),
            _ => (0.0, 1.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TransitionKind::Ring => "ring",
            TransitionKind::SpreadUnidirectional => "spread",
            TransitionKind::SpreadSymmetric => "spread-sym",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransitionSpec {
    pub kind: TransitionKind,
    pub spin: SpinLabel,
    pub parameter: f64,
}

impl TransitionSpec {
    pub fn constellation(&self) -> Result<Constellation> {
        match self.kind {
            TransitionKind::Ring => ring_constellation(self.spin, self.parameter),
            TransitionKind::SpreadUnidirectional => spread_constellation(self.spin, self.parameter, false),
            TransitionKind::SpreadSymmetric => spread_constellation(self.spin, self.parameter, true),
        }
    }

    /// Closed-form multipole lengths, where the family has them (the ring).
    pub fn closed_form_lengths(&self) -> Result<Option<Vec<f64>>> {
        match self.kind {
            TransitionKind::Ring => ring_multipoles_closed_form(self.spin, self.parameter).map(Some),
            _ => Ok(None),
        }
    }
}

fn check_parameter(kind: TransitionKind, value: f64) -> Result<()> {
    let (lo, hi) = kind.range();
    if !(lo..=hi).contains(&value) {
        return Err(Error::OutOfRange(format!(
            "{} parameter {value} outside [{lo}, {hi}]",
            kind.name()
        )));
    }
    Ok(())
}

/// Stars `ζ_j = tan(θ/2)·e^{iπj/S}`, `j = 1 … 2S`.
pub fn ring_constellation(spin: SpinLabel, theta: f64) -> Result<Constellation> {
    check_parameter(TransitionKind::Ring, theta)?;
    let s = spin.s();
    let stars = (1..=spin.n_stars())
        .map(|j| Star::from_angles(theta, -PI * j as f64 / s))
        .collect();
    Constellation::new(spin, stars)
}

/// `[(x−1)/(x+1)]²` with `x = tan^{4S}(θ/2)`, written as `tanh²(2S ln tan(θ/2))`.
pub fn ring_bracket(spin: SpinLabel, theta: f64) -> f64 {
    let y = f64::from(spin.two_s()) * (theta / 2.0).tan().ln();
    y.tanh().powi(2)
}

/// Polar angle below the equator at which the ring bracket equals one half.
pub fn ring_half_crossing(spin: SpinLabel) -> f64 {
    let y = 0.5f64.sqrt().atanh() / f64::from(spin.two_s());
    2.0 * (-y).exp().atan()
}

/// Ring lengths: odd `K < 2S` carry the coherent value times the bracket,
/// even `K < 2S` the coherent value; `ρ_{2S}²` closes the sum rule.
pub fn ring_multipoles_closed_form(spin: SpinLabel, theta: f64) -> Result<Vec<f64>> {
    check_parameter(TransitionKind::Ring, theta)?;
    let n = spin.n_stars();
    if n == 0 {
        return Err(Error::InvalidParameter("ring transition needs 2S ≥ 1".into()));
    }
    let bracket = ring_bracket(spin, theta);
    let mut lengths = coherent_spectrum(spin);
    for (k, v) in lengths.iter_mut().enumerate().take(n).skip(1) {
        if k % 2 == 1 {
            *v *= bracket;
        }
    }
    let rest: f64 = lengths[..n].iter().sum();
    lengths[n] = 1.0 - rest;
    Ok(lengths)
}

/// Angular offsets (in units of `πt/S`) of the spreading stars.
fn spread_offsets(spin: SpinLabel, symmetric: bool) -> Vec<f64> {
    let n = spin.n_stars();
    if symmetric {
        // k − (2S−1)/2: integers through 0 for 2S odd, half-integers for 2S even
        (0..n).map(|k| k as f64 - (n as f64 - 1.0) / 2.0).collect()
    } else {
        (1..=n).map(|j| j as f64).collect()
    }
}

/// Equatorial stars `ζ_j(t) = e^{iπtj/S}`; `j = 1 … 2S` one way, or offsets
/// symmetric about zero for the two-way spread.
pub fn spread_constellation(spin: SpinLabel, t: f64, symmetric: bool) -> Result<Constellation> {
    check_parameter(TransitionKind::SpreadUnidirectional, t)?;
    let s = spin.s();
    let stars = spread_offsets(spin, symmetric)
        .into_iter()
        .map(|j| Star::from_angles(PI / 2.0, -PI * t * j / s))
        .collect();
    Constellation::new(spin, stars)
}

/// `sin(πτ)/sin(πτ/2S)`, evaluated after removing whole periods so that the
/// removable singularities at `τ ∈ 2S·ℤ` stay accurate.
fn dirichlet_ratio(two_s: u32, tau: f64) -> f64 {
    let n = f64::from(two_s);
    let m = (tau / n).round();
    let delta = tau - n * m;
    // sin(π(nm+δ)) = (−1)^{nm} sin πδ, sin(π(m + δ/n)) = (−1)^m sin(πδ/n)
    let parity = (n * m + m).rem_euclid(2.0);
    let sign = if parity == 0.0 { 1.0 } else { -1.0 };
    let den = (PI * delta / n).sin();
    if den == 0.0 {
        sign * n
    } else {
        sign * (PI * delta).sin() / den
    }
}

/// `e_1(ζ(τ)) = Σ_j ζ_j(τ)` in closed form.
pub fn spread_e1(spin: SpinLabel, tau: f64, symmetric: bool) -> Complex64 {
    let two_s = spin.two_s();
    if two_s == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let ratio = dirichlet_ratio(two_s, tau);
    if symmetric {
        Complex64::new(ratio, 0.0)
    } else {
        let n = f64::from(two_s);
        Complex64::from_polar(ratio, PI * tau * (n + 1.0) / n)
    }
}

/// `e_1`, `e_2`, `e_3` of the spreading stars from `e_1` at `t`, `2t`, `3t`
/// (which are the power sums `p_1`, `p_2`, `p_3`).
pub fn spread_elementary_closed_form(spin: SpinLabel, t: f64, order: usize, symmetric: bool) -> Result<Complex64> {
    let p = |k: f64| spread_e1(spin, k * t, symmetric);
    match order {
        0 => Ok(Complex64::new(1.0, 0.0)),
        1 => Ok(p(1.0)),
        2 => Ok((p(1.0) * p(1.0) - p(2.0)) / 2.0),
        3 => {
            let (p1, p2, p3) = (p(1.0), p(2.0), p(3.0));
            Ok((p1 * p1 * p1 - p1 * p2 * 3.0 + p3 * 2.0) / 6.0)
        }
        _ => Err(Error::OutOfRange(format!(
            "no closed form for e_{order}; use elementary_from_roots"
        ))),
    }
}

/// Naive small-`t` form `C(2S,j) − C(2S,j+1)π²((2S+1)/4S²)t²`.
pub fn spread_small_t_naive(spin: SpinLabel, j: u32, t: f64) -> f64 {
    let n = spin.two_s();
    let s = spin.s();
    binomial_f64(n, j) - binomial_f64(n, j + 1) * PI * PI * (2.0 * s + 1.0) / (4.0 * s * s) * t * t
}

/// Second-order Taylor polynomial of `e_j(ζ(t))` about `t = 0`, derived from
/// `ζ_a = e^{iθ_a}`:
/// `C(n,j) + i C(n−1,j−1) P_1 − ½[C(n−2,j−1) P_2 + C(n−2,j−2) P_1²]`
/// with `P_1 = Σθ_a`, `P_2 = Σθ_a²`. The remainder is `O(t³)` one way and
/// `O(t⁴)` for the symmetric spread, whose odd terms cancel.
pub fn spread_small_t_series(spin: SpinLabel, j: u32, t: f64, symmetric: bool) -> Complex64 {
    let n = spin.two_s();
    let s = spin.s();
    let thetas: Vec<f64> = spread_offsets(spin, symmetric).iter().map(|o| PI * t * o / s).collect();
    let p1: f64 = thetas.iter().sum();
    let p2: f64 = thetas.iter().map(|x| x * x).sum();
    let binom = |a: i64, b: i64| {
        if a < 0 || b < 0 {
            0.0
        } else {
            binomial_f64(a as u32, b as u32)
        }
    };
    let (n, j) = (i64::from(n), i64::from(j));
    let real = binom(n, j) - 0.5 * (binom(n - 2, j - 1) * p2 + binom(n - 2, j - 2) * p1 * p1);
    Complex64::new(real, binom(n - 1, j - 1) * p1)
}

/// Apparent convergence order of an approximation `approx(t)` to
/// `exact(t)`, from the residual ratio at two step sizes. Infinite when the
/// residual at `t_big` is already at rounding level.
pub fn richardson_order(exact: impl Fn(f64) -> Complex64, approx: impl Fn(f64) -> Complex64, t_big: f64, t_small: f64) -> f64 {
    let e_big = exact(t_big);
    let r_big = (e_big - approx(t_big)).norm();
    let r_small = (exact(t_small) - approx(t_small)).norm();
    if r_big <= 1e-13 * e_big.norm().max(1.0) {
        return f64::INFINITY;
    }
    (r_big / r_small).ln() / (t_big / t_small).ln()
}

/// One line of a transition sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub parameter: f64,
    pub k: u32,
    pub pipeline: f64,
    pub closed_form: Option<f64>,
}

/// `samples` equally spaced parameters spanning the family's interval.
pub fn sweep_parameters(kind: TransitionKind, samples: usize) -> Vec<f64> {
    let (lo, hi) = kind.range();
    match samples {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..samples)
            .map(|i| {
                let x = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
                x.min(hi)
            })
            .collect(),
    }
}

/// Pipeline lengths next to closed-form lengths for every sample and `K`.
pub fn transition_sweep(kind: TransitionKind, spin: SpinLabel, samples: usize) -> Result<Vec<SweepRow>> {
    let per_param: Vec<Result<Vec<SweepRow>>> = sweep_parameters(kind, samples)
        .into_par_iter()
        .map(|parameter| {
            let spec = TransitionSpec { kind, spin, parameter };
            let pipeline = multipoles_from_constellation(&spec.constellation()?)?;
            let closed = spec.closed_form_lengths()?;
            Ok(pipeline
                .lengths()
                .iter()
                .enumerate()
                .map(|(k, &v)| SweepRow {
                    parameter,
                    k: k as u32,
                    pipeline: v,
                    closed_form: closed.as_ref().map(|c| c[k]),
                })
                .collect())
        })
        .collect();
    let mut rows = Vec::new();
    for chunk in per_param {
        rows.extend(chunk?);
    }
    Ok(rows)
}
