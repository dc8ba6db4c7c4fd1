//! SU(2) rotations act on the stars as Möbius maps and on the state by
//! rotating its stellar polynomial; the two routes agree.
//!
//! cargo run --example rotations

use majorana::convert::{constellation_from_state, rotate_state};
use majorana::multipoles::multipoles_from_state;
use majorana::{RotationSU2, SpinLabel, SpinState};
use std::f64::consts::FRAC_PI_2;

fn main() -> majorana::Result<()> {
    let spin = SpinLabel::new(4);
    let psi = SpinState::basis(spin, 2)?;
    let r = RotationSU2::from_axis_angle([0.0, 1.0, 0.0], FRAC_PI_2);
    println!("rotation α = {}, β = {}, det = {}", r.alpha(), r.beta(), r.determinant());

    let turned = rotate_state(&psi, &r);
    println!("|S=2, m=1⟩ turned a quarter about y:");
    for (k, a) in turned.amps().iter().enumerate() {
        println!("  m = {:>2}: {:+.6} {:+.6}i", spin.m_of(k), a.re, a.im);
    }

    let by_state = constellation_from_state(&turned)?;
    let by_stars = constellation_from_state(&psi)?.rotate(&r);
    println!("stars of rotated state vs rotated stars: {:.2e}", by_state.match_distance(&by_stars));

    let before = multipoles_from_state(&psi);
    let after = multipoles_from_state(&turned);
    let drift = before.lengths().iter().zip(after.lengths()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("largest change of any ρ_K²: {drift:.2e}");

    let back = r.inverse().then(&r);
    println!("R⁻¹ then R: α = {}, β = {}", back.alpha(), back.beta());
    Ok(())
}
