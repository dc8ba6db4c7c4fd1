//! State ↔ constellation conversion, both ways, with a star at the south pole.
//!
//! cargo run --example stellar_conversion

use majorana::convert::{constellation_from_state, state_from_constellation};
use majorana::{state_equiv, Constellation, SpinLabel, SpinState, Star};
use num_complex::Complex64;

fn main() -> majorana::Result<()> {
    // spin 3/2: two stars on the equator, one at the south pole
    let stars = Constellation::from_stars(vec![
        Star::from_angles(std::f64::consts::FRAC_PI_2, 0.0),
        Star::from_angles(std::f64::consts::FRAC_PI_2, 2.0),
        Star::south(),
    ]);
    let psi = state_from_constellation(&stars)?;
    println!("amplitudes ψ_m for m = 3/2 … -3/2");
    for (k, a) in psi.amps().iter().enumerate().rev() {
        println!("  m = {:>4}: {:+.6} {:+.6}i", psi.spin().m_of(k), a.re, a.im);
    }

    let back = constellation_from_state(&psi)?;
    println!("stars recovered (θ, φ):");
    for s in back.stars() {
        println!("  ({:.6}, {:.6})  ζ = {:?}", s.theta(), s.phi(), s.zeta());
    }
    println!("multiset distance to the input: {:.2e}", stars.match_distance(&back));

    // any normalized amplitude vector works too
    let spin = SpinLabel::new(4);
    let raw: Vec<Complex64> = (0..5).map(|k| Complex64::new(1.0, k as f64 * 0.3)).collect();
    let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let phi = SpinState::new(spin, raw.into_iter().map(|a| a / norm).collect())?;
    let again = state_from_constellation(&constellation_from_state(&phi)?)?;
    println!("spin-2 round trip equal up to phase: {}", state_equiv(&phi, &again, 1e-10)?);
    Ok(())
}
