//! Coherent → NOON transitions: a ring sliding to the equator, and stars
//! spreading around it, with pipeline and closed-form lengths side by side.
//!
//! cargo run --example transitions

use majorana::transitions::{
    ring_bracket, ring_half_crossing, spread_constellation, spread_elementary_closed_form, transition_sweep, TransitionKind,
};
use majorana::sympoly::elementary_from_roots;
use majorana::SpinLabel;

fn main() -> majorana::Result<()> {
    let spin = SpinLabel::new(12);
    println!("ring, 2S = 12: θ, K, pipeline, closed form");
    for row in transition_sweep(TransitionKind::Ring, spin, 7)?.iter().filter(|r| [1, 11, 12].contains(&r.k)) {
        println!("  {:.4} {:>2} {:.12} {:.12}", row.parameter, row.k, row.pipeline, row.closed_form.unwrap());
    }
    let crossing = ring_half_crossing(spin);
    println!(
        "bracket crosses 1/2 at θ = {:.6}°, {:.4}° short of the equator; at 75° it is {:.4}",
        crossing.to_degrees(),
        90.0 - crossing.to_degrees(),
        ring_bracket(spin, 75f64.to_radians())
    );

    let spin = SpinLabel::new(5);
    let t = 0.4;
    for symmetric in [false, true] {
        let e = elementary_from_roots(&spread_constellation(spin, t, symmetric)?.finite_zetas());
        for j in 1..=3 {
            let closed = spread_elementary_closed_form(spin, t, j, symmetric)?;
            println!("spread (symmetric = {symmetric}) e_{j}: roots {:.12}  closed form {:.12}", e.get(j), closed);
        }
    }
    Ok(())
}
