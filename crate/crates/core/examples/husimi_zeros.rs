//! Husimi function on a grid; its zeros are the conjugated stars.
//!
//! cargo run --example husimi_zeros

use majorana::analysis::catalog_get;
use majorana::convert::{constellation_from_state, equiangular_grid, husimi};
use majorana::{SpinLabel, Star};

fn main() -> majorana::Result<()> {
    let king = catalog_get("king", SpinLabel::new(6))?;
    let grid = equiangular_grid(91, 180);
    let q = husimi(&king.state, &grid);
    let q_max = q.iter().copied().fold(0.0, f64::max);
    println!("{} on a 91×180 grid: max Q = {q_max:.6}", king.name);

    let stars = constellation_from_state(&king.state)?;
    let zeros: Vec<Star> = stars.stars().iter().map(|s| Star::from_zeta(s.zeta().conj())).collect();
    let at_zeros = husimi(&king.state, &zeros);
    for (s, value) in zeros.iter().zip(at_zeros) {
        println!("  zero at (θ, φ) = ({:.4}, {:.4}): Q = {value:.2e}", s.theta(), s.phi());
    }
    Ok(())
}
