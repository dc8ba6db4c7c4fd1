//! Quantities read directly off the stars: Stokes moments, the spin vector,
//! the 1-design residual and the star-addition update.
//!
//! cargo run --example star_geometry

use majorana::convert::state_from_constellation;
use majorana::multipoles::{one_design_residual, star_addition_update, stokes_moment_z, stokes_vector};
use majorana::{Constellation, RotationSU2, SpinLabel, Star};
use num_complex::Complex64;

fn main() -> majorana::Result<()> {
    let c = Constellation::from_stars(vec![
        Star::from_angles(0.3, 1.0),
        Star::from_angles(1.2, 4.0),
        Star::from_angles(2.5, 2.2),
        Star::south(),
    ]);
    let psi = state_from_constellation(&c)?;
    for n in 0..=4 {
        println!("⟨S_z^{n}⟩: stars {:+.12}  amplitudes {:+.12}", stokes_moment_z(&c, n)?, psi.sz_moment(n));
    }
    println!("⟨S⟩ from stars {:?}", stokes_vector(&c)?);
    println!("⟨S⟩ from state {:?}", psi.spin_expectation());
    println!("1-design residual {:.3e}", one_design_residual(&c));

    let tetra = Constellation::from_stars(
        [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]]
            .into_iter()
            .map(Star::from_vector)
            .collect(),
    );
    let turned = tetra.rotate(&RotationSU2::from_euler_zyz(0.4, 1.1, -0.7));
    println!("tetrahedron 1-design residual {:.3e} (rotated {:.3e})", one_design_residual(&tetra), one_design_residual(&turned));

    // one star moved off the north pole of a spin-3 coherent state
    let lengths = star_addition_update(SpinLabel::new(6), Complex64::new(0.5, -0.2))?;
    println!("star-addition spectrum {lengths:.6?}");
    Ok(())
}
