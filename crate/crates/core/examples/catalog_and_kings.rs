//! Named states and King (maximally anticoherent) constellations.
//!
//! cargo run --example catalog_and_kings

use majorana::analysis::catalog::{anticoherence_order, catalog_get, catalog_names};
use majorana::convert::constellation_from_state;
use majorana::SpinLabel;

fn main() -> majorana::Result<()> {
    println!("names: {}", catalog_names().join(", "));
    for two_s in [4, 6, 8, 12] {
        let king = catalog_get("king", SpinLabel::new(two_s))?;
        let stars = constellation_from_state(&king.state)?;
        println!("{} (2S = {two_s}): anticoherent to order {}, {} stars", king.name, anticoherence_order(&king.state), stars.stars().len());
    }
    let basis = catalog_get("basis(-1/2)", SpinLabel::new(3))?;
    println!("basis(-1/2) for S = 3/2: {:?}", basis.state.amps());
    let coherent = catalog_get("coherent(1-0.5i)", SpinLabel::new(2))?;
    println!("coherent(1-0.5i) for S = 1: ⟨S⟩ = {:?}", coherent.state.spin_expectation());
    Ok(())
}
