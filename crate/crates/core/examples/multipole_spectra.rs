//! Multipole spectra of named states, next to the closed forms.
//!
//! cargo run --example multipole_spectra

use majorana::analysis::{catalog_get, spectrum_report};
use majorana::multipoles::{coherent_multipole_exact, coherent_spectrum, multipoles_from_state, noon_last_multipole};
use majorana::SpinLabel;

fn main() -> majorana::Result<()> {
    let spin = SpinLabel::new(6);
    let names = ["coherent", "noon", "basis(0)", "king"];
    let states = names.iter().map(|n| catalog_get(n, spin)).collect::<majorana::Result<Vec<_>>>()?;

    // monopole dropped, the rest summing to one
    let table = spectrum_report(&states, true)?;
    print!("{}", table.to_csv());

    let coherent = multipoles_from_state(&states[0].state);
    println!("\ncoherent state, pipeline vs closed form vs exact:");
    for (k, (got, closed)) in coherent.lengths().iter().zip(coherent_spectrum(spin)).enumerate() {
        let exact = coherent_multipole_exact(spin, k as u32)?;
        println!("  K = {k}: {got:.15} {closed:.15} {exact}");
    }
    let noon = multipoles_from_state(&states[1].state);
    println!("\nNOON ρ_2S² = {:.15} (closed form {:.15})", noon.lengths()[6], noon_last_multipole(spin));
    println!("ρ_{{2,1}} of the coherent state: {}", coherent.get(2, 1));
    Ok(())
}
