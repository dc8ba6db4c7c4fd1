//! Clebsch–Gordan coefficients, exact and in floating point, and the
//! tensor operators built from them.
//!
//! cargo run --example clebsch_gordan

use majorana::angular::{clebsch_gordan, clebsch_gordan_general, hs_inner, tensor_operator, CGKey};
use majorana::SpinLabel;

fn main() -> majorana::Result<()> {
    // ⟨1 1; 1 -1 | 1 0⟩ with doubled labels
    let v = clebsch_gordan_general(2, 2, 2, -2, 2, 0);
    println!("⟨1 1; 1 -1 | 1 0⟩ = {} (signed square {})", v.float_value, v.signed_square);

    // a large spin stays finite and exact
    let spin = SpinLabel::new(120);
    let key = CGKey::new(spin, 2, 60, 7);
    let c = clebsch_gordan(key);
    println!("S = 60, m = 1, K = 60, q = 7: {:.17e}", c.float_value);

    // T_Kq are orthonormal under Tr(A B†)
    let spin = SpinLabel::new(3);
    let t21 = tensor_operator(spin, 2, 1)?;
    let t2m1 = tensor_operator(spin, 2, -1)?;
    println!("Tr(T_21 T_21†) = {:.15}", hs_inner(&t21.matrix, &t21.matrix));
    println!("Tr(T_21 T_2-1†) = {:.15}", hs_inner(&t21.matrix, &t2m1.matrix));
    Ok(())
}
