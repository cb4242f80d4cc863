//! Structure counts by genus: fitted polynomials, exact coefficients and the
//! arc-filtered table.
//!
//! Run with `cargo run --example genus_series`.

use sparsefold::genusgf::{arc_filtered_gf, matching_gf, p_polynomial, structure_gf, MAX_GENUS};

fn main() -> sparsefold::Result<()> {
    for g in 1..=MAX_GENUS {
        let p = p_polynomial(g)?;
        println!("P_{g}(u) coefficients: {:?}", p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    }

    println!();
    for g in 0..=MAX_GENUS {
        let c = matching_gf(g, 8)?;
        let d = structure_gf(g, 16)?;
        println!("c_{g}: {}", join(c.coeffs()));
        println!("d_{g}: {}", join(d.coeffs()));
    }

    // Genus-1 structures over 8 vertices split by arc number.
    let e1 = arc_filtered_gf(1, 8)?;
    println!("\ne_1(8, l) for l = 0..=4: {}", join(&e1[8]));
    Ok(())
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}
