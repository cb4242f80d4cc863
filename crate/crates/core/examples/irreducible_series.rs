//! Irreducible structures and the probability that a random structure over
//! `m` vertices is covered by one arc.
//!
//! Run with `cargo run --release --example irreducible_series`.

use sparsefold::genusgf::{structure_gf, DEFAULT_ETA};
use sparsefold::irrgf::{genus_probabilities, irreducible_gf, irreducible_gf_composition, IrreducibleSeriesSet};

fn main() -> sparsefold::Result<()> {
    for g in 0..=2 {
        let d = structure_gf(g, 14)?;
        let ds = irreducible_gf(g, 14)?;
        assert_eq!(ds, irreducible_gf_composition(g, 14)?);
        println!("g = {g}");
        println!("  d : {}", d.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
        println!("  d*: {}", ds.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
    }

    let set = IrreducibleSeriesSet::compute(1, 10, Some(DEFAULT_ETA))?;
    println!("\nirreducible genus-1 structures over 10 vertices by arcs: {:?}", set.estar_table[10]);

    for g in 0..=1 {
        let p = genus_probabilities(g, DEFAULT_ETA, 200)?;
        println!(
            "P_{g}(m) at m = 10, 50, 100, 200: {:.4} {:.4} {:.4} {:.4}",
            p[9], p[49], p[99], p[199]
        );
    }
    Ok(())
}
