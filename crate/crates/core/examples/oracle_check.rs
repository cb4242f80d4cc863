//! Brute-force enumeration against the generating functions.
//!
//! Run with `cargo run --release --example oracle_check`.

use sparsefold::genusgf::structure_gf;
use sparsefold::irrgf::irreducible_gf;
use sparsefold::oracle::{enumerate_diagrams, tally_structures};

fn main() -> sparsefold::Result<()> {
    let top = 11;
    let d: Vec<_> = (0..=2).map(|g| structure_gf(g, top)).collect::<Result<_, _>>()?;
    let ds: Vec<_> = (0..=2).map(|g| irreducible_gf(g, top)).collect::<Result<_, _>>()?;
    println!("{:>3} {:>3} {:>8} {:>8} {:>8} {:>8}", "n", "g", "oracle", "gf", "oracle*", "gf*");
    for n in 1..=top {
        let t = tally_structures(n)?;
        for g in 0..=2 {
            println!(
                "{n:>3} {g:>3} {:>8} {:>8} {:>8} {:>8}",
                t.total(g),
                d[g].coeffs()[n],
                t.total_irreducible(g),
                ds[g].coeffs()[n]
            );
        }
    }

    println!("\ngenus-1 diagrams over 5 vertices:");
    for dia in enumerate_diagrams(5, true)?.filter(|dia| dia.genus() == 1) {
        println!("  {dia}");
    }
    Ok(())
}
