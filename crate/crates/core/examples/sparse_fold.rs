//! Folding with and without candidate sparsification.
//!
//! Run with `cargo run --release --example sparse_fold [SEQUENCE]`.

use sparsefold::expt::random_sequences;
use sparsefold::fold::{fold, EnergyModel, Sequence};

fn main() -> sparsefold::Result<()> {
    let seq: Sequence = match std::env::args().nth(1) {
        Some(s) => s.parse()?,
        None => random_sequences(120, 1, 42).remove(0),
    };
    println!("{seq}");
    for model in [EnergyModel::arc_based(), EnergyModel::loop_based()] {
        let sparse = fold(&seq, &model, true);
        let full = fold(&seq, &model, false);
        assert_eq!(sparse.table.l_table(), full.table.l_table());
        let stats = &sparse.candidate_stats;
        println!("\n{:?} model", model.kind);
        println!("{}", sparse.structure);
        println!("score {}", sparse.score);
        println!(
            "candidates {} of {} intervals ({:.2}%)",
            stats.total,
            stats.omega,
            100.0 * stats.ratio
        );
        println!(
            "split visits: sparse {} vs full {}",
            sparse.table.split_visits(),
            full.table.split_visits()
        );
        let short: Vec<u64> = (1..=10).map(|m| stats.x(m)).collect();
        println!("X_m for m = 1..=10: {short:?}");
    }
    Ok(())
}
