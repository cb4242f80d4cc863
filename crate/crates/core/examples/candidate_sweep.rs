//! Seeded sweep over sequence lengths, compared with the loop-model
//! prediction, with CSV and gnuplot output.
//!
//! Run with `cargo run --release --example candidate_sweep [CONFIG.json]`.

use std::path::PathBuf;

use sparsefold::expt::{emit_report, run_sweep, ExperimentConfig};

fn main() -> sparsefold::Result<()> {
    let config = match std::env::args().nth(1) {
        Some(path) => ExperimentConfig::from_json_file(&PathBuf::from(path))?,
        None => ExperimentConfig {
            lengths: vec![50, 100, 150, 200],
            batch: 20,
            ..ExperimentConfig::default()
        },
    };
    let result = run_sweep(&config)?;
    println!("{:>5} {:>10} {:>10} {:>10}", "n", "mean |Q|", "|Q|/Omega", "theory");
    for r in &result.rows {
        println!("{:>5} {:>10.1} {:>10.4} {:>10.4}", r.n, r.mean_q, r.ratio_exp, r.ratio_theory);
    }
    println!("\n{:>5} {:>10} {:>10}", "m", "empirical", "theory");
    for p in result.probs.iter().filter(|p| p.m % 10 == 0) {
        println!("{:>5} {:>10.4} {:>10.4}", p.m, p.p_emp, p.p_theory);
    }
    for f in emit_report(&result, &config.output_dir)? {
        println!("wrote {}", f.display());
    }
    Ok(())
}
