//! Growth constants of the genus, η-weighted and loop-model series.
//!
//! Run with `cargo run --release --example asymptotics`.

use sparsefold::genusgf::{eta_specialize, gamma, gamma_eta, structure_gf, DEFAULT_ETA};
use sparsefold::irrgf::{
    eta_pair, expected_candidates, growth_estimate, loop_probabilities, polymer_zeta_fit,
    LoopModelSeries, LoopWeights, WeightConvention, PAIR_PROBABILITY,
};
use sparsefold::series::ASYMPTOTIC_ORDER;

fn main() -> sparsefold::Result<()> {
    let order = ASYMPTOTIC_ORDER;
    println!("exact gamma = {:.6}", gamma());
    for g in 0..=2 {
        let d = structure_gf(g, order)?.to_f64();
        let est = growth_estimate(&d)?;
        println!(
            "d_{g}: gamma ~ {:.6}  exponent ~ {:+.3} (expected {:+.1})  constant ~ {:.4e}",
            est.gamma,
            est.subexp,
            3.0 * (g as f64 - 0.5),
            est.constant
        );
    }

    println!("\neta = {DEFAULT_ETA:.5}, exact gamma_eta = {:.6}", gamma_eta(DEFAULT_ETA));
    for g in 0..=1 {
        let d = eta_specialize(g, DEFAULT_ETA, order)?;
        let est = growth_estimate(&d.series)?;
        let (full, irr) = eta_pair(g, DEFAULT_ETA, order)?;
        println!(
            "d_{g},eta: gamma ~ {:.6}  exponent ~ {:+.3}  tail P_{g}({order}) = {:.4}",
            est.gamma,
            est.subexp,
            irr.coeff(order) / full.coeff(order)
        );
        for n in [50, 100, 200, 400] {
            let e = expected_candidates(g, n, DEFAULT_ETA)?;
            println!("    normalized expectation at n = {n}: {:.4}", e.normalized);
        }
    }

    for conv in [WeightConvention::Equation, WeightConvention::Scores] {
        let s = LoopModelSeries::compute(LoopWeights::for_convention(conv), PAIR_PROBABILITY, order)?;
        let est = growth_estimate(&s.f_full)?;
        let probs = loop_probabilities(&s, order)?;
        let tail: Vec<(f64, f64)> = (100..=order).map(|m| (m as f64, probs[m - 1])).collect();
        let zeta = polymer_zeta_fit(&tail)?;
        println!(
            "\nloop model ({conv:?} weights): gamma ~ {:.5}  exponent ~ {:+.3}",
            est.gamma, est.subexp
        );
        println!("    f*/f at n = {order}: {:.5}", s.ratio(order));
        println!("    polymer-zeta fit on m in [100, {order}]: b = {:.4}, c = {:.4}", zeta.b, zeta.c);
    }
    Ok(())
}
