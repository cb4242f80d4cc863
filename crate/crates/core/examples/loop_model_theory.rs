//! Loop-model series: weighted structure counts, the share of arc-covered
//! structures and its flat tail.
//!
//! Run with `cargo run --release --example loop_model_theory`.

use sparsefold::irrgf::{
    expected_from_probabilities, growth_estimate, loop_probabilities, polymer_zeta_fit, LoopModelSeries,
    LoopWeights, WeightConvention, PAIR_PROBABILITY,
};

fn main() -> sparsefold::Result<()> {
    let order = 400;
    for conv in [WeightConvention::Equation, WeightConvention::Scores] {
        let weights = LoopWeights::for_convention(conv);
        let s = LoopModelSeries::compute(weights, PAIR_PROBABILITY, order)?;
        let est = growth_estimate(&s.f_full)?;
        println!("{conv:?} weights: {weights:?}");
        println!("  gamma ~ {:.5}, exponent ~ {:+.3}", est.gamma, est.subexp);
        for n in [50, 100, 200, 400] {
            println!("  f*/f({n}) = {:.5}", s.ratio(n));
        }
        let probs = loop_probabilities(&s, order)?;
        let tail: Vec<(f64, f64)> = (100..=order).map(|m| (m as f64, probs[m - 1])).collect();
        let fit = polymer_zeta_fit(&tail)?;
        println!("  P(m) ~ {:.4} m^-{:.4} on [100, {order}]", fit.b, fit.c);
        let e = expected_from_probabilities(0, 300, &probs)?;
        println!("  expected candidate fraction at n = 300: {:.4}", e.normalized);
    }
    Ok(())
}
