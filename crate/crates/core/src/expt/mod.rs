//! Seeded folding sweeps comparing measured candidate counts with the
//! theoretical expectation.
//!
//! Random sequences come from ChaCha8 seeded with `seed_from_u64`; each base
//! takes the top two bits of one `next_u64` draw as an index into `ACGU`.
//! Length `n` of a sweep uses the seed `seed + n` (wrapping).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fold::{fold, Base, EnergyModel, ModelKind, Sequence};
use crate::genusgf::DEFAULT_ETA;
use crate::irrgf::{
    expected_from_probabilities, genus_probabilities, loop_probabilities, LoopModelSeries, LoopWeights,
    WeightConvention, PAIR_PROBABILITY,
};
use crate::oracle::{candidates_exhaustive, mfe_exhaustive, MAX_EXHAUSTIVE_LENGTH};
use crate::table::interval_count;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_BATCH: usize = 100;

fn default_lengths() -> Vec<usize> {
    (50..=300).step_by(50).collect()
}
fn default_batch() -> usize {
    DEFAULT_BATCH
}
fn default_seed() -> u64 {
    DEFAULT_SEED
}
fn default_eta() -> f64 {
    DEFAULT_ETA
}
fn default_output_dir() -> PathBuf {
    PathBuf::from("sweep-out")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_lengths")]
    pub lengths: Vec<usize>,
    #[serde(default = "default_batch")]
    pub batch: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "EnergyModel::loop_based")]
    pub model: EnergyModel,
    /// 0 folds with the DP; 1 uses the exhaustive oracle (lengths ≤ 12).
    #[serde(default)]
    pub genus: u32,
    /// Arc weight of the genus-filtered theory curve.
    #[serde(default = "default_eta")]
    pub eta: f64,
    /// Loop weights of the loop-model theory curve.
    #[serde(default)]
    pub loop_weights: WeightConvention,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            lengths: default_lengths(),
            batch: DEFAULT_BATCH,
            seed: DEFAULT_SEED,
            model: EnergyModel::loop_based(),
            genus: 0,
            eta: DEFAULT_ETA,
            loop_weights: WeightConvention::default(),
            output_dir: default_output_dir(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::ContractViolation(msg));
        if self.batch == 0 {
            return bad("batch must be at least 1".into());
        }
        if self.lengths.is_empty() || self.lengths.contains(&0) {
            return bad("lengths must be nonempty and positive".into());
        }
        if self.lengths.windows(2).any(|w| w[0] >= w[1]) {
            return bad(format!("lengths must be strictly ascending: {:?}", self.lengths));
        }
        if !(self.eta > 0.0) {
            return bad(format!("eta must be positive, got {}", self.eta));
        }
        match self.genus {
            0 => Ok(()),
            1 => {
                if self.model.kind == ModelKind::LoopBased {
                    return Err(Error::UnsupportedModel(
                        "genus-1 sweeps need the arc-based model".into(),
                    ));
                }
                let longest = *self.lengths.last().expect("nonempty");
                if longest > MAX_EXHAUSTIVE_LENGTH {
                    return Err(Error::CapExceeded {
                        size: longest,
                        cap: MAX_EXHAUSTIVE_LENGTH,
                    });
                }
                Ok(())
            }
            g => Err(Error::NotImplementedGenus(g)),
        }
    }
}

/// `count` i.i.d. uniform sequences of length `n`.
pub fn random_sequences(n: usize, count: usize, seed: u64) -> Vec<Sequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            Sequence::new(
                (0..n)
                    .map(|_| Base::ALL[(rng.next_u64() >> 62) as usize])
                    .collect(),
            )
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub mean_q: f64,
    /// Sample standard deviation; 0 for a batch of one.
    pub std_q: f64,
    pub ratio_exp: f64,
    pub ratio_theory: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbRow {
    pub m: usize,
    pub p_emp: f64,
    pub p_theory: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub config: ExperimentConfig,
    pub rows: Vec<SweepRow>,
    /// Per-length candidate frequency at the longest sequence length.
    pub probs: Vec<ProbRow>,
}

/// Candidate histogram `X_1 ..= X_n` of one sequence.
fn candidate_histogram(seq: &Sequence, config: &ExperimentConfig) -> Result<Vec<u64>> {
    let n = seq.len();
    if config.genus == 0 {
        return Ok(fold(seq, &config.model, true).candidate_stats.by_length);
    }
    let table = mfe_exhaustive(seq, config.genus, &config.model)?;
    let mut hist = vec![0u64; n];
    for (i, j) in candidates_exhaustive(&table) {
        hist[j - i] += 1;
    }
    Ok(hist)
}

/// Theoretical `P(m)` for `m = 1..=max_n`.
fn theory_probabilities(config: &ExperimentConfig, max_n: usize) -> Result<Vec<f64>> {
    match config.model.kind {
        ModelKind::LoopBased => {
            let weights = LoopWeights::for_convention(config.loop_weights);
            let series = LoopModelSeries::compute(weights, PAIR_PROBABILITY, max_n)?;
            loop_probabilities(&series, max_n)
        }
        ModelKind::ArcBased => genus_probabilities(config.genus, config.eta, max_n),
    }
}

pub fn run_sweep(config: &ExperimentConfig) -> Result<SweepResult> {
    config.validate()?;
    let max_n = *config.lengths.last().expect("validated");
    let theory = theory_probabilities(config, max_n)?;
    let mut rows = Vec::with_capacity(config.lengths.len());
    let mut probs = Vec::new();
    for &n in &config.lengths {
        let seqs = random_sequences(n, config.batch, config.seed.wrapping_add(n as u64));
        let hists: Vec<Vec<u64>> = seqs
            .par_iter()
            .map(|s| candidate_histogram(s, config))
            .collect::<Result<_>>()?;
        let totals: Vec<f64> = hists.iter().map(|h| h.iter().sum::<u64>() as f64).collect();
        let batch = totals.len() as f64;
        let mean_q = totals.iter().sum::<f64>() / batch;
        let std_q = if totals.len() > 1 {
            (totals.iter().map(|t| (t - mean_q).powi(2)).sum::<f64>() / (batch - 1.0)).sqrt()
        } else {
            0.0
        };
        let omega = interval_count(n) as f64;
        let expectation = expected_from_probabilities(config.genus, n, &theory)?;
        rows.push(SweepRow {
            n,
            mean_q,
            std_q,
            ratio_exp: mean_q / omega,
            ratio_theory: expectation.normalized,
        });
        if n == max_n {
            probs = (1..=n)
                .map(|m| {
                    let slots = (n - m + 1) as f64;
                    let p_emp = hists.iter().map(|h| h[m - 1] as f64 / slots).sum::<f64>() / batch;
                    ProbRow {
                        m,
                        p_emp,
                        p_theory: theory[m - 1],
                    }
                })
                .collect();
        }
    }
    Ok(SweepResult {
        config: config.clone(),
        rows,
        probs,
    })
}

pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::from("n,mean_Q,std_Q,ratio_exp,ratio_theory\n");
    for r in &result.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.n, r.mean_q, r.std_q, r.ratio_exp, r.ratio_theory
        );
    }
    out
}

pub fn probs_csv(result: &SweepResult) -> String {
    let mut out = String::from("m,P_emp,P_theory\n");
    for r in &result.probs {
        let _ = writeln!(out, "{},{},{}", r.m, r.p_emp, r.p_theory);
    }
    out
}

const PLOT_SCRIPT: &str = "\
set datafile separator ','
set terminal pngcairo size 900,600
set key top right

set output 'sweep.png'
set xlabel 'sequence length n'
set ylabel 'candidates / Omega(n)'
plot 'sweep.csv' every ::1 using 1:4 with linespoints lw 2 dt 1 title 'experiment', \\
     'sweep.csv' every ::1 using 1:5 with lines lw 2 dt 2 title 'theory'

set output 'probs.png'
set xlabel 'interval length m'
set ylabel 'P(m)'
set logscale y
plot 'probs.csv' every ::1 using 1:2 with lines lw 2 dt 1 title 'experiment', \\
     'probs.csv' every ::1 using 1:3 with lines lw 2 dt 2 title 'theory'
";

/// Writes `sweep.csv`, `probs.csv`, `plot.gp` and `config.json` into `dir`.
pub fn emit_report(result: &SweepResult, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let files = [
        ("sweep.csv", sweep_csv(result)),
        ("probs.csv", probs_csv(result)),
        ("plot.gp", PLOT_SCRIPT.to_string()),
        ("config.json", serde_json::to_string_pretty(&result.config)? + "\n"),
    ];
    let mut written = Vec::new();
    for (name, body) in files {
        let path = dir.join(name);
        fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}
