//! Interval DP folding with optional candidate sparsification of the split
//! rule `W[i,j] = max_k L[i,k] + L[k+1,j]`.
//!
//! Both engines fill `L`, `V`, `W` by increasing interval length. In sparse
//! mode the split only visits `k` with `[i,k]` a candidate. The maximum is
//! the first one found in ascending `k`, with identical summation order in
//! both modes, so the two modes produce the same tables bit for bit.

mod dp;
mod model;
mod traceback;

use serde::Serialize;

pub use dp::{FoldTable, LoopTables};
pub use model::{bases_pair, Base, EnergyModel, LoopScores, ModelKind, Sequence};
pub use traceback::backtrack;

use crate::oracle::Diagram;
use crate::table::interval_count;

/// Candidate counts by interval length.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CandidateStats {
    pub n: usize,
    /// `by_length[m - 1]` is `X_m`, the number of candidates of length `m`.
    pub by_length: Vec<u64>,
    pub total: u64,
    pub omega: u64,
    /// `total / omega`.
    pub ratio: f64,
}

impl CandidateStats {
    /// `X_m`; zero outside `1..=n`.
    pub fn x(&self, m: usize) -> u64 {
        if m == 0 {
            0
        } else {
            self.by_length.get(m - 1).copied().unwrap_or(0)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FoldResult {
    pub table: FoldTable,
    pub structure: Diagram,
    pub score: f64,
    pub candidate_stats: CandidateStats,
}

/// Folds with the engine selected by `model.kind`.
pub fn fold(seq: &Sequence, model: &EnergyModel, sparse: bool) -> FoldResult {
    let table = FoldTable::fill(seq, model, sparse);
    let structure = backtrack(&table, model);
    let score = if seq.is_empty() { 0.0 } else { table.l(1, seq.len()) };
    let candidate_stats = stats_of(&table);
    FoldResult {
        table,
        structure,
        score,
        candidate_stats,
    }
}

/// Arc-based folding: `V[i,j] = L[i+1,j-1] + f(i,j)`.
pub fn fold_arc_based(seq: &Sequence, model: &EnergyModel, sparse: bool) -> FoldResult {
    let model = EnergyModel {
        kind: ModelKind::ArcBased,
        ..model.clone()
    };
    fold(seq, &model, sparse)
}

/// Loop-based folding with hairpin, interior and multi-loop branches.
pub fn fold_loop_based(seq: &Sequence, model: &EnergyModel, sparse: bool) -> FoldResult {
    let model = EnergyModel {
        kind: ModelKind::LoopBased,
        ..model.clone()
    };
    fold(seq, &model, sparse)
}

pub fn candidate_stats(result: &FoldResult) -> CandidateStats {
    result.candidate_stats.clone()
}

fn stats_of(table: &FoldTable) -> CandidateStats {
    let n = table.n();
    let mut by_length = vec![0u64; n];
    for (i, j) in table.candidates() {
        by_length[j - i] += 1;
    }
    let total = by_length.iter().sum();
    let omega = interval_count(n);
    CandidateStats {
        n,
        by_length,
        total,
        omega,
        ratio: if omega == 0 { 0.0 } else { total as f64 / omega as f64 },
    }
}
