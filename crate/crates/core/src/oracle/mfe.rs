use crate::error::{Error, Result};
use crate::fold::{EnergyModel, ModelKind, Sequence};
use crate::table::IntervalTable;

use super::{enumerate_diagrams_with, genus};

/// Longest sequence accepted by [`mfe_exhaustive`].
pub const MAX_EXHAUSTIVE_LENGTH: usize = 12;

/// Optimal scores `L[i][j]` over every interval.
pub type ScoreTable = IntervalTable<f64>;

/// Maximum model score over all structures of genus ≤ `g_max` on every
/// interval, by exhaustive enumeration.
pub fn mfe_exhaustive(seq: &Sequence, g_max: u32, model: &EnergyModel) -> Result<ScoreTable> {
    let n = seq.len();
    if n > MAX_EXHAUSTIVE_LENGTH {
        return Err(Error::CapExceeded {
            size: n,
            cap: MAX_EXHAUSTIVE_LENGTH,
        });
    }
    if model.kind == ModelKind::LoopBased && g_max > 0 {
        return Err(Error::UnsupportedModel(
            "loop-based scores are only defined for genus 0".into(),
        ));
    }
    let mut table = ScoreTable::new(n, 0.0);
    for i in 1..=n {
        for j in i..=n {
            let sub = seq.slice(i, j);
            let mut best = f64::NEG_INFINITY;
            for d in enumerate_diagrams_with(j - i + 1, |p, q| model.can_pair(&sub, p, q))? {
                if genus(&d).genus > g_max {
                    continue;
                }
                best = best.max(model.score_structure(&sub, &d)?);
            }
            table.set(i, j, best);
        }
    }
    Ok(table)
}

/// Intervals whose optimum strictly beats every split `[i,k] + [k+1,j]`.
/// Single positions qualify vacuously.
pub fn candidates_exhaustive(table: &ScoreTable) -> Vec<(usize, usize)> {
    let n = table.len();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            let best_split = (i..j)
                .map(|k| table.get(i, k) + table.get(k + 1, j))
                .fold(f64::NEG_INFINITY, f64::max);
            if *table.get(i, j) > best_split {
                out.push((i, j));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> Sequence {
        s.parse().unwrap()
    }

    #[test]
    fn no_pairs_means_zero_everywhere() {
        let t = mfe_exhaustive(&seq("AAAA"), 1, &EnergyModel::arc_based()).unwrap();
        assert!(t.iter().all(|(_, _, &v)| v == 0.0));
        let cands = candidates_exhaustive(&t);
        assert_eq!(cands, vec![(1, 1), (2, 2), (3, 3), (4, 4)]);
    }

    #[test]
    fn gcgc_only_outer_pair() {
        let t = mfe_exhaustive(&seq("GCGC"), 0, &EnergyModel::arc_based()).unwrap();
        assert_eq!(*t.get(1, 4), 1.0);
        let cands = candidates_exhaustive(&t);
        // (1,4) pairs but so does (1,2)? no: 1-arcs are excluded; the split
        // [1,1]+[2,4] scores 0 while pairing (1,4) scores 1.
        assert!(cands.contains(&(1, 4)));
    }

    #[test]
    fn genus_one_allows_crossing_pairs() {
        // GGCC with min span 1: (1,3),(2,4) are G-C pairs that cross.
        let s = seq("GGCC");
        let g0 = mfe_exhaustive(&s, 0, &EnergyModel::arc_based()).unwrap();
        let g1 = mfe_exhaustive(&s, 1, &EnergyModel::arc_based()).unwrap();
        assert_eq!(*g0.get(1, 4), 1.0);
        assert_eq!(*g1.get(1, 4), 2.0);
    }

    #[test]
    fn loop_model_rejects_higher_genus() {
        assert!(matches!(
            mfe_exhaustive(&seq("GGCC"), 1, &EnergyModel::loop_based()),
            Err(Error::UnsupportedModel(_))
        ));
    }

    #[test]
    fn length_cap() {
        let long = seq(&"A".repeat(13));
        assert!(matches!(
            mfe_exhaustive(&long, 0, &EnergyModel::arc_based()),
            Err(Error::CapExceeded { size: 13, cap: 12 })
        ));
    }
}
