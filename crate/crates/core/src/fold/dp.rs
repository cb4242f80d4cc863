use serde::Serialize;

use super::model::{EnergyModel, ModelKind, Sequence};
use crate::table::IntervalTable;

const NEG: f64 = f64::NEG_INFINITY;

/// Auxiliary tables of the loop-based recursion.
#[derive(Clone, Debug, Serialize)]
pub struct LoopTables {
    /// Best single pair-closed component `V[p,q]` with `i ≤ p < q ≤ j`.
    pub best_inner: IntervalTable<f64>,
    /// At least one pair-closed component, unpaired vertices free.
    pub m1: IntervalTable<f64>,
    /// At least two pair-closed components.
    pub m2: IntervalTable<f64>,
}

/// DP matrices over all intervals plus the candidate set `Q`.
#[derive(Clone, Debug, Serialize)]
pub struct FoldTable {
    n: usize,
    kind: ModelKind,
    sparse: bool,
    l: IntervalTable<f64>,
    v: IntervalTable<f64>,
    w: IntervalTable<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    loops: Option<LoopTables>,
    /// `candidates[i]`: right endpoints `j` with `[i, j] ∈ Q`, ascending.
    candidates: Vec<Vec<usize>>,
    split_visits: u64,
}

#[inline]
fn at(t: &IntervalTable<f64>, i: usize, j: usize, empty: f64) -> f64 {
    if i > j {
        empty
    } else {
        *t.get(i, j)
    }
}

impl FoldTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn is_sparse(&self) -> bool {
        self.sparse
    }

    /// `L[i,j]`; empty intervals score 0.
    pub fn l(&self, i: usize, j: usize) -> f64 {
        at(&self.l, i, j, 0.0)
    }

    pub fn v(&self, i: usize, j: usize) -> f64 {
        at(&self.v, i, j, NEG)
    }

    pub fn w(&self, i: usize, j: usize) -> f64 {
        at(&self.w, i, j, NEG)
    }

    pub fn l_table(&self) -> &IntervalTable<f64> {
        &self.l
    }

    pub fn loop_tables(&self) -> Option<&LoopTables> {
        self.loops.as_ref()
    }

    pub fn is_candidate(&self, i: usize, j: usize) -> bool {
        self.candidates[i].binary_search(&j).is_ok()
    }

    /// Right endpoints of candidates starting at `i`.
    pub fn candidates_from(&self, i: usize) -> &[usize] {
        &self.candidates[i]
    }

    /// All candidates in row-major order.
    pub fn candidates(&self) -> Vec<(usize, usize)> {
        (1..=self.n)
            .flat_map(|i| self.candidates[i].iter().map(move |&j| (i, j)))
            .collect()
    }

    pub fn candidate_count(&self) -> u64 {
        self.candidates.iter().map(|c| c.len() as u64).sum()
    }

    /// Number of `(k, j)` evaluations of the split recursion.
    pub fn split_visits(&self) -> u64 {
        self.split_visits
    }

    pub(crate) fn aux(&self, which: Aux, i: usize, j: usize) -> f64 {
        let t = self.loops.as_ref().expect("loop tables");
        let table = match which {
            Aux::BestInner => &t.best_inner,
            Aux::M1 => &t.m1,
            Aux::M2 => &t.m2,
        };
        at(table, i, j, NEG)
    }

    pub(crate) fn fill(seq: &Sequence, model: &EnergyModel, sparse: bool) -> FoldTable {
        let n = seq.len();
        let mut t = FoldTable {
            n,
            kind: model.kind,
            sparse,
            l: IntervalTable::new(n, 0.0),
            v: IntervalTable::new(n, NEG),
            w: IntervalTable::new(n, NEG),
            loops: (model.kind == ModelKind::LoopBased).then(|| LoopTables {
                best_inner: IntervalTable::new(n, NEG),
                m1: IntervalTable::new(n, NEG),
                m2: IntervalTable::new(n, NEG),
            }),
            candidates: vec![Vec::new(); n + 1],
            split_visits: 0,
        };
        for i in 1..=n {
            t.candidates[i].push(i);
        }
        for span in 1..n {
            for i in 1..=n - span {
                let j = i + span;
                let v = match model.kind {
                    ModelKind::ArcBased => t.l(i + 1, j - 1) + model.pair_score(seq, i, j),
                    ModelKind::LoopBased => t.loop_v(seq, model, i, j),
                };
                let w = t.split(i, j);
                t.v.set(i, j, v);
                t.w.set(i, j, w);
                if v > w {
                    t.l.set(i, j, v);
                    t.candidates[i].push(j);
                } else {
                    t.l.set(i, j, w);
                }
                if t.loops.is_some() {
                    t.update_loop_tables(i, j);
                }
            }
        }
        t
    }

    /// `W[i,j]`: the first maximum of `L[i,k] + L[k+1,j]` over ascending `k`.
    fn split(&mut self, i: usize, j: usize) -> f64 {
        let mut best = NEG;
        let mut visits = 0u64;
        if self.sparse {
            for &k in &self.candidates[i] {
                if k >= j {
                    break;
                }
                visits += 1;
                let s = *self.l.get(i, k) + *self.l.get(k + 1, j);
                if s > best {
                    best = s;
                }
            }
        } else {
            for k in i..j {
                visits += 1;
                let s = *self.l.get(i, k) + *self.l.get(k + 1, j);
                if s > best {
                    best = s;
                }
            }
        }
        self.split_visits += visits;
        best
    }

    fn loop_v(&self, seq: &Sequence, model: &EnergyModel, i: usize, j: usize) -> f64 {
        if !model.can_pair(seq, i, j) {
            return NEG;
        }
        let s = &model.loop_scores;
        let interior = s.interior + self.aux(Aux::BestInner, i + 1, j - 1);
        let multi = s.multi + self.aux(Aux::M2, i + 1, j - 1);
        s.hairpin.max(interior).max(multi)
    }

    fn update_loop_tables(&mut self, i: usize, j: usize) {
        let v_ij = *self.v.get(i, j);
        let inner = v_ij
            .max(self.aux(Aux::BestInner, i + 1, j))
            .max(self.aux(Aux::BestInner, i, j - 1));
        let mut m1 = self.aux(Aux::M1, i + 1, j);
        let mut m2 = self.aux(Aux::M2, i + 1, j);
        for k in i + 1..=j {
            let v = *self.v.get(i, k);
            if v == NEG {
                continue;
            }
            let rest = self.aux(Aux::M1, k + 1, j);
            m1 = m1.max(v + rest.max(0.0));
            m2 = m2.max(v + rest);
        }
        let t = self.loops.as_mut().expect("loop tables");
        t.best_inner.set(i, j, inner);
        t.m1.set(i, j, m1);
        t.m2.set(i, j, m2);
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum Aux {
    BestInner,
    M1,
    M2,
}
