use super::dp::{Aux, FoldTable};
use super::model::{EnergyModel, ModelKind};
use crate::oracle::Diagram;

enum Task {
    L(usize, usize),
    V(usize, usize),
    M1(usize, usize),
    M2(usize, usize),
}

/// One optimal structure for `L[1,n]`.
///
/// Ties prefer the paired branch over a split, the smallest split point,
/// hairpin over interior over multi-loop, and an unpaired leftmost vertex
/// inside multi-loops.
pub fn backtrack(table: &FoldTable, model: &EnergyModel) -> Diagram {
    let n = table.n();
    let mut arcs = Vec::new();
    let mut stack = vec![Task::L(1, n)];
    while let Some(task) = stack.pop() {
        match task {
            Task::L(i, j) => {
                if i >= j {
                    continue;
                }
                if table.v(i, j) >= table.w(i, j) {
                    stack.push(Task::V(i, j));
                } else {
                    let w = table.w(i, j);
                    let k = (i..j)
                        .find(|&k| table.l(i, k) + table.l(k + 1, j) == w)
                        .expect("split achieving W");
                    stack.push(Task::L(k + 1, j));
                    stack.push(Task::L(i, k));
                }
            }
            Task::V(i, j) => {
                arcs.push((i, j));
                match table.kind() {
                    ModelKind::ArcBased => stack.push(Task::L(i + 1, j - 1)),
                    ModelKind::LoopBased => {
                        if let Some(t) = loop_closing(table, model, i, j) {
                            stack.push(t);
                        }
                    }
                }
            }
            Task::M1(a, b) => {
                let target = table.aux(Aux::M1, a, b);
                if table.aux(Aux::M1, a + 1, b) == target {
                    stack.push(Task::M1(a + 1, b));
                    continue;
                }
                let k = (a + 1..=b)
                    .find(|&k| table.v(a, k) + table.aux(Aux::M1, k + 1, b).max(0.0) == target)
                    .expect("component achieving M1");
                if table.aux(Aux::M1, k + 1, b) > 0.0 {
                    stack.push(Task::M1(k + 1, b));
                }
                stack.push(Task::V(a, k));
            }
            Task::M2(a, b) => {
                let target = table.aux(Aux::M2, a, b);
                if table.aux(Aux::M2, a + 1, b) == target {
                    stack.push(Task::M2(a + 1, b));
                    continue;
                }
                let k = (a + 1..b)
                    .find(|&k| table.v(a, k) + table.aux(Aux::M1, k + 1, b) == target)
                    .expect("component achieving M2");
                stack.push(Task::M1(k + 1, b));
                stack.push(Task::V(a, k));
            }
        }
    }
    Diagram::new(n, arcs).expect("traceback yields a valid diagram")
}

/// Inner task of a loop-model arc `(i, j)`, `None` for a hairpin.
fn loop_closing(table: &FoldTable, model: &EnergyModel, i: usize, j: usize) -> Option<Task> {
    let s = &model.loop_scores;
    let v = table.v(i, j);
    if v == s.hairpin {
        return None;
    }
    let best = table.aux(Aux::BestInner, i + 1, j - 1);
    if s.interior + best == v {
        for p in i + 1..j {
            for q in p + 1..j {
                if table.v(p, q) == best {
                    return Some(Task::V(p, q));
                }
            }
        }
    }
    debug_assert_eq!(s.multi + table.aux(Aux::M2, i + 1, j - 1), v);
    Some(Task::M2(i + 1, j - 1))
}
