use crate::error::{Error, Result};

use super::Diagram;

/// Largest backbone accepted by the enumerators.
pub const MAX_DIAGRAM_VERTICES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Choice {
    Unpaired,
    Pair(usize),
}

/// Depth-first generator of diagrams over `1..=n`.
///
/// Vertices are decided left to right; each free vertex is first left
/// unpaired, then paired with each admissible free partner in increasing
/// order. Every admissible diagram is produced exactly once.
pub struct DiagramIter<F> {
    n: usize,
    allowed: F,
    perfect: bool,
    partner: Vec<Option<usize>>,
    stack: Vec<(usize, Choice)>,
    started: bool,
    done: bool,
}

impl<F: Fn(usize, usize) -> bool> DiagramIter<F> {
    fn new(n: usize, allowed: F, perfect: bool) -> Result<Self> {
        if n > MAX_DIAGRAM_VERTICES {
            return Err(Error::CapExceeded {
                size: n,
                cap: MAX_DIAGRAM_VERTICES,
            });
        }
        Ok(DiagramIter {
            n,
            allowed,
            perfect,
            partner: vec![None; n + 1],
            stack: Vec::new(),
            started: false,
            done: false,
        })
    }

    fn next_pair(&self, v: usize, after: usize) -> Option<usize> {
        (after + 1..=self.n).find(|&j| self.partner[j].is_none() && (self.allowed)(v, j))
    }

    fn first_choice(&self, v: usize) -> Option<Choice> {
        if self.perfect {
            self.next_pair(v, v).map(Choice::Pair)
        } else {
            Some(Choice::Unpaired)
        }
    }

    fn apply(&mut self, v: usize, c: Choice) {
        if let Choice::Pair(j) = c {
            self.partner[v] = Some(j);
            self.partner[j] = Some(v);
        }
        self.stack.push((v, c));
    }

    /// Fills every undecided vertex from `from` on. Returns false on a dead end.
    fn descend(&mut self, from: usize) -> bool {
        let mut v = from;
        while v <= self.n {
            if self.partner[v].is_none() {
                match self.first_choice(v) {
                    Some(c) => self.apply(v, c),
                    None => return false,
                }
            }
            v += 1;
        }
        true
    }

    /// Moves to the next complete assignment in depth-first order.
    fn advance(&mut self) -> bool {
        loop {
            let Some((v, c)) = self.stack.pop() else {
                return false;
            };
            let after = match c {
                Choice::Unpaired => v,
                Choice::Pair(j) => {
                    self.partner[v] = None;
                    self.partner[j] = None;
                    j
                }
            };
            if let Some(j) = self.next_pair(v, after) {
                self.apply(v, Choice::Pair(j));
                if self.descend(v + 1) {
                    return true;
                }
            }
        }
    }
}

impl<F: Fn(usize, usize) -> bool> Iterator for DiagramIter<F> {
    type Item = Diagram;

    fn next(&mut self) -> Option<Diagram> {
        if self.done {
            return None;
        }
        let ok = if self.started {
            self.advance()
        } else {
            self.started = true;
            self.descend(1) || self.advance()
        };
        if ok {
            Some(Diagram::from_partners(&self.partner))
        } else {
            self.done = true;
            None
        }
    }
}

/// All diagrams over `n` vertices, optionally excluding 1-arcs.
pub fn enumerate_diagrams(
    n: usize,
    forbid_one_arcs: bool,
) -> Result<DiagramIter<impl Fn(usize, usize) -> bool>> {
    DiagramIter::new(n, move |i, j| !(forbid_one_arcs && j == i + 1), false)
}

/// Diagrams whose arcs all satisfy `allowed(i, j)` (1-based, `i < j`).
pub fn enumerate_diagrams_with<F: Fn(usize, usize) -> bool>(
    n: usize,
    allowed: F,
) -> Result<DiagramIter<F>> {
    DiagramIter::new(n, allowed, false)
}

/// Perfect matchings on `2 * arcs` points.
pub fn enumerate_matchings(arcs: usize) -> Result<DiagramIter<impl Fn(usize, usize) -> bool>> {
    DiagramIter::new(2 * arcs, |_, _| true, true)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    /// Number of partial matchings (involutions) on n points.
    fn involutions(n: usize) -> usize {
        let mut t = vec![1usize, 1];
        for k in 2..=n {
            t.push(t[k - 1] + (k - 1) * t[k - 2]);
        }
        t[n]
    }

    #[test]
    fn counts_match_involution_numbers() {
        for n in 0..=9 {
            let all: Vec<_> = enumerate_diagrams(n, false).unwrap().collect();
            assert_eq!(all.len(), involutions(n), "n={n}");
            let unique: HashSet<_> = all.iter().collect();
            assert_eq!(unique.len(), all.len());
        }
    }

    #[test]
    fn small_structure_enumerations() {
        assert_eq!(enumerate_diagrams(2, true).unwrap().count(), 1);
        let three: Vec<_> = enumerate_diagrams(3, true).unwrap().collect();
        assert_eq!(three.len(), 2);
        assert_eq!(three[0], Diagram::empty(3));
        assert_eq!(three[1].arcs(), &[(1, 3)]);
        let four: Vec<_> = enumerate_diagrams(4, true)
            .unwrap()
            .map(|d| d.arcs().to_vec())
            .collect();
        assert_eq!(
            four,
            vec![
                vec![],
                vec![(2, 4)],
                vec![(1, 3)],
                vec![(1, 3), (2, 4)],
                vec![(1, 4)]
            ]
        );
    }

    #[test]
    fn perfect_matchings_are_double_factorials() {
        let mut df = 1;
        for m in 1..=6 {
            df *= 2 * m - 1;
            assert_eq!(enumerate_matchings(m).unwrap().count(), df);
        }
        assert_eq!(enumerate_matchings(0).unwrap().count(), 1);
    }

    #[test]
    fn cap_is_a_hard_error() {
        assert!(matches!(
            enumerate_diagrams(17, true),
            Err(Error::CapExceeded { size: 17, cap: 16 })
        ));
    }
}
