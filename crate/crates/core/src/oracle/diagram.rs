use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Arc set over the backbone `1..=n`. Arcs are stored sorted, each vertex
/// belongs to at most one arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Diagram {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

/// Disc, ribbon and boundary counts of the fattened diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub v: usize,
    pub e: usize,
    pub r: usize,
    pub euler: i64,
    pub genus: u32,
}

const BRACKETS: [(char, char); 4] = [('(', ')'), ('[', ']'), ('{', '}'), ('<', '>')];

impl Diagram {
    pub fn new(n: usize, mut arcs: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for &(i, j) in &arcs {
            if !(1 <= i && i < j && j <= n) {
                return Err(Error::ContractViolation(format!(
                    "arc ({i}, {j}) is not inside 1..={n}"
                )));
            }
            for v in [i, j] {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::ContractViolation(format!(
                        "vertex {v} is incident to more than one arc"
                    )));
                }
            }
        }
        arcs.sort_unstable();
        Ok(Diagram { n, arcs })
    }

    pub fn empty(n: usize) -> Self {
        Diagram {
            n,
            arcs: Vec::new(),
        }
    }

    /// Builds from a partner table indexed `1..=n` (index 0 ignored).
    pub(crate) fn from_partners(partner: &[Option<usize>]) -> Self {
        let n = partner.len() - 1;
        let arcs = (1..=n)
            .filter_map(|i| partner[i].filter(|&j| j > i).map(|j| (i, j)))
            .collect();
        Diagram { n, arcs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Partner of every vertex, indexed `1..=n`.
    pub fn partners(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.n + 1];
        for &(i, j) in &self.arcs {
            p[i] = Some(j);
            p[j] = Some(i);
        }
        p
    }

    pub fn has_one_arc(&self) -> bool {
        self.arcs.iter().any(|&(i, j)| j == i + 1)
    }

    /// A structure is a diagram without 1-arcs.
    pub fn is_structure(&self) -> bool {
        !self.has_one_arc()
    }

    pub fn is_noncrossing(&self) -> bool {
        let mut stack = Vec::new();
        let partner = self.partners();
        for v in 1..=self.n {
            if let Some(p) = partner[v] {
                if p > v {
                    stack.push(p);
                } else if stack.pop() != Some(v) {
                    return false;
                }
            }
        }
        true
    }

    pub fn genus(&self) -> u32 {
        genus(self).genus
    }

    pub fn is_irreducible(&self) -> bool {
        is_irreducible(self)
    }

    /// Mirror image `i ↦ n + 1 − i`.
    pub fn reflect(&self) -> Diagram {
        let n = self.n;
        let arcs = self
            .arcs
            .iter()
            .map(|&(i, j)| (n + 1 - j, n + 1 - i))
            .collect();
        Diagram::new(n, arcs).expect("reflection preserves validity")
    }

    /// Dot-bracket string. Crossing arcs are spread over `[]`, `{}`, `<>`.
    pub fn to_dot_bracket(&self) -> String {
        let mut out = vec!['.'; self.n];
        let mut pages: Vec<Vec<(usize, usize)>> = Vec::new();
        for &(i, j) in &self.arcs {
            let crosses = |&(a, b): &(usize, usize)| (a < i && i < b && b < j) || (i < a && a < j && j < b);
            let page = match pages.iter().position(|p| !p.iter().any(crosses)) {
                Some(k) => k,
                None => {
                    pages.push(Vec::new());
                    pages.len() - 1
                }
            };
            pages[page].push((i, j));
            let (open, close) = BRACKETS[page.min(BRACKETS.len() - 1)];
            out[i - 1] = open;
            out[j - 1] = close;
        }
        out.into_iter().collect()
    }

    pub fn from_dot_bracket(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.trim().chars().collect();
        let mut stacks: Vec<Vec<usize>> = vec![Vec::new(); BRACKETS.len()];
        let mut arcs = Vec::new();
        for (k, &c) in chars.iter().enumerate() {
            let pos = k + 1;
            if c == '.' {
                continue;
            }
            if let Some(b) = BRACKETS.iter().position(|&(o, _)| o == c) {
                stacks[b].push(pos);
            } else if let Some(b) = BRACKETS.iter().position(|&(_, cl)| cl == c) {
                let open = stacks[b].pop().ok_or_else(|| {
                    Error::ContractViolation(format!("unbalanced {c:?} at position {pos}"))
                })?;
                arcs.push((open, pos));
            } else {
                return Err(Error::ContractViolation(format!(
                    "unexpected {c:?} in dot-bracket string"
                )));
            }
        }
        if stacks.iter().any(|s| !s.is_empty()) {
            return Err(Error::ContractViolation("unclosed bracket".into()));
        }
        Diagram::new(chars.len(), arcs)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dot_bracket())
    }
}

// Half-edge slots at a backbone vertex, in counterclockwise order starting
// from the right-pointing backbone edge: right, up (arc), left.
const RIGHT: usize = 0;
const ARC: usize = 1;
const LEFT: usize = 2;

/// Genus of the closed surface obtained from the fattened diagram.
///
/// Boundary components are traced as the cycles of `σ ∘ α` on half-edges,
/// with `α` the edge involution and `σ` the counterclockwise rotation at each
/// vertex. An empty backbone is reported as a single disc.
pub fn genus(d: &Diagram) -> GenusReport {
    let n = d.n;
    if n == 0 {
        return GenusReport {
            v: 1,
            e: 0,
            r: 1,
            euler: 2,
            genus: 0,
        };
    }
    let partner = d.partners();
    let present = |v: usize, slot: usize| -> bool {
        match slot {
            RIGHT => v < n,
            ARC => partner[v].is_some(),
            _ => v > 1,
        }
    };
    let id = |v: usize, slot: usize| (v - 1) * 3 + slot;
    let alpha = |v: usize, slot: usize| -> (usize, usize) {
        match slot {
            RIGHT => (v + 1, LEFT),
            ARC => (partner[v].expect("arc half-edge"), ARC),
            _ => (v - 1, RIGHT),
        }
    };
    let sigma = |v: usize, slot: usize| -> (usize, usize) {
        let mut s = slot;
        loop {
            s = (s + 1) % 3;
            if present(v, s) {
                return (v, s);
            }
        }
    };

    let mut visited = vec![false; 3 * n];
    let mut r = 0;
    let mut isolated = 0;
    for v in 1..=n {
        let slots: Vec<usize> = (0..3).filter(|&s| present(v, s)).collect();
        if slots.is_empty() {
            isolated += 1;
        }
        for s in slots {
            if visited[id(v, s)] {
                continue;
            }
            r += 1;
            let (mut cv, mut cs) = (v, s);
            while !visited[id(cv, cs)] {
                visited[id(cv, cs)] = true;
                let (av, aslot) = alpha(cv, cs);
                (cv, cs) = sigma(av, aslot);
            }
        }
    }
    r += isolated;
    let e = (n - 1) + d.arc_count();
    let euler = n as i64 - e as i64 + r as i64;
    debug_assert!(euler <= 2 && euler % 2 == 0);
    GenusReport {
        v: n,
        e,
        r,
        euler,
        genus: (1 - euler / 2) as u32,
    }
}

/// True iff no backbone cut `k | k+1` avoids every arc.
pub fn is_irreducible(d: &Diagram) -> bool {
    if d.n == 0 {
        return false;
    }
    // covered[k] counts arcs (i, j) with i ≤ k < j.
    let mut delta = vec![0i64; d.n + 2];
    for &(i, j) in &d.arcs {
        delta[i] += 1;
        delta[j] -= 1;
    }
    let mut running = 0;
    (1..d.n).all(|k| {
        running += delta[k];
        running > 0
    })
}
