//! Sequences, pairing rules and the two scoring models.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::Diagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Base {
    A,
    C,
    G,
    U,
}

impl Base {
    pub const ALL: [Base; 4] = [Base::A, Base::C, Base::G, Base::U];

    pub fn as_char(self) -> char {
        match self {
            Base::A => 'A',
            Base::C => 'C',
            Base::G => 'G',
            Base::U => 'U',
        }
    }
}

/// Watson-Crick pairs, optionally with the G-U wobble.
pub fn bases_pair(a: Base, b: Base, allow_wobble: bool) -> bool {
    use Base::*;
    match (a, b) {
        (A, U) | (U, A) | (G, C) | (C, G) => true,
        (G, U) | (U, G) => allow_wobble,
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequence(Vec<Base>);

impl Sequence {
    pub fn new(bases: Vec<Base>) -> Self {
        Sequence(bases)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bases(&self) -> &[Base] {
        &self.0
    }

    /// Base at 1-based position `i`.
    #[inline]
    pub fn at(&self, i: usize) -> Base {
        self.0[i - 1]
    }

    /// Sub-sequence over the 1-based closed interval `[i, j]`.
    pub fn slice(&self, i: usize, j: usize) -> Sequence {
        Sequence(self.0[i - 1..j].to_vec())
    }
}

impl FromStr for Sequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .enumerate()
            .map(|(position, c)| match c.to_ascii_uppercase() {
                'A' => Ok(Base::A),
                'C' => Ok(Base::C),
                'G' => Ok(Base::G),
                'U' => Ok(Base::U),
                found => Err(Error::BadSequence { found, position }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Sequence)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|b| write!(f, "{}", b.as_char()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    ArcBased,
    LoopBased,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopScores {
    pub hairpin: f64,
    pub interior: f64,
    pub multi: f64,
}

impl Default for LoopScores {
    fn default() -> Self {
        LoopScores {
            hairpin: -0.5,
            interior: 1.0,
            multi: -5.0,
        }
    }
}

/// Scoring model. Scores are maximised.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyModel {
    pub kind: ModelKind,
    /// Accept G-U in addition to A-U and G-C.
    #[serde(default = "default_true")]
    pub allow_wobble: bool,
    /// Score per base pair in the arc-based model.
    #[serde(default = "default_arc_score")]
    pub arc_score: f64,
    #[serde(default)]
    pub loop_scores: LoopScores,
    /// Minimum number of vertices strictly inside any arc; 1 forbids 1-arcs.
    #[serde(default = "default_min_hairpin")]
    pub min_hairpin_unpaired: usize,
}

fn default_true() -> bool {
    true
}
fn default_arc_score() -> f64 {
    1.0
}
fn default_min_hairpin() -> usize {
    1
}

impl EnergyModel {
    pub fn arc_based() -> Self {
        EnergyModel {
            kind: ModelKind::ArcBased,
            allow_wobble: true,
            arc_score: 1.0,
            loop_scores: LoopScores::default(),
            min_hairpin_unpaired: 1,
        }
    }

    pub fn loop_based() -> Self {
        EnergyModel {
            kind: ModelKind::LoopBased,
            ..Self::arc_based()
        }
    }

    /// Whether positions `i < j` (1-based) may form an arc.
    #[inline]
    pub fn can_pair(&self, seq: &Sequence, i: usize, j: usize) -> bool {
        j > i + self.min_hairpin_unpaired
            && bases_pair(seq.at(i), seq.at(j), self.allow_wobble)
    }

    /// `f(i, j)` of the arc-based model: the arc score, or `-∞` if the pair is
    /// not allowed.
    #[inline]
    pub fn pair_score(&self, seq: &Sequence, i: usize, j: usize) -> f64 {
        if self.can_pair(seq, i, j) {
            self.arc_score
        } else {
            f64::NEG_INFINITY
        }
    }

    /// Scores a structure from scratch. The loop model only accepts
    /// non-crossing diagrams.
    pub fn score_structure(&self, seq: &Sequence, d: &Diagram) -> Result<f64> {
        if d.n() != seq.len() {
            return Err(Error::ContractViolation(format!(
                "diagram over {} vertices scored against a sequence of length {}",
                d.n(),
                seq.len()
            )));
        }
        if let Some(&(i, j)) = d.arcs().iter().find(|&&(i, j)| !self.can_pair(seq, i, j)) {
            return Err(Error::ContractViolation(format!(
                "arc ({i}, {j}) violates the pairing rule"
            )));
        }
        match self.kind {
            ModelKind::ArcBased => Ok(d.arc_count() as f64 * self.arc_score),
            ModelKind::LoopBased => {
                if !d.is_noncrossing() {
                    return Err(Error::UnsupportedModel(
                        "loop-based scoring is defined for non-crossing structures only".into(),
                    ));
                }
                Ok(loop_score(d, &self.loop_scores))
            }
        }
    }
}

/// Sum of loop scores of a non-crossing diagram; the exterior loop scores 0.
fn loop_score(d: &Diagram, scores: &LoopScores) -> f64 {
    // children[k] = number of arcs directly enclosed by arc k
    let arcs = d.arcs();
    let mut children = vec![0usize; arcs.len()];
    let mut open: Vec<usize> = Vec::new();
    let partner = d.partners();
    let mut arc_at = vec![usize::MAX; d.n() + 1];
    for (k, &(i, _)) in arcs.iter().enumerate() {
        arc_at[i] = k;
    }
    for v in 1..=d.n() {
        match partner[v] {
            Some(p) if p > v => {
                if let Some(&parent) = open.last() {
                    children[parent] += 1;
                }
                open.push(arc_at[v]);
            }
            Some(_) => {
                open.pop();
            }
            None => {}
        }
    }
    children
        .iter()
        .map(|&c| match c {
            0 => scores.hairpin,
            1 => scores.interior,
            _ => scores.multi,
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> Sequence {
        s.parse().unwrap()
    }

    #[test]
    fn parse_rejects_t() {
        assert!(matches!(
            "ACGT".parse::<Sequence>(),
            Err(Error::BadSequence { found: 'T', position: 3 })
        ));
        assert_eq!(seq("acgu").to_string(), "ACGU");
    }

    #[test]
    fn six_of_sixteen_pairs_allowed() {
        let n = Base::ALL
            .iter()
            .flat_map(|&a| Base::ALL.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| bases_pair(a, b, true))
            .count();
        assert_eq!(n, 6);
    }

    #[test]
    fn no_one_arcs() {
        let m = EnergyModel::arc_based();
        let s = seq("GCGC");
        assert!(!m.can_pair(&s, 2, 3));
        assert!(m.can_pair(&s, 1, 4));
        assert_eq!(m.pair_score(&s, 1, 2), f64::NEG_INFINITY);
    }

    #[test]
    fn loop_scores_by_loop_type() {
        let m = EnergyModel::loop_based();
        let s = seq("GGGAAACCC");
        let hairpin = Diagram::from_dot_bracket("(.......)").unwrap();
        assert_eq!(m.score_structure(&s, &hairpin).unwrap(), -0.5);
        let stack = Diagram::from_dot_bracket("(((...)))").unwrap();
        assert_eq!(m.score_structure(&s, &stack).unwrap(), 1.5);

        let s = seq("GGAACGAACAC");
        let multi = Diagram::from_dot_bracket("((..)(..).)").unwrap();
        assert_eq!(m.score_structure(&s, &multi).unwrap(), -6.0);
        assert_eq!(
            EnergyModel::arc_based().score_structure(&s, &multi).unwrap(),
            3.0
        );
    }
}
