use crate::error::{Error, Result};

use super::{enumerate_diagrams, enumerate_matchings, genus, is_irreducible};

/// Largest backbone for structure counting.
pub const MAX_COUNT_VERTICES: usize = 14;

/// Structure counts over `n` vertices, split by genus and arc count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTally {
    pub n: usize,
    /// `all[g][l]`: structures of genus `g` with `l` arcs.
    pub all: Vec<Vec<u64>>,
    /// Same, restricted to irreducible structures.
    pub irreducible: Vec<Vec<u64>>,
}

impl StructureTally {
    pub fn total(&self, g: usize) -> u64 {
        self.all.get(g).map_or(0, |row| row.iter().sum())
    }

    pub fn total_irreducible(&self, g: usize) -> u64 {
        self.irreducible.get(g).map_or(0, |row| row.iter().sum())
    }

    pub fn by_arcs(&self, g: usize, irreducible: bool) -> Vec<u64> {
        let table = if irreducible { &self.irreducible } else { &self.all };
        table
            .get(g)
            .cloned()
            .unwrap_or_else(|| vec![0; self.n / 2 + 1])
    }
}

/// Enumerates every structure over `n` vertices once and tallies genus,
/// arc count and irreducibility.
pub fn tally_structures(n: usize) -> Result<StructureTally> {
    if n > MAX_COUNT_VERTICES {
        return Err(Error::CapExceeded {
            size: n,
            cap: MAX_COUNT_VERTICES,
        });
    }
    let width = n / 2 + 1;
    let rows = n / 4 + 1;
    let mut all = vec![vec![0u64; width]; rows];
    let mut irreducible = vec![vec![0u64; width]; rows];
    for d in enumerate_diagrams(n, true)? {
        let g = genus(&d).genus as usize;
        let l = d.arc_count();
        all[g][l] += 1;
        if n > 0 && is_irreducible(&d) {
            irreducible[g][l] += 1;
        }
    }
    Ok(StructureTally { n, all, irreducible })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureCounts {
    pub total: u64,
    /// Counts by arc count; empty unless requested.
    pub by_arcs: Vec<u64>,
}

/// Number of genus-`g` structures over `n` vertices.
pub fn count_structures(
    n: usize,
    g: u32,
    irreducible_only: bool,
    by_arcs: bool,
) -> Result<StructureCounts> {
    let tally = tally_structures(n)?;
    let g = g as usize;
    let total = if irreducible_only {
        tally.total_irreducible(g)
    } else {
        tally.total(g)
    };
    Ok(StructureCounts {
        total,
        by_arcs: if by_arcs {
            tally.by_arcs(g, irreducible_only)
        } else {
            Vec::new()
        },
    })
}

/// Genus distribution of perfect matchings with `arcs` arcs: entry `g` is
/// the number of genus-`g` matchings.
pub fn matching_genus_distribution(arcs: usize) -> Result<Vec<u64>> {
    let mut dist = vec![0u64; arcs / 2 + 1];
    for d in enumerate_matchings(arcs)? {
        dist[genus(&d).genus as usize] += 1;
    }
    Ok(dist)
}

/// `c_g(n)` for `n = 0..=max_arcs`.
pub fn matching_counts(g: u32, max_arcs: usize) -> Result<Vec<u64>> {
    (0..=max_arcs)
        .map(|a| Ok(matching_genus_distribution(a)?.get(g as usize).copied().unwrap_or(0)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(count_structures(6, 0, false, false).unwrap().total, 17);
        assert_eq!(count_structures(4, 1, false, false).unwrap().total, 1);
        assert_eq!(count_structures(3, 0, true, false).unwrap().total, 1);
        let by = count_structures(3, 0, false, true).unwrap().by_arcs;
        assert_eq!(by, vec![1, 1]);
    }

    #[test]
    fn harer_zagier_small_values() {
        assert_eq!(matching_genus_distribution(2).unwrap(), vec![2, 1]);
        assert_eq!(matching_genus_distribution(3).unwrap(), vec![5, 10]);
        assert_eq!(matching_genus_distribution(4).unwrap(), vec![14, 70, 21]);
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(
            tally_structures(15),
            Err(Error::CapExceeded { size: 15, cap: 14 })
        ));
    }
}
