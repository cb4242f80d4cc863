//! Brute-force ground truth.
//!
//! Everything here is deliberately naive: exhaustive enumeration of
//! diagrams, genus by boundary tracing, and exhaustive optimal scoring. Hard
//! size caps are errors, never silent truncation.

mod counts;
mod diagram;
mod enumerate;
mod mfe;

pub use counts::{
    count_structures, matching_counts, matching_genus_distribution, tally_structures,
    StructureCounts, StructureTally, MAX_COUNT_VERTICES,
};
pub use diagram::{genus, is_irreducible, Diagram, GenusReport};
pub use enumerate::{
    enumerate_diagrams, enumerate_diagrams_with, enumerate_matchings, DiagramIter,
    MAX_DIAGRAM_VERTICES,
};
pub use mfe::{candidates_exhaustive, mfe_exhaustive, ScoreTable, MAX_EXHAUSTIVE_LENGTH};
