//! Split-star networks `S_n^2` and two-disjoint-cycle covers.

pub mod cli;
pub mod dcc;
pub mod hamilton;
pub mod lemma_cycles;
pub mod permutation;
pub mod topology;
pub mod verify;
