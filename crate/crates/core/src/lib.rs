//! Numerical semigroups of bounded genus, enumerated with the seeds
//! algorithm.
//!
//! A [`SemigroupNode`] pairs a gap bitstream with its seeds table; children
//! are produced with a handful of word operations. On top of the tree walk
//! sit counting by genus, the Eliahou constant, the Wilf inequality and a
//! membership test for Delgado's family of semigroups with negative Eliahou
//! constant.

pub mod analysis;
pub mod bits;
pub mod cli;
pub mod error;
pub mod explorer;
pub mod oracle;
pub mod seeds;
pub mod semigroup;

pub use analysis::{
    delgado_params, eliahou_constant, is_delgado_member, wilf_check, DelgadoParams, EliahouReport,
    WilfReport,
};
pub use error::{Error, Result};
pub use explorer::{
    explore, explore_parallel, explore_streaming, frontier, Analysis, ExplorationConfig, GenusStats,
};
pub use seeds::{init_seeds_table, root_node, SeedsTable, SemigroupNode};
pub use semigroup::{GapBitstream, SemigroupStats, MAX_GENUS};
