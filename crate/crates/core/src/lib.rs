//! Modified ascent sequences, Fishburn trees, Fishburn covers, Fishburn
//! matrices and (2+2)-free posets, together with the bijections relating
//! them, the flip and sum operations, and exhaustive enumeration.

pub mod cover;
pub mod enumeration;
pub mod error;
pub mod matrix;
pub mod poset;
pub mod sequence;
pub mod transforms;
pub mod tree;

#[cfg(test)]
mod testing;

pub use cover::{modasc_blabels, BurgeWord, FishburnCover};
pub use enumeration::{
    count, enumerate, fishburn_numbers, fubini_numbers, verify, CheckOutcome, CountTable, Kind,
    Limits, Report, Status, Structure,
};
pub use error::{Error, Result};
pub use matrix::{FishburnMatrix, MatrixClass};
pub use poset::{canonical_labels, IntervalPoset, PosetClass, RelationInput};
pub use sequence::{Ballot, IndexedEntrySet, MaxDecomposition, Sequence, SequenceClass};
pub use transforms::{
    classify_all, cover_flip, cover_sum, flip_modasc, sum_modasc, Classification,
    PrimitiveQuadruple, SelfModifiedQuadruple,
};
pub use tree::{LabeledBinaryTree, NodeRef, RPathDecomposition, TreeClass};
