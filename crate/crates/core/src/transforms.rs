//! Flip and sum of Fishburn covers and modified ascent sequences, and the
//! cross-structure classification.
//!
//! "Self-modified" is taken to mean that every block of the cover is
//! diagonal (`i` in `B_i` for all `i`). The equivalent conditions on the
//! other structures are a comb-shaped tree, a positive matrix diagonal, and a
//! poset with a chain through every level.

use crate::cover::FishburnCover;
use crate::error::Result;
use crate::matrix::FishburnMatrix;
use crate::poset::IntervalPoset;
use crate::sequence::Sequence;

/// Maps every column `(i, j)` to `(k+1-j, k+1-i)`.
pub fn cover_flip(cover: &FishburnCover) -> FishburnCover {
    let k = cover.order() as u32 + 1;
    let mut blocks = vec![Vec::new(); cover.order()];
    for &(i, j) in cover.to_burge().columns() {
        blocks[(k - j) as usize - 1].push(k - i);
    }
    FishburnCover::new(blocks).expect("the flip of a cover is a cover")
}

/// Blockwise multiset union; the longer cover keeps its tail blocks.
pub fn cover_sum(a: &FishburnCover, b: &FishburnCover) -> FishburnCover {
    let (short, long) = if a.order() <= b.order() {
        (a, b)
    } else {
        (b, a)
    };
    let mut blocks = long.blocks().to_vec();
    for (block, extra) in blocks.iter_mut().zip(short.blocks()) {
        block.extend_from_slice(extra);
    }
    FishburnCover::new(blocks).expect("the sum of covers is a cover")
}

pub fn flip_modasc(x: &Sequence) -> Result<Sequence> {
    let cover = FishburnCover::from_modasc(x)?;
    Ok(cover_flip(&cover).to_tree().in_order())
}

pub fn sum_modasc(x: &Sequence, y: &Sequence) -> Result<Sequence> {
    let a = FishburnCover::from_modasc(x)?;
    let b = FishburnCover::from_modasc(y)?;
    Ok(cover_sum(&a, &b).to_tree().in_order())
}

/// Four readings of "primitive".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimitiveQuadruple {
    pub tree_strictly_decreasing: bool,
    pub sequence_has_no_flat_steps: bool,
    pub matrix_binary: bool,
    pub poset_primitive: bool,
}

/// Four readings of "self-modified".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelfModifiedQuadruple {
    pub tree_comb_shaped: bool,
    pub cover_all_diagonal: bool,
    pub matrix_positive_diagonal: bool,
    pub poset_max_chain: bool,
}

impl PrimitiveQuadruple {
    pub fn flags(&self) -> [bool; 4] {
        [
            self.tree_strictly_decreasing,
            self.sequence_has_no_flat_steps,
            self.matrix_binary,
            self.poset_primitive,
        ]
    }

    pub fn agrees(&self) -> bool {
        all_equal(self.flags())
    }
}

impl SelfModifiedQuadruple {
    pub fn flags(&self) -> [bool; 4] {
        [
            self.tree_comb_shaped,
            self.cover_all_diagonal,
            self.matrix_positive_diagonal,
            self.poset_max_chain,
        ]
    }

    pub fn agrees(&self) -> bool {
        all_equal(self.flags())
    }
}

fn all_equal(flags: [bool; 4]) -> bool {
    flags.iter().all(|&f| f == flags[0])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub primitive: PrimitiveQuadruple,
    pub self_modified: SelfModifiedQuadruple,
}

/// Evaluates each condition on its own structure, so that the equivalences
/// can be checked rather than assumed.
pub fn classify_all(x: &Sequence) -> Result<Classification> {
    let cover = FishburnCover::from_modasc(x)?;
    let tree = crate::tree::LabeledBinaryTree::from_sequence(x)?.classify();
    let matrix = FishburnMatrix::from_cover(&cover).classify();
    let poset = IntervalPoset::from_cover(&cover).classify();
    Ok(Classification {
        primitive: PrimitiveQuadruple {
            tree_strictly_decreasing: tree.strictly_decreasing,
            sequence_has_no_flat_steps: x.is_primitive(),
            matrix_binary: matrix.is_binary,
            poset_primitive: poset.is_primitive,
        },
        self_modified: SelfModifiedQuadruple {
            tree_comb_shaped: tree.comb_shaped,
            cover_all_diagonal: cover.is_all_diagonal(),
            matrix_positive_diagonal: matrix.has_positive_diagonal,
            poset_max_chain: poset.has_max_chain,
        },
    })
}
