//! Shared fixtures for the criterion benches.

use fishburn::{FishburnCover, Sequence};

/// A cover of order `k` and size `2k`: block `i` holds `i` and one smaller
/// value picked by a fixed multiplicative hash, so the tree has many
/// non-diagonal right paths.
pub fn wide_cover(k: u32) -> FishburnCover {
    let blocks = (1..=k)
        .map(|i| vec![i, 1 + (i.wrapping_mul(2_654_435_761) >> 7) % i])
        .collect();
    FishburnCover::new(blocks).expect("every block holds its own index")
}

/// The modified ascent sequence of [`wide_cover`].
pub fn wide_modasc(k: u32) -> Sequence {
    wide_cover(k).to_modasc()
}
