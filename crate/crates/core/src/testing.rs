//! Fixtures and strategies shared by the unit tests.

use proptest::prelude::*;

use crate::sequence::Sequence;

pub const SIZE21_WORD: &str = "1 1 5 5 1 3 8 8 5 5 1 2 2 4 3 7 3 9 2 6 1";
pub const SIZE21_TREE: &str = "((((. 1 (. 1 .)) 5 (. 5 ((. 1 .) 3 .))) 8 (. 8 ((. 5 (. 5 \
    (((. 1 .) 2 (. 2 .)) 4 (. 3 .)))) 7 (. 3 .)))) 9 ((. 2 .) 6 (. 1 .)))";
pub const SIZE21_COVER: &str = "{1,1}{1}{1}{2,2}{5,5,3}{2}{5,5,4,3}{8,8,7,3}{9,6,1}";
pub const SIZE21_MATRIX: &[&[u64]] = &[
    &[2],
    &[1, 0],
    &[1, 0, 0],
    &[0, 2, 0, 0],
    &[0, 0, 1, 0, 2],
    &[0, 1, 0, 0, 0, 0],
    &[0, 0, 1, 1, 2, 0, 0],
    &[0, 0, 1, 0, 0, 0, 1, 2],
    &[1, 0, 0, 0, 0, 1, 0, 0, 1],
];

pub const SIZE15_COVER: &str = "{1}{2,1}{2}{2,1}{5,4,2}{5,3,2}{7,6,3}";
pub const SIZE15_WORD: &str = "121521427523263";

pub const SIZE10_WORD: &str = "1612423553";
pub const SIZE10_FLIP: &str = "1611214235";
pub const SUM_RIGHT: &str = "113312443";
pub const SUM_RESULT: &str = "1113311224432643553";

pub fn seq(s: &str) -> Sequence {
    s.parse().unwrap()
}

/// Every word of length `n` over `1..=n`, in lexicographic order.
pub fn endofunctions(n: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (n as u64).pow(n as u32);
    (0..total).map(move |mut code| {
        let mut w = vec![0u32; n];
        for slot in w.iter_mut().rev() {
            *slot = (code % n as u64) as u32 + 1;
            code /= n as u64;
        }
        w
    })
}

pub fn modasc(n: usize) -> Vec<Sequence> {
    endofunctions(n)
        .map(|w| Sequence::new(w).unwrap())
        .filter(|x| x.is_modified_ascent_sequence())
        .collect()
}

/// Raw blocks of a random Fishburn cover with at most `max_k` blocks.
///
/// Blocks are drawn freely below the diagonal, then patched: an empty block
/// gets a 1, and a value missing from the union is added to the last block.
pub fn cover_blocks(max_k: u32, max_block: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    (1..=max_k)
        .prop_flat_map(move |k| {
            (1..=k)
                .map(|i| proptest::collection::vec(1..=i, 0..=max_block))
                .collect::<Vec<_>>()
        })
        .prop_map(|mut blocks| {
            let k = blocks.len();
            let mut seen = vec![false; k + 1];
            for b in &mut blocks {
                if b.is_empty() {
                    b.push(1);
                }
                for &j in b.iter() {
                    seen[j as usize] = true;
                }
            }
            for (j, s) in seen.iter().enumerate().skip(1) {
                if !s {
                    blocks[k - 1].push(j as u32);
                }
            }
            blocks
        })
}
