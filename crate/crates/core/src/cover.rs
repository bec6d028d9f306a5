//! Fishburn covers and their Burge-word form.
//!
//! A cover `B_1 .. B_k` lists, for each maximal right path of a Fishburn
//! tree, the multiset of labels on that path. Blocks are kept sorted weakly
//! decreasing, so equal covers compare equal structurally.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sequence::Sequence;
use crate::tree::LabeledBinaryTree;

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FishburnCover {
    blocks: Vec<Vec<u32>>,
}

/// Columns `(i, j)`, one for each `j` in `B_i`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BurgeWord {
    columns: Vec<(u32, u32)>,
}

impl FishburnCover {
    /// Sorts each block weakly decreasing and checks the cover conditions.
    pub fn new(mut blocks: Vec<Vec<u32>>) -> Result<Self> {
        let k = blocks.len();
        let mut seen = vec![false; k + 1];
        for (i, block) in blocks.iter_mut().enumerate() {
            let i = i + 1;
            if block.is_empty() {
                return Err(Error::InvalidCover(format!("block {i} is empty")));
            }
            block.sort_unstable_by(|a, b| b.cmp(a));
            if let Some(&j) = block.iter().find(|&&j| j == 0 || j as usize > i) {
                return Err(Error::InvalidCover(format!(
                    "block {i} contains {j}, outside 1..={i}"
                )));
            }
            for &j in block.iter() {
                seen[j as usize] = true;
            }
        }
        if let Some(j) = (1..=k).find(|&j| !seen[j]) {
            return Err(Error::InvalidCover(format!(
                "the blocks do not cover [{k}]: {j} appears in no block"
            )));
        }
        Ok(FishburnCover { blocks })
    }

    /// Number of blocks.
    pub fn order(&self) -> usize {
        self.blocks.len()
    }

    /// Total multiplicity.
    pub fn size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// `B_i`, weakly decreasing. `i` is 1-based.
    pub fn block(&self, i: u32) -> &[u32] {
        &self.blocks[i as usize - 1]
    }

    pub fn into_blocks(self) -> Vec<Vec<u32>> {
        self.blocks
    }

    /// Whether `i` belongs to `B_i`.
    pub fn is_diagonal(&self, i: u32) -> bool {
        self.block(i).contains(&i)
    }

    /// `D = { i : i in B_i }`.
    pub fn diagonal_set(&self) -> BTreeSet<u32> {
        (1..=self.blocks.len() as u32)
            .filter(|&i| self.is_diagonal(i))
            .collect()
    }

    pub fn is_all_diagonal(&self) -> bool {
        (1..=self.blocks.len() as u32).all(|i| self.is_diagonal(i))
    }

    /// Label multisets of the maximal right paths of a Fishburn tree.
    pub fn from_tree(tree: &LabeledBinaryTree) -> Result<Self> {
        let decomposition = tree.rpath_decomposition()?;
        let blocks = decomposition
            .paths()
            .iter()
            .map(|path| path.iter().map(|&v| tree.label(v)).collect())
            .collect();
        Ok(FishburnCover::new(blocks).expect("paths of a Fishburn tree form a cover"))
    }

    /// The unique Fishburn tree whose right paths carry these blocks.
    ///
    /// The diagonal paths are stacked into a comb, each one hanging as the
    /// left child of the first node of the next larger diagonal path. The
    /// remaining paths are then attached in decreasing order of index, each
    /// as the left child of the leftmost node (in in-order) labeled by its
    /// index.
    pub fn to_tree(&self) -> LabeledBinaryTree {
        let k = self.blocks.len();
        if k == 0 {
            return LabeledBinaryTree::empty();
        }
        let n = self.size();
        let mut labels = Vec::with_capacity(n);
        let mut left: Vec<Option<usize>> = vec![None; n];
        let mut right: Vec<Option<usize>> = vec![None; n];
        let mut head = Vec::with_capacity(k);
        for block in &self.blocks {
            head.push(labels.len());
            for (t, &j) in block.iter().enumerate() {
                if t > 0 {
                    right[labels.len() - 1] = Some(labels.len());
                }
                labels.push(j);
            }
        }
        let path = |i: usize| head[i]..head.get(i + 1).copied().unwrap_or(n);

        let diagonal: Vec<usize> = (0..k)
            .filter(|&i| self.blocks[i].contains(&(i as u32 + 1)))
            .collect();
        for w in diagonal.windows(2) {
            left[head[w[1]]] = Some(head[w[0]]);
        }
        let mut order = InOrderList::new(n);
        let mut by_label: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
        for &i in &diagonal {
            for v in path(i) {
                order.push_back(v);
                by_label[labels[v] as usize].push(v);
            }
        }

        let mut is_diagonal = vec![false; k];
        for &i in &diagonal {
            is_diagonal[i] = true;
        }
        for i in (0..k).filter(|&i| !is_diagonal[i]).rev() {
            let j = i + 1;
            let target = by_label[j]
                .iter()
                .copied()
                .min_by_key(|&v| order.tag(v))
                .unwrap_or_else(|| panic!("no placed node is labeled {j}"));
            assert!(
                left[target].is_none(),
                "leftmost node labeled {j} already has a left child"
            );
            left[target] = Some(head[i]);
            order.insert_before(target, path(i));
            for v in path(i) {
                by_label[labels[v] as usize].push(v);
            }
        }
        LabeledBinaryTree::from_arena(&labels, &left, &right, Some(head[k - 1]))
    }

    /// Builds the word directly: the diagonal blocks are written side by
    /// side in increasing index, then each remaining block, in decreasing
    /// index `j`, is inserted immediately before the leftmost `j`.
    ///
    /// Each insertion is a linear scan and splice, so this is quadratic in
    /// the worst case; [`to_tree`](Self::to_tree) followed by the in-order
    /// traversal is the near-linear route.
    pub fn to_modasc(&self) -> Sequence {
        let k = self.blocks.len() as u32;
        let mut x: Vec<u32> = Vec::with_capacity(self.size());
        for i in 1..=k {
            if self.is_diagonal(i) {
                x.extend_from_slice(self.block(i));
            }
        }
        for j in (1..=k).rev().filter(|&j| !self.is_diagonal(j)) {
            let at = x
                .iter()
                .position(|&v| v == j)
                .unwrap_or_else(|| panic!("{j} does not occur before its block is inserted"));
            x.splice(at..at, self.block(j).iter().copied());
        }
        Sequence::new(x).expect("cover entries are positive")
    }

    /// Groups the entries of a modified ascent sequence by b-label.
    pub fn from_modasc(x: &Sequence) -> Result<Self> {
        let b = modasc_blabels(x)?;
        let mut blocks = vec![Vec::new(); x.max_value() as usize];
        for (&v, &bi) in x.as_slice().iter().zip(&b) {
            blocks[bi as usize - 1].push(v);
        }
        Ok(
            FishburnCover::new(blocks)
                .expect("b-labels of a modified ascent sequence form a cover"),
        )
    }

    pub fn to_burge(&self) -> BurgeWord {
        let columns = self
            .blocks
            .iter()
            .enumerate()
            .flat_map(|(i, block)| block.iter().map(move |&j| (i as u32 + 1, j)))
            .collect();
        BurgeWord { columns }
    }

    pub fn from_burge(word: &BurgeWord) -> Result<Self> {
        let k = word.columns.last().map_or(0, |c| c.0) as usize;
        let mut blocks = vec![Vec::new(); k];
        for &(i, j) in &word.columns {
            blocks[i as usize - 1].push(j);
        }
        if let Some(i) = blocks.iter().position(Vec::is_empty) {
            return Err(Error::InvalidBurge(format!(
                "top row skips {}, so block {} would be empty",
                i + 1,
                i + 1
            )));
        }
        FishburnCover::new(blocks).map_err(|e| match e {
            Error::InvalidCover(m) => Error::InvalidBurge(m),
            other => other,
        })
    }
}

/// b-label of every position of a modified ascent sequence, computed on the
/// word itself.
///
/// The leftmost maximum of the whole word gets its own value. Splitting a
/// segment at its leftmost maximum `m`, the leftmost maximum of the suffix
/// inherits the b-label of `m`, while the leftmost maximum of the prefix gets
/// its own value when `m` is a left-to-right maximum of the word and the
/// value of `m` otherwise.
pub fn modasc_blabels(x: &Sequence) -> Result<Vec<u32>> {
    x.require_modified_ascent_sequence()?;
    let x = x.as_slice();
    let n = x.len();
    let mut b = vec![0u32; n];
    if n == 0 {
        return Ok(b);
    }
    let mut lr_max = vec![false; n];
    let mut running = 0;
    for (p, &v) in x.iter().enumerate() {
        if v > running {
            lr_max[p] = true;
            running = v;
        }
    }
    let rmq = RangeMax::new(x);
    let top = rmq.query(0, n);
    b[top] = x[top];
    let mut stack = vec![(0, n, top)];
    while let Some((lo, hi, m)) = stack.pop() {
        if lo < m {
            let p = rmq.query(lo, m);
            b[p] = if lr_max[m] { x[p] } else { x[m] };
            stack.push((lo, m, p));
        }
        if m + 1 < hi {
            let s = rmq.query(m + 1, hi);
            b[s] = b[m];
            stack.push((m + 1, hi, s));
        }
    }
    Ok(b)
}

/// Sparse table answering "position of the leftmost maximum in `lo..hi`".
struct RangeMax<'a> {
    x: &'a [u32],
    levels: Vec<Vec<u32>>,
}

impl<'a> RangeMax<'a> {
    fn new(x: &'a [u32]) -> Self {
        let mut levels = vec![(0..x.len() as u32).collect::<Vec<_>>()];
        let mut width = 1;
        while 2 * width <= x.len() {
            let prev = levels.last().expect("level 0 exists");
            let next = (0..=x.len() - 2 * width)
                .map(|i| Self::better(x, prev[i], prev[i + width]))
                .collect();
            levels.push(next);
            width *= 2;
        }
        RangeMax { x, levels }
    }

    fn better(x: &[u32], a: u32, b: u32) -> u32 {
        if x[b as usize] > x[a as usize] || (x[b as usize] == x[a as usize] && b < a) {
            b
        } else {
            a
        }
    }

    fn query(&self, lo: usize, hi: usize) -> usize {
        let level = (usize::BITS - 1 - (hi - lo).leading_zeros()) as usize;
        let row = &self.levels[level];
        Self::better(self.x, row[lo], row[hi - (1 << level)]) as usize
    }
}

/// Doubly linked list over node ids with monotone integer tags, so the
/// in-order rank of two placed nodes can be compared in constant time while
/// paths are spliced in.
struct InOrderList {
    prev: Vec<Option<usize>>,
    next: Vec<Option<usize>>,
    tag: Vec<u64>,
    head: Option<usize>,
    tail: Option<usize>,
    capacity: u64,
}

impl InOrderList {
    fn new(capacity: usize) -> Self {
        InOrderList {
            prev: vec![None; capacity],
            next: vec![None; capacity],
            tag: vec![0; capacity],
            head: None,
            tail: None,
            capacity: capacity as u64,
        }
    }

    fn spacing(&self) -> u64 {
        u64::MAX / (self.capacity + 2)
    }

    fn tag(&self, v: usize) -> u64 {
        self.tag[v]
    }

    fn push_back(&mut self, v: usize) {
        self.tag[v] = self.tail.map_or(0, |t| self.tag[t]) + self.spacing();
        self.prev[v] = self.tail;
        match self.tail {
            Some(t) => self.next[t] = Some(v),
            None => self.head = Some(v),
        }
        self.tail = Some(v);
    }

    /// Inserts the nodes of `range`, in order, right before `at`.
    fn insert_before(&mut self, at: usize, range: std::ops::Range<usize>) {
        let count = range.len() as u64;
        let mut low = self.prev[at].map_or(0, |p| self.tag[p]);
        if self.tag[at] - low <= count {
            self.relabel();
            low = self.prev[at].map_or(0, |p| self.tag[p]);
        }
        let step = (self.tag[at] - low) / (count + 1);
        let mut before = self.prev[at];
        for (t, v) in range.enumerate() {
            self.tag[v] = low + step * (t as u64 + 1);
            self.prev[v] = before;
            match before {
                Some(p) => self.next[p] = Some(v),
                None => self.head = Some(v),
            }
            before = Some(v);
        }
        let last = before.expect("range is nonempty");
        self.next[last] = Some(at);
        self.prev[at] = Some(last);
    }

    fn relabel(&mut self) {
        let spacing = self.spacing();
        let mut tag = 0;
        let mut cur = self.head;
        while let Some(v) = cur {
            tag += spacing;
            self.tag[v] = tag;
            cur = self.next[v];
        }
    }
}

impl BurgeWord {
    /// Checks `j <= i` in every column, weakly increasing tops, and weakly
    /// decreasing bottoms within equal tops.
    pub fn new(columns: Vec<(u32, u32)>) -> Result<Self> {
        for (c, &(i, j)) in columns.iter().enumerate() {
            if j == 0 || i == 0 {
                return Err(Error::InvalidBurge(format!(
                    "column {} has a zero entry",
                    c + 1
                )));
            }
            if j > i {
                return Err(Error::InvalidBurge(format!(
                    "column {} is ({i}, {j}) with bottom above top",
                    c + 1
                )));
            }
        }
        for (c, w) in columns.windows(2).enumerate() {
            let ((i0, j0), (i1, j1)) = (w[0], w[1]);
            if i1 < i0 {
                return Err(Error::InvalidBurge(format!(
                    "top row decreases at column {}",
                    c + 2
                )));
            }
            if i1 == i0 && j1 > j0 {
                return Err(Error::InvalidBurge(format!(
                    "bottom row increases within top {i0} at column {}",
                    c + 2
                )));
            }
        }
        Ok(BurgeWord { columns })
    }

    pub fn columns(&self) -> &[(u32, u32)] {
        &self.columns
    }

    pub fn top(&self) -> Vec<u32> {
        self.columns.iter().map(|c| c.0).collect()
    }

    pub fn bottom(&self) -> Vec<u32> {
        self.columns.iter().map(|c| c.1).collect()
    }
}

impl fmt::Display for FishburnCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in &self.blocks {
            f.write_str("{")?;
            for (t, j) in block.iter().enumerate() {
                if t > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{j}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

impl FromStr for FishburnCover {
    type Err = Error;

    /// Reads `{1,1}{1}...`; whitespace is ignored. Blocks need not be sorted.
    fn from_str(s: &str) -> Result<Self> {
        let err = |m: String| Error::parse("cover", m);
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut blocks = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('{')
                .ok_or_else(|| err(format!("expected '{{' at {rest:?}")))?;
            let close = body
                .find('}')
                .ok_or_else(|| err("unterminated block".to_string()))?;
            let inner = &body[..close];
            let block = if inner.is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|t| {
                        t.parse::<u32>()
                            .map_err(|e| err(format!("bad entry {t:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            blocks.push(block);
            rest = &body[close + 1..];
        }
        FishburnCover::new(blocks)
    }
}

impl fmt::Display for BurgeWord {
    /// Two lines, top row then bottom row, with no trailing newline.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |v: Vec<u32>| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        write!(f, "{}\n{}", row(self.top()), row(self.bottom()))
    }
}

impl FromStr for BurgeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |m: String| Error::parse("burge", m);
        let lines: Vec<&str> = s.lines().filter(|l| !l.trim().is_empty()).collect();
        if lines.is_empty() {
            return Ok(BurgeWord::default());
        }
        let [top, bottom] = lines[..] else {
            return Err(err(format!("expected two rows, found {}", lines.len())));
        };
        let row = |line: &str| {
            line.split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|e| err(format!("bad entry {t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()
        };
        let (top, bottom) = (row(top)?, row(bottom)?);
        if top.len() != bottom.len() {
            return Err(err(format!(
                "rows have different lengths {} and {}",
                top.len(),
                bottom.len()
            )));
        }
        BurgeWord::new(top.into_iter().zip(bottom).collect())
    }
}
