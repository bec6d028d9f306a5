//! Words of positive integers and their classification.
//!
//! A [`Sequence`] is a word `x = x_1 ... x_n` over the positive integers. The
//! refinements used throughout the crate are
//!
//! * endofunctions: every entry is at most `n`,
//! * Cayley permutations: the set of entries is exactly `{1, ..., max}`,
//! * ascent sequences: `x_1 = 1` and every next entry is at most one more
//!   than the number of ascent tops seen so far,
//! * modified ascent sequences: Cayley permutations whose ascent tops are
//!   exactly the leftmost occurrences of their values.
//!
//! Positions are 1-based wherever they are reported.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A word of positive integers.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequence(Vec<u32>);

/// Flags returned by [`Sequence::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SequenceClass {
    pub is_endofunction: bool,
    pub is_cayley: bool,
    pub is_ascent_sequence: bool,
    pub is_modified_ascent_sequence: bool,
    /// No flat step `x_i = x_{i+1}`.
    pub is_primitive: bool,
    pub max: u32,
}

/// A set of `(position, value)` pairs, kept sorted by position.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IndexedEntrySet(Vec<(usize, u32)>);

impl IndexedEntrySet {
    pub fn pairs(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn contains(&self, position: usize, value: u32) -> bool {
        self.0
            .binary_search_by_key(&position, |&(p, _)| p)
            .is_ok_and(|i| self.0[i].1 == value)
    }

    fn from_unsorted(mut pairs: Vec<(usize, u32)>) -> Self {
        pairs.sort_unstable();
        IndexedEntrySet(pairs)
    }
}

/// `x = prefix · pivot · suffix` around the leftmost occurrence of `max(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxDecomposition<'a> {
    pub prefix: &'a [u32],
    pub pivot_value: u32,
    /// 1-based.
    pub pivot_position: usize,
    pub suffix: &'a [u32],
}

/// An ordered set partition of `{1, ..., n}`; block `i` holds the positions
/// carrying value `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ballot {
    blocks: Vec<Vec<usize>>,
}

impl Ballot {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Reads the Cayley permutation back off the blocks.
    pub fn to_sequence(&self) -> Sequence {
        let n = self.blocks.iter().map(Vec::len).sum();
        let mut entries = vec![0; n];
        for (i, block) in self.blocks.iter().enumerate() {
            for &p in block {
                entries[p - 1] = i as u32 + 1;
            }
        }
        Sequence(entries)
    }
}

impl Sequence {
    /// Builds a sequence, rejecting zero entries.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if let Some(p) = entries.iter().position(|&v| v == 0) {
            return Err(Error::parse(
                "sequence",
                format!("entry at position {} is 0; entries must be positive", p + 1),
            ));
        }
        Ok(Sequence(entries))
    }

    pub fn empty() -> Self {
        Sequence(Vec::new())
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest entry, 0 for the empty word.
    pub fn max_value(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_endofunction(&self) -> bool {
        let n = self.0.len();
        self.0.iter().all(|&v| v as usize <= n)
    }

    pub fn is_cayley(&self) -> bool {
        self.missing_value().is_none()
    }

    /// Smallest value in `1..=max` that does not occur.
    fn missing_value(&self) -> Option<u32> {
        let max = self.max_value() as usize;
        // Values above n cannot all be present, so only 1..=min(max, n) is tracked.
        let bound = max.min(self.0.len());
        let mut seen = vec![false; bound + 1];
        for &v in &self.0 {
            if (v as usize) <= bound {
                seen[v as usize] = true;
            }
        }
        (1..=bound)
            .find(|&v| !seen[v])
            .or((max > bound).then_some(bound + 1))
            .map(|v| v as u32)
    }

    pub fn is_ascent_sequence(&self) -> bool {
        let Some(&first) = self.0.first() else {
            return true;
        };
        if first != 1 {
            return false;
        }
        let mut ascents = 1u32;
        for w in self.0.windows(2) {
            if w[1] > ascents + 1 {
                return false;
            }
            if w[0] < w[1] {
                ascents += 1;
            }
        }
        true
    }

    pub fn is_modified_ascent_sequence(&self) -> bool {
        if !self.is_cayley() {
            return false;
        }
        // Every ascent top must be a first occurrence and vice versa.
        let mut seen = vec![false; self.max_value() as usize + 1];
        for (i, &v) in self.0.iter().enumerate() {
            let is_ascent_top = i == 0 || self.0[i - 1] < v;
            let is_first = !seen[v as usize];
            if is_ascent_top != is_first {
                return false;
            }
            seen[v as usize] = true;
        }
        true
    }

    /// No two equal consecutive entries.
    pub fn is_primitive(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }

    pub fn classify(&self) -> SequenceClass {
        SequenceClass {
            is_endofunction: self.is_endofunction(),
            is_cayley: self.is_cayley(),
            is_ascent_sequence: self.is_ascent_sequence(),
            is_modified_ascent_sequence: self.is_modified_ascent_sequence(),
            is_primitive: self.is_primitive(),
            max: self.max_value(),
        }
    }

    /// Ascent tops with their positions, the first entry included. Empty for
    /// the empty word.
    pub fn asctops(&self) -> IndexedEntrySet {
        let pairs = self
            .0
            .iter()
            .enumerate()
            .filter(|&(i, &v)| i == 0 || self.0[i - 1] < v)
            .map(|(i, &v)| (i + 1, v))
            .collect();
        IndexedEntrySet(pairs)
    }

    /// Leftmost occurrence of every value `1..=max`.
    pub fn nub(&self) -> Result<IndexedEntrySet> {
        self.require_cayley()?;
        let mut first = vec![0usize; self.max_value() as usize + 1];
        for (i, &v) in self.0.iter().enumerate() {
            if first[v as usize] == 0 {
                first[v as usize] = i + 1;
            }
        }
        Ok(IndexedEntrySet::from_unsorted(
            first
                .iter()
                .enumerate()
                .skip(1)
                .map(|(v, &p)| (p, v as u32))
                .collect(),
        ))
    }

    pub fn max_decomposition(&self) -> Result<MaxDecomposition<'_>> {
        let (m, &pivot) = self
            .0
            .iter()
            .enumerate()
            .rev()
            .max_by_key(|&(_, v)| v)
            .ok_or(Error::Empty)?;
        // `rev` + `max_by_key` keeps the last maximum seen, i.e. the leftmost.
        Ok(MaxDecomposition {
            prefix: &self.0[..m],
            pivot_value: pivot,
            pivot_position: m + 1,
            suffix: &self.0[m + 1..],
        })
    }

    pub fn to_ballot(&self) -> Result<Ballot> {
        self.require_cayley()?;
        let mut blocks = vec![Vec::new(); self.max_value() as usize];
        for (i, &v) in self.0.iter().enumerate() {
            blocks[v as usize - 1].push(i + 1);
        }
        Ok(Ballot { blocks })
    }

    pub fn require_endofunction(&self) -> Result<()> {
        let n = self.0.len();
        match self.0.iter().position(|&v| v as usize > n) {
            None => Ok(()),
            Some(p) => Err(Error::NotEndofunction {
                position: p + 1,
                value: self.0[p],
                len: n,
            }),
        }
    }

    pub fn require_cayley(&self) -> Result<()> {
        match self.missing_value() {
            None => Ok(()),
            Some(missing) => Err(Error::NotCayley {
                missing,
                max: self.max_value(),
            }),
        }
    }

    pub fn require_modified_ascent_sequence(&self) -> Result<()> {
        self.require_cayley()
            .map_err(|e| Error::NotModasc(format!("{self} is not a Cayley permutation ({e})")))?;
        let asctops = self.asctops();
        let nub = self.nub()?;
        if asctops == nub {
            return Ok(());
        }
        let witness = asctops
            .pairs()
            .iter()
            .find(|&&(p, v)| !nub.contains(p, v))
            .map(|&(p, v)| format!("ascent top {v} at position {p} is not a first occurrence"))
            .or_else(|| {
                nub.pairs()
                    .iter()
                    .find(|&&(p, v)| !asctops.contains(p, v))
                    .map(|&(p, v)| {
                        format!("first occurrence of {v} at position {p} is not an ascent top")
                    })
            })
            .unwrap_or_default();
        Err(Error::NotModasc(format!(
            "{self}: ascent tops differ from first occurrences; {witness}"
        )))
    }
}

impl From<Sequence> for Vec<u32> {
    fn from(s: Sequence) -> Self {
        s.0
    }
}

impl TryFrom<Vec<u32>> for Sequence {
    type Error = Error;

    fn try_from(entries: Vec<u32>) -> Result<Self> {
        Sequence::new(entries)
    }
}

impl TryFrom<&[u32]> for Sequence {
    type Error = Error;

    fn try_from(entries: &[u32]) -> Result<Self> {
        Sequence::new(entries.to_vec())
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Accepts whitespace-separated decimals (`1 6 1 2`) or, when the input is a
/// single token of two or more digits, one value per digit (`1612`).
impl FromStr for Sequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let entries = match tokens.as_slice() {
            [compact] if compact.len() > 1 && compact.bytes().all(|b| b.is_ascii_digit()) => {
                compact.bytes().map(|b| u32::from(b - b'0')).collect()
            }
            _ => tokens
                .iter()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|e| Error::parse("sequence", format!("bad entry {t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Sequence::new(entries)
    }
}
