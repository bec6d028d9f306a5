//! Lower-triangular Fishburn matrices.

use std::fmt;
use std::str::FromStr;

use crate::cover::FishburnCover;
use crate::error::{Error, Result};

/// Row `i` (1-based) stores `a(i, 1) .. a(i, i)`; entries above the diagonal
/// are zero and not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FishburnMatrix {
    rows: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixClass {
    pub is_binary: bool,
    pub has_positive_diagonal: bool,
}

impl FishburnMatrix {
    /// Checks the triangular shape, that no row or column is zero, and that
    /// the size fits in 64 bits.
    pub fn new(rows: Vec<Vec<u64>>) -> Result<Self> {
        let k = rows.len();
        let mut column_sum = vec![0u64; k];
        let mut size = 0u64;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::InvalidMatrix(format!(
                    "row {} has {} entries; a lower-triangular row {} has {}",
                    i + 1,
                    row.len(),
                    i + 1,
                    i + 1
                )));
            }
            if row.iter().all(|&a| a == 0) {
                return Err(Error::InvalidMatrix(format!("row {} is zero", i + 1)));
            }
            for (j, &a) in row.iter().enumerate() {
                column_sum[j] = column_sum[j].saturating_add(a);
                size = size
                    .checked_add(a)
                    .ok_or_else(|| Error::Overflow("matrix size exceeds 64 bits".into()))?;
            }
        }
        if let Some(j) = column_sum.iter().position(|&s| s == 0) {
            return Err(Error::InvalidMatrix(format!("column {} is zero", j + 1)));
        }
        Ok(FishburnMatrix { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Sum of all entries.
    pub fn size(&self) -> u64 {
        self.rows.iter().flatten().sum()
    }

    /// `a(i, j)` with 1-based indices; zero above the diagonal.
    pub fn entry(&self, i: usize, j: usize) -> u64 {
        if j > i {
            0
        } else {
            self.rows[i - 1][j - 1]
        }
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// `a(i, j)` counts the copies of `j` in `B_i`.
    pub fn from_cover(cover: &FishburnCover) -> Self {
        let k = cover.order();
        let rows = cover
            .blocks()
            .iter()
            .enumerate()
            .map(|(i, block)| {
                let mut row = vec![0u64; i + 1];
                for &j in block {
                    row[j as usize - 1] += 1;
                }
                row
            })
            .collect();
        debug_assert!(k == 0 || FishburnMatrix::new(Vec::clone(&rows)).is_ok());
        FishburnMatrix { rows }
    }

    /// `B_i` holds `a(i, j)` copies of `j`.
    pub fn to_cover(&self) -> Result<FishburnCover> {
        let size = self.size();
        if size > u32::MAX as u64 {
            return Err(Error::Overflow(format!(
                "a matrix of size {size} is too large to expand into a cover"
            )));
        }
        let blocks = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .rev()
                    .flat_map(|(j, &a)| std::iter::repeat_n(j as u32 + 1, a as usize))
                    .collect()
            })
            .collect();
        Ok(FishburnCover::new(blocks).expect("a Fishburn matrix expands to a cover"))
    }

    /// Reflection in the antidiagonal: `a'(i, j) = a(k+1-j, k+1-i)`.
    pub fn flip(&self) -> Self {
        let k = self.dim();
        let rows = (1..=k)
            .map(|i| (1..=i).map(|j| self.entry(k + 1 - j, k + 1 - i)).collect())
            .collect();
        FishburnMatrix { rows }
    }

    /// Entrywise sum with the smaller matrix placed in the top-left corner.
    pub fn sum(&self, other: &FishburnMatrix) -> Result<Self> {
        let (small, large) = if self.dim() <= other.dim() {
            (self, other)
        } else {
            (other, self)
        };
        let mut rows = large.rows.clone();
        for (row, add) in rows.iter_mut().zip(&small.rows) {
            for (a, &b) in row.iter_mut().zip(add) {
                *a = a
                    .checked_add(b)
                    .ok_or_else(|| Error::Overflow("matrix entry exceeds 64 bits".into()))?;
            }
        }
        FishburnMatrix::new(rows)
    }

    pub fn classify(&self) -> MatrixClass {
        MatrixClass {
            is_binary: self.rows.iter().flatten().all(|&a| a <= 1),
            has_positive_diagonal: self.rows.iter().all(|row| row[row.len() - 1] > 0),
        }
    }

    /// Rows on one line separated by `" / "`, e.g. `1 / 0 1`.
    pub fn to_inline(&self) -> String {
        self.rows
            .iter()
            .map(|row| join(row.iter()))
            .collect::<Vec<_>>()
            .join(" / ")
    }

    /// Transposed (upper-triangular) text: `k`, then row `i` holding
    /// `a(i, i) .. a(k, i)`.
    pub fn to_upper_text(&self) -> String {
        let k = self.dim();
        let mut out = k.to_string();
        for i in 1..=k {
            out.push('\n');
            out.push_str(&join(
                (i..=k).map(|j| self.entry(j, i)).collect::<Vec<_>>().iter(),
            ));
        }
        out
    }

    /// Reads the layout written by [`to_upper_text`](Self::to_upper_text).
    pub fn from_upper_text(s: &str) -> Result<Self> {
        let (k, values) = read_triangle(s)?;
        let mut rows: Vec<Vec<u64>> = (1..=k).map(|i| vec![0; i]).collect();
        let mut it = values.into_iter();
        for i in 1..=k {
            for j in i..=k {
                rows[j - 1][i - 1] = it.next().expect("count checked");
            }
        }
        FishburnMatrix::new(rows)
    }

    /// Human-oriented layout: zeros as `.`, nothing above the diagonal,
    /// columns right-aligned.
    pub fn pretty(&self) -> String {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|a| a.to_string().len())
            .max()
            .unwrap_or(1);
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&a| {
                        let cell = if a == 0 {
                            ".".to_string()
                        } else {
                            a.to_string()
                        };
                        format!("{cell:>width$}")
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn join<'a>(values: impl Iterator<Item = &'a u64>) -> String {
    values.map(u64::to_string).collect::<Vec<_>>().join(" ")
}

/// `k` followed by `k(k+1)/2` entries.
fn read_triangle(s: &str) -> Result<(usize, Vec<u64>)> {
    let err = |m: String| Error::parse("matrix", m);
    let mut tokens = s.split_whitespace();
    let k: usize = tokens
        .next()
        .ok_or_else(|| err("empty input".into()))?
        .parse()
        .map_err(|e| err(format!("bad dimension: {e}")))?;
    let values = tokens
        .map(|t| {
            t.parse::<u64>()
                .map_err(|e| err(format!("bad entry {t:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let expected = k
        .checked_mul(k + 1)
        .map(|v| v / 2)
        .ok_or_else(|| err(format!("dimension {k} is too large")))?;
    if values.len() != expected {
        return Err(err(format!(
            "a {k}x{k} lower triangle has {expected} entries, found {}",
            values.len()
        )));
    }
    Ok((k, values))
}

impl fmt::Display for FishburnMatrix {
    /// `k` on the first line, then row `i` with its `i` entries.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dim())?;
        for row in &self.rows {
            write!(f, "\n{}", join(row.iter()))?;
        }
        Ok(())
    }
}

impl FromStr for FishburnMatrix {
    type Err = Error;

    /// Accepts the line format, or the inline format `1 / 0 1`.
    fn from_str(s: &str) -> Result<Self> {
        if s.contains('/') {
            let rows = s
                .split('/')
                .map(|row| {
                    row.split_whitespace()
                        .map(|t| {
                            t.parse::<u64>().map_err(|e| {
                                Error::parse("matrix", format!("bad entry {t:?}: {e}"))
                            })
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            return FishburnMatrix::new(rows);
        }
        let (k, values) = read_triangle(s)?;
        let mut it = values.into_iter();
        let rows = (1..=k).map(|i| it.by_ref().take(i).collect()).collect();
        FishburnMatrix::new(rows)
    }
}
