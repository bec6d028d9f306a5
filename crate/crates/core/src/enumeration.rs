//! Counting oracles, exhaustive generators and the verification driver.
//!
//! Every enumeration yields structures in the order of their one-line text
//! encoding. Sequences are streamed; trees, covers, matrices and posets are
//! derived from the matrices of the given size and sorted.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::cover::FishburnCover;
use crate::error::{Error, Result};
use crate::matrix::FishburnMatrix;
use crate::poset::{IntervalPoset, RelationInput};
use crate::sequence::Sequence;
use crate::transforms::{classify_all, cover_flip, flip_modasc, sum_modasc};
use crate::tree::LabeledBinaryTree;

/// `(n, count)` rows for one structure or oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub kind: String,
    pub rows: Vec<(usize, u128)>,
}

impl CountTable {
    pub fn counts(&self) -> Vec<u128> {
        self.rows.iter().map(|r| r.1).collect()
    }
}

impl fmt::Display for CountTable {
    /// One `n count` line per row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, c)) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{n} {c}")?;
        }
        Ok(())
    }
}

fn overflow(what: &str, n: usize) -> Error {
    Error::Overflow(format!("{what} exceeds 128 bits at n = {n}"))
}

/// Coefficients of `sum_m prod_{i=1..m} (1 - (1-x)^i)` through degree `max_n`.
///
/// The `m`-th product starts at degree `m`, so only `m <= max_n` contribute.
/// Arithmetic is checked; intermediate coefficients stay within `i128`
/// through `max_n = 30`.
pub fn fishburn_numbers(max_n: usize) -> Result<CountTable> {
    let len = max_n + 1;
    let mut total = vec![0i128; len];
    total[0] = 1;
    let mut product = vec![0i128; len];
    product[0] = 1;
    for m in 1..=max_n {
        // factor = 1 - (1-x)^m = -sum_{i>=1} C(m,i) (-x)^i
        let mut factor = vec![0i128; len];
        let mut binom: i128 = 1;
        for (i, slot) in factor.iter_mut().enumerate().take(m + 1).skip(1) {
            binom = binom
                .checked_mul((m + 1 - i) as i128)
                .map(|v| v / i as i128)
                .ok_or_else(|| overflow("a binomial coefficient", m))?;
            *slot = if i % 2 == 1 { binom } else { -binom };
        }
        let mut next = vec![0i128; len];
        for (a, &p) in product.iter().enumerate().filter(|&(_, &p)| p != 0) {
            for (b, &f) in factor
                .iter()
                .enumerate()
                .take(len - a)
                .filter(|&(_, &f)| f != 0)
            {
                next[a + b] = p
                    .checked_mul(f)
                    .and_then(|t| next[a + b].checked_add(t))
                    .ok_or_else(|| overflow("a series coefficient", max_n))?;
            }
        }
        product = next;
        for (t, &p) in total.iter_mut().zip(&product) {
            *t = t
                .checked_add(p)
                .ok_or_else(|| overflow("a series coefficient", max_n))?;
        }
    }
    let rows = total
        .into_iter()
        .enumerate()
        .map(|(n, c)| {
            u128::try_from(c)
                .map(|c| (n, c))
                .map_err(|_| Error::Overflow(format!("negative coefficient at degree {n}")))
        })
        .collect::<Result<_>>()?;
    Ok(CountTable {
        kind: "fishburn".into(),
        rows,
    })
}

/// Ordered set partitions: `a(n) = sum_{i=1..n} C(n,i) a(n-i)`.
pub fn fubini_numbers(max_n: usize) -> Result<CountTable> {
    let mut a: Vec<u128> = vec![1];
    for n in 1..=max_n {
        let mut binom: u128 = 1;
        let mut sum: u128 = 0;
        for i in 1..=n {
            binom = binom
                .checked_mul((n + 1 - i) as u128)
                .map(|v| v / i as u128)
                .ok_or_else(|| overflow("a binomial coefficient", n))?;
            sum = binom
                .checked_mul(a[n - i])
                .and_then(|t| sum.checked_add(t))
                .ok_or_else(|| overflow("a Fubini number", n))?;
        }
        a.push(sum);
    }
    Ok(CountTable {
        kind: "fubini".into(),
        rows: a.into_iter().enumerate().collect(),
    })
}

/// Depth-first generation of all words of length `n` over `1..=n` whose
/// every prefix passes `viable`, in the order of their text encoding.
///
/// Values are tried in the string order of their decimal forms (`10`
/// before `2`), which makes the word order agree with the text order once
/// values reach two digits.
struct LexWords<F> {
    order: Vec<u32>,
    ranks: Vec<usize>,
    word: Vec<u32>,
    viable: F,
    started: bool,
    done: bool,
}

impl<F: FnMut(&[u32]) -> bool> LexWords<F> {
    fn new(n: usize, viable: F) -> Self {
        let mut order: Vec<u32> = (1..=n as u32).collect();
        order.sort_by_key(|v| v.to_string());
        LexWords {
            order,
            ranks: Vec::with_capacity(n),
            word: Vec::with_capacity(n),
            viable,
            started: false,
            done: false,
        }
    }

    fn pop(&mut self) -> Option<usize> {
        self.word.pop();
        self.ranks.pop()
    }
}

impl<F: FnMut(&[u32]) -> bool> Iterator for LexWords<F> {
    type Item = Sequence;

    fn next(&mut self) -> Option<Sequence> {
        if self.done {
            return None;
        }
        let n = self.order.len();
        let mut candidate = 0;
        if !self.started {
            self.started = true;
            if n == 0 {
                self.done = true;
                return Some(Sequence::empty());
            }
        } else {
            candidate = self.pop().expect("a word was produced") + 1;
        }
        loop {
            if candidate == n {
                match self.pop() {
                    Some(r) => {
                        candidate = r + 1;
                        continue;
                    }
                    None => {
                        self.done = true;
                        return None;
                    }
                }
            }
            self.ranks.push(candidate);
            self.word.push(self.order[candidate]);
            if (self.viable)(&self.word) {
                if self.word.len() == n {
                    return Some(Sequence::new(self.word.clone()).expect("entries are positive"));
                }
                candidate = 0;
            } else {
                self.pop();
                candidate += 1;
            }
        }
    }
}

/// All words of length `n` over `1..=n`.
pub fn endofunctions(n: usize) -> impl Iterator<Item = Sequence> {
    LexWords::new(n, |_: &[u32]| true)
}

/// Cayley permutations of length `n`. A prefix is kept only while the
/// values missing below its maximum still fit in the remaining positions.
pub fn cayley_permutations(n: usize) -> impl Iterator<Item = Sequence> {
    assert!(n < 64, "Cayley enumeration tracks values in a 64-bit mask");
    LexWords::new(n, move |prefix: &[u32]| {
        let mut mask = 0u64;
        let mut max = 0;
        for &v in prefix {
            mask |= 1 << v;
            max = max.max(v);
        }
        let missing = max as usize - mask.count_ones() as usize;
        missing <= n - prefix.len()
    })
}

/// Modified ascent sequences, filtered from the Cayley permutations.
pub fn modified_ascent_sequences(n: usize) -> impl Iterator<Item = Sequence> {
    cayley_permutations(n).filter(Sequence::is_modified_ascent_sequence)
}

/// Ascent sequences grown entry by entry: the first entry is 1 and each
/// later entry is at most two more than the number of ascents before it.
pub fn ascent_sequences(n: usize) -> impl Iterator<Item = Sequence> {
    LexWords::new(n, |prefix: &[u32]| {
        let (&last, head) = prefix.split_last().expect("prefix is nonempty");
        if head.is_empty() {
            return last == 1;
        }
        let ascents = head.windows(2).filter(|w| w[0] < w[1]).count() as u32;
        last <= ascents + 2
    })
}

/// Every Fishburn matrix of size `n`, sorted by its one-line encoding.
///
/// Rows are filled left to right with the remaining total; at the end of
/// each row the rest of the matrix is checked to still be completable, which
/// needs one unit for each later row and for each column not yet covered.
pub fn fishburn_matrices(n: usize) -> Vec<FishburnMatrix> {
    struct Fill {
        k: usize,
        rows: Vec<Vec<u64>>,
        column_covered: Vec<bool>,
        out: Vec<FishburnMatrix>,
    }
    impl Fill {
        fn cell(&mut self, i: usize, j: usize, remaining: u64) {
            let last_in_row = j == i;
            let row_sum: u64 = self.rows[i][..j].iter().sum();
            let low = if last_in_row && row_sum == 0 { 1 } else { 0 };
            for a in low..=remaining {
                self.rows[i][j] = a;
                let was_covered = self.column_covered[j];
                self.column_covered[j] |= a > 0;
                let left = remaining - a;
                if !last_in_row {
                    self.cell(i, j + 1, left);
                } else if i + 1 == self.k {
                    if left == 0 && self.column_covered.iter().all(|&c| c) {
                        let rows = self.rows.clone();
                        self.out
                            .push(FishburnMatrix::new(rows).expect("filled matrix is valid"));
                    }
                } else {
                    let uncovered = self.column_covered[..=i].iter().filter(|&&c| !c).count();
                    if left as usize >= uncovered + (self.k - i - 1) {
                        self.cell(i + 1, 0, left);
                    }
                }
                self.column_covered[j] = was_covered;
            }
            self.rows[i][j] = 0;
        }
    }
    if n == 0 {
        return vec![FishburnMatrix::default()];
    }
    let mut all = Vec::new();
    for k in 1..=n {
        let mut fill = Fill {
            k,
            rows: (1..=k).map(|i| vec![0; i]).collect(),
            column_covered: vec![false; k],
            out: Vec::new(),
        };
        fill.cell(0, 0, n as u64);
        all.extend(fill.out);
    }
    sort_by_text(all, FishburnMatrix::to_inline)
}

fn sort_by_text<T>(items: Vec<T>, text: impl Fn(&T) -> String) -> Vec<T> {
    let mut keyed: Vec<(String, T)> = items.into_iter().map(|t| (text(&t), t)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.into_iter().map(|(_, t)| t).collect()
}

pub fn fishburn_covers(n: usize) -> Vec<FishburnCover> {
    let covers = fishburn_matrices(n)
        .iter()
        .map(|m| m.to_cover().expect("small matrices expand"))
        .collect();
    sort_by_text(covers, FishburnCover::to_string)
}

pub fn fishburn_trees(n: usize) -> Vec<LabeledBinaryTree> {
    let trees = fishburn_matrices(n)
        .iter()
        .map(|m| m.to_cover().expect("small matrices expand").to_tree())
        .collect();
    sort_by_text(trees, LabeledBinaryTree::to_string)
}

pub fn interval_posets(n: usize) -> Vec<IntervalPoset> {
    let posets = fishburn_matrices(n)
        .iter()
        .map(|m| IntervalPoset::from_cover(&m.to_cover().expect("small matrices expand")))
        .collect();
    sort_by_text(posets, IntervalPoset::to_inline)
}

/// All binary tree shapes with `n` nodes as `(left, right)` child lists in
/// pre-order, the root being node 0.
type Shape = Vec<(Option<usize>, Option<usize>)>;

fn shapes(n: usize) -> Vec<Shape> {
    let mut by_size: Vec<Vec<Shape>> = vec![vec![Vec::new()]];
    for m in 1..=n {
        let mut all = Vec::new();
        for l in 0..m {
            for left in &by_size[l] {
                for right in &by_size[m - 1 - l] {
                    let mut s: Shape = Vec::with_capacity(m);
                    s.push(((l > 0).then_some(1), (m - 1 - l > 0).then_some(1 + l)));
                    let shift = |c: Option<usize>, by: usize| c.map(|c| c + by);
                    s.extend(left.iter().map(|&(a, b)| (shift(a, 1), shift(b, 1))));
                    s.extend(
                        right
                            .iter()
                            .map(|&(a, b)| (shift(a, 1 + l), shift(b, 1 + l))),
                    );
                    all.push(s);
                }
            }
        }
        by_size.push(all);
    }
    by_size.swap_remove(n)
}

/// Every endotree of size `n`, built from tree shapes by labeling nodes
/// top-down: a left child is labeled below its parent, a right child at
/// most its parent, the root anywhere in `1..=n`. Independent of the
/// sequence bijections, it serves as an oracle for them.
pub fn endotrees(n: usize) -> Vec<LabeledBinaryTree> {
    let mut out = Vec::new();
    for shape in shapes(n) {
        let m = shape.len();
        // bound[c] for each child c, given its parent's label
        let mut parent: Vec<Option<(usize, bool)>> = vec![None; m];
        for (p, &(l, r)) in shape.iter().enumerate() {
            if let Some(l) = l {
                parent[l] = Some((p, true));
            }
            if let Some(r) = r {
                parent[r] = Some((p, false));
            }
        }
        let left: Vec<Option<usize>> = shape.iter().map(|s| s.0).collect();
        let right: Vec<Option<usize>> = shape.iter().map(|s| s.1).collect();
        let bound = |labels: &[u32], c: usize| match parent[c] {
            None => n as u32,
            Some((p, true)) => labels[p] - 1,
            Some((p, false)) => labels[p],
        };
        // odometer over pre-order labels
        let mut labels = vec![0u32; m];
        let mut c = 0;
        if m == 0 {
            out.push(LabeledBinaryTree::empty());
            continue;
        }
        loop {
            if c == m {
                out.push(LabeledBinaryTree::from_arena(
                    &labels,
                    &left,
                    &right,
                    Some(0),
                ));
                c -= 1;
            }
            labels[c] += 1;
            if labels[c] <= bound(&labels, c) {
                c += 1;
                continue;
            }
            labels[c] = 0;
            if c == 0 {
                break;
            }
            c -= 1;
        }
    }
    out
}

/// Unlabeled (2+2)-free posets of size `n`, found by brute force over
/// naturally labeled relations (every `u < v` has `u < v` as integers):
/// each transitive one is canonically labeled if it is (2+2)-free.
pub fn interval_posets_by_relations(n: usize) -> BTreeSet<IntervalPoset> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|v| (1..v).map(move |u| (u, v))).collect();
    assert!(pairs.len() < 64, "relation search is limited to n <= 11");
    let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u, v)).expect("u < v");
    let mut triples = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            for w in v + 1..=n {
                triples.push((index(u, v), index(v, w), index(u, w)));
            }
        }
    }
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << pairs.len()) {
        let has = |i: usize| mask >> i & 1 == 1;
        if triples.iter().any(|&(a, b, c)| has(a) && has(b) && !has(c)) {
            continue;
        }
        let relation = RelationInput {
            n,
            pairs: (0..pairs.len())
                .filter(|&i| has(i))
                .map(|i| pairs[i])
                .collect(),
        };
        if let Ok(q) = IntervalPoset::from_relation(&relation) {
            out.insert(q);
        }
    }
    out
}

/// Structure kinds that can be enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Cayley,
    Modasc,
    Ascseq,
    FishburnTree,
    Cover,
    Matrix,
    Poset,
}

impl Kind {
    pub const ALL: [Kind; 7] = [
        Kind::Cayley,
        Kind::Modasc,
        Kind::Ascseq,
        Kind::FishburnTree,
        Kind::Cover,
        Kind::Matrix,
        Kind::Poset,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Cayley => "cayley",
            Kind::Modasc => "modasc",
            Kind::Ascseq => "ascseq",
            Kind::FishburnTree => "fishburn_tree",
            Kind::Cover => "cover",
            Kind::Matrix => "matrix",
            Kind::Poset => "poset",
        }
    }

    fn is_sequence(self) -> bool {
        matches!(self, Kind::Cayley | Kind::Modasc | Kind::Ascseq)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tree" => Ok(Kind::FishburnTree),
            _ => Kind::ALL
                .into_iter()
                .find(|k| k.name() == s)
                .ok_or_else(|| Error::parse("kind", format!("unknown structure kind {s:?}"))),
        }
    }
}

/// Largest size each enumeration accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Cayley permutations, modified ascent sequences and ascent sequences.
    pub sequences: usize,
    /// Trees, covers, matrices and posets.
    pub structures: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            sequences: 9,
            structures: 8,
        }
    }
}

impl Limits {
    /// The same cap for every kind.
    pub fn uniform(n: usize) -> Self {
        Limits {
            sequences: n,
            structures: n,
        }
    }

    pub fn cap(&self, kind: Kind) -> usize {
        if kind.is_sequence() {
            self.sequences
        } else {
            self.structures
        }
    }

    fn check(&self, kind: Kind, n: usize) -> Result<()> {
        let cap = self.cap(kind);
        if n > cap {
            return Err(Error::LimitExceeded {
                kind: kind.name(),
                requested: n,
                cap,
            });
        }
        Ok(())
    }
}

/// One generated structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Sequence(Sequence),
    Tree(LabeledBinaryTree),
    Cover(FishburnCover),
    Matrix(FishburnMatrix),
    Poset(IntervalPoset),
}

impl Structure {
    /// Single-line canonical encoding.
    pub fn to_inline(&self) -> String {
        match self {
            Structure::Sequence(x) => x.to_string(),
            Structure::Tree(t) => t.to_string(),
            Structure::Cover(c) => c.to_string(),
            Structure::Matrix(m) => m.to_inline(),
            Structure::Poset(q) => q.to_inline(),
        }
    }
}

/// Streams every structure of the given kind and size exactly once.
pub fn enumerate(
    kind: Kind,
    n: usize,
    limits: &Limits,
) -> Result<Box<dyn Iterator<Item = Structure> + Send>> {
    limits.check(kind, n)?;
    Ok(match kind {
        Kind::Cayley => Box::new(cayley_permutations(n).map(Structure::Sequence)),
        Kind::Modasc => Box::new(modified_ascent_sequences(n).map(Structure::Sequence)),
        Kind::Ascseq => Box::new(ascent_sequences(n).map(Structure::Sequence)),
        Kind::Matrix => Box::new(fishburn_matrices(n).into_iter().map(Structure::Matrix)),
        Kind::Cover => Box::new(fishburn_covers(n).into_iter().map(Structure::Cover)),
        Kind::FishburnTree => Box::new(fishburn_trees(n).into_iter().map(Structure::Tree)),
        Kind::Poset => Box::new(interval_posets(n).into_iter().map(Structure::Poset)),
    })
}

/// Counts by enumeration for `n = 0..=max_n`; sizes are counted in parallel.
pub fn count(kind: Kind, max_n: usize, limits: &Limits) -> Result<CountTable> {
    limits.check(kind, max_n)?;
    let rows = (0..=max_n)
        .into_par_iter()
        .map(|n| Ok((n, enumerate(kind, n, limits)?.count() as u128)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CountTable {
        kind: kind.name().into(),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub n: usize,
    pub status: Status,
    /// First failing instance, on one line.
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub outcomes: Vec<CheckOutcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| o.status == Status::Fail)
    }

    /// `check-name n status [counterexample]`, one line per check.
    pub fn to_records(&self) -> String {
        self.outcomes
            .iter()
            .map(|o| match &o.counterexample {
                Some(c) => format!("{} {} {} {c}", o.name, o.n, o.status),
                None => format!("{} {} {}", o.name, o.n, o.status),
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Aligned table followed by a summary line.
    pub fn to_text(&self) -> String {
        let width = self
            .outcomes
            .iter()
            .map(|o| o.name.len())
            .max()
            .unwrap_or(0);
        let mut lines: Vec<String> = self
            .outcomes
            .iter()
            .map(|o| {
                let mut line = format!("{:<width$}  n={:<2} {}", o.name, o.n, o.status);
                if let Some(c) = &o.counterexample {
                    line.push_str(&format!("  counterexample: {c}"));
                }
                line
            })
            .collect();
        let failed = self.failures().count();
        lines.push(format!(
            "{} checks, {} passed, {failed} failed",
            self.outcomes.len(),
            self.outcomes.len() - failed
        ));
        lines.join("\n")
    }
}

/// A check returns the first counterexample it finds.
type Check = fn(usize) -> Result<(), String>;

/// Sizes up to which checks that walk all `n^n` endofunctions or endotrees,
/// or all naturally labeled relations, are run.
const BRUTE_FORCE_MAX: usize = 7;
const ASCENT_BRUTE_FORCE_MAX: usize = 8;

fn first_failure<T>(
    items: impl IntoIterator<Item = T>,
    ok: impl Fn(&T) -> Result<(), String>,
) -> Result<(), String> {
    items.into_iter().try_for_each(|t| ok(&t))
}

fn expect_eq<T: PartialEq + fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn fishburn(n: usize) -> u128 {
    fishburn_numbers(n).expect("small sizes fit").rows[n].1
}

fn one_line(s: String) -> String {
    s.replace('\n', " / ")
}

fn checks() -> Vec<(&'static str, Check, usize)> {
    let everything = usize::MAX;
    vec![
        (
            "fishburn-series-vs-ascseq-bruteforce",
            |n| {
                let brute = endofunctions(n)
                    .filter(Sequence::is_ascent_sequence)
                    .count() as u128;
                expect_eq("ascent sequences among endofunctions", brute, fishburn(n))
            },
            ASCENT_BRUTE_FORCE_MAX,
        ),
        (
            "count-cayley",
            |n| {
                let fubini = fubini_numbers(n).expect("small sizes fit").rows[n].1;
                expect_eq(
                    "Cayley permutations",
                    cayley_permutations(n).count() as u128,
                    fubini,
                )
            },
            everything,
        ),
        (
            "count-modasc",
            |n| {
                expect_eq(
                    "modified ascent sequences",
                    modified_ascent_sequences(n).count() as u128,
                    fishburn(n),
                )
            },
            everything,
        ),
        (
            "count-ascseq",
            |n| {
                expect_eq(
                    "ascent sequences",
                    ascent_sequences(n).count() as u128,
                    fishburn(n),
                )
            },
            everything,
        ),
        (
            "count-matrix",
            |n| {
                let all = fishburn_matrices(n);
                let distinct: BTreeSet<_> = all.iter().collect();
                expect_eq("distinct matrices", distinct.len(), all.len())?;
                expect_eq("matrices", all.len() as u128, fishburn(n))
            },
            everything,
        ),
        (
            "count-fishburn-tree",
            |n| {
                let all = fishburn_trees(n);
                first_failure(&all, |t| {
                    t.validate_fishburn().map_err(|e| format!("{t}: {e}"))
                })?;
                let distinct: BTreeSet<String> = all.iter().map(|t| t.to_string()).collect();
                expect_eq("distinct trees", distinct.len(), all.len())?;
                expect_eq("Fishburn trees", all.len() as u128, fishburn(n))
            },
            everything,
        ),
        (
            "count-cover",
            |n| {
                let all = fishburn_covers(n);
                let distinct: BTreeSet<_> = all.iter().collect();
                expect_eq("distinct covers", distinct.len(), all.len())?;
                expect_eq("covers", all.len() as u128, fishburn(n))
            },
            everything,
        ),
        (
            "count-poset",
            |n| {
                let all = interval_posets(n);
                let distinct: BTreeSet<_> = all.iter().collect();
                expect_eq("distinct posets", distinct.len(), all.len())?;
                expect_eq("posets", all.len() as u128, fishburn(n))
            },
            everything,
        ),
        (
            "count-fishburn-tree-by-endotree-filter",
            |n| {
                let all = endotrees(n);
                expect_eq("endotrees", all.len() as u128, (n as u128).pow(n as u32))?;
                let fish = all.iter().filter(|t| t.classify().fishburn).count() as u128;
                expect_eq("Fishburn endotrees", fish, fishburn(n))
            },
            BRUTE_FORCE_MAX,
        ),
        (
            "count-poset-by-relations",
            |n| {
                let brute = interval_posets_by_relations(n);
                let derived: BTreeSet<_> = interval_posets(n).into_iter().collect();
                if let Some(q) = brute.symmetric_difference(&derived).next() {
                    return Err(format!("poset {} found by one method only", q.to_inline()));
                }
                expect_eq("posets", brute.len() as u128, fishburn(n))
            },
            BRUTE_FORCE_MAX - 1,
        ),
        (
            "roundtrip-seq-tree",
            |n| {
                first_failure(endofunctions(n), |x| {
                    let t = LabeledBinaryTree::from_sequence(x).map_err(|e| format!("{x}: {e}"))?;
                    expect_eq(
                        &format!("in_order(seq_to_tree({x}))"),
                        t.in_order(),
                        x.clone(),
                    )
                })?;
                first_failure(endotrees(n), |t| {
                    let back = LabeledBinaryTree::from_sequence(&t.in_order())
                        .map_err(|e| format!("{t}: {e}"))?;
                    expect_eq("seq_to_tree(in_order(T))", back.to_string(), t.to_string())
                })
            },
            BRUTE_FORCE_MAX,
        ),
        (
            "tree-classes-match-sequence-classes",
            |n| {
                first_failure(endotrees(n), |t| {
                    let c = t.classify();
                    let x = t.in_order();
                    expect_eq(&format!("{t} regular vs Cayley"), c.regular, x.is_cayley())?;
                    expect_eq(
                        &format!("{t} Fishburn vs modasc"),
                        c.fishburn,
                        x.is_modified_ascent_sequence(),
                    )
                })
            },
            BRUTE_FORCE_MAX,
        ),
        (
            "roundtrip-cover-tree",
            |n| {
                first_failure(fishburn_trees(n), |t| {
                    let c = FishburnCover::from_tree(t).map_err(|e| format!("{t}: {e}"))?;
                    expect_eq(
                        "cover_to_tree(pairs(T))",
                        c.to_tree().to_string(),
                        t.to_string(),
                    )
                })?;
                first_failure(fishburn_covers(n), |c| {
                    let t = c.to_tree();
                    let back = FishburnCover::from_tree(&t).map_err(|e| format!("{c}: {e}"))?;
                    expect_eq("pairs(cover_to_tree(P))", back.to_string(), c.to_string())
                })
            },
            everything,
        ),
        (
            "roundtrip-matrix-cover",
            |n| {
                first_failure(fishburn_matrices(n), |m| {
                    let c = m.to_cover().map_err(|e| e.to_string())?;
                    expect_eq(
                        "cover_to_matrix(matrix_to_cover(A))",
                        FishburnMatrix::from_cover(&c),
                        m.clone(),
                    )
                })?;
                first_failure(fishburn_covers(n), |c| {
                    let m = FishburnMatrix::from_cover(c);
                    expect_eq(
                        "matrix_to_cover(cover_to_matrix(P))",
                        m.to_cover().map_err(|e| e.to_string())?,
                        c.clone(),
                    )
                })
            },
            everything,
        ),
        (
            "roundtrip-poset-tree",
            |n| {
                first_failure(interval_posets(n), |q| {
                    let back = IntervalPoset::from_tree(&q.to_tree()).map_err(|e| e.to_string())?;
                    expect_eq(
                        "tree_to_poset(poset_to_tree(Q))",
                        back.to_inline(),
                        q.to_inline(),
                    )
                })?;
                first_failure(fishburn_trees(n), |t| {
                    let q = IntervalPoset::from_tree(t).map_err(|e| e.to_string())?;
                    expect_eq(
                        "poset_to_tree(tree_to_poset(T))",
                        q.to_tree().to_string(),
                        t.to_string(),
                    )
                })
            },
            everything,
        ),
        (
            "cover-to-modasc-matches-tree-route",
            |n| {
                first_failure(fishburn_covers(n), |c| {
                    expect_eq(&format!("{c}"), c.to_modasc(), c.to_tree().in_order())
                })?;
                first_failure(modified_ascent_sequences(n), |x| {
                    let direct = FishburnCover::from_modasc(x).map_err(|e| e.to_string())?;
                    let via_tree = LabeledBinaryTree::from_sequence(x)
                        .and_then(|t| FishburnCover::from_tree(&t))
                        .map_err(|e| format!("{x}: {e}"))?;
                    expect_eq(&format!("{x}"), direct.to_string(), via_tree.to_string())
                })
            },
            everything,
        ),
        (
            "flip-involution",
            |n| {
                first_failure(modified_ascent_sequences(n), |x| {
                    let f = flip_modasc(x).map_err(|e| e.to_string())?;
                    if !f.is_modified_ascent_sequence() || f.len() != x.len() {
                        return Err(format!(
                            "flip({x}) = {f} is not a modified ascent sequence of length {}",
                            x.len()
                        ));
                    }
                    expect_eq(
                        &format!("flip(flip({x}))"),
                        flip_modasc(&f).map_err(|e| e.to_string())?,
                        x.clone(),
                    )
                })
            },
            everything,
        ),
        (
            "flip-diagram",
            |n| {
                first_failure(modified_ascent_sequences(n), |x| {
                    let m = matrix_of(x)?;
                    let f = flip_modasc(x).map_err(|e| e.to_string())?;
                    expect_eq(&format!("matrix(flip({x}))"), matrix_of(&f)?, m.flip())
                })
            },
            everything,
        ),
        (
            "sum-diagram",
            |n| {
                // all pairs with total size n
                first_failure(1..n, |&a| {
                    let left: Vec<Sequence> = modified_ascent_sequences(a).collect();
                    let right: Vec<Sequence> = modified_ascent_sequences(n - a).collect();
                    first_failure(&left, |x| {
                        first_failure(&right, |y| {
                            let s = sum_modasc(x, y).map_err(|e| e.to_string())?;
                            if !s.is_modified_ascent_sequence() || s.len() != x.len() + y.len() {
                                return Err(format!("{x} + {y} = {s} is not a modified ascent sequence of length {n}"));
                            }
                            let want = matrix_of(x)?
                                .sum(&matrix_of(y)?)
                                .map_err(|e| e.to_string())?;
                            expect_eq(&format!("matrix({x} + {y})"), matrix_of(&s)?, want)
                        })
                    })
                })
            },
            everything,
        ),
        (
            "dual-flip-consistency",
            |n| {
                first_failure(interval_posets(n), |q| {
                    let flipped = cover_flip(&q.to_cover());
                    expect_eq(
                        &format!("cover(dual({}))", q.to_inline()),
                        q.dual().to_cover(),
                        flipped,
                    )?;
                    let by_matrix = FishburnMatrix::from_cover(&q.to_cover()).flip();
                    expect_eq(
                        "matrix flip",
                        FishburnMatrix::from_cover(&q.dual().to_cover()),
                        by_matrix,
                    )
                })
            },
            everything,
        ),
        (
            "primitive-and-self-modified-equivalences",
            |n| {
                first_failure(modified_ascent_sequences(n), |x| {
                    let c = classify_all(x).map_err(|e| e.to_string())?;
                    if !c.primitive.agrees() {
                        return Err(format!("{x}: {:?}", c.primitive));
                    }
                    if !c.self_modified.agrees() {
                        return Err(format!("{x}: {:?}", c.self_modified));
                    }
                    Ok(())
                })
            },
            everything,
        ),
    ]
}

fn matrix_of(x: &Sequence) -> Result<FishburnMatrix, String> {
    FishburnCover::from_modasc(x)
        .map(|c| FishburnMatrix::from_cover(&c))
        .map_err(|e| format!("{x}: {e}"))
}

/// Runs every check for every `n <= max_n` and collects the outcomes.
///
/// Brute-force checks over all endofunctions or relations stop at smaller
/// sizes (7, or 8 for the ascent-sequence count). With `jobs > 1` the
/// checks run on a thread pool of that size; the report order is the same
/// either way.
pub fn verify(max_n: usize, limits: &Limits, jobs: usize) -> Result<Report> {
    let cap = limits.sequences.min(limits.structures);
    if max_n > cap {
        return Err(Error::LimitExceeded {
            kind: "verify",
            requested: max_n,
            cap,
        });
    }
    let tasks: Vec<(&'static str, Check, usize)> = checks()
        .into_iter()
        .flat_map(|(name, check, upto)| (0..=max_n.min(upto)).map(move |n| (name, check, n)))
        .collect();
    let run = |&(name, check, n): &(&'static str, Check, usize)| {
        let result = check(n);
        CheckOutcome {
            name,
            n,
            status: if result.is_ok() {
                Status::Pass
            } else {
                Status::Fail
            },
            counterexample: result.err().map(one_line),
        }
    };
    let outcomes = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Overflow(format!("cannot start {jobs} threads: {e}")))?;
        pool.install(|| tasks.par_iter().map(run).collect())
    } else {
        tasks.iter().map(run).collect()
    };
    Ok(Report { outcomes })
}
