//! (2+2)-free posets in canonical form.
//!
//! An element is a pair `(b, l)` with `l` its level (the index of its strict
//! down-set in the chain of down-sets) and `b` the index of the last
//! down-set not containing it. The order is `u < v` iff `b(u) < l(v)`.
//! Indistinguishable elements carry equal pairs, so the sorted multiset of
//! pairs decides isomorphism.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use crate::cover::FishburnCover;
use crate::error::{Error, Result};
use crate::tree::LabeledBinaryTree;

/// Elements sorted by `b` ascending, then `l` descending (the Burge column
/// order of the matching cover).
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalPoset {
    k: u32,
    elements: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PosetClass {
    /// No two elements are indistinguishable.
    pub is_primitive: bool,
    /// Some chain meets every level.
    pub has_max_chain: bool,
}

/// Explicit strict relations `u < v` over elements `1..=n`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationInput {
    pub n: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl IntervalPoset {
    pub fn new(mut elements: Vec<(u32, u32)>) -> Result<Self> {
        let k = elements.iter().map(|e| e.0).max().unwrap_or(0);
        for &(b, l) in &elements {
            if l == 0 || l > b {
                return Err(Error::InvalidPoset(format!(
                    "element ({b}, {l}) violates 1 <= l <= b"
                )));
            }
        }
        let mut has_b = vec![false; k as usize + 1];
        let mut has_l = vec![false; k as usize + 1];
        for &(b, l) in &elements {
            has_b[b as usize] = true;
            has_l[l as usize] = true;
        }
        if let Some(i) = (1..=k as usize).find(|&i| !has_l[i]) {
            return Err(Error::InvalidPoset(format!("level {i} of {k} is empty")));
        }
        if let Some(i) = (1..=k as usize).find(|&i| !has_b[i]) {
            return Err(Error::InvalidPoset(format!(
                "no element has b = {i}, so down-sets {i} and {} coincide",
                i + 1
            )));
        }
        elements.sort_unstable_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
        Ok(IntervalPoset { k, elements })
    }

    /// Number of levels.
    pub fn levels(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[(u32, u32)] {
        &self.elements
    }

    /// Strict order between elements given by position in [`elements`](Self::elements).
    pub fn less(&self, u: usize, v: usize) -> bool {
        self.elements[u].0 < self.elements[v].1
    }

    /// Element `(b, l)` per column `(b, l)` of the cover's Burge word.
    pub fn from_cover(cover: &FishburnCover) -> Self {
        let elements = cover.to_burge().columns().to_vec();
        IntervalPoset::new(elements).expect("a cover yields a valid poset")
    }

    pub fn to_cover(&self) -> FishburnCover {
        let mut blocks = vec![Vec::new(); self.k as usize];
        for &(b, l) in &self.elements {
            blocks[b as usize - 1].push(l);
        }
        FishburnCover::new(blocks).expect("a valid poset yields a cover")
    }

    /// One element per node, labeled by its b-label and its label.
    pub fn from_tree(tree: &LabeledBinaryTree) -> Result<Self> {
        let d = tree.rpath_decomposition()?;
        let elements = d
            .blabels()
            .iter()
            .enumerate()
            .map(|(i, &b)| (b, tree.label(crate::tree::NodeRef(i + 1))))
            .collect();
        Ok(IntervalPoset::new(elements).expect("labels of a Fishburn tree form a poset"))
    }

    pub fn to_tree(&self) -> LabeledBinaryTree {
        self.to_cover().to_tree()
    }

    /// Closes the relation transitively and reads off the canonical labels.
    pub fn from_relation(relation: &RelationInput) -> Result<Self> {
        Ok(IntervalPoset::new(canonical_labels(relation)?).expect("canonical labels are valid"))
    }

    /// The order-reversed poset: `(b, l)` becomes `(k+1-l, k+1-b)`.
    pub fn dual(&self) -> Self {
        let k = self.k + 1;
        IntervalPoset::new(self.elements.iter().map(|&(b, l)| (k - l, k - b)).collect())
            .expect("the dual of a valid poset is valid")
    }

    pub fn classify(&self) -> PosetClass {
        let is_primitive = self.elements.windows(2).all(|w| w[0] != w[1]);
        PosetClass {
            is_primitive,
            has_max_chain: self.longest_chain() == self.k as usize,
        }
    }

    /// Number of elements in a longest chain.
    pub fn longest_chain(&self) -> usize {
        let k = self.k as usize;
        let mut by_level: Vec<Vec<u32>> = vec![Vec::new(); k + 1];
        for &(b, l) in &self.elements {
            by_level[l as usize].push(b);
        }
        // best_at_b[t]: longest chain whose top element has b = t.
        let mut best_at_b = vec![0usize; k + 1];
        // Longest chain whose top has b < l; b-values below l are final once
        // level l is reached, since b >= l for every element.
        let mut below = 0;
        let mut longest = 0;
        for l in 1..=k {
            below = below.max(best_at_b[l - 1]);
            for &b in &by_level[l] {
                best_at_b[b as usize] = best_at_b[b as usize].max(below + 1);
                longest = longest.max(below + 1);
            }
        }
        longest
    }

    /// Pairs `(u, v)` with `v` covering `u`, as positions in
    /// [`elements`](Self::elements).
    pub fn cover_relation(&self) -> Vec<(usize, usize)> {
        let k = self.k as usize;
        // min_b_above[t] = smallest b among elements with l > t.
        let mut min_b_above = vec![u32::MAX; k + 2];
        for &(b, l) in &self.elements {
            let slot = &mut min_b_above[l as usize - 1];
            *slot = (*slot).min(b);
        }
        for t in (0..k).rev() {
            min_b_above[t] = min_b_above[t].min(min_b_above[t + 1]);
        }
        let mut edges = Vec::new();
        for (u, &(bu, _)) in self.elements.iter().enumerate() {
            for (v, &(_, lv)) in self.elements.iter().enumerate() {
                if bu < lv && min_b_above[bu as usize] >= lv {
                    edges.push((u, v));
                }
            }
        }
        edges
    }

    /// Graphviz rendering of the cover relation, minimal elements at the bottom.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, (b, l)) in self.elements.iter().enumerate() {
            writeln!(out, "  e{} [label=\"{b},{l}\"];", i + 1).expect("String write");
        }
        for (u, v) in self.cover_relation() {
            writeln!(out, "  e{} -> e{};", u + 1, v + 1).expect("String write");
        }
        out.push_str("}\n");
        out
    }

    /// Pairs separated by `" / "`, e.g. `1 1 / 2 1`.
    pub fn to_inline(&self) -> String {
        self.elements
            .iter()
            .map(|(b, l)| format!("{b} {l}"))
            .collect::<Vec<_>>()
            .join(" / ")
    }
}

/// Canonical `(b, l)` label of every element of a (2+2)-free relation, in
/// input order.
pub fn canonical_labels(relation: &RelationInput) -> Result<Vec<(u32, u32)>> {
    let n = relation.n;
    let mut down: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
    for &(u, v) in &relation.pairs {
        if u == 0 || v == 0 || u > n || v > n {
            return Err(Error::parse(
                "relation",
                format!("pair {u} < {v} is outside 1..={n}"),
            ));
        }
        down[v - 1].insert(u - 1);
    }
    for w in 0..n {
        let through = down[w].clone();
        for set in down.iter_mut() {
            if set.contains(w) {
                set.union_with(&through);
            }
        }
    }
    if let Some(u) = (0..n).find(|&u| down[u].contains(u)) {
        return Err(Error::NotAPartialOrder(format!(
            "element {} lies below itself after closing transitively",
            u + 1
        )));
    }
    let mut by_size: Vec<usize> = (0..n).collect();
    by_size.sort_by_key(|&u| down[u].count_ones(..));
    // chain[i] = representative of the i-th distinct down-set.
    let mut chain: Vec<usize> = Vec::new();
    let mut level = vec![0u32; n];
    for &u in &by_size {
        match chain.last() {
            Some(&r) if down[r] == down[u] => {}
            Some(&r) if !down[r].is_subset(&down[u]) => {
                return Err(Error::NotTwoPlusTwoFree {
                    first: r + 1,
                    second: u + 1,
                })
            }
            _ => chain.push(u),
        }
        level[u] = chain.len() as u32;
    }
    let k = chain.len() as u32;
    Ok((0..n)
        .map(|u| {
            let b = chain
                .iter()
                .position(|&r| down[r].contains(u))
                .map_or(k, |i| i as u32);
            (b, level[u])
        })
        .collect())
}

impl fmt::Display for IntervalPoset {
    /// `k`, then one `b l` line per element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.k)?;
        for (b, l) in &self.elements {
            write!(f, "\n{b} {l}")?;
        }
        Ok(())
    }
}

impl FromStr for IntervalPoset {
    type Err = Error;

    /// Accepts the line format, or the inline format `1 1 / 2 1`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |m: String| Error::parse("poset", m);
        let number = |t: &str| {
            t.parse::<u32>()
                .map_err(|e| err(format!("bad entry {t:?}: {e}")))
        };
        let pair = |part: &str| -> Result<(u32, u32)> {
            let tokens: Vec<&str> = part.split_whitespace().collect();
            match tokens[..] {
                [b, l] => Ok((number(b)?, number(l)?)),
                _ => Err(err(format!("expected a pair `b l`, found {part:?}"))),
            }
        };
        if s.contains('/') {
            let elements = s.split('/').map(pair).collect::<Result<Vec<_>>>()?;
            return IntervalPoset::new(elements);
        }
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let k = number(
            lines
                .next()
                .ok_or_else(|| err("empty input".into()))?
                .trim(),
        )?;
        let elements = lines.map(pair).collect::<Result<Vec<_>>>()?;
        let poset = IntervalPoset::new(elements)?;
        if poset.k != k {
            return Err(Error::InvalidPoset(format!(
                "header says {k} levels but the elements have {}",
                poset.k
            )));
        }
        Ok(poset)
    }
}

impl fmt::Display for RelationInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)?;
        for (u, v) in &self.pairs {
            write!(f, "\n{u} < {v}")?;
        }
        Ok(())
    }
}

impl FromStr for RelationInput {
    type Err = Error;

    /// `n`, then lines `u < v`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |m: String| Error::parse("relation", m);
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| err("empty input".into()))?
            .parse()
            .map_err(|e| err(format!("bad element count: {e}")))?;
        let mut pairs = Vec::new();
        for line in lines {
            let (u, v) = line
                .split_once('<')
                .ok_or_else(|| err(format!("expected `u < v`, found {line:?}")))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| err(format!("bad element {:?}: {e}", t.trim())))
            };
            let (u, v) = (parse(u)?, parse(v)?);
            if u == 0 || v == 0 || u > n || v > n {
                return Err(err(format!("pair {u} < {v} is outside 1..={n}")));
            }
            pairs.push((u, v));
        }
        Ok(RelationInput { n, pairs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::FishburnMatrix;
    use crate::testing::*;
    use proptest::prelude::*;

    const SIZE10_ELEMENTS: [(u32, u32); 10] = [
        (1, 1),
        (2, 1),
        (3, 2),
        (4, 2),
        (5, 3),
        (6, 3),
        (5, 4),
        (6, 5),
        (6, 5),
        (6, 6),
    ];

    fn size10() -> IntervalPoset {
        IntervalPoset::new(SIZE10_ELEMENTS.to_vec()).unwrap()
    }

    /// The Hasse diagram edges of the size-10 example, elements numbered as in
    /// `SIZE10_ELEMENTS`.
    fn size10_relation() -> RelationInput {
        RelationInput {
            n: 10,
            pairs: vec![
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 5),
                (1, 6),
                (2, 6),
                (3, 7),
                (2, 7),
                (3, 8),
                (2, 8),
                (4, 8),
                (3, 9),
                (2, 9),
                (4, 9),
                (5, 10),
                (7, 10),
                (4, 10),
            ],
        }
    }

    /// Brute-force dual: reverse every relation and relabel.
    fn dual_by_reversal(q: &IntervalPoset) -> IntervalPoset {
        let n = q.len();
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if q.less(u, v) {
                    pairs.push((v + 1, u + 1));
                }
            }
        }
        IntervalPoset::from_relation(&RelationInput { n, pairs }).unwrap()
    }

    #[test]
    fn tree_to_poset_examples() {
        let t = LabeledBinaryTree::from_sequence(&seq(SIZE10_WORD)).unwrap();
        let q = IntervalPoset::from_tree(&t).unwrap();
        assert_eq!(q, size10());
        let minimal: Vec<_> = (0..q.len())
            .filter(|&v| (0..q.len()).all(|u| !q.less(u, v)))
            .map(|v| q.elements()[v])
            .collect();
        assert_eq!(minimal, [(1, 1), (2, 1)]);
        let leaf = IntervalPoset::from_tree(&LabeledBinaryTree::leaf(1)).unwrap();
        assert_eq!(leaf.elements(), [(1, 1)]);
        assert_eq!(leaf.to_tree(), LabeledBinaryTree::leaf(1));
        assert_eq!(size10().to_tree(), t);
    }

    #[test]
    fn relation_examples() {
        let q = IntervalPoset::from_relation(&size10_relation()).unwrap();
        assert_eq!(q, size10());
        assert_eq!(
            canonical_labels(&size10_relation()).unwrap(),
            SIZE10_ELEMENTS
        );

        let chain = RelationInput {
            n: 3,
            pairs: vec![(1, 2), (2, 3)],
        };
        assert_eq!(
            IntervalPoset::from_relation(&chain).unwrap().elements(),
            [(1, 1), (2, 2), (3, 3)]
        );

        let two_plus_two = RelationInput {
            n: 4,
            pairs: vec![(1, 2), (3, 4)],
        };
        let e = IntervalPoset::from_relation(&two_plus_two).unwrap_err();
        assert_eq!(e.code(), "NOT_TWO_PLUS_TWO_FREE");
        assert!(e.to_string().contains("2+2"), "{e}");
        let Error::NotTwoPlusTwoFree { first, second } = e else {
            unreachable!()
        };
        assert_eq!([first.min(second), first.max(second)], [2, 4]);

        let cycle = RelationInput {
            n: 2,
            pairs: vec![(1, 2), (2, 1)],
        };
        assert_eq!(
            IntervalPoset::from_relation(&cycle).unwrap_err().code(),
            "NOT_A_PARTIAL_ORDER"
        );
        assert_eq!(
            IntervalPoset::from_relation(&RelationInput::default()).unwrap(),
            IntervalPoset::default()
        );
    }

    #[test]
    fn cover_relation_matches_the_drawn_edges() {
        let q = size10();
        let mut edges: Vec<(usize, usize)> = q
            .cover_relation()
            .into_iter()
            .map(|(u, v)| (u + 1, v + 1))
            .collect();
        edges.sort();
        // Positions in q coincide with SIZE10_ELEMENTS up to the two equal
        // (6, 5) elements and the order within b = 5 and b = 6.
        let relabel = |i: usize| {
            let target = q.elements()[i - 1];
            SIZE10_ELEMENTS.iter().position(|&e| e == target).unwrap() + 1
        };
        let mut drawn: Vec<(u32, u32, u32, u32)> = size10_relation()
            .pairs
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (SIZE10_ELEMENTS[u - 1], SIZE10_ELEMENTS[v - 1]);
                (a.0, a.1, b.0, b.1)
            })
            .collect();
        let mut got: Vec<(u32, u32, u32, u32)> = edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (
                    SIZE10_ELEMENTS[relabel(u) - 1],
                    SIZE10_ELEMENTS[relabel(v) - 1],
                );
                (a.0, a.1, b.0, b.1)
            })
            .collect();
        drawn.sort();
        got.sort();
        assert_eq!(got, drawn);
        assert!(q.to_dot().contains("e1 -> e3;"));
    }

    #[test]
    fn dual_examples() {
        let q = size10();
        assert_eq!(q.dual().dual(), q);
        let antichain = IntervalPoset::new(vec![(1, 1); 4]).unwrap();
        assert_eq!(antichain.dual(), antichain);
        assert_eq!(q.dual(), dual_by_reversal(&q));
        let flipped = FishburnMatrix::from_cover(&q.to_cover()).flip();
        assert_eq!(
            q.dual(),
            IntervalPoset::from_cover(&flipped.to_cover().unwrap())
        );
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            size10().classify(),
            PosetClass {
                is_primitive: false,
                has_max_chain: false
            }
        );
        let single = IntervalPoset::new(vec![(1, 1)]).unwrap().classify();
        assert!(single.is_primitive && single.has_max_chain);
        let chain = IntervalPoset::new(vec![(1, 1), (2, 2), (3, 3)])
            .unwrap()
            .classify();
        assert!(chain.is_primitive && chain.has_max_chain);
    }

    #[test]
    fn invalid_posets() {
        for (elements, needle) in [
            (vec![(1, 2)], "1 <= l <= b"),
            (vec![(2, 2)], "level 1"),
            (vec![(2, 1), (2, 2)], "no element has b = 1"),
        ] {
            let e = IntervalPoset::new(elements).unwrap_err();
            assert_eq!(e.code(), "INVALID_POSET");
            assert!(e.to_string().contains(needle), "{e}");
        }
        assert_eq!(
            "2\n1 1".parse::<IntervalPoset>().unwrap_err().code(),
            "INVALID_POSET"
        );
        for bad in ["", "x", "1\n1", "1\n1 1 1", "1 / 1"] {
            assert_eq!(
                bad.parse::<IntervalPoset>().unwrap_err().code(),
                "PARSE",
                "{bad:?}"
            );
        }
        for bad in ["", "2\n1 2", "2\n1 < 3", "2\na < 1"] {
            assert_eq!(
                bad.parse::<RelationInput>().unwrap_err().code(),
                "PARSE",
                "{bad:?}"
            );
        }
    }

    #[test]
    fn text_formats() {
        let q = size10();
        let text = q.to_string();
        assert!(text.starts_with("6\n1 1\n2 1\n3 2\n"));
        assert_eq!(text.parse::<IntervalPoset>().unwrap(), q);
        assert_eq!(q.to_inline().parse::<IntervalPoset>().unwrap(), q);
        let r = size10_relation();
        assert_eq!(r.to_string().parse::<RelationInput>().unwrap(), r);
    }

    fn arb_poset() -> impl Strategy<Value = IntervalPoset> {
        cover_blocks(7, 3).prop_map(|b| IntervalPoset::from_cover(&FishburnCover::new(b).unwrap()))
    }

    /// Longest chain by brute force over the derived order.
    fn longest_chain_oracle(q: &IntervalPoset) -> usize {
        let n = q.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&u| q.elements()[u].1);
        let mut best = vec![1usize; n];
        for (a, &v) in order.iter().enumerate() {
            for &u in &order[..a] {
                if q.less(u, v) {
                    best[v] = best[v].max(best[u] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    proptest! {
        #[test]
        fn poset_laws(q in arb_poset()) {
            // strict partial order with down-sets nested by level
            let n = q.len();
            for u in 0..n {
                prop_assert!(!q.less(u, u));
                for v in 0..n {
                    for w in 0..n {
                        if q.less(u, v) && q.less(v, w) {
                            prop_assert!(q.less(u, w));
                        }
                    }
                }
            }
            prop_assert_eq!(&q.dual().dual(), &q);
            prop_assert_eq!(&q.dual(), &dual_by_reversal(&q));
            prop_assert_eq!(q.longest_chain(), longest_chain_oracle(&q));
            let t = q.to_tree();
            prop_assert_eq!(&IntervalPoset::from_tree(&t).unwrap(), &q);
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|&(u, v)| q.less(u, v))
                .map(|(u, v)| (u + 1, v + 1))
                .collect();
            prop_assert_eq!(
                canonical_labels(&RelationInput { n, pairs }).unwrap(),
                q.elements().to_vec()
            );
            // cover relation regenerates the order
            let cover = q.cover_relation();
            let mut closure = vec![vec![false; n]; n];
            for &(u, v) in &cover {
                closure[u][v] = true;
            }
            for w in 0..n {
                for u in 0..n {
                    for v in 0..n {
                        if closure[u][w] && closure[w][v] {
                            closure[u][v] = true;
                        }
                    }
                }
            }
            for u in 0..n {
                for v in 0..n {
                    prop_assert_eq!(closure[u][v], q.less(u, v));
                }
            }
        }
    }
}
