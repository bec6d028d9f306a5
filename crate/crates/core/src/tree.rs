//! Vertex-labeled binary trees, endotrees and Fishburn trees.
//!
//! Trees are stored in an arena whose slots are ordered by in-order
//! traversal, so slot `i` is the node `v_{i+1}` and a [`NodeRef`] is simply
//! the 1-based in-order index. Two trees are equal exactly when they have the
//! same shape and labels. No operation recurses on the tree: combs of depth
//! `n` are handled with explicit stacks.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sequence::Sequence;

/// A node, addressed by its 1-based position in the in-order traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeRef(pub usize);

impl NodeRef {
    fn slot(self) -> usize {
        self.0 - 1
    }
}

impl fmt::Display for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Node {
    label: u32,
    left: Option<usize>,
    right: Option<usize>,
    parent: Option<usize>,
}

/// Either empty or `(left, label, right)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LabeledBinaryTree {
    nodes: Vec<Node>,
    root: Option<usize>,
}

/// Flags returned by [`LabeledBinaryTree::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeClass {
    pub decreasing: bool,
    pub strictly_left_decreasing: bool,
    pub endotree: bool,
    pub regular: bool,
    pub fishburn: bool,
    /// Every node with a left child lies on the left path from the root.
    pub comb_shaped: bool,
    /// Every label is strictly larger than all labels below it.
    pub strictly_decreasing: bool,
}

/// The partition of a Fishburn tree into maximal right paths `W_1 .. W_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RPathDecomposition {
    paths: Vec<Vec<NodeRef>>,
    blabels: Vec<u32>,
    diagonal: BTreeSet<u32>,
}

impl RPathDecomposition {
    /// Number of paths, which equals the largest label.
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Nodes of `W_index`, top to bottom. `index` is 1-based.
    pub fn path(&self, index: u32) -> &[NodeRef] {
        &self.paths[index as usize - 1]
    }

    pub fn paths(&self) -> &[Vec<NodeRef>] {
        &self.paths
    }

    /// Index of the path containing `node`.
    pub fn blabel(&self, node: NodeRef) -> u32 {
        self.blabels[node.slot()]
    }

    /// b-labels in in-order.
    pub fn blabels(&self) -> &[u32] {
        &self.blabels
    }

    /// Indices `i` whose path starts on the left path from the root.
    pub fn diagonal_set(&self) -> &BTreeSet<u32> {
        &self.diagonal
    }
}

impl LabeledBinaryTree {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn leaf(label: u32) -> Self {
        Self::node(Self::empty(), label, Self::empty())
    }

    /// Joins two trees under a new root. Cost is linear in the result size.
    pub fn node(left: LabeledBinaryTree, label: u32, right: LabeledBinaryTree) -> Self {
        let offset = left.nodes.len() + 1;
        let root = left.nodes.len();
        let mut nodes = Vec::with_capacity(left.nodes.len() + right.nodes.len() + 1);
        nodes.extend(left.nodes.into_iter().map(|mut n| {
            n.parent = Some(n.parent.unwrap_or(root));
            n
        }));
        nodes.push(Node {
            label,
            left: left.root,
            right: right.root.map(|r| r + offset),
            parent: None,
        });
        nodes.extend(right.nodes.into_iter().map(|mut n| {
            n.left = n.left.map(|c| c + offset);
            n.right = n.right.map(|c| c + offset);
            n.parent = Some(n.parent.map_or(root, |p| p + offset));
            n
        }));
        LabeledBinaryTree {
            nodes,
            root: Some(root),
        }
    }

    /// Canonicalizes an arbitrary arena into in-order slots.
    pub(crate) fn from_arena(
        labels: &[u32],
        left: &[Option<usize>],
        right: &[Option<usize>],
        root: Option<usize>,
    ) -> Self {
        let n = labels.len();
        let mut order = Vec::with_capacity(n);
        let mut stack = Vec::new();
        let mut cur = root;
        while cur.is_some() || !stack.is_empty() {
            while let Some(c) = cur {
                stack.push(c);
                cur = left[c];
            }
            let c = stack.pop().expect("stack is nonempty");
            order.push(c);
            cur = right[c];
        }
        debug_assert_eq!(order.len(), n, "arena contains unreachable nodes");
        let mut rank = vec![0; n];
        for (i, &c) in order.iter().enumerate() {
            rank[c] = i;
        }
        let mut nodes: Vec<Node> = order
            .iter()
            .map(|&c| Node {
                label: labels[c],
                left: left[c].map(|l| rank[l]),
                right: right[c].map(|r| rank[r]),
                parent: None,
            })
            .collect();
        for i in 0..nodes.len() {
            if let Some(l) = nodes[i].left {
                nodes[l].parent = Some(i);
            }
            if let Some(r) = nodes[i].right {
                nodes[r].parent = Some(i);
            }
        }
        LabeledBinaryTree {
            nodes,
            root: root.map(|r| rank[r]),
        }
    }

    /// Inverse of the in-order map on endofunctions: the root is the leftmost
    /// maximum, the prefix before it builds the left subtree and the suffix
    /// the right subtree.
    pub fn from_sequence(x: &Sequence) -> Result<Self> {
        x.require_endofunction()?;
        Ok(Self::from_sequence_unchecked(x.as_slice()))
    }

    /// Same construction without the endofunction check; every word of
    /// positive integers has a well-defined max-decomposition tree.
    pub fn from_sequence_unchecked(x: &[u32]) -> Self {
        let mut nodes: Vec<Node> = Vec::with_capacity(x.len());
        // Right spine of the tree built so far, labels weakly decreasing.
        let mut spine: Vec<usize> = Vec::new();
        for (i, &label) in x.iter().enumerate() {
            let mut last_popped = None;
            while let Some(&top) = spine.last() {
                if nodes[top].label < label {
                    last_popped = spine.pop();
                } else {
                    break;
                }
            }
            nodes.push(Node {
                label,
                left: last_popped,
                right: None,
                parent: spine.last().copied(),
            });
            if let Some(l) = last_popped {
                nodes[l].parent = Some(i);
            }
            if let Some(&top) = spine.last() {
                nodes[top].right = Some(i);
            }
            spine.push(i);
        }
        LabeledBinaryTree {
            nodes,
            root: spine.first().copied(),
        }
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Largest label, 0 for the empty tree.
    pub fn max_label(&self) -> u32 {
        self.nodes.iter().map(|n| n.label).max().unwrap_or(0)
    }

    pub fn root(&self) -> Option<NodeRef> {
        self.root.map(|r| NodeRef(r + 1))
    }

    pub fn label(&self, v: NodeRef) -> u32 {
        self.nodes[v.slot()].label
    }

    pub fn left(&self, v: NodeRef) -> Option<NodeRef> {
        self.nodes[v.slot()].left.map(|c| NodeRef(c + 1))
    }

    pub fn right(&self, v: NodeRef) -> Option<NodeRef> {
        self.nodes[v.slot()].right.map(|c| NodeRef(c + 1))
    }

    pub fn parent(&self, v: NodeRef) -> Option<NodeRef> {
        self.nodes[v.slot()].parent.map(|c| NodeRef(c + 1))
    }

    /// Labels read in in-order.
    pub fn in_order(&self) -> Sequence {
        Sequence::new(self.nodes.iter().map(|n| n.label).collect())
            .expect("tree labels are positive")
    }

    fn pre_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack: Vec<usize> = self.root.into_iter().collect();
        while let Some(c) = stack.pop() {
            order.push(c);
            if let Some(r) = self.nodes[c].right {
                stack.push(r);
            }
            if let Some(l) = self.nodes[c].left {
                stack.push(l);
            }
        }
        order
    }

    /// Largest label in each node's subtree.
    fn subtree_max(&self) -> Vec<u32> {
        let mut max: Vec<u32> = self.nodes.iter().map(|n| n.label).collect();
        for &c in self.pre_order().iter().rev() {
            if let Some(p) = self.nodes[c].parent {
                max[p] = max[p].max(max[c]);
            }
        }
        max
    }

    /// Membership in the left path from the root, by slot.
    fn on_left_path(&self) -> Vec<bool> {
        let mut diag = vec![false; self.nodes.len()];
        let mut cur = self.root;
        while let Some(c) = cur {
            diag[c] = true;
            cur = self.nodes[c].left;
        }
        diag
    }

    /// Whether the labels are exactly `{1, ..., max}`.
    fn labels_form_interval(&self) -> Option<u32> {
        let k = self.max_label() as usize;
        if k > self.nodes.len() {
            return Some(
                (1..=k as u32)
                    .find(|v| !self.nodes.iter().any(|n| n.label == *v))
                    .expect("more values than nodes"),
            );
        }
        let mut seen = vec![false; k + 1];
        for n in &self.nodes {
            seen[n.label as usize] = true;
        }
        (1..=k).find(|&v| !seen[v]).map(|v| v as u32)
    }

    fn treetops_and_unseen_slots(&self) -> (Vec<bool>, Vec<bool>) {
        let n = self.nodes.len();
        let treetops = (0..n)
            .map(|i| i == 0 || self.nodes[i].left.is_some())
            .collect();
        let mut seen = BTreeSet::new();
        let unseen = self.nodes.iter().map(|v| seen.insert(v.label)).collect();
        (treetops, unseen)
    }

    /// `treetops` is `v_1` together with every node that has a left child;
    /// `unseen` holds the leftmost occurrence of each label.
    pub fn treetops_and_unseen(&self) -> (BTreeSet<NodeRef>, BTreeSet<NodeRef>) {
        let (treetops, unseen) = self.treetops_and_unseen_slots();
        let collect = |flags: Vec<bool>| {
            flags
                .into_iter()
                .enumerate()
                .filter(|&(_, f)| f)
                .map(|(i, _)| NodeRef(i + 1))
                .collect()
        };
        (collect(treetops), collect(unseen))
    }

    pub fn classify(&self) -> TreeClass {
        let max = self.subtree_max();
        let sub = |c: Option<usize>| c.map_or(0, |c| max[c]);
        let mut decreasing = true;
        let mut strictly_left_decreasing = true;
        let mut strictly_decreasing = true;
        for v in &self.nodes {
            let (l, r) = (sub(v.left), sub(v.right));
            decreasing &= v.label >= l && v.label >= r;
            strictly_left_decreasing &= v.label > l;
            strictly_decreasing &= v.label > l && v.label > r;
        }
        let n = self.nodes.len();
        let endotree = decreasing
            && strictly_left_decreasing
            && self.nodes.iter().all(|v| v.label as usize <= n);
        let regular = endotree && self.labels_form_interval().is_none();
        let fishburn = regular && {
            let (treetops, unseen) = self.treetops_and_unseen_slots();
            treetops == unseen
        };
        let diag = self.on_left_path();
        let comb_shaped = self
            .nodes
            .iter()
            .zip(&diag)
            .all(|(v, &on_diag)| on_diag || v.left.is_none());
        TreeClass {
            decreasing,
            strictly_left_decreasing,
            endotree,
            regular,
            fishburn,
            comb_shaped,
            strictly_decreasing,
        }
    }

    /// Checks the endotree conditions, naming the first violated one.
    pub fn validate_endotree(&self) -> Result<()> {
        let max = self.subtree_max();
        let n = self.nodes.len();
        for (i, v) in self.nodes.iter().enumerate() {
            let at = NodeRef(i + 1);
            if let Some(l) = v.left.filter(|&l| max[l] >= v.label) {
                return Err(Error::NotEndotree(format!(
                    "not strictly decreasing to the left: {at} labeled {} has a left subtree \
                     with maximum {}",
                    v.label, max[l]
                )));
            }
            if let Some(r) = v.right.filter(|&r| max[r] > v.label) {
                return Err(Error::NotEndotree(format!(
                    "not decreasing: {at} labeled {} has a right subtree with maximum {}",
                    v.label, max[r]
                )));
            }
            if v.label as usize > n {
                return Err(Error::NotEndotree(format!(
                    "label {} at {at} exceeds the size {n}",
                    v.label
                )));
            }
        }
        Ok(())
    }

    /// Checks the Fishburn-tree conditions, naming the first violated one.
    pub fn validate_fishburn(&self) -> Result<()> {
        self.validate_endotree()
            .map_err(|e| Error::NotFishburn(e.to_string()))?;
        if let Some(missing) = self.labels_form_interval() {
            return Err(Error::NotFishburn(format!(
                "not regular: label {missing} is missing below the maximum {}",
                self.max_label()
            )));
        }
        let (treetops, unseen) = self.treetops_and_unseen_slots();
        for i in 0..self.nodes.len() {
            let at = NodeRef(i + 1);
            let label = self.nodes[i].label;
            if treetops[i] && !unseen[i] {
                return Err(Error::NotFishburn(format!(
                    "treetops differ from unseen: {at} (label {label}) is a treetop but not \
                     the leftmost occurrence of its label"
                )));
            }
            if unseen[i] && !treetops[i] {
                return Err(Error::NotFishburn(format!(
                    "treetops differ from unseen: {at} (label {label}) is the leftmost \
                     occurrence of its label but not a treetop"
                )));
            }
        }
        Ok(())
    }

    /// Splits a Fishburn tree into its maximal right paths and assigns the
    /// b-label of every node.
    ///
    /// The root path is `W_k`. A left child of a diagonal node starts the path
    /// indexed by its own label; a left child of any other node starts the
    /// path indexed by its parent's label. Right children continue the path
    /// of their parent.
    pub fn rpath_decomposition(&self) -> Result<RPathDecomposition> {
        self.validate_fishburn()?;
        let n = self.nodes.len();
        let k = self.max_label() as usize;
        let diag = self.on_left_path();
        let mut blabels = vec![0u32; n];
        for c in self.pre_order() {
            let v = &self.nodes[c];
            blabels[c] = match v.parent {
                None => v.label,
                Some(p) if self.nodes[p].right == Some(c) => blabels[p],
                Some(p) if diag[p] => v.label,
                Some(p) => self.nodes[p].label,
            };
        }
        let mut paths = vec![Vec::new(); k];
        let mut diagonal = BTreeSet::new();
        for c in 0..n {
            let v = &self.nodes[c];
            let starts_path = v.parent.is_none_or(|p| self.nodes[p].right != Some(c));
            if !starts_path {
                continue;
            }
            let index = blabels[c];
            let path = &mut paths[index as usize - 1];
            assert!(
                path.is_empty(),
                "two maximal right paths share the index {index}"
            );
            if diag[c] {
                diagonal.insert(index);
            }
            let mut cur = Some(c);
            while let Some(u) = cur {
                path.push(NodeRef(u + 1));
                cur = self.nodes[u].right;
            }
        }
        assert!(
            paths.iter().all(|p| !p.is_empty()),
            "some path index in 1..=k is unused"
        );
        Ok(RPathDecomposition {
            paths,
            blabels,
            diagonal,
        })
    }

    /// Graphviz rendering. Nodes are named by in-order index; b-labels are
    /// added when the tree is a Fishburn tree and `with_blabels` is set.
    pub fn to_dot(&self, with_blabels: bool) -> String {
        let blabels = with_blabels
            .then(|| self.rpath_decomposition().ok())
            .flatten();
        let mut out = String::from("digraph tree {\n  node [shape=circle];\n");
        for (i, v) in self.nodes.iter().enumerate() {
            match &blabels {
                Some(d) => writeln!(
                    out,
                    "  v{} [label=\"{}\", xlabel=\"b={}\"];",
                    i + 1,
                    v.label,
                    d.blabels[i]
                ),
                None => writeln!(out, "  v{} [label=\"{}\"];", i + 1, v.label),
            }
            .expect("writing to a String");
        }
        for c in self.pre_order() {
            let v = &self.nodes[c];
            if let Some(l) = v.left {
                writeln!(out, "  v{} -> v{} [side=left];", c + 1, l + 1).expect("String write");
            }
            if let Some(r) = v.right {
                writeln!(out, "  v{} -> v{} [side=right];", c + 1, r + 1).expect("String write");
            }
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for LabeledBinaryTree {
    /// `tree := "." | "(" tree " " label " " tree ")"`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        enum Step {
            Tree(Option<usize>),
            Label(usize),
            Close,
        }
        let mut stack = vec![Step::Tree(self.root)];
        while let Some(step) = stack.pop() {
            match step {
                Step::Tree(None) => f.write_str(".")?,
                Step::Tree(Some(c)) => {
                    f.write_str("(")?;
                    stack.push(Step::Close);
                    stack.push(Step::Tree(self.nodes[c].right));
                    stack.push(Step::Label(c));
                    stack.push(Step::Tree(self.nodes[c].left));
                }
                Step::Label(c) => write!(f, " {} ", self.nodes[c].label)?,
                Step::Close => f.write_str(")")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LabeledBinaryTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        struct Frame {
            left: Option<Option<usize>>,
            slot: Option<usize>,
            right: Option<Option<usize>>,
        }
        let err = |m: String| Error::parse("tree", m);
        let mut labels: Vec<u32> = Vec::new();
        let mut left: Vec<Option<usize>> = Vec::new();
        let mut right: Vec<Option<usize>> = Vec::new();
        let mut stack: Vec<Frame> = Vec::new();
        let mut result: Option<Option<usize>> = None;

        let bytes = s.as_bytes();
        let mut i = 0;
        // Places a finished subtree into the enclosing frame, or makes it the result.
        let place = |stack: &mut Vec<Frame>,
                     result: &mut Option<Option<usize>>,
                     sub: Option<usize>,
                     at: usize|
         -> Result<()> {
            match stack.last_mut() {
                None if result.is_none() => {
                    *result = Some(sub);
                    Ok(())
                }
                None => Err(err(format!("trailing input at byte {at}"))),
                Some(fr) if fr.left.is_none() => {
                    fr.left = Some(sub);
                    Ok(())
                }
                Some(fr) if fr.slot.is_some() && fr.right.is_none() => {
                    fr.right = Some(sub);
                    Ok(())
                }
                Some(_) => Err(err(format!("unexpected subtree at byte {at}"))),
            }
        };
        while i < bytes.len() {
            let b = bytes[i];
            match b {
                b' ' | b'\t' | b'\n' | b'\r' => i += 1,
                b'(' => {
                    if result.is_some() {
                        return Err(err(format!("trailing input at byte {i}")));
                    }
                    if let Some(fr) = stack.last() {
                        let expecting_subtree =
                            fr.left.is_none() || (fr.slot.is_some() && fr.right.is_none());
                        if !expecting_subtree {
                            return Err(err(format!("unexpected '(' at byte {i}")));
                        }
                    }
                    stack.push(Frame {
                        left: None,
                        slot: None,
                        right: None,
                    });
                    i += 1;
                }
                b'.' => {
                    place(&mut stack, &mut result, None, i)?;
                    i += 1;
                }
                b')' => {
                    let fr = stack
                        .pop()
                        .ok_or_else(|| err(format!("unbalanced ')' at byte {i}")))?;
                    let (Some(l), Some(slot), Some(r)) = (fr.left, fr.slot, fr.right) else {
                        return Err(err(format!("incomplete node closed at byte {i}")));
                    };
                    left[slot] = l;
                    right[slot] = r;
                    place(&mut stack, &mut result, Some(slot), i)?;
                    i += 1;
                }
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let text = &s[start..i];
                    let label: u32 = text
                        .parse()
                        .map_err(|e| err(format!("bad label {text:?}: {e}")))?;
                    if label == 0 {
                        return Err(err(format!("label 0 at byte {start}; labels are positive")));
                    }
                    let fr = stack
                        .last_mut()
                        .filter(|fr| fr.left.is_some() && fr.slot.is_none())
                        .ok_or_else(|| err(format!("unexpected label at byte {start}")))?;
                    fr.slot = Some(labels.len());
                    labels.push(label);
                    left.push(None);
                    right.push(None);
                }
                _ => {
                    return Err(err(format!(
                        "unexpected character {:?} at byte {i}",
                        s[i..].chars().next().unwrap_or('?')
                    )))
                }
            }
        }
        if !stack.is_empty() {
            return Err(err("unterminated node".into()));
        }
        let root = result.ok_or_else(|| err("empty input".into()))?;
        // Labels were numbered as they were read, which is already in-order.
        Ok(LabeledBinaryTree::from_arena(&labels, &left, &right, root))
    }
}
