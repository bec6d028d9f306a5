//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Brute-force oracles (word filters, the endotree shape generator, the
//! natural-labeling poset search, matrix sum and flip on raw rows) live here
//! so they share no code with the library paths they check.

use std::collections::{BTreeMap, BTreeSet};
use std::panic;
use std::process::ExitCode;
use std::time::Instant;

use fishburn::{
    classify_all, cover_flip, enumerate, fishburn_numbers, flip_modasc, sum_modasc, Error,
    FishburnCover, FishburnMatrix, IntervalPoset, Kind, LabeledBinaryTree, Limits, RelationInput,
    Sequence, Structure,
};

const WORD21: &str = "1 1 5 5 1 3 8 8 5 5 1 2 2 4 3 7 3 9 2 6 1";
const TREE21: &str = "((((. 1 (. 1 .)) 5 (. 5 ((. 1 .) 3 .))) 8 (. 8 ((. 5 (. 5 \
    (((. 1 .) 2 (. 2 .)) 4 (. 3 .)))) 7 (. 3 .)))) 9 ((. 2 .) 6 (. 1 .)))";
const COVER21: &str = "{1,1}{1}{1}{2,2}{5,5,3}{2}{5,5,4,3}{8,8,7,3}{9,6,1}";
const MATRIX21: &str = "2 / 1 0 / 1 0 0 / 0 2 0 0 / 0 0 1 0 2 / 0 1 0 0 0 0 / \
    0 0 1 1 2 0 0 / 0 0 1 0 0 0 1 2 / 1 0 0 0 0 1 0 0 1";

const COVER15: &str = "{1}{2,1}{2}{2,1}{5,4,2}{5,3,2}{7,6,3}";
const WORD15: &str = "1 2 1 5 2 1 4 2 7 5 2 3 2 6 3";
const MATRIX15: &str = "1 / 1 1 / 0 1 0 / 1 1 0 0 / 0 1 0 1 1 / 0 1 1 0 1 0 / 0 0 1 0 0 1 1";

const WORD10: &str = "1 6 1 2 4 2 3 5 5 3";
const FLIP10: &str = "1 6 1 1 2 1 4 2 3 5";
const MATRIX10: &str = "1 / 1 0 / 0 1 0 / 0 1 0 0 / 0 0 1 1 0 / 0 0 1 0 2 1";
const FLIP_MATRIX10: &str = "1 / 2 0 / 0 1 0 / 1 1 0 0 / 0 0 1 1 0 / 0 0 0 0 1 1";
const LABELS10: [(u32, u32); 10] = [
    (1, 1),
    (2, 1),
    (3, 2),
    (4, 2),
    (5, 3),
    (5, 4),
    (6, 3),
    (6, 5),
    (6, 5),
    (6, 6),
];

const SUM_RIGHT9: &str = "1 1 3 3 1 2 4 4 3";
const MATRIX9: &str = "2 / 1 0 / 0 1 2 / 0 0 1 2";
const SUM19: &str = "1 1 1 3 3 1 1 2 2 4 4 3 2 6 4 3 5 5 3";
// The entry at (4,4) is 2, as forced by the biword and the size 19.
const SUM_MATRIX19: &str = "3 / 2 0 / 0 2 2 / 0 1 1 2 / 0 0 1 1 0 / 0 0 1 0 2 1";

const NOT_ENDOTREE: &str = "((((. 2 .) 2 .) 3 ((. 1 .) 3 (. 2 .))) 5 (. 4 .))";
const NOT_FISHBURN: &str = "(((. 2 (. 2 .)) 3 ((. 1 .) 3 (. 2 .))) 5 (. 4 .))";

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn seq(s: &str) -> Sequence {
    s.parse().unwrap()
}

fn matrix(s: &str) -> FishburnMatrix {
    s.parse().unwrap()
}

fn matrix_of(x: &Sequence) -> FishburnMatrix {
    FishburnMatrix::from_cover(&FishburnCover::from_modasc(x).unwrap())
}

// ---- oracles ----

/// All words of length `n` over `1..=n` by base-`n` counting.
fn words(n: usize) -> impl Iterator<Item = Vec<u32>> {
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

fn ascent_word(w: &[u32]) -> bool {
    if w.is_empty() {
        return true;
    }
    let mut ascents = 0;
    for (i, &v) in w.iter().enumerate() {
        if i == 0 {
            if v != 1 {
                return false;
            }
            continue;
        }
        if v > ascents + 2 {
            return false;
        }
        if w[i - 1] < v {
            ascents += 1;
        }
    }
    true
}

fn cayley_word(w: &[u32]) -> bool {
    let mask = w.iter().fold(0u64, |m, &v| m | 1 << v);
    mask == (1u64 << (mask.count_ones() + 1)) - 2
}

/// Cayley with the set of ascent tops (first entry included) equal to the
/// set of leftmost occurrences.
fn modasc_word(w: &[u32]) -> bool {
    if !cayley_word(w) {
        return false;
    }
    let tops: BTreeSet<usize> = (0..w.len())
        .filter(|&i| i == 0 || w[i - 1] < w[i])
        .collect();
    let mut firsts = BTreeSet::new();
    let mut seen = BTreeSet::new();
    for (i, v) in w.iter().enumerate() {
        if seen.insert(v) {
            firsts.insert(i);
        }
    }
    tops == firsts
}

/// Every endotree of size `n`: for each shape, labels chosen so that a left
/// child is below its parent and a right child at most its parent.
fn endotrees(n: usize) -> Vec<LabeledBinaryTree> {
    fn build(
        size: usize,
        bound: u32,
        memo: &mut BTreeMap<(usize, u32), Vec<LabeledBinaryTree>>,
    ) -> Vec<LabeledBinaryTree> {
        if size == 0 {
            return vec![LabeledBinaryTree::empty()];
        }
        if let Some(v) = memo.get(&(size, bound)) {
            return v.clone();
        }
        let mut out = Vec::new();
        for label in 1..=bound {
            for l in 0..size {
                let lefts = build(l, label - 1, memo);
                let rights = build(size - 1 - l, label, memo);
                for a in &lefts {
                    for b in &rights {
                        out.push(LabeledBinaryTree::node(a.clone(), label, b.clone()));
                    }
                }
            }
        }
        memo.insert((size, bound), out.clone());
        out
    }
    build(n, n as u32, &mut BTreeMap::new())
}

/// Unlabeled (2+2)-free posets of size `n` from all naturally labeled
/// transitive relations.
fn posets_by_relations(n: usize) -> BTreeSet<IntervalPoset> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|v| (1..v).map(move |u| (u, v))).collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << pairs.len() {
        let rel: BTreeSet<(usize, usize)> = (0..pairs.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        let transitive = rel.iter().all(|&(u, v)| {
            rel.range((v, 0)..(v + 1, 0))
                .all(|&(_, w)| rel.contains(&(u, w)))
        });
        if !transitive {
            continue;
        }
        let relation = RelationInput {
            n,
            pairs: rel.into_iter().collect(),
        };
        if let Ok(q) = IntervalPoset::from_relation(&relation) {
            out.insert(q);
        }
    }
    out
}

/// Reverse every relation and relabel.
fn dual_by_reversal(q: &IntervalPoset) -> IntervalPoset {
    let n = q.len();
    let pairs = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| q.less(u, v))
        .map(|(u, v)| (v + 1, u + 1))
        .collect();
    IntervalPoset::from_relation(&RelationInput { n, pairs }).unwrap()
}

fn raw_flip(m: &FishburnMatrix) -> Vec<Vec<u64>> {
    let k = m.dim();
    (1..=k)
        .map(|i| (1..=i).map(|j| m.entry(k + 1 - j, k + 1 - i)).collect())
        .collect()
}

/// Smaller matrix added into the top-left corner of the larger one.
fn raw_sum(a: &FishburnMatrix, b: &FishburnMatrix) -> Vec<Vec<u64>> {
    let (small, big) = if a.dim() <= b.dim() { (a, b) } else { (b, a) };
    let mut rows = big.rows().to_vec();
    for (i, row) in small.rows().iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            rows[i][j] += v;
        }
    }
    rows
}

fn library(kind: Kind, n: usize) -> Vec<Structure> {
    enumerate(kind, n, &Limits::default()).unwrap().collect()
}

fn modasc(n: usize) -> Vec<Sequence> {
    library(Kind::Modasc, n)
        .into_iter()
        .map(|s| match s {
            Structure::Sequence(x) => x,
            other => panic!("unexpected {other:?}"),
        })
        .collect()
}

// ---- criteria ----

fn golden_examples() -> Outcome {
    let word = seq(WORD21);
    let tree: LabeledBinaryTree = TREE21.parse().unwrap();
    let cover: FishburnCover = COVER21.parse().unwrap();
    let mat = matrix(MATRIX21);
    ensure!(
        LabeledBinaryTree::from_sequence(&word).unwrap().to_string() == TREE21,
        "word -> tree"
    );
    ensure!(tree.in_order().to_string() == WORD21, "tree -> word");
    ensure!(
        FishburnCover::from_tree(&tree).unwrap().to_string() == COVER21,
        "tree -> cover"
    );
    ensure!(cover.to_tree().to_string() == TREE21, "cover -> tree");
    ensure!(cover.to_modasc().to_string() == WORD21, "cover -> word");
    ensure!(
        FishburnCover::from_modasc(&word).unwrap().to_string() == COVER21,
        "word -> cover"
    );
    ensure!(
        FishburnMatrix::from_cover(&cover).to_inline() == MATRIX21,
        "cover -> matrix"
    );
    ensure!(
        mat.to_cover().unwrap().to_string() == COVER21,
        "matrix -> cover"
    );

    let c15: FishburnCover = COVER15.parse().unwrap();
    ensure!(
        c15.to_tree().in_order().to_string() == WORD15,
        "cover -> tree -> word"
    );
    ensure!(c15.to_modasc().to_string() == WORD15, "cover -> word");
    ensure!(
        FishburnMatrix::from_cover(&c15).to_inline() == MATRIX15,
        "cover -> binary matrix"
    );

    let (x, f) = (seq(WORD10), seq(FLIP10));
    ensure!(flip_modasc(&x).unwrap() == f, "flip({x})");
    ensure!(matrix_of(&x).to_inline() == MATRIX10, "matrix of {x}");
    ensure!(matrix_of(&f).to_inline() == FLIP_MATRIX10, "matrix of {f}");

    let y = seq(SUM_RIGHT9);
    let s = sum_modasc(&x, &y).unwrap();
    ensure!(s.to_string() == SUM19, "{x} + {y} = {s}");
    ensure!(matrix_of(&y).to_inline() == MATRIX9, "matrix of {y}");
    ensure!(matrix_of(&s).to_inline() == SUM_MATRIX19, "matrix of {s}");
    ensure!(
        matrix(MATRIX10).sum(&matrix(MATRIX9)).unwrap().to_inline() == SUM_MATRIX19,
        "matrix sum"
    );

    let t10 = LabeledBinaryTree::from_sequence(&x).unwrap();
    let q = IntervalPoset::from_tree(&t10).unwrap();
    let mut labels = q.elements().to_vec();
    labels.sort();
    ensure!(labels == LABELS10, "canonical labels {labels:?}");
    ensure!(
        IntervalPoset::new(LABELS10.to_vec()).unwrap().to_tree() == t10,
        "labels -> tree"
    );
    Ok(())
}

fn counting() -> Outcome {
    let series = fishburn_numbers(8).map_err(|e| e.to_string())?.counts();
    ensure!(
        series[..6] == [1, 1, 2, 5, 15, 53],
        "F_0..F_5 = {:?}",
        &series[..6]
    );
    for n in 0..=8 {
        let brute = words(n).filter(|w| ascent_word(w)).count() as u128;
        ensure!(
            brute == series[n],
            "n={n}: {brute} ascent words, series gives {}",
            series[n]
        );
    }
    for n in 0..=7 {
        let oracle = words(n).filter(|w| modasc_word(w)).count() as u128;
        ensure!(oracle == series[n], "n={n}: {oracle} modified ascent words");
        for kind in [
            Kind::Modasc,
            Kind::Ascseq,
            Kind::FishburnTree,
            Kind::Matrix,
            Kind::Poset,
        ] {
            let c = library(kind, n).len() as u128;
            ensure!(
                c == series[n],
                "n={n}: {c} of kind {kind}, expected {}",
                series[n]
            );
        }
        let fish = endotrees(n)
            .iter()
            .filter(|t| t.classify().fishburn)
            .count() as u128;
        ensure!(
            fish == series[n],
            "n={n}: {fish} Fishburn trees among endotrees"
        );
    }
    let fubini = fishburn::fubini_numbers(8)
        .map_err(|e| e.to_string())?
        .counts();
    ensure!(
        fubini[1..4] == [1, 3, 13],
        "Fubini 1..3 = {:?}",
        &fubini[1..4]
    );
    for n in 0..=8 {
        let brute = words(n).filter(|w| cayley_word(w)).count() as u128;
        let lib = library(Kind::Cayley, n).len() as u128;
        ensure!(
            brute == fubini[n] && lib == fubini[n],
            "n={n}: Cayley {brute} / {lib} vs {}",
            fubini[n]
        );
    }
    Ok(())
}

fn roundtrips() -> Outcome {
    for n in 0..=7 {
        for w in words(n) {
            let x = Sequence::new(w).unwrap();
            let t = LabeledBinaryTree::from_sequence(&x).unwrap();
            ensure!(t.in_order() == x, "in_order(seq_to_tree({x}))");
        }
        let trees = endotrees(n);
        ensure!(
            trees.len() == n.pow(n as u32),
            "n={n}: {} endotrees",
            trees.len()
        );
        for t in &trees {
            let back = LabeledBinaryTree::from_sequence(&t.in_order()).unwrap();
            ensure!(&back == t, "seq_to_tree(in_order({t}))");
            if t.classify().fishburn {
                let c = FishburnCover::from_tree(t).unwrap();
                ensure!(&c.to_tree() == t, "cover_to_tree(pairs({t}))");
            }
        }
        for x in modasc(n) {
            let c = FishburnCover::from_modasc(&x).unwrap();
            ensure!(c.to_tree().in_order() == x, "tree route of {x}");
            let again = FishburnCover::from_tree(&c.to_tree()).unwrap();
            ensure!(again == c, "pairs(cover_to_tree({c}))");
            ensure!(
                c.to_modasc() == c.to_tree().in_order(),
                "cover_to_modasc({c})"
            );
            let m = FishburnMatrix::from_cover(&c);
            ensure!(
                m.to_cover().unwrap() == c,
                "matrix_to_cover(cover_to_matrix({c}))"
            );
        }
        for s in library(Kind::Matrix, n) {
            let Structure::Matrix(m) = s else {
                unreachable!()
            };
            let c = m.to_cover().unwrap();
            ensure!(
                FishburnMatrix::from_cover(&c) == m,
                "cover_to_matrix(matrix_to_cover({}))",
                m.to_inline()
            );
        }
    }
    for n in 0..=6 {
        let oracle = posets_by_relations(n);
        let lib: BTreeSet<IntervalPoset> = library(Kind::Poset, n)
            .into_iter()
            .map(|s| match s {
                Structure::Poset(q) => q,
                other => panic!("unexpected {other:?}"),
            })
            .collect();
        ensure!(
            oracle == lib,
            "n={n}: relation search and enumeration disagree"
        );
        for q in &oracle {
            let t = q.to_tree();
            ensure!(
                IntervalPoset::from_tree(&t).unwrap() == *q,
                "tree_to_poset(poset_to_tree({}))",
                q.to_inline()
            );
            ensure!(
                IntervalPoset::from_tree(&t).unwrap().to_tree() == t,
                "poset_to_tree(tree_to_poset({t}))"
            );
        }
    }
    Ok(())
}

fn operation_laws() -> Outcome {
    let by_size: Vec<Vec<Sequence>> = (0..=8).map(modasc).collect();
    for xs in &by_size[..=7] {
        for x in xs {
            let f = flip_modasc(x).unwrap();
            ensure!(
                modasc_word(f.as_slice()),
                "flip({x}) = {f} is not a modified ascent sequence"
            );
            ensure!(flip_modasc(&f).unwrap() == *x, "flip(flip({x}))");
            ensure!(
                matrix_of(&f).rows() == raw_flip(&matrix_of(x)),
                "matrix of flip({x})"
            );
            let q = IntervalPoset::from_cover(&FishburnCover::from_modasc(x).unwrap());
            ensure!(
                q.dual() == dual_by_reversal(&q),
                "dual of {}",
                q.to_inline()
            );
            ensure!(
                q.dual().to_cover() == cover_flip(&q.to_cover()),
                "dual vs cover flip of {x}"
            );
        }
    }
    for total in 2..=9 {
        for a in 1..total {
            for x in &by_size[a] {
                for y in &by_size[total - a] {
                    let s = sum_modasc(x, y).unwrap();
                    ensure!(s.len() == total, "|{x} + {y}| = {}", s.len());
                    ensure!(
                        modasc_word(s.as_slice()),
                        "{x} + {y} = {s} is not a modified ascent sequence"
                    );
                    ensure!(
                        matrix_of(&s).rows() == raw_sum(&matrix_of(x), &matrix_of(y)),
                        "matrix of {x} + {y}"
                    );
                }
            }
        }
    }
    Ok(())
}

fn classification_equivalences() -> Outcome {
    for n in 0..=7 {
        for x in modasc(n) {
            let c = classify_all(&x).unwrap();
            ensure!(
                c.primitive.agrees(),
                "{x}: primitive {:?}",
                c.primitive.flags()
            );
            ensure!(
                c.self_modified.agrees(),
                "{x}: self-modified {:?}",
                c.self_modified.flags()
            );
        }
    }
    Ok(())
}

fn negative_validation() -> Outcome {
    let left: LabeledBinaryTree = NOT_ENDOTREE.parse().unwrap();
    let e = left.validate_endotree().unwrap_err();
    ensure!(e.code() == "NOT_ENDOTREE", "{e}");
    ensure!(
        e.to_string().contains("strictly decreasing to the left"),
        "{e}"
    );

    let right: LabeledBinaryTree = NOT_FISHBURN.parse().unwrap();
    ensure!(
        right.validate_endotree().is_ok(),
        "{right} should be an endotree"
    );
    let e = right.validate_fishburn().unwrap_err();
    ensure!(e.code() == "NOT_FISHBURN", "{e}");
    ensure!(e.to_string().contains("treetops differ from unseen"), "{e}");

    let relation = RelationInput {
        n: 4,
        pairs: vec![(1, 2), (3, 4)],
    };
    let e = IntervalPoset::from_relation(&relation).unwrap_err();
    ensure!(e.code() == "NOT_TWO_PLUS_TWO_FREE", "{e}");
    ensure!(e.to_string().contains("2+2"), "{e}");
    ensure!(matches!(e, Error::NotTwoPlusTwoFree { .. }), "{e:?}");
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("golden worked examples", golden_examples),
        ("counting", counting),
        ("roundtrips", roundtrips),
        ("operation laws", operation_laws),
        (
            "primitive and self-modified equivalences",
            classification_equivalences,
        ),
        ("negative validation", negative_validation),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(run).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {} {name}: PASS ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
