//! Conversion plumbing behind the `fishburn` binary: parsing any supported
//! encoding, converting through the cover, and printing canonical text.

use clap::ValueEnum;
use fishburn::{
    cover_flip, cover_sum, BurgeWord, Error, FishburnCover, FishburnMatrix, IntervalPoset,
    LabeledBinaryTree, RelationInput, Result, Sequence,
};

/// Encodings accepted by `convert`, `flip`, `sum` and `render`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Tag {
    Seq,
    Tree,
    Cover,
    Burge,
    Matrix,
    Poset,
}

impl Tag {
    pub const ALL: [Tag; 6] = [
        Tag::Seq,
        Tag::Tree,
        Tag::Cover,
        Tag::Burge,
        Tag::Matrix,
        Tag::Poset,
    ];
}

/// How matrices are read and written.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MatrixStyle {
    /// Upper-triangular text in both directions.
    pub transpose: bool,
    /// Aligned grid with dots for zeros, output only.
    pub pretty: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Seq(Sequence),
    Tree(LabeledBinaryTree),
    Cover(FishburnCover),
    Burge(BurgeWord),
    Matrix(FishburnMatrix),
    Poset(IntervalPoset),
}

pub fn parse(tag: Tag, text: &str, style: MatrixStyle) -> Result<Value> {
    Ok(match tag {
        Tag::Seq => Value::Seq(text.parse()?),
        Tag::Tree => Value::Tree(text.trim().parse()?),
        Tag::Cover => Value::Cover(text.parse()?),
        // a one-line biword may separate its rows with '/'
        Tag::Burge => Value::Burge(text.replace('/', "\n").parse()?),
        Tag::Matrix if style.transpose => Value::Matrix(FishburnMatrix::from_upper_text(text)?),
        Tag::Matrix => Value::Matrix(text.parse()?),
        // a relation `n` / `u < v` lines is labeled canonically
        Tag::Poset if text.contains('<') => {
            let relation: RelationInput = text.parse()?;
            Value::Poset(IntervalPoset::from_relation(&relation)?)
        }
        Tag::Poset => Value::Poset(text.parse()?),
    })
}

pub fn to_cover(value: &Value) -> Result<FishburnCover> {
    match value {
        Value::Seq(x) => FishburnCover::from_modasc(x),
        Value::Tree(t) => FishburnCover::from_tree(t),
        Value::Cover(c) => Ok(c.clone()),
        Value::Burge(w) => FishburnCover::from_burge(w),
        Value::Matrix(m) => m.to_cover(),
        Value::Poset(q) => Ok(q.to_cover()),
    }
}

pub fn from_cover(cover: FishburnCover, tag: Tag) -> Value {
    match tag {
        Tag::Seq => Value::Seq(cover.to_modasc()),
        Tag::Tree => Value::Tree(cover.to_tree()),
        Tag::Burge => Value::Burge(cover.to_burge()),
        Tag::Matrix => Value::Matrix(FishburnMatrix::from_cover(&cover)),
        Tag::Poset => Value::Poset(IntervalPoset::from_cover(&cover)),
        Tag::Cover => Value::Cover(cover),
    }
}

/// Sequences and trees convert into each other for any endofunction and any
/// endotree; every
/// other pair goes through the cover.
pub fn convert(value: Value, to: Tag) -> Result<Value> {
    match (value, to) {
        (Value::Seq(x), Tag::Seq) => Ok(Value::Seq(x)),
        (Value::Seq(x), Tag::Tree) => LabeledBinaryTree::from_sequence(&x).map(Value::Tree),
        (Value::Tree(t), Tag::Tree) => Ok(Value::Tree(t)),
        (Value::Tree(t), Tag::Seq) => t.validate_endotree().map(|()| Value::Seq(t.in_order())),
        (value, to) => Ok(from_cover(to_cover(&value)?, to)),
    }
}

pub fn show(value: &Value, style: MatrixStyle) -> String {
    match value {
        Value::Seq(x) => x.to_string(),
        Value::Tree(t) => t.to_string(),
        Value::Cover(c) => c.to_string(),
        Value::Burge(w) => w.to_string(),
        Value::Matrix(m) if style.transpose => m.to_upper_text(),
        Value::Matrix(m) if style.pretty => m.pretty(),
        Value::Matrix(m) => m.to_string(),
        Value::Poset(q) => q.to_string(),
    }
}

pub fn flip(value: &Value, tag: Tag) -> Result<Value> {
    Ok(from_cover(cover_flip(&to_cover(value)?), tag))
}

pub fn sum(a: &Value, b: &Value, tag: Tag) -> Result<Value> {
    Ok(from_cover(cover_sum(&to_cover(a)?, &to_cover(b)?), tag))
}

/// Splits text holding two inputs at the first blank line between them.
pub fn split_pair(text: &str) -> Result<(String, String)> {
    let lines: Vec<&str> = text.lines().collect();
    let blank = |l: &&str| l.trim().is_empty();
    let start = lines.iter().position(|l| !blank(l)).unwrap_or(lines.len());
    let gap = lines[start..]
        .iter()
        .position(blank)
        .map(|p| p + start)
        .ok_or_else(|| input_error("expected two inputs separated by a blank line"))?;
    let second: Vec<&str> = lines[gap..].iter().copied().skip_while(blank).collect();
    if second.is_empty() {
        return Err(input_error("expected two inputs separated by a blank line"));
    }
    Ok((lines[start..gap].join("\n"), second.join("\n")))
}

fn input_error(message: &str) -> Error {
    Error::Parse {
        what: "input",
        message: message.to_string(),
    }
}
