use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fishburn::{count, enumerate, fishburn_numbers, fubini_numbers, verify, Kind, Limits};
use fishburn_cli::{convert, flip, parse, show, split_pair, sum, MatrixStyle, Tag, Value};

/// Fishburn structures: conversion, flip and sum, enumeration and checks.
#[derive(Parser)]
#[command(name = "fishburn", version)]
struct Cli {
    /// Raise every enumeration cap to N.
    #[arg(long, global = true, env = "FISHBURN_MAX_N", value_name = "N")]
    max_n: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert a structure from one encoding to another.
    Convert {
        #[arg(long)]
        from: Tag,
        #[arg(long)]
        to: Tag,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        matrix: StyleArgs,
    },
    /// Flip a structure (antidiagonal reflection of its matrix).
    Flip {
        #[arg(long, default_value = "seq")]
        kind: Tag,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        matrix: StyleArgs,
    },
    /// Sum two structures. Reads two arguments, or two inputs separated by a
    /// blank line.
    Sum {
        #[arg(long, default_value = "seq")]
        kind: Tag,
        /// Read both inputs from FILE instead of stdin.
        #[arg(long = "in", value_name = "FILE")]
        file: Option<PathBuf>,
        #[arg(num_args = 0..=2)]
        inputs: Vec<String>,
        #[command(flatten)]
        matrix: StyleArgs,
    },
    /// Count structures of sizes 0..=N. KIND is a structure kind or one of
    /// the oracles `fishburn` and `fubini`.
    Count {
        kind: String,
        #[arg(long = "max", value_name = "N")]
        max: usize,
    },
    /// Print every structure of size N, one per line.
    Enumerate { kind: Kind, n: usize },
    /// Run the cross-structure checks for every size up to N.
    Verify {
        #[arg(long = "max", value_name = "N", default_value_t = 6)]
        max: usize,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Emit a Graphviz digraph of a tree or a poset.
    Render {
        #[arg(long, default_value = "tree")]
        from: Tag,
        /// Drawn structure; defaults to a poset for poset input, else a tree.
        #[arg(long = "as", value_enum)]
        draw: Option<Drawing>,
        /// Annotate tree nodes with their b-labels.
        #[arg(long)]
        blabels: bool,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args)]
struct Input {
    /// Read the input from FILE instead of stdin.
    #[arg(long = "in", value_name = "FILE", conflicts_with = "text")]
    file: Option<PathBuf>,
    /// Input text; several arguments are joined with spaces.
    text: Vec<String>,
}

#[derive(Args, Clone, Copy)]
struct StyleArgs {
    /// Read and write matrices upper triangular.
    #[arg(long)]
    transpose: bool,
    /// Print matrices as an aligned grid with dots for zeros.
    #[arg(long, conflicts_with = "transpose")]
    pretty: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Records,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Drawing {
    Tree,
    Poset,
}

/// Input that could not be read at all, as opposed to input that failed to
/// parse.
#[derive(Debug)]
struct Unreadable(String);

impl std::fmt::Display for Unreadable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Unreadable {}

/// `verify` ran and some check failed.
#[derive(Debug)]
struct ChecksFailed;

impl std::fmt::Display for ChecksFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("some checks failed")
    }
}

impl std::error::Error for ChecksFailed {}

fn read_input(file: Option<&PathBuf>, args: &[String]) -> anyhow::Result<String> {
    if let Some(path) = file {
        return fs::read_to_string(path)
            .map_err(|e| Unreadable(format!("cannot read {}: {e}", path.display())).into());
    }
    if !args.is_empty() {
        return Ok(args.join(" "));
    }
    let mut text = String::new();
    io::stdin()
        .read_to_string(&mut text)
        .map_err(|e| Unreadable(format!("cannot read stdin: {e}")))?;
    Ok(text)
}

/// Writes `text` with exactly one trailing newline.
fn emit(text: &str) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    let written = writeln!(out, "{}", text.trim_end_matches('\n')).and_then(|()| out.flush());
    quiet_pipe(written)
}

/// A reader that stops early (`| head`) is not an error.
fn quiet_pipe(r: io::Result<()>) -> anyhow::Result<()> {
    match r {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

impl From<StyleArgs> for MatrixStyle {
    fn from(a: StyleArgs) -> Self {
        MatrixStyle {
            transpose: a.transpose,
            pretty: a.pretty,
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let limits = cli.max_n.map_or_else(Limits::default, Limits::uniform);
    match cli.command {
        Command::Convert {
            from,
            to,
            input,
            matrix,
        } => {
            let style = matrix.into();
            let text = read_input(input.file.as_ref(), &input.text)?;
            let value = parse(from, &text, style)?;
            emit(&show(&convert(value, to)?, style))
        }
        Command::Flip {
            kind,
            input,
            matrix,
        } => {
            let style = matrix.into();
            let text = read_input(input.file.as_ref(), &input.text)?;
            emit(&show(&flip(&parse(kind, &text, style)?, kind)?, style))
        }
        Command::Sum {
            kind,
            file,
            inputs,
            matrix,
        } => {
            let (a, b) = match inputs.as_slice() {
                [a, b] => (a.clone(), b.clone()),
                [] => split_pair(&read_input(file.as_ref(), &[])?)?,
                _ => unreachable!("clap accepts at most two inputs"),
            };
            let style = matrix.into();
            let (a, b) = (parse(kind, &a, style)?, parse(kind, &b, style)?);
            emit(&show(&sum(&a, &b, kind)?, style))
        }
        Command::Count { kind, max } => {
            let table = match kind.as_str() {
                "fishburn" => fishburn_numbers(max)?,
                "fubini" => fubini_numbers(max)?,
                other => count(other.parse()?, max, &limits)?,
            };
            emit(&table.to_string())
        }
        Command::Enumerate { kind, n } => {
            let mut items = enumerate(kind, n, &limits)?;
            let mut out = BufWriter::new(io::stdout().lock());
            let written = items
                .try_for_each(|item| writeln!(out, "{}", item.to_inline()))
                .and_then(|()| out.flush());
            quiet_pipe(written)
        }
        Command::Verify { max, jobs, format } => {
            let report = verify(max, &limits, jobs.max(1))?;
            emit(&match format {
                ReportFormat::Text => report.to_text(),
                ReportFormat::Records => report.to_records(),
            })?;
            if report.passed() {
                Ok(())
            } else {
                Err(ChecksFailed.into())
            }
        }
        Command::Render {
            from,
            draw,
            blabels,
            input,
        } => {
            let text = read_input(input.file.as_ref(), &input.text)?;
            let value = parse(from, &text, MatrixStyle::default())?;
            let draw = draw.unwrap_or(if from == Tag::Poset {
                Drawing::Poset
            } else {
                Drawing::Tree
            });
            let dot = match draw {
                Drawing::Poset => {
                    let Value::Poset(q) = convert(value, Tag::Poset)? else {
                        unreachable!("converted to a poset")
                    };
                    q.to_dot()
                }
                Drawing::Tree => {
                    let Value::Tree(t) = convert(value, Tag::Tree)? else {
                        unreachable!("converted to a tree")
                    };
                    if blabels {
                        t.validate_fishburn()?;
                    }
                    t.to_dot(blabels)
                }
            };
            emit(&dot)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.is::<ChecksFailed>() {
        return 1;
    }
    if e.is::<Unreadable>() {
        return 2;
    }
    match e
        .downcast_ref::<fishburn::Error>()
        .map(fishburn::Error::code)
    {
        Some("PARSE") => 2,
        Some("LIMIT_EXCEEDED" | "OVERFLOW") => 4,
        Some(_) => 3,
        None => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !e.is::<ChecksFailed>() {
                eprintln!("fishburn: {e}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
