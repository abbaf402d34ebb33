//! Line-oriented text formats for instances and plans.
//!
//! Instance files:
//!
//! ```text
//! pmr
//! n 3
//! p 2
//! e 0 1
//! e 1 2
//! s 1 0
//! s 2 1
//! d 1 1
//! d 2 2
//! ```
//!
//! Pebbles are numbered from 1 in text and from 0 in memory. `#` starts a
//! comment. `n` and `p` must come before any `e`, `s` or `d` line.
//!
//! Plan files start with `plan`, then one `m <from> <to>` per simple move and
//! one `r <v0> ... <vk-1>` per rotation (the pebble on `v_i` goes to
//! `v_{i+1}`).

mod gen;

use std::fmt::Write;

use thiserror::Error;

use crate::config::{Move, Plan};
use crate::feasibility::{Instance, InstanceError};
use crate::graph::Vertex;

pub use gen::{gen_instance, GenError, GenKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("pebble {pebble} placed twice in the {side} configuration")]
    DuplicatePebble { side: Side, pebble: usize },
    #[error("pebble {pebble} missing from the {side} configuration")]
    MissingPebble { side: Side, pebble: usize },
    #[error("missing `{0}` line")]
    MissingCount(&'static str),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Start,
    Goal,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Start => "start",
            Side::Goal => "goal",
        })
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn numbers(line: usize, fields: &[&str], arity: Option<usize>) -> Result<Vec<usize>, FormatError> {
    let args = &fields[1..];
    if let Some(k) = arity {
        if args.len() != k {
            return Err(parse_err(
                line,
                format!("`{}` takes {k} argument(s), got {}", fields[0], args.len()),
            ));
        }
    }
    args.iter()
        .map(|a| {
            a.parse::<usize>()
                .map_err(|_| parse_err(line, format!("`{a}` is not a non-negative integer")))
        })
        .collect()
}

fn expect_header<'a>(lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>, header: &str) -> Result<(), FormatError> {
    match lines.next() {
        Some((_, f)) if f == [header] => Ok(()),
        Some((line, _)) => Err(parse_err(line, format!("expected header `{header}`"))),
        None => Err(parse_err(1, format!("expected header `{header}`"))),
    }
}

/// Parses and validates an instance file.
pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let mut lines = significant_lines(text);
    expect_header(&mut lines, "pmr")?;
    let mut n: Option<usize> = None;
    let mut p: Option<usize> = None;
    let mut edges = Vec::new();
    let mut start: Vec<Option<Vertex>> = Vec::new();
    let mut goal: Vec<Option<Vertex>> = Vec::new();
    for (line, fields) in lines {
        match fields[0] {
            "n" | "p" => {
                let value = numbers(line, &fields, Some(1))?[0];
                let slot = if fields[0] == "n" { &mut n } else { &mut p };
                if slot.replace(value).is_some() {
                    return Err(parse_err(line, format!("`{}` given twice", fields[0])));
                }
                if let Some(p) = p {
                    start = vec![None; p];
                    goal = vec![None; p];
                }
            }
            "e" => {
                let n = n.ok_or_else(|| parse_err(line, "`e` before `n`"))?;
                let uv = numbers(line, &fields, Some(2))?;
                if let Some(&w) = uv.iter().find(|&&w| w >= n) {
                    return Err(parse_err(line, format!("vertex {w} out of range 0..{n}")));
                }
                edges.push((uv[0], uv[1]));
            }
            "s" | "d" => {
                let (Some(n), Some(p)) = (n, p) else {
                    return Err(parse_err(line, format!("`{}` before `n` and `p`", fields[0])));
                };
                let pv = numbers(line, &fields, Some(2))?;
                let (pebble, vertex) = (pv[0], pv[1]);
                if pebble == 0 || pebble > p {
                    return Err(parse_err(line, format!("pebble {pebble} out of range 1..={p}")));
                }
                if vertex >= n {
                    return Err(parse_err(line, format!("vertex {vertex} out of range 0..{n}")));
                }
                let (side, list) = if fields[0] == "s" {
                    (Side::Start, &mut start)
                } else {
                    (Side::Goal, &mut goal)
                };
                if list[pebble - 1].replace(vertex).is_some() {
                    return Err(ValidationError::DuplicatePebble { side, pebble }.into());
                }
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }
    let n = n.ok_or(ValidationError::MissingCount("n"))?;
    p.ok_or(ValidationError::MissingCount("p"))?;
    let complete = |side: Side, list: Vec<Option<Vertex>>| -> Result<Vec<Vertex>, ValidationError> {
        list.into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or(ValidationError::MissingPebble { side, pebble: i + 1 }))
            .collect()
    };
    let start = complete(Side::Start, start)?;
    let goal = complete(Side::Goal, goal)?;
    Ok(Instance::from_parts(n, &edges, start, goal).map_err(ValidationError::from)?)
}

/// Canonical text form: sorted edges, pebbles in order.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::from("pmr\n");
    writeln!(out, "n {}", inst.n()).unwrap();
    writeln!(out, "p {}", inst.p()).unwrap();
    for &(u, v) in inst.graph.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    for (tag, c) in [("s", &inst.start), ("d", &inst.goal)] {
        for (i, v) in c.placement().iter().enumerate() {
            writeln!(out, "{tag} {} {v}", i + 1).unwrap();
        }
    }
    out
}

/// Parses a plan file. Moves are not checked against any graph here; use
/// [`crate::config::verify_plan`] for that.
pub fn parse_plan(text: &str) -> Result<Plan, FormatError> {
    let mut lines = significant_lines(text);
    expect_header(&mut lines, "plan")?;
    let mut moves = Vec::new();
    for (line, fields) in lines {
        match fields[0] {
            "m" => {
                let ft = numbers(line, &fields, Some(2))?;
                moves.push(Move::simple(ft[0], ft[1]));
            }
            "r" => {
                let cycle = numbers(line, &fields, None)?;
                if cycle.len() < 3 {
                    return Err(parse_err(line, "a rotation needs at least 3 vertices"));
                }
                let mut sorted = cycle.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(parse_err(line, "rotation repeats a vertex"));
                }
                moves.push(Move::rotation(cycle).normalized());
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }
    Ok(Plan::new(moves))
}

/// Plan file text. A compound rotation is written as one `r` line per cycle;
/// its cycles are disjoint, so applying them one after another is equivalent.
pub fn serialize_plan(plan: &Plan) -> String {
    let mut out = String::from("plan\n");
    let rotation = |out: &mut String, cycle: &[Vertex]| {
        out.push('r');
        for v in cycle {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    };
    for m in &plan.normalized().moves {
        match m {
            Move::Simple { from, to } => writeln!(out, "m {from} {to}").unwrap(),
            Move::Rotation { cycle } => rotation(&mut out, cycle),
            Move::CompoundRotation { rotations } => {
                for c in rotations {
                    rotation(&mut out, c);
                }
            }
        }
    }
    out
}
