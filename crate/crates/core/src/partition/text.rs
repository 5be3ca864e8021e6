//! Text formats.
//!
//! Partition, one line per class in any order:
//!
//! ```text
//! class: 0 1
//! class: 2 3
//! ```
//!
//! Small equivalence: a `threshold: N` header, class lines covering
//! `{0..N-1}`, and `tail: L` where `L` is `N` (the upper set is a class of
//! its own) or a head element whose class the upper set joins.

use std::fmt;

use super::{Partition, SmallEq};
use crate::text::{keyed_lines, parse_nat, parse_nats, ParseError};

fn write_classes(f: &mut fmt::Formatter<'_>, p: &Partition, skip: Option<usize>) -> fmt::Result {
    for class in p.classes() {
        let members: Vec<String> = class
            .iter()
            .filter(|&&x| Some(x) != skip)
            .map(usize::to_string)
            .collect();
        if !members.is_empty() {
            writeln!(f, "class: {}", members.join(" "))?;
        }
    }
    Ok(())
}

pub(crate) fn write_partition(f: &mut fmt::Formatter<'_>, p: &Partition) -> fmt::Result {
    write_classes(f, p, None)
}

pub(crate) fn write_small(f: &mut fmt::Formatter<'_>, s: &SmallEq) -> fmt::Result {
    writeln!(f, "threshold: {}", s.threshold())?;
    write_classes(f, s.extended(), Some(s.threshold()))?;
    writeln!(f, "tail: {}", s.tail_label())
}

fn to_partition(classes: Vec<(usize, Vec<usize>)>) -> Result<Partition, ParseError> {
    let n: usize = classes.iter().map(|(_, c)| c.len()).sum();
    let mut seen = vec![false; n];
    for (line, class) in &classes {
        if class.is_empty() {
            return Err(ParseError::new(*line, "empty class"));
        }
        for &x in class {
            if x >= n {
                return Err(ParseError::new(
                    *line,
                    format!("element {x} leaves a gap in the universe {{0..{}}}", n - 1),
                ));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(ParseError::new(*line, format!("element {x} appears in more than one class")));
            }
        }
    }
    Partition::from_classes(classes.into_iter().map(|(_, c)| c)).map_err(|e| ParseError::new(0, e.to_string()))
}

pub fn parse_partition(input: &str) -> Result<Partition, ParseError> {
    let mut classes = Vec::new();
    for (line, key, value) in keyed_lines(input)? {
        match key {
            "class" => classes.push((line, parse_nats(line, value)?)),
            other => return Err(ParseError::new(line, format!("unknown key `{other}`"))),
        }
    }
    if classes.is_empty() {
        return Err(ParseError::new(0, "no classes"));
    }
    to_partition(classes)
}

pub fn parse_small(input: &str) -> Result<SmallEq, ParseError> {
    let mut threshold = None;
    let mut tail = None;
    let mut classes = Vec::new();
    for (line, key, value) in keyed_lines(input)? {
        match key {
            "threshold" if threshold.is_none() => threshold = Some(parse_nat(line, value)?),
            "tail" if tail.is_none() => tail = Some((line, parse_nat(line, value)?)),
            "class" => classes.push((line, parse_nats(line, value)?)),
            "threshold" | "tail" => return Err(ParseError::new(line, format!("duplicate `{key}`"))),
            other => return Err(ParseError::new(line, format!("unknown key `{other}`"))),
        }
    }
    let threshold = threshold.ok_or_else(|| ParseError::new(0, "missing `threshold:`"))?;
    let (tail_line, tail) = tail.ok_or_else(|| ParseError::new(0, "missing `tail:`"))?;
    if tail > threshold {
        return Err(ParseError::new(
            tail_line,
            format!("tail label {tail} exceeds threshold {threshold}"),
        ));
    }
    let head = if threshold == 0 {
        if let Some((line, _)) = classes.first() {
            return Err(ParseError::new(*line, "threshold 0 admits no head classes"));
        }
        Vec::new()
    } else {
        to_partition(classes)?.labels().to_vec()
    };
    if head.len() != threshold {
        return Err(ParseError::new(
            0,
            format!("classes cover {} elements, threshold is {threshold}", head.len()),
        ));
    }
    SmallEq::new(threshold, &head, tail).map_err(|e| ParseError::new(tail_line, e.to_string()))
}
