//! DFA text format:
//!
//! ```text
//! states: 3
//! start: 0
//! accept: 2
//! trans: 0 0 1
//! trans: 0 1 1
//! trans: 0 B 2
//! ...
//! ```
//!
//! Symbols are `0`, `1` and `B` (the separator). Every `(state, symbol)`
//! pair needs exactly one `trans:` line.

use std::fmt;

use super::dfa::{Dfa, Symbol};
use crate::text::{keyed_lines, parse_nat, parse_nats, ParseError};

pub(crate) fn write_dfa(f: &mut fmt::Formatter<'_>, d: &Dfa) -> fmt::Result {
    writeln!(f, "states: {}", d.state_count())?;
    writeln!(f, "start: {}", d.start())?;
    let acc: Vec<String> = d.accepting_states().iter().map(usize::to_string).collect();
    if acc.is_empty() {
        writeln!(f, "accept:")?;
    } else {
        writeln!(f, "accept: {}", acc.join(" "))?;
    }
    for s in 0..d.state_count() {
        for sym in Symbol::ALL {
            writeln!(f, "trans: {s} {} {}", sym.as_char(), d.next(s, sym))?;
        }
    }
    Ok(())
}

pub fn parse_dfa(input: &str) -> Result<Dfa, ParseError> {
    let mut states = None;
    let mut start = None;
    let mut accept: Option<Vec<usize>> = None;
    let mut edges = Vec::new();
    for (line, key, value) in keyed_lines(input)? {
        match key {
            "states" if states.is_none() => states = Some((line, parse_nat(line, value)?)),
            "start" if start.is_none() => start = Some((line, parse_nat(line, value)?)),
            "accept" if accept.is_none() => accept = Some(parse_nats(line, value)?),
            "trans" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                let [from, sym, to] = parts[..] else {
                    return Err(ParseError::new(line, "expected `trans: <state> <0|1|B> <state>`"));
                };
                let mut chars = sym.chars();
                let sym = match (chars.next().and_then(Symbol::from_char), chars.next()) {
                    (Some(s), None) => s,
                    _ => return Err(ParseError::new(line, format!("unknown symbol `{sym}`"))),
                };
                edges.push((line, parse_nat(line, from)?, sym, parse_nat(line, to)?));
            }
            "states" | "start" | "accept" => {
                return Err(ParseError::new(line, format!("duplicate `{key}`")))
            }
            other => return Err(ParseError::new(line, format!("unknown key `{other}`"))),
        }
    }
    let (states_line, k) = states.ok_or_else(|| ParseError::new(0, "missing `states:`"))?;
    if k == 0 {
        return Err(ParseError::new(states_line, "an automaton needs at least one state"));
    }
    let (start_line, start) = start.ok_or_else(|| ParseError::new(0, "missing `start:`"))?;
    if start >= k {
        return Err(ParseError::new(start_line, format!("start state {start} out of range")));
    }
    let accept = accept.ok_or_else(|| ParseError::new(0, "missing `accept:`"))?;
    if let Some(a) = accept.iter().find(|&&a| a >= k) {
        return Err(ParseError::new(0, format!("accepting state {a} out of range")));
    }
    let mut table: Vec<[Option<usize>; 3]> = vec![[None; 3]; k];
    for (line, from, sym, to) in edges {
        if from >= k || to >= k {
            return Err(ParseError::new(line, "state out of range"));
        }
        let cell = &mut table[from][sym.index()];
        if cell.is_some() {
            return Err(ParseError::new(
                line,
                format!("second transition for ({from}, {})", sym.as_char()),
            ));
        }
        *cell = Some(to);
    }
    let mut trans = Vec::with_capacity(k);
    for (s, row) in table.into_iter().enumerate() {
        let mut full = [0; 3];
        for sym in Symbol::ALL {
            full[sym.index()] = row[sym.index()].ok_or_else(|| {
                ParseError::new(0, format!("missing transition for ({s}, {})", sym.as_char()))
            })?;
        }
        trans.push(full);
    }
    Dfa::new(trans, start, &accept).map_err(|e| ParseError::new(0, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let d = Dfa::pair_format();
        let text = d.to_string();
        assert_eq!(parse_dfa(&text).unwrap(), d);
    }

    #[test]
    fn totality_enforced() {
        let partial = "states: 1\nstart: 0\naccept:\ntrans: 0 0 0\ntrans: 0 1 0\n";
        let e = parse_dfa(partial).unwrap_err();
        assert!(e.message.contains("missing transition"), "{e}");
        let dup = "states: 1\nstart: 0\naccept: 0\ntrans: 0 0 0\ntrans: 0 0 0\n";
        assert_eq!(parse_dfa(dup).unwrap_err().line, 5);
        let bad = "states: 1\nstart: 0\naccept: 0\ntrans: 0 X 0\n";
        assert_eq!(parse_dfa(bad).unwrap_err().line, 4);
        assert!(parse_dfa("states: 0\nstart: 0\naccept:\n").is_err());
    }
}
