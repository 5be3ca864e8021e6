use std::collections::HashMap;
use std::fmt;

use super::TmError;
use crate::text::{keyed_lines, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Left,
    Right,
    Stay,
}

impl Move {
    fn as_char(self) -> char {
        match self {
            Move::Left => 'L',
            Move::Right => 'R',
            Move::Stay => 'S',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rule {
    pub next: usize,
    pub write: usize,
    pub movement: Move,
}

/// A deterministic single-tape machine on a left-bounded tape.
///
/// Symbols are single characters; index 0 is the blank. Moving left on
/// cell 0 leaves the head where it is.
#[derive(Clone, PartialEq, Eq)]
pub struct TmSpec {
    states: Vec<String>,
    symbols: Vec<char>,
    start: usize,
    halting: Vec<bool>,
    /// `rules[state][symbol]`, `None` exactly on halting states.
    rules: Vec<Vec<Option<Rule>>>,
}

impl TmSpec {
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn symbol_count(&self) -> usize {
        self.symbols.len()
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.states[s]
    }

    pub fn symbol(&self, i: usize) -> char {
        self.symbols[i]
    }

    pub fn blank(&self) -> char {
        self.symbols[0]
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_halting(&self, s: usize) -> bool {
        self.halting[s]
    }

    pub fn rule(&self, state: usize, symbol: usize) -> Option<Rule> {
        self.rules[state][symbol]
    }

    pub fn symbol_index(&self, c: char) -> Option<usize> {
        self.symbols.iter().position(|&s| s == c)
    }

    /// Tape symbol indices for an input string.
    pub fn encode_input(&self, input: &str) -> Result<Vec<usize>, TmError> {
        input
            .chars()
            .map(|c| self.symbol_index(c).ok_or(TmError::UnknownSymbol(c)))
            .collect()
    }

    pub fn parse(input: &str) -> Result<TmSpec, ParseError> {
        let mut states: Option<(usize, Vec<String>)> = None;
        let mut start: Option<(usize, String)> = None;
        let mut halt: Option<(usize, Vec<String>)> = None;
        let mut blank: Option<(usize, char)> = None;
        let mut declared: Option<(usize, Vec<char>)> = None;
        let mut raw_rules = Vec::new();

        let single_char = |line: usize, tok: &str| -> Result<char, ParseError> {
            let mut cs = tok.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) => Ok(c),
                _ => Err(ParseError::new(line, format!("symbol `{tok}` must be one character"))),
            }
        };
        let words = |v: &str| v.split_whitespace().map(str::to_owned).collect::<Vec<_>>();

        for (line, key, value) in keyed_lines(input)? {
            let dup = || ParseError::new(line, format!("duplicate `{key}`"));
            match key {
                "states" => {
                    if states.replace((line, words(value))).is_some() {
                        return Err(dup());
                    }
                }
                "start" => {
                    if start.replace((line, value.to_owned())).is_some() {
                        return Err(dup());
                    }
                }
                "halt" => {
                    if halt.replace((line, words(value))).is_some() {
                        return Err(dup());
                    }
                }
                "blank" => {
                    let c = single_char(line, value)?;
                    if blank.replace((line, c)).is_some() {
                        return Err(dup());
                    }
                }
                "symbols" => {
                    let cs = value
                        .split_whitespace()
                        .map(|t| single_char(line, t))
                        .collect::<Result<Vec<_>, _>>()?;
                    if declared.replace((line, cs)).is_some() {
                        return Err(dup());
                    }
                }
                "rule" => {
                    let parts: Vec<&str> = value.split_whitespace().collect();
                    let [q, a, "->", q2, b, m] = parts[..] else {
                        return Err(ParseError::new(line, "expected `rule: q a -> q' b M`"));
                    };
                    let movement = match m {
                        "L" => Move::Left,
                        "R" => Move::Right,
                        "S" => Move::Stay,
                        _ => return Err(ParseError::new(line, format!("unknown move `{m}`"))),
                    };
                    raw_rules.push((
                        line,
                        q.to_owned(),
                        single_char(line, a)?,
                        q2.to_owned(),
                        single_char(line, b)?,
                        movement,
                    ));
                }
                other => return Err(ParseError::new(line, format!("unknown key `{other}`"))),
            }
        }

        let (states_line, states) = states.ok_or_else(|| ParseError::new(0, "missing `states:`"))?;
        if states.is_empty() {
            return Err(ParseError::new(states_line, "no states"));
        }
        let state_index: HashMap<&str, usize> =
            states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if state_index.len() != states.len() {
            return Err(ParseError::new(states_line, "duplicate state name"));
        }
        let lookup = |line: usize, name: &str| {
            state_index
                .get(name)
                .copied()
                .ok_or_else(|| ParseError::new(line, format!("unknown state `{name}`")))
        };
        let (start_line, start_name) = start.ok_or_else(|| ParseError::new(0, "missing `start:`"))?;
        let start = lookup(start_line, &start_name)?;
        let (_, blank) = blank.ok_or_else(|| ParseError::new(0, "missing `blank:`"))?;
        let mut halting = vec![false; states.len()];
        if let Some((line, names)) = &halt {
            for n in names {
                halting[lookup(*line, n)?] = true;
            }
        }

        let mut symbols = vec![blank];
        let fixed_alphabet = declared.is_some();
        if let Some((_, cs)) = &declared {
            for &c in cs {
                if !symbols.contains(&c) {
                    symbols.push(c);
                }
            }
        }
        for (line, _, a, _, b, _) in &raw_rules {
            for c in [*a, *b] {
                if !symbols.contains(&c) {
                    if fixed_alphabet {
                        return Err(ParseError::new(*line, format!("symbol `{c}` not declared")));
                    }
                    symbols.push(c);
                }
            }
        }

        let mut rules = vec![vec![None; symbols.len()]; states.len()];
        for (line, q, a, q2, b, movement) in raw_rules {
            let q = lookup(line, &q)?;
            if halting[q] {
                return Err(ParseError::new(line, "halting states have no rules"));
            }
            let a = symbols.iter().position(|&c| c == a).expect("collected");
            let rule = Rule {
                next: lookup(line, &q2)?,
                write: symbols.iter().position(|&c| c == b).expect("collected"),
                movement,
            };
            if rules[q][a].replace(rule).is_some() {
                return Err(ParseError::new(line, "second rule for the same (state, symbol)"));
            }
        }
        for (q, row) in rules.iter().enumerate() {
            if halting[q] {
                continue;
            }
            if let Some(a) = row.iter().position(Option::is_none) {
                return Err(ParseError::new(
                    0,
                    format!("no rule for ({}, {})", states[q], symbols[a]),
                ));
            }
        }
        Ok(TmSpec {
            states,
            symbols,
            start,
            halting,
            rules,
        })
    }
}

/// Canonical text: the writer's output parses back to an equal machine and
/// is stable under a second round trip.
impl fmt::Display for TmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states: {}", self.states.join(" "))?;
        writeln!(f, "start: {}", self.states[self.start])?;
        let halts: Vec<&str> = (0..self.state_count())
            .filter(|&s| self.halting[s])
            .map(|s| self.states[s].as_str())
            .collect();
        writeln!(f, "halt: {}", halts.join(" "))?;
        writeln!(f, "blank: {}", self.blank())?;
        let syms: Vec<String> = self.symbols.iter().map(char::to_string).collect();
        writeln!(f, "symbols: {}", syms.join(" "))?;
        for (q, row) in self.rules.iter().enumerate() {
            for (a, rule) in row.iter().enumerate() {
                if let Some(r) = rule {
                    writeln!(
                        f,
                        "rule: {} {} -> {} {} {}",
                        self.states[q],
                        self.symbols[a],
                        self.states[r.next],
                        self.symbols[r.write],
                        r.movement.as_char()
                    )?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TmSpec")
            .field("states", &self.states)
            .field("symbols", &self.symbols)
            .field("start", &self.start)
            .finish_non_exhaustive()
    }
}
