//! Shared helpers for the line-oriented text formats.

use thiserror::Error;

/// A parse failure, pointing at a 1-based line (0 when the whole input is at fault).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Non-empty lines with `#` comments stripped, as `(line number, key, value)`.
pub(crate) fn keyed_lines(input: &str) -> Result<Vec<(usize, &str, &str)>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(ParseError::new(i + 1, format!("expected `key: value`, got `{line}`")));
        };
        out.push((i + 1, key.trim(), value.trim()));
    }
    Ok(out)
}

pub(crate) fn parse_nat(line: usize, token: &str) -> Result<usize, ParseError> {
    token
        .parse::<usize>()
        .map_err(|_| ParseError::new(line, format!("`{token}` is not a natural number")))
}

pub(crate) fn parse_nats(line: usize, value: &str) -> Result<Vec<usize>, ParseError> {
    value.split_whitespace().map(|t| parse_nat(line, t)).collect()
}
