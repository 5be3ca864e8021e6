//! Decider expressions:
//!
//! ```text
//! expr := bottom | top | parity | mod(K) | singular(even|odd|prime)
//!       | lec(expr) | meet(expr, expr)
//! ```

use anyhow::{anyhow, bail, Result};
use equlat_core::decider::{self, is_prime, least_element_complement, singular_from_predicate, DeciderEq};

pub fn parse(input: &str) -> Result<DeciderEq> {
    let tokens = tokenize(input)?;
    let mut pos = 0;
    let d = expr(&tokens, &mut pos)?;
    if pos != tokens.len() {
        bail!("unexpected `{}` after the expression", tokens[pos]);
    }
    Ok(d)
}

fn tokenize(input: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut word = String::new();
    for c in input.chars() {
        if c.is_alphanumeric() || c == '_' {
            word.push(c);
            continue;
        }
        if !word.is_empty() {
            out.push(std::mem::take(&mut word));
        }
        match c {
            '(' | ')' | ',' => out.push(c.to_string()),
            c if c.is_whitespace() => {}
            other => bail!("unexpected character `{other}`"),
        }
    }
    if !word.is_empty() {
        out.push(word);
    }
    Ok(out)
}

fn expect(tokens: &[String], pos: &mut usize, want: &str) -> Result<()> {
    match tokens.get(*pos) {
        Some(t) if t == want => {
            *pos += 1;
            Ok(())
        }
        Some(t) => bail!("expected `{want}`, found `{t}`"),
        None => bail!("expected `{want}`, found end of input"),
    }
}

fn expr(tokens: &[String], pos: &mut usize) -> Result<DeciderEq> {
    let head = tokens.get(*pos).ok_or_else(|| anyhow!("empty expression"))?.clone();
    *pos += 1;
    Ok(match head.as_str() {
        "bottom" => decider::bottom(),
        "top" => decider::top(),
        "parity" => decider::parity(),
        "mod" => {
            expect(tokens, pos, "(")?;
            let k: u64 = tokens
                .get(*pos)
                .and_then(|t| t.parse().ok())
                .filter(|&k| k >= 1)
                .ok_or_else(|| anyhow!("mod needs a positive modulus"))?;
            *pos += 1;
            expect(tokens, pos, ")")?;
            decider::modulo(k)
        }
        "singular" => {
            expect(tokens, pos, "(")?;
            let name = tokens.get(*pos).cloned().unwrap_or_default();
            *pos += 1;
            expect(tokens, pos, ")")?;
            match name.as_str() {
                "even" => singular_from_predicate(|x| x % 2 == 0, "constant space: last bit"),
                "odd" => singular_from_predicate(|x| x % 2 == 1, "constant space: last bit"),
                "prime" => singular_from_predicate(is_prime, "trial division"),
                other => bail!("unknown predicate `{other}` (even, odd, prime)"),
            }
        }
        "lec" => {
            expect(tokens, pos, "(")?;
            let inner = expr(tokens, pos)?;
            expect(tokens, pos, ")")?;
            least_element_complement(&inner)
        }
        "meet" => {
            expect(tokens, pos, "(")?;
            let a = expr(tokens, pos)?;
            expect(tokens, pos, ",")?;
            let b = expr(tokens, pos)?;
            expect(tokens, pos, ")")?;
            a.meet(&b)
        }
        other => bail!("unknown relation `{other}`"),
    })
}
