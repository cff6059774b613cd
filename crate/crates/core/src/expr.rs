//! Class expressions: `"a1*p4_1 + a2*p4_2"`, `"p6"`, `"0"`.
//!
//! A bare generator `g` means `1*g`. Repeated terms cancel.

use crate::complex::{ChainElement, ChainTerm, FilteredComplex};
use crate::error::{Error, Result};
use crate::ring::UNIT;

fn is_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '\'' | '.' | '-'))
}

/// Parses an expression without checking names.
pub fn parse_chain(text: &str) -> Result<ChainElement> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Malformed("empty class expression".into()));
    }
    if text == "0" {
        return Ok(ChainElement::zero());
    }
    let mut out = ChainElement::zero();
    for (i, raw) in text.split('+').enumerate() {
        let term = raw.trim();
        let (ring, generator) = match term.split_once('*') {
            Some((r, g)) => (r.trim(), g.trim()),
            None => (UNIT, term),
        };
        if !is_name(ring) || !is_name(generator) || generator.contains('*') {
            return Err(Error::Malformed(format!(
                "term {} of class expression: `{term}`",
                i + 1
            )));
        }
        out.toggle(ChainTerm::new(ring, generator));
    }
    Ok(out)
}

/// Parses an expression and checks every name against `c`.
pub fn parse_class(c: &FilteredComplex, text: &str) -> Result<ChainElement> {
    let e = parse_chain(text)?;
    for t in e.terms() {
        c.index_of(&t.generator)?;
        c.ring().index_of(&t.ring)?;
    }
    Ok(e)
}
