//! Word syntax: whitespace-separated `NAME` or `NAME^INTEGER` terms.
//!
//! `"B A"` is `T_b T_a`: the rightmost term acts first.

use twist_cert_core::{Letter, TwistWord};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("unknown generator `{0}`; expected one of {1}")]
    UnknownName(String, String),
    #[error("bad exponent in `{0}`")]
    BadExponent(String),
    #[error("zero exponent in `{0}`")]
    ZeroExponent(String),
    #[error("word is empty after free reduction")]
    Empty,
}

/// Parses against `names` (family or generator names, in index order) and
/// freely reduces.
pub fn parse_word(text: &str, names: &[&str]) -> Result<TwistWord, WordError> {
    let mut letters = Vec::new();
    for term in text.split_whitespace() {
        let (name, exp) = match term.split_once('^') {
            Some((n, e)) => {
                let e: i64 = e
                    .parse()
                    .map_err(|_| WordError::BadExponent(term.to_string()))?;
                (n, e)
            }
            None => (term, 1),
        };
        if exp == 0 {
            return Err(WordError::ZeroExponent(term.to_string()));
        }
        let family = names
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| WordError::UnknownName(name.to_string(), names.join(", ")))?;
        letters.push(Letter::new(family, exp));
    }
    Ok(TwistWord::new(letters))
}

pub fn parse_nonempty_word(text: &str, names: &[&str]) -> Result<TwistWord, WordError> {
    let w = parse_word(text, names)?;
    if w.is_empty() {
        return Err(WordError::Empty);
    }
    Ok(w)
}
