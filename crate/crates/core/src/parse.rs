//! Parsers for the untrusted text inputs: rational literals and PBW words.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// A product of generator labels with a rational prefactor, e.g. `-1/2*X1+ H1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Word {
    pub coeff: Rational,
    pub labels: Vec<String>,
}

fn is_label_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '+' | '-')
}

fn integer(s: &str, offset: usize) -> Result<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(offset, format!("expected an integer, found `{s}`")));
    }
    if digits.len() > 4096 {
        return Err(Error::parse(offset, "integer literal too long"));
    }
    s.parse::<BigInt>().map_err(|e| Error::parse(offset, e.to_string()))
}

/// Parse `p`, `-p` or `p/q` (decimal integers, `q > 0`).
pub fn rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let offset = s.len() - s.trim_start().len();
    match t.split_once('/') {
        None => Ok(Rational::from_integer(integer(t, offset)?)),
        Some((n, d)) => {
            let num = integer(n, offset)?;
            let den = integer(d, offset + n.len() + 1)?;
            if den.is_zero() || d.starts_with('-') {
                return Err(Error::parse(offset + n.len() + 1, "denominator must be positive"));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Parse a word: an optional `coeff*` prefix followed by labels separated by
/// whitespace or `*`.
pub fn word(s: &str) -> Result<Word> {
    let mut coeff = Rational::one();
    let mut labels = Vec::new();
    let mut pos = 0;
    let bytes = s.as_bytes();
    let mut first = true;
    while pos < s.len() {
        let c = s[pos..].chars().next().unwrap_or(' ');
        if c.is_whitespace() || c == '*' {
            pos += c.len_utf8();
            continue;
        }
        let start = pos;
        if first && (c.is_ascii_digit() || (c == '-' && bytes.get(pos + 1).is_some_and(u8::is_ascii_digit))) {
            let end = s[start..]
                .find(|ch: char| !(ch.is_ascii_digit() || ch == '/' || ch == '-'))
                .map_or(s.len(), |k| start + k);
            let lit = &s[start..end];
            let rest = s[end..].trim_start();
            if !(rest.is_empty() || rest.starts_with('*')) {
                return Err(Error::parse(end, "coefficient must be followed by `*`"));
            }
            coeff = rational(lit).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse { pos: pos + start, msg },
                other => other,
            })?;
            pos = end;
            first = false;
            continue;
        }
        if !is_label_char(c) || c == '+' || c == '-' {
            return Err(Error::parse(pos, format!("unexpected character `{c}`")));
        }
        let end = s[start..].find(|ch: char| !is_label_char(ch)).map_or(s.len(), |k| start + k);
        labels.push(s[start..end].to_string());
        pos = end;
        first = false;
    }
    Ok(Word { coeff, labels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn rationals() {
        assert_eq!(rational("3").unwrap(), rat(3, 1));
        assert_eq!(rational(" -6/4 ").unwrap(), rat(-3, 2));
        assert!(rational("1/0").is_err());
        assert!(rational("1/-2").is_err());
        assert!(rational("x").is_err());
        assert!(rational("").is_err());
        assert!(rational("1/2/3").is_err());
    }

    #[test]
    fn words() {
        let w = word("X+ H").unwrap();
        assert_eq!(w.labels, vec!["X+", "H"]);
        assert_eq!(w.coeff, rat(1, 1));
        let w = word("-1/2*v1+*Z1_2-  w-").unwrap();
        assert_eq!(w.coeff, rat(-1, 2));
        assert_eq!(w.labels, vec!["v1+", "Z1_2-", "w-"]);
        assert_eq!(word("").unwrap().labels, Vec::<String>::new());
        assert!(word("H (").is_err());
        assert!(word("2 H").is_err());
        assert!(word("+H").is_err());
    }
}
