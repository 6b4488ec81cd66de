//! Line-oriented pattern text format: `<{a b},{c}> count=3 support=0.7500`.
//!
//! Tokens inside an element are sorted ascending and lines are sorted by
//! (item count, token-wise lexicographic order), so output is independent of
//! how item ids happened to be assigned.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::itemset::{AssociationRule, FrequentItemset};
use crate::model::{canonicalize, Alphabet, Itemset, Pattern, SupportedPattern};

fn element_tokens<'a>(element: &Itemset, alphabet: &'a Alphabet) -> Vec<&'a str> {
    let mut tokens: Vec<&str> = element.items().iter().map(|&i| alphabet.token(i)).collect();
    tokens.sort_unstable();
    tokens
}

fn sort_key<'a>(pattern: &Pattern, alphabet: &'a Alphabet) -> (usize, Vec<Vec<&'a str>>) {
    (
        pattern.len(),
        pattern
            .elements()
            .iter()
            .map(|e| element_tokens(e, alphabet))
            .collect(),
    )
}

pub fn render_itemset(itemset: &Itemset, alphabet: &Alphabet) -> String {
    format!("{{{}}}", element_tokens(itemset, alphabet).join(" "))
}

pub fn render_pattern(pattern: &Pattern, alphabet: &Alphabet) -> String {
    let elements: Vec<String> = pattern
        .elements()
        .iter()
        .map(|e| render_itemset(e, alphabet))
        .collect();
    format!("<{}>", elements.join(","))
}

pub fn render_supported(p: &SupportedPattern, alphabet: &Alphabet) -> String {
    format!(
        "{} count={} support={:.4}",
        render_pattern(&p.pattern, alphabet),
        p.count,
        p.support
    )
}

/// Writes patterns one per line in canonical textual order.
pub fn write_patterns<W: Write>(
    out: &mut W,
    patterns: &[SupportedPattern],
    alphabet: &Alphabet,
) -> io::Result<()> {
    let mut keyed: Vec<_> = patterns
        .iter()
        .map(|p| (sort_key(&p.pattern, alphabet), p))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    for (_, p) in keyed {
        writeln!(out, "{}", render_supported(p, alphabet))?;
    }
    Ok(())
}

/// Frequent itemsets are written as single-element patterns.
pub fn write_itemsets<W: Write>(
    out: &mut W,
    itemsets: &[FrequentItemset],
    alphabet: &Alphabet,
) -> io::Result<()> {
    let patterns: Vec<SupportedPattern> = itemsets
        .iter()
        .map(|f| SupportedPattern {
            pattern: Pattern::new(vec![f.itemset.clone()]).expect("one element"),
            count: f.count,
            support: f.support,
        })
        .collect();
    write_patterns(out, &patterns, alphabet)
}

pub fn write_rules<W: Write>(
    out: &mut W,
    rules: &[AssociationRule],
    alphabet: &Alphabet,
) -> io::Result<()> {
    let mut keyed: Vec<_> = rules
        .iter()
        .map(|r| {
            let whole = r.antecedent.union(&r.consequent);
            let key = (
                whole.len(),
                element_tokens(&whole, alphabet),
                r.antecedent.len(),
                element_tokens(&r.antecedent, alphabet),
            );
            (key, r)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    for (_, r) in keyed {
        writeln!(
            out,
            "{} => {} support={:.4} confidence={:.4}",
            render_itemset(&r.antecedent, alphabet),
            render_itemset(&r.consequent, alphabet),
            r.support,
            r.confidence
        )?;
    }
    Ok(())
}

/// Parses `<{a b},{c}>` against an existing alphabet.
pub fn parse_pattern(text: &str, alphabet: &Alphabet) -> Result<Pattern> {
    let bad = |reason: &str| Error::Parse {
        line: 1,
        reason: format!("{reason} in pattern {text:?}"),
    };
    let inner = text
        .trim()
        .strip_prefix('<')
        .and_then(|s| s.strip_suffix('>'))
        .ok_or_else(|| bad("missing angle brackets"))?;
    let mut raw = Vec::new();
    for element in inner.split(',') {
        let element = element
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| bad("missing braces"))?;
        let items = element
            .split_whitespace()
            .map(|tok| {
                alphabet
                    .get(tok)
                    .ok_or_else(|| bad(&format!("unknown item {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        raw.push(items);
    }
    canonicalize(raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse() {
        let alphabet = Alphabet::from_tokens(["a", "b", "c"]);
        let p = parse_pattern("<{b a},{c}>", &alphabet).unwrap();
        assert_eq!(render_pattern(&p, &alphabet), "<{a b},{c}>");
        let line = render_supported(&SupportedPattern::new(p, 3, 4), &alphabet);
        assert_eq!(line, "<{a b},{c}> count=3 support=0.7500");
    }

    #[test]
    fn lines_sort_by_tokens_not_ids() {
        let mut alphabet = Alphabet::new();
        let z = alphabet.intern("z");
        let a = alphabet.intern("a");
        let patterns = vec![
            SupportedPattern::new(Pattern::single(z), 1, 1),
            SupportedPattern::new(Pattern::single(a), 1, 1),
        ];
        let mut out = Vec::new();
        write_patterns(&mut out, &patterns, &alphabet).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "<{a}> count=1 support=1.0000\n<{z}> count=1 support=1.0000\n"
        );
    }

    #[test]
    fn parse_errors() {
        let alphabet = Alphabet::from_tokens(["a"]);
        assert!(parse_pattern("{a}", &alphabet).is_err());
        assert!(parse_pattern("<{q}>", &alphabet).is_err());
        assert!(matches!(
            parse_pattern("<{}>", &alphabet),
            Err(Error::EmptyElement)
        ));
    }
}
