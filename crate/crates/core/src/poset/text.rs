//! Text format: `elem <name>` declares an element (declaration order gives
//! the variable index), `rel <a> < <b>` adds a relation, `#` starts a
//! comment.

use std::fmt;
use std::str::FromStr;

use super::Poset;
use crate::error::{Error, Result};

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Splits a line into whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

impl Poset {
    pub fn parse(text: &str) -> Result<Poset> {
        let mut names: Vec<String> = Vec::new();
        let mut rels: Vec<(usize, usize, usize, String, String)> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let body = raw.split('#').next().unwrap_or("");
            let toks = tokens(body);
            let Some(&(col, kw)) = toks.first() else { continue };
            match kw {
                "elem" => {
                    let [_, (c, name)] = toks[..] else {
                        return Err(parse_err(line_no, col, "expected `elem <name>`"));
                    };
                    if !is_identifier(name) {
                        return Err(parse_err(line_no, c, format!("`{name}` is not an identifier")));
                    }
                    if names.iter().any(|n| n == name) {
                        return Err(Error::DuplicateElement(name.to_string()));
                    }
                    names.push(name.to_string());
                }
                "rel" => {
                    let [_, (ca, a), (co, op), (cb, b)] = toks[..] else {
                        return Err(parse_err(line_no, col, "expected `rel <a> < <b>`"));
                    };
                    if op != "<" {
                        return Err(parse_err(line_no, co, format!("expected `<`, found `{op}`")));
                    }
                    rels.push((line_no, ca, cb, a.to_string(), b.to_string()));
                }
                other => return Err(parse_err(line_no, col, format!("unknown directive `{other}`"))),
            }
        }
        let idx = |line: usize, col: usize, name: &str| {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| parse_err(line, col, format!("unknown element `{name}`")))
        };
        let pairs = rels
            .iter()
            .map(|(l, ca, cb, a, b)| Ok((idx(*l, *ca, a)?, idx(*l, *cb, b)?)))
            .collect::<Result<Vec<_>>>()?;
        let elements = names.into_iter().enumerate().map(|(i, n)| (n, i)).collect();
        Poset::new(elements, &pairs)
    }
}

impl FromStr for Poset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Poset> {
        Poset::parse(s)
    }
}

/// Writes elements in id order, then the cover relations.
impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (_, name, _) in self.elements() {
            writeln!(f, "elem {name}")?;
        }
        for &(a, b) in self.covers() {
            writeln!(f, "rel {} < {}", self.name(a), self.name(b))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Catalog;

    #[test]
    fn two_chain() {
        let p = Poset::parse("elem a\nelem b\nrel a < b\n").unwrap();
        assert_eq!(p.covers(), &[(0, 1)]);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(Poset::parse("elem a\nelem a\n"), Err(Error::DuplicateElement("a".into())));
        match Poset::parse("elem a\n  rel a < q\n") {
            Err(Error::Parse { line: 2, column: 11, .. }) => {}
            other => panic!("{other:?}"),
        }
        match Poset::parse("elem a\nelem b\nrel a > b") {
            Err(Error::Parse { line: 3, column: 7, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(Poset::parse("elem 1x"), Err(Error::Parse { line: 1, column: 6, .. })));
        assert!(matches!(
            Poset::parse("elem a\nelem b\nrel a < b\nrel b < a"),
            Err(Error::CycleDetected(_))
        ));
    }

    #[test]
    fn comments_and_round_trip() {
        let text = "# fence\nelem z1 # top\n\nelem x1\nelem x2\nelem y1\nrel x1 < z1\nrel x2 < z1\nrel y1 < x1\nrel y1 < x2\n";
        let p = Poset::parse(text).unwrap();
        assert_eq!(p, Catalog::Fence { k: 1, n: 2 }.build());
        assert_eq!(Poset::parse(&p.to_string()).unwrap(), p);
    }
}
