//! Text format for supplying groups to the audit tool.
//!
//! Two layouts are accepted, selected by a leading `format` directive. `#`
//! starts a comment that runs to the end of the line; otherwise tokens are
//! separated by arbitrary whitespace.
//!
//! ```text
//! format table
//! order 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! ```
//!
//! `table` lists the `order × order` products row by row (row `a`, column
//! `b` holds `a*b`) with element 0 the identity.
//!
//! ```text
//! format semidirect-gf2
//! generator i 1000 0100 1010 0011
//! generator j 1000 1100 0010 0111
//! relation i^4 = 1
//! relation j^-1 i j = i^-1
//! ```
//!
//! `semidirect-gf2` names 4×4 matrices over GF(2), one `generator` per
//! abstract generator, each given as four rows of four bits (column `j` is
//! character `j`). The acting group is the matrix group they generate and the
//! result is `F₂⁴ ⋊ Q`. A `relation` runs to the end of its line and must hold
//! among the matrices; words are products of `name` or `name^k` factors, or
//! `1`.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::gf2::{Gf2Matrix, Gf2Vector, SPACE_SIZE};

use super::{FiniteGroup, GroupError, SemidirectProduct};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: relation `{text}` does not hold")]
    RelationFails { line: usize, text: String },
    #[error("group order {order} exceeds the size cap {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("invalid group: {0}")]
    Group(#[from] GroupError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// A product of generator powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word(pub Vec<(String, i64)>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub line: usize,
    pub text: String,
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDescription {
    Table {
        order: usize,
        entries: Vec<usize>,
    },
    SemidirectGf2 {
        generators: Vec<(String, Gf2Matrix)>,
        relations: Vec<Relation>,
    },
}

struct Token<'a> {
    line: usize,
    text: &'a str,
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        out.extend(content.split_whitespace().map(|t| Token { line: i + 1, text: t }));
    }
    out
}

fn line_text(text: &str, line: usize) -> &str {
    let raw = text.lines().nth(line - 1).unwrap_or("");
    raw.split('#').next().unwrap_or("").trim()
}

pub fn parse_group_description(text: &str) -> Result<GroupDescription, ParseError> {
    let tokens = tokenize(text);
    let mut it = tokens.iter().peekable();
    let head = it.next().ok_or_else(|| syntax(1, "empty group description"))?;
    if head.text != "format" {
        return Err(syntax(head.line, format!("expected `format`, found `{}`", head.text)));
    }
    let kind = it
        .next()
        .ok_or_else(|| syntax(head.line, "missing format name after `format`"))?;
    match kind.text {
        "table" => {
            let kw = it.next().ok_or_else(|| syntax(kind.line, "missing `order`"))?;
            if kw.text != "order" {
                return Err(syntax(kw.line, format!("expected `order`, found `{}`", kw.text)));
            }
            let n_tok = it.next().ok_or_else(|| syntax(kw.line, "missing order value"))?;
            let order: usize = n_tok
                .text
                .parse()
                .map_err(|_| syntax(n_tok.line, format!("order: `{}` is not an integer", n_tok.text)))?;
            if order == 0 {
                return Err(syntax(n_tok.line, "order must be positive"));
            }
            let mut entries = Vec::with_capacity(order * order);
            for idx in 0..order * order {
                let (row, col) = (idx / order, idx % order);
                let tok = it.next().ok_or_else(|| {
                    syntax(
                        tokens.last().map_or(1, |t| t.line),
                        format!("table ends early: missing entry ({row}, {col})"),
                    )
                })?;
                let value: usize = tok.text.parse().map_err(|_| {
                    syntax(
                        tok.line,
                        format!("entry ({row}, {col}): `{}` is not an element index", tok.text),
                    )
                })?;
                if value >= order {
                    return Err(syntax(
                        tok.line,
                        format!("entry ({row}, {col}): {value} is out of range for order {order}"),
                    ));
                }
                entries.push(value);
            }
            if let Some(extra) = it.next() {
                return Err(syntax(
                    extra.line,
                    format!("unexpected token `{}` after table", extra.text),
                ));
            }
            Ok(GroupDescription::Table { order, entries })
        }
        "semidirect-gf2" => {
            let mut generators: Vec<(String, Gf2Matrix)> = Vec::new();
            let mut relations = Vec::new();
            while let Some(tok) = it.next() {
                match tok.text {
                    "generator" => {
                        let name = it
                            .next()
                            .filter(|t| t.line == tok.line)
                            .ok_or_else(|| syntax(tok.line, "generator: missing name"))?;
                        if !is_name(name.text) {
                            return Err(syntax(name.line, format!("generator: bad name `{}`", name.text)));
                        }
                        if generators.iter().any(|(n, _)| n == name.text) {
                            return Err(syntax(name.line, format!("generator `{}` defined twice", name.text)));
                        }
                        let mut rows = [Gf2Vector::ZERO; 4];
                        for (r, row) in rows.iter_mut().enumerate() {
                            let t = it
                                .next()
                                .ok_or_else(|| syntax(tok.line, format!("generator {}: missing row {r}", name.text)))?;
                            *row = parse_row(t.text).ok_or_else(|| {
                                syntax(
                                    t.line,
                                    format!("generator {} row {r}: `{}` is not four bits", name.text, t.text),
                                )
                            })?;
                        }
                        let m = Gf2Matrix::from_rows(rows);
                        if !m.is_invertible() {
                            return Err(syntax(tok.line, format!("generator {} is singular", name.text)));
                        }
                        generators.push((name.text.to_string(), m));
                    }
                    "relation" => {
                        let mut parts: Vec<&str> = Vec::new();
                        while let Some(t) = it.next_if(|t| t.line == tok.line) {
                            parts.push(t.text);
                        }
                        let eq = parts
                            .iter()
                            .position(|&p| p == "=")
                            .ok_or_else(|| syntax(tok.line, "relation: missing `=`"))?;
                        let lhs = parse_word(&parts[..eq], tok.line)?;
                        let rhs = parse_word(&parts[eq + 1..], tok.line)?;
                        relations.push(Relation {
                            line: tok.line,
                            text: line_text(text, tok.line)
                                .trim_start_matches("relation")
                                .trim()
                                .to_string(),
                            lhs,
                            rhs,
                        });
                    }
                    other => {
                        return Err(syntax(
                            tok.line,
                            format!("expected `generator` or `relation`, found `{other}`"),
                        ))
                    }
                }
            }
            if generators.is_empty() {
                return Err(syntax(kind.line, "semidirect-gf2 needs at least one generator"));
            }
            for rel in &relations {
                for (name, _) in rel.lhs.0.iter().chain(&rel.rhs.0) {
                    if !generators.iter().any(|(n, _)| n == name) {
                        return Err(syntax(rel.line, format!("relation uses unknown generator `{name}`")));
                    }
                }
            }
            Ok(GroupDescription::SemidirectGf2 { generators, relations })
        }
        other => Err(syntax(
            kind.line,
            format!("unknown format `{other}` (expected `table` or `semidirect-gf2`)"),
        )),
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_row(s: &str) -> Option<Gf2Vector> {
    if s.len() != 4 {
        return None;
    }
    let mut bits = 0u8;
    for (j, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' => bits |= 1 << j,
            _ => return None,
        }
    }
    Gf2Vector::new(bits).ok()
}

fn parse_word(parts: &[&str], line: usize) -> Result<Word, ParseError> {
    if parts.is_empty() {
        return Err(syntax(line, "relation: empty side"));
    }
    if parts == ["1"] {
        return Ok(Word(Vec::new()));
    }
    let mut factors = Vec::new();
    for part in parts {
        let (name, exp) = match part.split_once('^') {
            Some((n, e)) => {
                let e: i64 = e
                    .parse()
                    .map_err(|_| syntax(line, format!("relation: bad exponent in `{part}`")))?;
                (n, e)
            }
            None => (*part, 1),
        };
        if !is_name(name) {
            return Err(syntax(line, format!("relation: bad factor `{part}`")));
        }
        factors.push((name.to_string(), exp));
    }
    Ok(Word(factors))
}

impl GroupDescription {
    /// Builds the described group, refusing anything larger than `cap`.
    pub fn build(&self, cap: usize) -> Result<FiniteGroup, ParseError> {
        match self {
            GroupDescription::Table { order, entries } => {
                if *order > cap {
                    return Err(ParseError::TooLarge { order: *order, cap });
                }
                Ok(FiniteGroup::from_table(*order, entries.clone())?)
            }
            GroupDescription::SemidirectGf2 { .. } => Ok(self.build_semidirect(cap)?.into_group()),
        }
    }

    /// For `semidirect-gf2` descriptions, the product with its structure.
    pub fn build_semidirect(&self, cap: usize) -> Result<SemidirectProduct, ParseError> {
        let GroupDescription::SemidirectGf2 { generators, relations } = self else {
            return Err(syntax(1, "not a semidirect-gf2 description"));
        };
        let lookup: BTreeMap<&str, Gf2Matrix> = generators.iter().map(|(n, m)| (n.as_str(), *m)).collect();
        for rel in relations {
            if eval_word(&rel.lhs, &lookup) != eval_word(&rel.rhs, &lookup) {
                return Err(ParseError::RelationFails {
                    line: rel.line,
                    text: rel.text.clone(),
                });
            }
        }
        let mats: Vec<Gf2Matrix> = generators.iter().map(|(_, m)| *m).collect();
        let elements = matrix_closure(&mats);
        let order = SPACE_SIZE * elements.len();
        if order > cap {
            return Err(ParseError::TooLarge { order, cap });
        }
        let position: BTreeMap<u16, usize> = elements.iter().enumerate().map(|(i, m)| (m.key(), i)).collect();
        let acting = FiniteGroup::from_fn(elements.len(), |a, b| position[&elements[a].mul(&elements[b]).key()])?;
        Ok(SemidirectProduct::new(acting, elements)?)
    }
}

fn eval_word(word: &Word, lookup: &BTreeMap<&str, Gf2Matrix>) -> Gf2Matrix {
    word.0.iter().fold(Gf2Matrix::IDENTITY, |acc, (name, exp)| {
        let m = lookup[name.as_str()];
        let base = if *exp < 0 {
            m.inverse().expect("generators are invertible")
        } else {
            m
        };
        acc.mul(&base.pow(exp.unsigned_abs() as u32))
    })
}

/// The matrix group generated by `gens`: identity first, then increasing key.
pub(crate) fn matrix_closure(gens: &[Gf2Matrix]) -> Vec<Gf2Matrix> {
    let mut seen = vec![false; 1 << 16];
    seen[Gf2Matrix::IDENTITY.key() as usize] = true;
    let mut found = vec![Gf2Matrix::IDENTITY];
    let mut queue = VecDeque::from([Gf2Matrix::IDENTITY]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if !seen[y.key() as usize] {
                seen[y.key() as usize] = true;
                found.push(y);
                queue.push_back(y);
            }
        }
    }
    found[1..].sort();
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z3: &str = "# cyclic\nformat table\norder 3\n0 1 2\n1 2 0\n2 0 1\n";

    #[test]
    fn parses_table() {
        let desc = parse_group_description(Z3).unwrap();
        let g = desc.build(1024).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.exponent(), 3);
    }

    #[test]
    fn table_is_whitespace_insensitive() {
        let desc = parse_group_description("format table order 2 0 1\n1 0 # trailing").unwrap();
        assert_eq!(desc.build(2).unwrap().order(), 2);
    }

    #[test]
    fn table_errors_name_line_and_field() {
        let err = parse_group_description("format table\norder 2\n0 1\n1 x\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax {
                line: 4,
                message: "entry (1, 1): `x` is not an element index".into()
            }
        );
        let err = parse_group_description("format table\norder 2\n0 1\n1\n").unwrap_err();
        assert!(err.to_string().contains("missing entry (1, 1)"), "{err}");
        let err = parse_group_description("format tabel\n").unwrap_err();
        assert!(err.to_string().starts_with("line 1: unknown format"), "{err}");
        let err = parse_group_description("format table\norder 2\n0 1\n1 5\n").unwrap_err();
        assert!(err.to_string().contains("out of range"), "{err}");
    }

    #[test]
    fn size_cap_refuses() {
        let desc = parse_group_description(Z3).unwrap();
        assert_eq!(desc.build(2), Err(ParseError::TooLarge { order: 3, cap: 2 }));
    }

    #[test]
    fn invalid_table_is_reported() {
        let desc = parse_group_description("format table order 2  0 1  1 1").unwrap();
        assert!(matches!(desc.build(8), Err(ParseError::Group(GroupError::NotLatin(_)))));
    }

    const Q8_ACTION: &str = "\
format semidirect-gf2
generator i 1000 0100 1010 0011
generator j 1000 1100 0010 0111
relation i^4 = 1
relation j^2 = i^2
relation j^-1 i j = i^-1   # conjugation inverts i
";

    #[test]
    fn parses_semidirect() {
        let desc = parse_group_description(Q8_ACTION).unwrap();
        let GroupDescription::SemidirectGf2 { generators, relations } = &desc else {
            panic!("wrong kind");
        };
        assert_eq!(generators.len(), 2);
        assert_eq!(relations.len(), 3);
        assert_eq!(relations[2].text, "j^-1 i j = i^-1");
        let sd = desc.build_semidirect(1024).unwrap();
        assert_eq!(sd.acting_group().order(), 8);
        assert_eq!(sd.group().order(), 128);
        assert!(desc.build_semidirect(64).is_err());
    }

    #[test]
    fn failing_relation_is_named() {
        let text = "format semidirect-gf2\ngenerator a 0100 1000 0010 0001\nrelation a^3 = 1\n";
        let err = parse_group_description(text).unwrap().build(1024).unwrap_err();
        assert_eq!(
            err,
            ParseError::RelationFails {
                line: 3,
                text: "a^3 = 1".into()
            }
        );
    }

    #[test]
    fn semidirect_syntax_errors() {
        let err = parse_group_description("format semidirect-gf2\ngenerator a 0100 1000 0012 0001\n").unwrap_err();
        assert!(err.to_string().starts_with("line 2: generator a row 2"), "{err}");
        let err = parse_group_description("format semidirect-gf2\ngenerator a 0000 1000 0010 0001\n").unwrap_err();
        assert!(err.to_string().contains("singular"), "{err}");
        let err = parse_group_description("format semidirect-gf2\ngenerator a 0100 1000 0010 0001\nrelation b = 1\n")
            .unwrap_err();
        assert!(err.to_string().contains("unknown generator `b`"), "{err}");
    }

    #[test]
    fn closure_orders_identity_first() {
        let swap = Gf2Matrix::permutation([1, 0, 2, 3]);
        let cycle = Gf2Matrix::permutation([1, 2, 0, 3]);
        let s3 = matrix_closure(&[swap, cycle]);
        assert_eq!(s3.len(), 6);
        assert_eq!(s3[0], Gf2Matrix::IDENTITY);
        assert!(s3[1..].windows(2).all(|w| w[0] < w[1]));
    }
}
