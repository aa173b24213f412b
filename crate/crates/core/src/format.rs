//! Line-oriented text format for triple systems and brackets.
//!
//! ```text
//! # comments run to the end of the line
//! dim 2
//! label 1 x
//! prod 1 2 1 = 1 * 2
//! prod 2 1 1 = -1 * 2
//! ```
//!
//! Bracket files use `brk I J = C * M` instead of `prod`. Coefficients are
//! `p` or `p/q`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::FormatError;
use crate::leibniz::BilinearTable;
use crate::scalar::Scalar;
use crate::system::{Entry, TripleSystem};

/// A parsed system file plus the hash of its canonical serialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemFile<F> {
    pub system: TripleSystem<F>,
    pub hash: String,
}

impl<F: Scalar> SystemFile<F> {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(Self::from_system(parse_system(text)?))
    }

    pub fn from_system(system: TripleSystem<F>) -> Self {
        let hash = content_hash(&serialize_system(&system));
        SystemFile { system, hash }
    }

    pub fn serialize(&self) -> String {
        serialize_system(&self.system)
    }
}

/// Hex SHA-256 of `text`.
pub fn content_hash(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    System,
    Bracket,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    /// Column just past the last token, for "missing token" errors.
    end: usize,
}

impl<'a> Line<'a> {
    fn error(&self, column: usize, message: impl Into<String>) -> FormatError {
        FormatError::Syntax { line: self.number, column, message: message.into() }
    }

    fn token(&self, pos: usize, what: &str) -> Result<&Token<'a>, FormatError> {
        self.tokens.get(pos).ok_or_else(|| self.error(self.end, format!("expected {what}")))
    }

    fn index(&self, pos: usize) -> Result<usize, FormatError> {
        let t = self.token(pos, "an index")?;
        if !t.text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(self.error(t.column, format!("expected an index, found {:?}", t.text)));
        }
        t.text.parse().map_err(|_| self.error(t.column, format!("index {:?} is too large", t.text)))
    }

    fn literal(&self, pos: usize, expected: &str) -> Result<(), FormatError> {
        let t = self.token(pos, &format!("{expected:?}"))?;
        if t.text != expected {
            return Err(self.error(t.column, format!("expected {expected:?}, found {:?}", t.text)));
        }
        Ok(())
    }

    fn scalar<F: Scalar>(&self, pos: usize) -> Result<F, FormatError> {
        let t = self.token(pos, "a coefficient")?;
        F::parse_literal(t.text).map_err(|e| self.error(t.column, e.to_string()))
    }

    fn finish(&self, len: usize) -> Result<(), FormatError> {
        match self.tokens.get(len) {
            Some(t) => Err(self.error(t.column, format!("unexpected trailing token {:?}", t.text))),
            None => Ok(()),
        }
    }
}

fn tokenize(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(n, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (offset, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(offset),
                (true, Some(s)) => {
                    let column = content[..s].chars().count() + 1;
                    tokens.push(Token { text: &content[s..offset], column });
                    start = None;
                }
                _ => {}
            }
        }
        let end = content.trim_end().chars().count() + 1;
        (!tokens.is_empty()).then_some(Line { number: n + 1, tokens, end })
    })
}

struct Parsed<F> {
    dim: usize,
    labels: BTreeMap<usize, String>,
    /// `(i, j, k)` for products, `(i, j, 0)` for brackets; `k` unused then.
    terms: Vec<(usize, usize, usize, F, usize)>,
}

fn parse_lines<F: Scalar>(text: &str, kind: Kind) -> Result<Parsed<F>, FormatError> {
    let mut dim = None;
    let mut labels = BTreeMap::new();
    let mut terms = Vec::new();
    let mut last_line = 0;
    for line in tokenize(text) {
        last_line = line.number;
        let head = &line.tokens[0];
        if dim.is_none() && head.text != "dim" {
            return Err(line.error(head.column, "the first directive must be \"dim N\""));
        }
        match head.text {
            "dim" => {
                if dim.is_some() {
                    return Err(line.error(head.column, "repeated \"dim\" directive"));
                }
                dim = Some(line.index(1)?);
                line.finish(2)?;
            }
            "label" => {
                let k = line.index(1)?;
                let name = line.token(2, "a label name")?;
                line.finish(3)?;
                if labels.insert(k, name.text.to_string()).is_some() {
                    return Err(line.error(head.column, format!("repeated label for index {k}")));
                }
            }
            "prod" if kind == Kind::System => {
                let (i, j, k) = (line.index(1)?, line.index(2)?, line.index(3)?);
                line.literal(4, "=")?;
                let c = line.scalar(5)?;
                line.literal(6, "*")?;
                let m = line.index(7)?;
                line.finish(8)?;
                terms.push((i, j, k, c, m));
            }
            "brk" if kind == Kind::Bracket => {
                let (i, j) = (line.index(1)?, line.index(2)?);
                line.literal(3, "=")?;
                let c = line.scalar(4)?;
                line.literal(5, "*")?;
                let m = line.index(6)?;
                line.finish(7)?;
                terms.push((i, j, 0, c, m));
            }
            other => {
                let allowed = if kind == Kind::System { "prod" } else { "brk" };
                return Err(
                    line.error(head.column, format!("unknown directive {other:?} (expected dim, label or {allowed})"))
                );
            }
        }
    }
    let dim =
        dim.ok_or(FormatError::Syntax { line: last_line.max(1), column: 1, message: "missing \"dim N\"".into() })?;
    Ok(Parsed { dim, labels, terms })
}

/// Parses a product table; validation errors of the table are forwarded.
pub fn parse_system<F: Scalar>(text: &str) -> Result<TripleSystem<F>, FormatError> {
    let p = parse_lines::<F>(text, Kind::System)?;
    let sys = TripleSystem::new(p.dim, p.terms.into_iter().map(|(i, j, k, c, m)| Entry::new(i, j, k, c, m)))?;
    Ok(sys.with_labels(p.labels)?)
}

/// Parses a bracket table `[e_i, e_j] = Σ c e_m`.
pub fn parse_leibniz<F: Scalar>(text: &str) -> Result<BilinearTable<F>, FormatError> {
    let p = parse_lines::<F>(text, Kind::Bracket)?;
    Ok(BilinearTable::new(p.dim, p.terms.into_iter().map(|(i, j, _, c, m)| (i, j, c, m)))?)
}

fn serialize_header(out: &mut String, dim: usize, labels: &BTreeMap<usize, String>) {
    let _ = writeln!(out, "dim {dim}");
    for (k, name) in labels {
        let _ = writeln!(out, "label {k} {name}");
    }
}

/// Canonical text: header, labels by index, entries sorted by `(i, j, k)`.
pub fn serialize_system<F: Scalar>(sys: &TripleSystem<F>) -> String {
    let mut out = String::new();
    serialize_header(&mut out, sys.dim(), sys.labels());
    for (&(i, j, k), p) in sys.entries() {
        let _ = writeln!(out, "prod {i} {j} {k} = {} * {}", p.coeff, p.target);
    }
    out
}

/// Canonical text of a bracket, terms sorted by `(i, j, target)`.
pub fn serialize_leibniz<F: Scalar>(table: &BilinearTable<F>) -> String {
    let mut out = String::new();
    serialize_header(&mut out, table.dim(), &BTreeMap::new());
    for (i, j, c, m) in table.terms() {
        let _ = writeln!(out, "brk {i} {j} = {c} * {m}");
    }
    out
}
