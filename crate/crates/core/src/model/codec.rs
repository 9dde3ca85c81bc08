//! Canonical certificate text.
//!
//! ```text
//! version: 1
//! graph_hash: <hex sha-256 of the host's canonical text>
//! clique_order: 3
//! trees:
//!   - vertices: [0]
//!     edges: []
//!   - vertices: [1, 2]
//!     edges: [[1, 2]]
//! coloring: [[0, 1], [1, 1], [2, 2]]
//! connectors: [[0, 1, 0, 1], [0, 2, 0, 2]]
//! flags: [outside-theorem-preconditions]
//! ```
//!
//! `connectors` and `flags` are omitted when absent or empty. Lists are
//! sorted, so equal models produce identical bytes. The parser tolerates
//! extra spaces, blank lines and `#` comment lines.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{BranchTree, Color, Connectors, OddExpansionModel, WitnessColoring};

pub const FORMAT_VERSION: usize = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate parse error at byte {offset} ({path}): {message}")]
pub struct ParseError {
    pub offset: usize,
    pub path: String,
    pub message: String,
}

/// A parsed certificate: the model plus the digest of the host it claims.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub graph_hash: String,
    pub model: OddExpansionModel,
}

fn join<T>(items: impl IntoIterator<Item = T>, f: impl Fn(T) -> String) -> String {
    items.into_iter().map(f).collect::<Vec<_>>().join(", ")
}

pub fn serialize_model(model: &OddExpansionModel, graph_hash: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "version: {FORMAT_VERSION}");
    let _ = writeln!(out, "graph_hash: {graph_hash}");
    let _ = writeln!(out, "clique_order: {}", model.clique_order());
    out.push_str("trees:\n");
    for t in &model.trees {
        let _ = writeln!(
            out,
            "  - vertices: [{}]",
            join(t.vertices(), |v| v.to_string())
        );
        let _ = writeln!(
            out,
            "    edges: [{}]",
            join(t.edges(), |(u, v)| format!("[{u}, {v}]"))
        );
    }
    let _ = writeln!(
        out,
        "coloring: [{}]",
        join(model.coloring.iter(), |(v, c)| format!("[{v}, {c}]"))
    );
    if let Some(conn) = &model.connectors {
        let _ = writeln!(
            out,
            "connectors: [{}]",
            join(conn, |(&(i, j), &(u, v))| format!("[{i}, {j}, {u}, {v}]"))
        );
    }
    if !model.flags.is_empty() {
        let mut flags = model.flags.clone();
        flags.sort();
        let _ = writeln!(out, "flags: [{}]", flags.join(", "));
    }
    out
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, path: &str, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.pos,
            path: path.to_string(),
            message: message.into(),
        }
    }

    fn skip_spaces(&mut self) {
        while matches!(self.src.get(self.pos), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
    }

    /// Skips blank and comment lines at the start of a line.
    fn skip_filler_lines(&mut self) {
        loop {
            let start = self.pos;
            self.skip_spaces();
            match self.src.get(self.pos) {
                Some(b'#') => {
                    while !matches!(self.src.get(self.pos), None | Some(b'\n')) {
                        self.pos += 1;
                    }
                    self.pos = (self.pos + 1).min(self.src.len());
                }
                Some(b'\r') if self.src.get(self.pos + 1) == Some(&b'\n') => self.pos += 2,
                Some(b'\n') => self.pos += 1,
                _ => {
                    self.pos = start;
                    return;
                }
            }
        }
    }

    fn peek_token(&mut self, lit: &str) -> bool {
        let save = self.pos;
        self.skip_spaces();
        let hit = self.src[self.pos..].starts_with(lit.as_bytes());
        self.pos = save;
        hit
    }

    fn expect(&mut self, lit: &str, path: &str) -> Result<(), ParseError> {
        self.skip_spaces();
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            Ok(())
        } else if self.pos >= self.src.len() {
            Err(self.err(path, format!("unexpected end of input, expected `{lit}`")))
        } else {
            Err(self.err(path, format!("expected `{lit}`")))
        }
    }

    fn end_of_line(&mut self, path: &str) -> Result<(), ParseError> {
        self.skip_spaces();
        match self.src.get(self.pos) {
            Some(b'\n') => self.pos += 1,
            Some(b'\r') if self.src.get(self.pos + 1) == Some(&b'\n') => self.pos += 2,
            None => return Err(self.err(path, "unexpected end of input, expected newline")),
            Some(_) => return Err(self.err(path, "trailing characters")),
        }
        self.skip_filler_lines();
        Ok(())
    }

    fn uint(&mut self, path: &str) -> Result<usize, ParseError> {
        self.skip_spaces();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(path, "expected a non-negative integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("digits");
        text.parse().map_err(|_| ParseError {
            offset: start,
            path: path.to_string(),
            message: "integer out of range".to_string(),
        })
    }

    fn word(&mut self, path: &str) -> Result<String, ParseError> {
        self.skip_spaces();
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'-' || *b == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(path, "expected a word"));
        }
        Ok(String::from_utf8(self.src[start..self.pos].to_vec()).expect("ascii"))
    }

    /// `[item, item, ...]`; `item` is called with the element path.
    fn list<T>(
        &mut self,
        path: &str,
        mut item: impl FnMut(&mut Self, &str) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        self.expect("[", path)?;
        let mut out = Vec::new();
        if self.peek_token("]") {
            self.expect("]", path)?;
            return Ok(out);
        }
        loop {
            let p = format!("{path}[{}]", out.len());
            out.push(item(self, &p)?);
            if self.peek_token(",") {
                self.expect(",", path)?;
            } else {
                self.expect("]", path)?;
                return Ok(out);
            }
        }
    }

    fn tuple(&mut self, path: &str, k: usize) -> Result<Vec<usize>, ParseError> {
        let items = self.list(path, |c, p| c.uint(p))?;
        if items.len() != k {
            return Err(self.err(path, format!("expected {k} entries, found {}", items.len())));
        }
        Ok(items)
    }
}

pub fn parse_model(bytes: &[u8]) -> Result<Certificate, ParseError> {
    let mut c = Cursor { src: bytes, pos: 0 };
    c.skip_filler_lines();

    c.expect("version:", "version")?;
    let at = c.pos;
    let version = c.uint("version")?;
    if version != FORMAT_VERSION {
        return Err(ParseError {
            offset: at,
            path: "version".into(),
            message: format!("unsupported version {version}"),
        });
    }
    c.end_of_line("version")?;

    c.expect("graph_hash:", "graph_hash")?;
    let graph_hash = c.word("graph_hash")?;
    c.end_of_line("graph_hash")?;

    c.expect("clique_order:", "clique_order")?;
    let order_at = c.pos;
    let order = c.uint("clique_order")?;
    c.end_of_line("clique_order")?;

    c.expect("trees:", "trees")?;
    c.end_of_line("trees")?;
    let mut trees = Vec::new();
    while c.peek_token("-") {
        let p = format!("trees[{}]", trees.len());
        c.expect("-", &p)?;
        c.expect("vertices:", &format!("{p}.vertices"))?;
        let vertices = c.list(&format!("{p}.vertices"), |c, q| c.uint(q))?;
        c.end_of_line(&format!("{p}.vertices"))?;
        c.expect("edges:", &format!("{p}.edges"))?;
        let edges = c.list(&format!("{p}.edges"), |c, q| c.tuple(q, 2))?;
        c.end_of_line(&format!("{p}.edges"))?;
        trees.push(BranchTree::new(
            vertices,
            edges.into_iter().map(|e| (e[0], e[1])),
        ));
    }
    if trees.len() != order {
        return Err(ParseError {
            offset: order_at,
            path: "clique_order".into(),
            message: format!("clique_order is {order} but {} trees follow", trees.len()),
        });
    }

    c.expect("coloring:", "coloring")?;
    let mut coloring = WitnessColoring::new();
    let entries = c.list("coloring", |c, p| {
        let start = c.pos;
        let e = c.tuple(p, 2)?;
        let color = Color::from_u8(e[1].min(255) as u8).ok_or_else(|| ParseError {
            offset: start,
            path: p.to_string(),
            message: format!("color must be 1 or 2, found {}", e[1]),
        })?;
        Ok((start, p.to_string(), e[0], color))
    })?;
    for (start, p, v, color) in entries {
        if coloring.get(v).is_some() {
            return Err(ParseError {
                offset: start,
                path: p,
                message: format!("vertex {v} colored twice"),
            });
        }
        coloring.set(v, color);
    }
    c.end_of_line("coloring")?;

    let mut connectors = None;
    if c.peek_token("connectors:") {
        c.expect("connectors:", "connectors")?;
        let mut map: Connectors = BTreeMap::new();
        let entries = c.list("connectors", |c, p| {
            let start = c.pos;
            Ok((start, p.to_string(), c.tuple(p, 4)?))
        })?;
        for (start, p, e) in entries {
            if map.insert((e[0], e[1]), (e[2], e[3])).is_some() {
                return Err(ParseError {
                    offset: start,
                    path: p,
                    message: format!("pair ({}, {}) listed twice", e[0], e[1]),
                });
            }
        }
        c.end_of_line("connectors")?;
        connectors = Some(map);
    }

    let mut flags = Vec::new();
    if c.peek_token("flags:") {
        c.expect("flags:", "flags")?;
        flags = c.list("flags", |c, p| c.word(p))?;
        flags.sort();
        c.end_of_line("flags")?;
    }

    c.skip_filler_lines();
    if c.pos != bytes.len() {
        return Err(c.err("<end>", "unexpected content after the certificate"));
    }
    Ok(Certificate {
        graph_hash,
        model: OddExpansionModel {
            trees,
            coloring,
            connectors,
            flags,
        },
    })
}
