//! Line-oriented text format for diagram codes.
//!
//! ```text
//! # comment
//! vertex <vid> [component <i>] rotation <edge-end>*
//! edge <eid> component <i> from <vid> to <vid> passes <event>*
//! ```
//!
//! An edge-end is `+<eid>` (the edge leaves the vertex) or `-<eid>` (it
//! enters); rotations list them counterclockwise as seen from above. An
//! event is `X<cid><o|u><+|->`: crossing id, over or under, crossing sign.
//! `component` on a vertex line is only needed for isolated vertices.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{EdgeEnd, EmbeddingCode, End, Passage, Role, Sign, ValidationError};
use crate::graph::{AbstractGraph, Edge, EdgeId, VertexId};
use crate::ring::Color;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid diagram: {0}")]
    Validation(#[from] ValidationError),
}

struct Tok<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((b, c)) = start.take() {
                out.push(Tok { text: &line[b..byte], column: c + 1 });
            }
        } else if start.is_none() {
            start = Some((byte, col));
        }
    }
    if let Some((b, c)) = start {
        out.push(Tok { text: &line[b..], column: c + 1 });
    }
    out
}

struct LineCursor<'a> {
    line: usize,
    toks: Vec<Tok<'a>>,
    pos: usize,
    end_column: usize,
}

impl<'a> LineCursor<'a> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { line: self.line, column, message: message.into() }
    }

    fn next(&mut self, what: &str) -> Result<&Tok<'a>, ParseError> {
        if self.pos < self.toks.len() {
            self.pos += 1;
            Ok(&self.toks[self.pos - 1])
        } else {
            Err(self.err(self.end_column, format!("expected {what}")))
        }
    }

    fn peek(&self) -> Option<&Tok<'a>> {
        self.toks.get(self.pos)
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let t = self.next(&format!("'{kw}'"))?;
        if t.text == kw {
            Ok(())
        } else {
            let (c, txt) = (t.column, t.text.to_string());
            Err(self.err(c, format!("expected '{kw}', found '{txt}'")))
        }
    }

    fn number(&mut self, what: &str) -> Result<u32, ParseError> {
        let t = self.next(what)?;
        let (c, txt) = (t.column, t.text);
        parse_u32(txt).ok_or_else(|| self.err(c, format!("expected {what}, found '{txt}'")))
    }

    fn rest(&mut self) -> Vec<Tok<'a>> {
        let rest = self.toks.split_off(self.pos);
        self.pos = self.toks.len();
        rest
    }
}

fn parse_u32(s: &str) -> Option<u32> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_event(s: &str) -> Option<Passage> {
    let body = s.strip_prefix('X')?;
    let mut chars = body.chars();
    let sign = match chars.next_back()? {
        '+' => Sign::Positive,
        '-' => Sign::Negative,
        _ => return None,
    };
    let role = match chars.next_back()? {
        'o' => Role::Over,
        'u' => Role::Under,
        _ => return None,
    };
    let crossing = parse_u32(chars.as_str())?;
    Some(Passage { crossing, role, sign })
}

fn parse_end(s: &str) -> Option<EdgeEnd> {
    let end = match s.as_bytes().first() {
        Some(b'+') => End::Tail,
        Some(b'-') => End::Head,
        _ => return None,
    };
    Some(EdgeEnd { edge: parse_u32(&s[1..])?, end })
}

/// Parses and validates a diagram code.
pub fn parse(text: &str) -> Result<EmbeddingCode, ParseError> {
    let mut vertices: Vec<(VertexId, Option<Color>)> = Vec::new();
    let mut rotations: BTreeMap<VertexId, Vec<EdgeEnd>> = BTreeMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut passages: BTreeMap<EdgeId, Vec<Passage>> = BTreeMap::new();

    for (k, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        if toks.is_empty() {
            continue;
        }
        let mut cur = LineCursor {
            line: k + 1,
            toks,
            pos: 0,
            end_column: content.chars().count() + 1,
        };
        let head = cur.next("keyword")?;
        let (head_text, head_col) = (head.text, head.column);
        match head_text {
            "vertex" => {
                let v = cur.number("vertex id")?;
                let mut color = None;
                if cur.peek().is_some_and(|t| t.text == "component") {
                    cur.keyword("component")?;
                    color = Some(cur.number("component number")?);
                }
                cur.keyword("rotation")?;
                let mut ends = Vec::new();
                for t in cur.rest() {
                    let e = parse_end(t.text).ok_or_else(|| {
                        cur.err(t.column, format!("expected edge-end like +3 or -3, found '{}'", t.text))
                    })?;
                    ends.push(e);
                }
                if rotations.insert(v, ends).is_some() {
                    return Err(cur.err(head_col, format!("vertex {v} declared twice")));
                }
                vertices.push((v, color));
            }
            "edge" => {
                let id = cur.number("edge id")?;
                cur.keyword("component")?;
                let color = cur.number("component number")?;
                cur.keyword("from")?;
                let tail = cur.number("vertex id")?;
                cur.keyword("to")?;
                let head = cur.number("vertex id")?;
                cur.keyword("passes")?;
                let mut list = Vec::new();
                for t in cur.rest() {
                    let p = parse_event(t.text).ok_or_else(|| {
                        cur.err(t.column, format!("expected event like X3o+, found '{}'", t.text))
                    })?;
                    list.push(p);
                }
                if passages.insert(id, list).is_some() {
                    return Err(cur.err(head_col, format!("edge {id} declared twice")));
                }
                edges.push(Edge { id, tail, head, color });
            }
            other => {
                return Err(cur.err(head_col, format!("expected 'vertex' or 'edge', found '{other}'")))
            }
        }
    }
    let graph = AbstractGraph::with_colors(vertices, edges).map_err(ValidationError::from)?;
    Ok(EmbeddingCode::new(graph, passages, rotations)?)
}

/// Canonical text: vertex lines by id, then edge lines by id, single spaces.
pub fn serialize(code: &EmbeddingCode) -> String {
    let g = code.graph();
    let mut out = String::new();
    for v in g.vertices() {
        let rot = code.rotation(v);
        let _ = write!(out, "vertex {v}");
        if rot.is_empty() {
            let _ = write!(out, " component {}", g.vertex_color(v).unwrap_or(0));
        }
        out.push_str(" rotation");
        for e in rot {
            let _ = write!(out, " {e}");
        }
        out.push('\n');
    }
    for e in g.edges() {
        let _ = write!(
            out,
            "edge {} component {} from {} to {} passes",
            e.id, e.color, e.tail, e.head
        );
        for p in code.passages(e.id) {
            let _ = write!(out, " {p}");
        }
        out.push('\n');
    }
    out
}
