//! Quivers with monomial relations: construction, validation, normalization,
//! the text and JSON formats, and the finite-dimensionality test.
//!
//! Text format:
//!
//! ```text
//! # comments run to end of line
//! quiver {
//!   vertices: 1 2 3;
//!   arrows: a: 1 -> 2; b: 2 -> 3;
//!   relations: b*a;
//! }
//! ```
//!
//! Relations are written in composition order: `b*a` is "a, then b".

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automaton::{FactorAutomaton, ROOT};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("syntax error at line {line}, column {column}: {msg}")]
    Syntax {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("quiver has no vertices")]
    NoVertices,
    #[error("invalid identifier `{0}`")]
    InvalidId(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow label `{0}`")]
    DuplicateLabel(String),
    #[error("arrow `{arrow}` refers to unknown vertex `{vertex}`")]
    UnknownVertex { arrow: String, vertex: String },
    #[error("relation `{relation}` uses unknown arrow `{arrow}`")]
    UnknownArrow { relation: String, arrow: String },
    #[error("relation `{0}` is not a composable path")]
    NonComposable(String),
    #[error("relation `{0}` has length < 2")]
    ShortRelation(String),
    #[error("invalid JSON quiver: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver. Vertex order is declaration order and fixes the row and
/// column order of every matrix computed from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

fn valid_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Quiver {
    /// `arrows` are `(label, source, target)` triples naming declared vertices.
    pub fn new<V, L>(vertices: V, arrows: L) -> Result<Self, QuiverError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        L: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertices.is_empty() {
            return Err(QuiverError::NoVertices);
        }
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if !valid_id(v) {
                return Err(QuiverError::InvalidId(v.clone()));
            }
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut out = Vec::new();
        let mut arrow_index = HashMap::new();
        for (label, s, t) in arrows {
            if !valid_id(&label) {
                return Err(QuiverError::InvalidId(label));
            }
            let lookup = |v: &String| {
                vertex_index
                    .get(v)
                    .copied()
                    .ok_or_else(|| QuiverError::UnknownVertex {
                        arrow: label.clone(),
                        vertex: v.clone(),
                    })
            };
            let (source, target) = (lookup(&s)?, lookup(&t)?);
            if arrow_index.insert(label.clone(), out.len()).is_some() {
                return Err(QuiverError::DuplicateLabel(label));
            }
            out.push(Arrow {
                label,
                source,
                target,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
            vertex_index,
            arrow_index,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrow_index.get(label).copied()
    }

    /// Number of arrows from `i` to `j`.
    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.arrows
            .iter()
            .filter(|a| a.source == i && a.target == j)
            .count()
    }

    pub fn outgoing(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn incoming(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.num_vertices();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.outgoing(v) {
                let t = self.arrows[a].target;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
        seen == n
    }
}

/// A path in a quiver, arrows stored in traversal order. The empty path at
/// `v` is the idempotent `e_v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    /// Validates composability of `arrows` (traversal order) starting at `source`.
    pub fn new(quiver: &Quiver, source: usize, arrows: Vec<usize>) -> Option<Self> {
        let mut at = source;
        for &a in &arrows {
            let arrow = quiver.arrows.get(a)?;
            if arrow.source != at {
                return None;
            }
            at = arrow.target;
        }
        Some(Path {
            source,
            target: at,
            arrows,
        })
    }

    /// Builds a path from a nonempty traversal-order arrow sequence.
    pub fn from_arrows(quiver: &Quiver, arrows: Vec<usize>) -> Option<Self> {
        let first = *arrows.first()?;
        Self::new(quiver, quiver.arrows.get(first)?.source, arrows)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `other` occurs as a contiguous run of arrows inside `self`.
    pub fn contains_factor(&self, other: &Path) -> bool {
        !other.arrows.is_empty()
            && self
                .arrows
                .windows(other.arrows.len())
                .any(|w| w == other.arrows.as_slice())
    }

    /// Composition-order label, e.g. `b*a`, or `e_1` for an idempotent.
    pub fn display(&self, quiver: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e_{}", quiver.vertices[self.source]);
        }
        self.arrows
            .iter()
            .rev()
            .map(|&a| quiver.arrows[a].label.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn labels<'q>(&self, quiver: &'q Quiver) -> Vec<&'q str> {
        self.arrows
            .iter()
            .map(|&a| quiver.arrows[a].label.as_str())
            .collect()
    }
}

/// A quiver together with monomial (zero) relations, in normalized form:
/// no duplicates, no relation containing another as a factor, sorted by
/// length and then arrow order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundQuiver {
    quiver: Quiver,
    relations: Vec<Path>,
}

impl BoundQuiver {
    /// `relations` are label sequences in traversal order (first-traversed arrow
    /// first).
    pub fn new(quiver: Quiver, relations: Vec<Vec<String>>) -> Result<Self, QuiverError> {
        let mut paths = Vec::with_capacity(relations.len());
        for rel in relations {
            let name = rel.iter().rev().cloned().collect::<Vec<_>>().join("*");
            let arrows = rel
                .iter()
                .map(|l| {
                    quiver.arrow_index(l).ok_or_else(|| QuiverError::UnknownArrow {
                        relation: name.clone(),
                        arrow: l.clone(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if arrows.len() < 2 {
                return Err(QuiverError::ShortRelation(name));
            }
            let path =
                Path::from_arrows(&quiver, arrows).ok_or(QuiverError::NonComposable(name))?;
            paths.push(path);
        }
        Ok(Self::from_paths(quiver, paths))
    }

    /// Takes already-validated relation paths and normalizes them.
    pub fn from_paths(quiver: Quiver, relations: Vec<Path>) -> Self {
        BoundQuiver {
            quiver,
            relations: normalize_relations(relations),
        }
    }

    pub fn without_relations(quiver: Quiver) -> Self {
        BoundQuiver {
            quiver,
            relations: Vec::new(),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Path] {
        &self.relations
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn automaton(&self) -> FactorAutomaton {
        let pats: Vec<Vec<usize>> = self.relations.iter().map(|r| r.arrows.clone()).collect();
        FactorAutomaton::new(self.quiver.num_arrows(), &pats)
    }

    /// True iff only finitely many paths avoid every relation as a factor.
    pub fn is_finite_dimensional(&self) -> bool {
        self.infinite_cycle().is_none()
    }

    /// A closed walk of arrows that can be repeated forever without ever
    /// containing a relation, if one exists. Found as a reachable cycle in the
    /// product of the arrow graph with the relation automaton.
    pub fn infinite_cycle(&self) -> Option<Path> {
        let q = &self.quiver;
        let ac = self.automaton();
        let states = ac.num_states();
        let node = |v: usize, s: usize| v * states + s;
        let mut color = vec![0u8; q.num_vertices() * states];
        let out: Vec<Vec<usize>> = (0..q.num_vertices()).map(|v| q.outgoing(v).collect()).collect();

        for start in 0..q.num_vertices() {
            if color[node(start, ROOT)] != 0 {
                continue;
            }
            // (vertex, state, arrow used to enter, next outgoing index)
            let mut stack: Vec<(usize, usize, Option<usize>, usize)> = vec![(start, ROOT, None, 0)];
            color[node(start, ROOT)] = 1;
            while let Some(top) = stack.last_mut() {
                let (v, s, _, idx) = *top;
                if idx == out[v].len() {
                    color[node(v, s)] = 2;
                    stack.pop();
                    continue;
                }
                top.3 += 1;
                let a = out[v][idx];
                let t = ac.next(s, a);
                if ac.is_dead(t) {
                    continue;
                }
                let w = q.arrows[a].target;
                match color[node(w, t)] {
                    0 => {
                        color[node(w, t)] = 1;
                        stack.push((w, t, Some(a), 0));
                    }
                    1 => {
                        let pos = stack
                            .iter()
                            .position(|&(sv, ss, _, _)| sv == w && ss == t)
                            .expect("gray node is on the stack");
                        let mut arrows: Vec<usize> =
                            stack[pos + 1..].iter().filter_map(|f| f.2).collect();
                        arrows.push(a);
                        return Path::new(q, w, arrows);
                    }
                    _ => {}
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson {
            vertices: self.quiver.vertices.clone(),
            arrows: self
                .quiver
                .arrows
                .iter()
                .map(|a| ArrowJson {
                    label: a.label.clone(),
                    source: self.quiver.vertices[a.source].clone(),
                    target: self.quiver.vertices[a.target].clone(),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| r.labels(&self.quiver).into_iter().map(String::from).collect())
                .collect(),
        }
    }

    pub fn from_json(json: QuiverJson) -> Result<Self, QuiverError> {
        let quiver = Quiver::new(
            json.vertices,
            json.arrows.into_iter().map(|a| (a.label, a.source, a.target)),
        )?;
        Self::new(quiver, json.relations)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("quiver JSON is serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self, QuiverError> {
        let json: QuiverJson =
            serde_json::from_str(s).map_err(|e| QuiverError::Json(e.to_string()))?;
        Self::from_json(json)
    }

    /// Canonical text form, accepted back by [`parse_quiver`].
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn normalize_relations(mut rels: Vec<Path>) -> Vec<Path> {
    rels.sort_by(|a, b| (a.len(), &a.arrows).cmp(&(b.len(), &b.arrows)));
    rels.dedup();
    let mut kept: Vec<Path> = Vec::with_capacity(rels.len());
    // shorter relations come first, so a redundant one always meets its factor
    for r in rels {
        if !kept.iter().any(|k| r.contains_factor(k)) {
            kept.push(r);
        }
    }
    kept
}

impl fmt::Display for BoundQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = &self.quiver;
        writeln!(f, "quiver {{")?;
        writeln!(f, "  vertices: {};", q.vertices.join(" "))?;
        if !q.arrows.is_empty() {
            let arrows: Vec<String> = q
                .arrows
                .iter()
                .map(|a| format!("{}: {} -> {};", a.label, q.vertices[a.source], q.vertices[a.target]))
                .collect();
            writeln!(f, "  arrows: {}", arrows.join(" "))?;
        }
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| r.display(q)).collect();
            writeln!(f, "  relations: {};", rels.join(", "))?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub label: String,
    pub source: String,
    pub target: String,
}

/// JSON form of a bound quiver. Relations are listed in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Id(String),
    LBrace,
    RBrace,
    Colon,
    Semi,
    Comma,
    Star,
    Arrow,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Id(s) => write!(f, "`{s}`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Arrow => f.write_str("`->`"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, QuiverError> {
    let mut toks = Vec::new();
    for (lno, line) in text.lines().enumerate() {
        let line_no = lno + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let single = match c {
                '#' => break,
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                '{' => Some(Tok::LBrace),
                '}' => Some(Tok::RBrace),
                ':' => Some(Tok::Colon),
                ';' => Some(Tok::Semi),
                ',' => Some(Tok::Comma),
                '*' => Some(Tok::Star),
                _ => None,
            };
            let tok = if let Some(t) = single {
                i += 1;
                t
            } else if c == '-' && chars.get(i + 1) == Some(&'>') {
                i += 2;
                Tok::Arrow
            } else if c.is_ascii_alphanumeric() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                Tok::Id(chars[start..i].iter().collect())
            } else {
                return Err(QuiverError::Syntax {
                    line: line_no,
                    column,
                    msg: format!("unexpected character `{c}`"),
                });
            };
            toks.push(Spanned {
                tok,
                line: line_no,
                column,
            });
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|s| &s.tok)
    }

    fn error(&self, msg: impl Into<String>) -> QuiverError {
        let (line, column) = self
            .toks
            .get(self.pos)
            .map_or(self.end, |s| (s.line, s.column));
        QuiverError::Syntax {
            line,
            column,
            msg: msg.into(),
        }
    }

    fn found(&self) -> String {
        self.peek_at(0)
            .map_or_else(|| "end of input".to_string(), |t| t.to_string())
    }

    fn expect(&mut self, want: Tok) -> Result<(), QuiverError> {
        if self.peek_at(0) == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {want}, found {}", self.found())))
        }
    }

    fn id(&mut self, what: &str) -> Result<String, QuiverError> {
        match self.peek_at(0) {
            Some(Tok::Id(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error(format!("expected {what}, found {}", self.found()))),
        }
    }

    /// Section header `name:` at the cursor that is not the start of an arrow
    /// `label: src -> dst` (arrow labels may shadow section names).
    fn at_section_header(&self) -> bool {
        matches!(self.peek_at(0), Some(Tok::Id(s)) if matches!(s.as_str(), "vertices" | "arrows" | "relations"))
            && self.peek_at(1) == Some(&Tok::Colon)
            && !(matches!(self.peek_at(2), Some(Tok::Id(_))) && self.peek_at(3) == Some(&Tok::Arrow))
    }
}

struct Raw {
    vertices: Vec<String>,
    arrows: Vec<(String, String, String)>,
    relations: Vec<Vec<String>>,
}

fn parse_raw(text: &str) -> Result<Raw, QuiverError> {
    let toks = lex(text)?;
    let lines = text.lines().count().max(1);
    let end = (lines, text.lines().last().map_or(0, |l| l.chars().count()) + 1);
    let mut p = Parser { toks, pos: 0, end };
    match p.peek_at(0) {
        Some(Tok::Id(s)) if s == "quiver" => p.pos += 1,
        _ => return Err(p.error(format!("expected `quiver`, found {}", p.found()))),
    }
    p.expect(Tok::LBrace)?;
    let mut raw = Raw {
        vertices: Vec::new(),
        arrows: Vec::new(),
        relations: Vec::new(),
    };
    let mut sections = 0;
    loop {
        if p.peek_at(0) == Some(&Tok::RBrace) && sections > 0 {
            p.pos += 1;
            break;
        }
        let name = match p.peek_at(0) {
            Some(Tok::Id(s)) if matches!(s.as_str(), "vertices" | "arrows" | "relations") => s.clone(),
            _ => {
                let want = if sections == 0 {
                    "a section (`vertices:`, `arrows:` or `relations:`)"
                } else {
                    "a section or `}`"
                };
                return Err(p.error(format!("expected {want}, found {}", p.found())));
            }
        };
        p.pos += 1;
        p.expect(Tok::Colon)?;
        match name.as_str() {
            "vertices" => {
                raw.vertices.push(p.id("a vertex id")?);
                while let Some(Tok::Id(_)) = p.peek_at(0) {
                    raw.vertices.push(p.id("a vertex id")?);
                }
                p.expect(Tok::Semi)?;
            }
            "arrows" => loop {
                let label = p.id("an arrow label")?;
                p.expect(Tok::Colon)?;
                let s = p.id("a source vertex")?;
                p.expect(Tok::Arrow)?;
                let t = p.id("a target vertex")?;
                p.expect(Tok::Semi)?;
                raw.arrows.push((label, s, t));
                if p.peek_at(0) == Some(&Tok::RBrace) || p.at_section_header() {
                    break;
                }
            },
            _ => {
                loop {
                    let mut labels = vec![p.id("an arrow label")?];
                    while p.peek_at(0) == Some(&Tok::Star) {
                        p.pos += 1;
                        labels.push(p.id("an arrow label")?);
                    }
                    // composition order -> traversal order
                    labels.reverse();
                    raw.relations.push(labels);
                    if p.peek_at(0) == Some(&Tok::Comma) {
                        p.pos += 1;
                    } else {
                        break;
                    }
                }
                p.expect(Tok::Semi)?;
            }
        }
        sections += 1;
    }
    if p.pos < p.toks.len() {
        return Err(p.error(format!("unexpected {} after closing `}}`", p.found())));
    }
    Ok(raw)
}

/// Parses and validates the text format, returning the normalized bound quiver.
pub fn parse_quiver(text: &str) -> Result<BoundQuiver, QuiverError> {
    let raw = parse_raw(text)?;
    let quiver = Quiver::new(raw.vertices, raw.arrows)?;
    BoundQuiver::new(quiver, raw.relations)
}

/// Accepts either the text format or the JSON form.
pub fn parse_any(text: &str) -> Result<BoundQuiver, QuiverError> {
    if text.trim_start().starts_with('{') {
        BoundQuiver::from_json_str(text)
    } else {
        parse_quiver(text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn serialize_quiver(bq: &BoundQuiver, format: Format) -> String {
    match format {
        Format::Text => bq.to_text(),
        Format::Json => bq.to_json_string(),
    }
}
