//! DFA document formats.
//!
//! - `text`: the native line format, round-trips labels.
//! - `att`: AT&T FSM style acceptor text, round-trips the automaton only.
//! - `dot`: Graphviz output, write-only.

use std::fmt;
use std::str::FromStr;

use divdfa_core::Dfa;

pub mod att;
pub mod dot;
pub mod text;

/// An automaton with optional per-state labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DfaDocument {
    pub dfa: Dfa,
    labels: Option<Vec<String>>,
}

impl DfaDocument {
    pub fn new(dfa: Dfa) -> Self {
        DfaDocument { dfa, labels: None }
    }

    /// Attaches labels; there must be exactly one per state.
    pub fn with_labels(dfa: Dfa, labels: Vec<String>) -> Result<Self, ParseError> {
        if labels.len() != dfa.num_states() {
            return Err(ParseError::new(
                None,
                format!("{} labels for {} states", labels.len(), dfa.num_states()),
            ));
        }
        Ok(DfaDocument {
            dfa,
            labels: Some(labels),
        })
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, state: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[state].as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Att,
    Dot,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "att" => Ok(Format::Att),
            "dot" => Ok(Format::Dot),
            other => Err(format!("unknown format {other:?}, expected text, att or dot")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Att => "att",
            Format::Dot => "dot",
        })
    }
}

impl Format {
    pub fn write(self, doc: &DfaDocument) -> String {
        match self {
            Format::Text => text::write(doc),
            Format::Att => att::write(&doc.dfa),
            Format::Dot => dot::write(doc),
        }
    }

    pub fn parse(self, input: &str) -> Result<DfaDocument, ParseError> {
        match self {
            Format::Text => text::parse(input),
            Format::Att => att::parse(input).map(DfaDocument::new),
            Format::Dot => Err(ParseError::new(None, "dot documents cannot be read back".into())),
        }
    }
}

/// A malformed document. `line` is 1-based when the problem has a location.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    pub fn new(line: Option<usize>, message: String) -> Self {
        ParseError { line, message }
    }

    pub(crate) fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line: Some(line),
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

/// Fills a dense table from `(line, src, symbol, dst)` edges and checks it
/// is total and free of duplicates and out-of-range references.
pub(crate) fn assemble(
    num_states: usize,
    alphabet_size: usize,
    start: usize,
    edges: &[(usize, usize, usize, usize)],
    accepting: &[(usize, usize)],
) -> Result<Dfa, ParseError> {
    if num_states == 0 {
        return Err(ParseError::new(None, "an automaton needs at least one state".into()));
    }
    if alphabet_size == 0 {
        return Err(ParseError::new(None, "the alphabet must be nonempty".into()));
    }
    let mut table = vec![usize::MAX; num_states * alphabet_size];
    for &(line, src, sym, dst) in edges {
        if src >= num_states {
            return Err(ParseError::at(line, format!("source state {src} is out of range (states: {num_states})")));
        }
        if dst >= num_states {
            return Err(ParseError::at(line, format!("target state {dst} is out of range (states: {num_states})")));
        }
        if sym >= alphabet_size {
            return Err(ParseError::at(line, format!("symbol {sym} is out of range (alphabet: {alphabet_size})")));
        }
        let slot = &mut table[src * alphabet_size + sym];
        if *slot != usize::MAX {
            return Err(ParseError::at(line, format!("duplicate transition from state {src} on symbol {sym}")));
        }
        *slot = dst;
    }
    if let Some(i) = table.iter().position(|&t| t == usize::MAX) {
        return Err(ParseError::new(
            None,
            format!(
                "transition function is not total: state {} has no transition on symbol {}",
                i / alphabet_size,
                i % alphabet_size
            ),
        ));
    }
    for &(line, s) in accepting {
        if s >= num_states {
            return Err(ParseError::at(line, format!("accepting state {s} is out of range (states: {num_states})")));
        }
    }
    if start >= num_states {
        return Err(ParseError::new(None, format!("start state {start} is out of range (states: {num_states})")));
    }
    Dfa::new(
        num_states,
        alphabet_size,
        start,
        table,
        accepting.iter().map(|&(_, s)| s),
    )
    .map_err(|e| ParseError::new(None, e.to_string()))
}

pub(crate) fn parse_number(line: usize, field: &str, what: &str) -> Result<usize, ParseError> {
    field
        .parse()
        .map_err(|_| ParseError::at(line, format!("invalid {what} {field:?}")))
}
