//! AT&T FSM style acceptor text: one `src<TAB>dst<TAB>symbol` line per arc
//! and one bare `state` line per final state. The start state is the source
//! of the first arc. An optional trailing weight field is accepted on input
//! and ignored.

use std::fmt::Write as _;

use divdfa_core::Dfa;

use super::{assemble, parse_number, ParseError};

pub fn write(dfa: &Dfa) -> String {
    let mut out = String::new();
    let order = std::iter::once(dfa.start()).chain((0..dfa.num_states()).filter(|&s| s != dfa.start()));
    for s in order {
        for (sym, &t) in dfa.row(s).iter().enumerate() {
            let _ = writeln!(out, "{s}\t{t}\t{sym}");
        }
    }
    for s in dfa.accepting_states() {
        let _ = writeln!(out, "{s}");
    }
    out
}

pub fn parse(input: &str) -> Result<Dfa, ParseError> {
    let mut edges = Vec::new();
    let mut finals = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.as_slice() {
            [] => continue,
            [state] | [state, _] => finals.push((line, parse_number(line, state, "state")?)),
            [src, dst, sym] | [src, dst, sym, _] => edges.push((
                line,
                parse_number(line, src, "state")?,
                parse_number(line, sym, "symbol")?,
                parse_number(line, dst, "state")?,
            )),
            _ => return Err(ParseError::at(line, "expected `src dst symbol` or `state`")),
        }
    }
    let Some(&(_, start, _, _)) = edges.first() else {
        return Err(ParseError::new(None, "no arcs: cannot determine the start state".into()));
    };
    // Every state of a complete automaton has outgoing arcs, so the sources
    // determine the state count.
    let num_states = edges.iter().map(|e| e.1 + 1).max().unwrap_or(0);
    let alphabet_size = edges.iter().map(|e| e.2 + 1).max().unwrap_or(0);
    assemble(num_states, alphabet_size, start, &edges, &finals)
}
