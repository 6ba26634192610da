//! Native line format:
//!
//! ```text
//! states 3
//! alphabet 2
//! start 0
//! accept 0
//! label 0 residue 0
//! trans 0 0 0
//! trans 0 1 1
//! ```
//!
//! `#` starts a comment. Blank lines are ignored. `accept` may list zero or
//! more states and may repeat. `label` lines are optional but, when present,
//! must cover every state.

use std::fmt::Write as _;

use super::{assemble, parse_number, DfaDocument, ParseError};

pub fn write(doc: &DfaDocument) -> String {
    let dfa = &doc.dfa;
    let mut out = String::new();
    let _ = writeln!(out, "states {}", dfa.num_states());
    let _ = writeln!(out, "alphabet {}", dfa.alphabet_size());
    let _ = writeln!(out, "start {}", dfa.start());
    out.push_str("accept");
    for s in dfa.accepting_states() {
        let _ = write!(out, " {s}");
    }
    out.push('\n');
    if let Some(labels) = doc.labels() {
        for (s, label) in labels.iter().enumerate() {
            let _ = writeln!(out, "label {s} {label}");
        }
    }
    for s in 0..dfa.num_states() {
        for (sym, &t) in dfa.row(s).iter().enumerate() {
            let _ = writeln!(out, "trans {s} {sym} {t}");
        }
    }
    out
}

pub fn parse(input: &str) -> Result<DfaDocument, ParseError> {
    let mut states = None;
    let mut alphabet = None;
    let mut start = None;
    let mut accepting = Vec::new();
    let mut edges = Vec::new();
    let mut labels: Vec<(usize, usize, String)> = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content
            .split_once(char::is_whitespace)
            .map(|(k, r)| (k, r.trim_start()))
            .unwrap_or((content, ""));
        let fields: Vec<&str> = rest.split_whitespace().collect();
        let single = |what: &str| -> Result<usize, ParseError> {
            match fields.as_slice() {
                [value] => parse_number(line, value, what),
                _ => Err(ParseError::at(line, format!("`{keyword}` takes exactly one value"))),
            }
        };
        match keyword {
            "states" => set_once(&mut states, single("state count")?, line, keyword)?,
            "alphabet" => set_once(&mut alphabet, single("alphabet size")?, line, keyword)?,
            "start" => set_once(&mut start, single("start state")?, line, keyword)?,
            "accept" => {
                for f in &fields {
                    accepting.push((line, parse_number(line, f, "state")?));
                }
            }
            "trans" => match fields.as_slice() {
                [src, sym, dst] => edges.push((
                    line,
                    parse_number(line, src, "state")?,
                    parse_number(line, sym, "symbol")?,
                    parse_number(line, dst, "state")?,
                )),
                _ => return Err(ParseError::at(line, "`trans` takes SRC SYM DST")),
            },
            "label" => {
                let (state, text) = rest
                    .split_once(char::is_whitespace)
                    .map(|(s, t)| (s, t.trim()))
                    .unwrap_or((rest, ""));
                labels.push((line, parse_number(line, state, "state")?, text.to_string()));
            }
            other => return Err(ParseError::at(line, format!("unknown keyword `{other}`"))),
        }
    }

    let missing = |what: &str| ParseError::new(None, format!("missing `{what}` line"));
    let num_states = states.ok_or_else(|| missing("states"))?;
    let alphabet_size = alphabet.ok_or_else(|| missing("alphabet"))?;
    let start = start.ok_or_else(|| missing("start"))?;
    let dfa = assemble(num_states, alphabet_size, start, &edges, &accepting)?;

    if labels.is_empty() {
        return Ok(DfaDocument::new(dfa));
    }
    let mut slots: Vec<Option<String>> = vec![None; num_states];
    for (line, state, text) in labels {
        let slot = slots
            .get_mut(state)
            .ok_or_else(|| ParseError::at(line, format!("label for state {state} is out of range")))?;
        if slot.replace(text).is_some() {
            return Err(ParseError::at(line, format!("duplicate label for state {state}")));
        }
    }
    let labels = slots
        .into_iter()
        .enumerate()
        .map(|(s, l)| l.ok_or_else(|| ParseError::new(None, format!("state {s} has no label"))))
        .collect::<Result<Vec<_>, _>>()?;
    DfaDocument::with_labels(dfa, labels)
}

fn set_once(slot: &mut Option<usize>, value: usize, line: usize, keyword: &str) -> Result<(), ParseError> {
    if slot.replace(value).is_some() {
        return Err(ParseError::at(line, format!("`{keyword}` given twice")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use divdfa_core::{build_canonical, DivSpec, Limits};

    #[test]
    fn writes_canonical_mod_three() {
        let dfa = build_canonical(DivSpec::new(2, 3).unwrap(), &Limits::default()).unwrap();
        assert_eq!(
            write(&DfaDocument::new(dfa)),
            "states 3\nalphabet 2\nstart 0\naccept 0\n\
             trans 0 0 0\ntrans 0 1 1\ntrans 1 0 2\ntrans 1 1 0\ntrans 2 0 1\ntrans 2 1 2\n"
        );
    }

    #[test]
    fn parses_with_comments_and_labels() {
        let doc = parse(
            "# two states\nstates 2\nalphabet 1\nstart 1\naccept\n\
             label 0 even\nlabel 1 odd one\ntrans 0 0 1 # edge\ntrans 1 0 0\n",
        )
        .unwrap();
        assert_eq!(doc.dfa.start(), 1);
        assert_eq!(doc.dfa.accepting_states().count(), 0);
        assert_eq!(doc.labels().unwrap(), ["even", "odd one"]);
    }

    #[test]
    fn reports_line_of_bad_target() {
        let err = parse("states 2\nalphabet 1\nstart 0\naccept 0\ntrans 0 0 1\ntrans 1 0 2\n").unwrap_err();
        assert_eq!(err.line, Some(6));
        assert!(err.to_string().contains("target state 2"));
    }

    #[test]
    fn rejects_partial_and_malformed_documents() {
        let partial = parse("states 2\nalphabet 1\nstart 0\ntrans 0 0 1\n").unwrap_err();
        assert!(partial.message.contains("not total"));
        assert_eq!(parse("states 1\nstates 1\n").unwrap_err().line, Some(2));
        assert_eq!(parse("states x\n").unwrap_err().line, Some(1));
        assert_eq!(parse("bogus 1\n").unwrap_err().line, Some(1));
        assert!(parse("alphabet 1\nstart 0\n").is_err());
        let dup = "states 1\nalphabet 1\nstart 0\ntrans 0 0 0\ntrans 0 0 0\n";
        assert_eq!(parse(dup).unwrap_err().line, Some(5));
        let partial_labels = "states 2\nalphabet 1\nstart 0\nlabel 0 a\ntrans 0 0 1\ntrans 1 0 0\n";
        assert!(parse(partial_labels).is_err());
    }
}
