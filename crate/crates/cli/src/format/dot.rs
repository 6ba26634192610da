use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::DfaDocument;

/// Graphviz rendering. Accepting states are double circles and the start
/// state gets an arrow from an invisible point. Parallel edges are merged
/// into one edge with a comma-separated label.
pub fn write(doc: &DfaDocument) -> String {
    let dfa = &doc.dfa;
    let mut out = String::from("digraph dfa {\n    rankdir=LR;\n    node [shape=point]; __start;\n");
    let accepting: Vec<String> = dfa.accepting_states().map(|s| s.to_string()).collect();
    if !accepting.is_empty() {
        let _ = writeln!(out, "    node [shape=doublecircle]; {};", accepting.join(" "));
    }
    out.push_str("    node [shape=circle];\n");
    if let Some(labels) = doc.labels() {
        for (s, label) in labels.iter().enumerate() {
            let _ = writeln!(out, "    {s} [label=\"{s}\\n{}\"];", escape(label));
        }
    }
    let _ = writeln!(out, "    __start -> {};", dfa.start());
    for s in 0..dfa.num_states() {
        let mut merged: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (sym, &t) in dfa.row(s).iter().enumerate() {
            merged.entry(t).or_default().push(sym.to_string());
        }
        for (t, symbols) in merged {
            let _ = writeln!(out, "    {s} -> {t} [label=\"{}\"];", symbols.join(","));
        }
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
