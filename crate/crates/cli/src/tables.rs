//! Plain-text tables: right-aligned columns separated by two spaces.

use std::fmt::Write as _;

use divdfa_core::{upper_bounds, FormulaBreakdown};

fn render_grid(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{cell:>width$}", width = widths[c]))
            .collect();
        let _ = writeln!(out, "{}", cells.join("  "));
    }
    out
}

fn cell(value: u64) -> String {
    if value == u64::MAX {
        "sat".to_string()
    } else {
        value.to_string()
    }
}

/// One row per `α`, then the cutoff, `λ(k, b^∞)`, `f` and the three upper
/// bounds.
pub fn render_breakdown(table: &FormulaBreakdown) -> String {
    let mut rows = vec![vec![
        "alpha".to_string(),
        "lam(b^a,k)".to_string(),
        "lam(k,b^a)".to_string(),
        "diff".to_string(),
        "chosen".to_string(),
    ]];
    for row in &table.rows {
        rows.push(vec![
            row.alpha.to_string(),
            cell(row.lam_bk),
            cell(row.lam_kb),
            cell(row.diff),
            cell(row.chosen),
        ]);
    }
    let mut out = render_grid(&rows);
    let _ = writeln!(out, "A0={} laminf={} f={}", table.a_zero, table.lam_k_binf, table.f);
    let bounds = upper_bounds(table.spec);
    let _ = writeln!(
        out,
        "bounds {} {} {}",
        bounds.trivial, bounds.one_step, bounds.two_step
    );
    out
}

/// Columns per `z`: the modulus `x·y^z`, `f_b(x·y^z)` and the forward
/// difference `f_b(x·y^(z+1)) − f_b(x·y^z)`.
pub fn render_pattern(moduli: &[u64], counts: &[u64]) -> String {
    debug_assert_eq!(counts.len(), moduli.len() + 1);
    let shown = moduli.len();
    let mut rows = vec![
        vec!["z".to_string()],
        vec!["k".to_string()],
        vec!["f".to_string()],
        vec!["diff".to_string()],
    ];
    for z in 0..shown {
        rows[0].push(z.to_string());
        rows[1].push(moduli[z].to_string());
        rows[2].push(counts[z].to_string());
        rows[3].push((counts[z + 1] as i128 - counts[z] as i128).to_string());
    }
    render_grid(&rows)
}
