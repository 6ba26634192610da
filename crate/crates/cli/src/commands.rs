//! Subcommand implementations. Each returns the text to print on stdout.

use divdfa_core::formula::breakdown_through;
use divdfa_core::{
    build_canonical, build_packages, f_count, hopcroft_minimize, minimal_dfa_from_packages,
    value_mod, breakdown, DivSpec, Expr, Limits,
};

use crate::digits::parse_digits;
use crate::error::CliError;
use crate::format::{DfaDocument, Format};
use crate::sweep::{run_sweep, SweepConfig, SweepReport};
use crate::tables::{render_breakdown, render_pattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExprChoice {
    One(Expr),
    All,
}

impl std::str::FromStr for ExprChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(ExprChoice::All);
        }
        s.parse::<Expr>().map(ExprChoice::One).map_err(|e| e.to_string())
    }
}

pub fn cmd_count(spec: DivSpec, expr: ExprChoice) -> Result<String, CliError> {
    match expr {
        ExprChoice::One(e) => Ok(format!("{}\n", f_count(spec, e))),
        ExprChoice::All => {
            let table = breakdown(spec);
            let values: Vec<u64> = Expr::ALL.iter().map(|&e| table.evaluate(e)).collect();
            if values.iter().any(|&v| v != values[0]) {
                return Err(CliError::Verification(format!(
                    "expressions disagree for b={} k={}: {values:?}",
                    spec.base(),
                    spec.modulus()
                )));
            }
            let text: Vec<String> = values.iter().map(u64::to_string).collect();
            Ok(format!("{}\n", text.join(" ")))
        }
    }
}

/// `alpha_max` extends the table past the point where `gcd(k, b^α)`
/// stabilizes; it never truncates it.
pub fn cmd_breakdown(spec: DivSpec, alpha_max: Option<usize>) -> String {
    render_breakdown(&breakdown_through(spec, alpha_max.unwrap_or(0)))
}

pub fn cmd_build(spec: DivSpec, minimal: bool, format: Format, limits: &Limits) -> Result<String, CliError> {
    let doc = if minimal {
        let (dfa, packages) = minimal_dfa_from_packages(spec, limits)?;
        DfaDocument::with_labels(dfa, packages.state_labels())?
    } else {
        DfaDocument::new(build_canonical(spec, limits)?)
    };
    Ok(format.write(&doc))
}

pub fn cmd_minimize(input: &str, format: Format, limits: &Limits) -> Result<String, CliError> {
    if format == Format::Dot {
        return Err(CliError::Usage("minimize reads and writes text or att documents".into()));
    }
    let doc = format.parse(input)?;
    if doc.dfa.num_states() > limits.max_states {
        return Err(divdfa_core::Error::Capacity {
            what: "input state count",
            requested: doc.dfa.num_states() as u128,
            limit: limits.max_states as u128,
        }
        .into());
    }
    let pruned = doc.dfa.bfs_canonical();
    let (minimal, _) = hopcroft_minimize(&pruned)?;
    Ok(format.write(&DfaDocument::new(minimal)))
}

pub fn cmd_verify(config: &SweepConfig, limits: &Limits) -> Result<SweepReport, CliError> {
    run_sweep(config, limits)
}

/// `f_b(x·y^z)` for `z = 0..=z_max`. The difference row needs one extra
/// term, so `x·y^(z_max+1)` must fit as well.
pub fn cmd_pattern(base: u64, x: u64, y: u64, z_max: u32) -> Result<String, CliError> {
    if x < 1 || y < 1 {
        return Err(CliError::Usage("x and y must be at least 1".into()));
    }
    let mut moduli = Vec::with_capacity(z_max as usize + 2);
    let mut k = x;
    for z in 0..=z_max + 1 {
        if z > 0 {
            k = k.checked_mul(y).ok_or_else(|| {
                CliError::Capacity(format!("{x}·{y}^{z} overflows 64-bit arithmetic"))
            })?;
        }
        moduli.push(k);
    }
    let counts = moduli
        .iter()
        .map(|&k| Ok(f_count(DivSpec::new(base, k)?, Expr::Cutoff)))
        .collect::<Result<Vec<u64>, CliError>>()?;
    Ok(render_pattern(&moduli[..moduli.len() - 1], &counts))
}

pub fn cmd_member(spec: DivSpec, digits: &str) -> Result<String, CliError> {
    let digits = parse_digits(digits, spec.base())?;
    let verdict = if value_mod(&digits, spec)? == 0 { "accept" } else { "reject" };
    Ok(format!("{verdict}\n"))
}

/// The package table for path length `a`, defaulting to the cutoff `A₀`.
pub fn cmd_packages(spec: DivSpec, a: Option<usize>, limits: &Limits) -> Result<String, CliError> {
    let a = a.unwrap_or_else(|| breakdown(spec).a_zero);
    Ok(build_packages(spec, a, limits)?.render())
}
