//! Bulk verification over a grid of `(b, k)` pairs.
//!
//! Each pair is checked independently: the three closed-form expressions,
//! Hopcroft and Nerode block counts, the package-built automaton and its
//! partition, the upper bounds and the canonical-minimality criterion.
//! Pairs are fanned out over a worker pool and merged back in `(b, k)`
//! order, so the report does not depend on the worker count.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use divdfa_core::{
    breakdown, build_canonical, canonical_is_minimal, hopcroft_minimize, isomorphic,
    minimal_dfa_from_packages, upper_bounds, verify_against_nerode, DivSpec, Expr, Limits,
};
use rayon::prelude::*;

use crate::error::CliError;
use crate::tables::render_breakdown;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub base_range: RangeInclusive<u64>,
    pub modulus_range: RangeInclusive<u64>,
    pub jobs: usize,
    pub fail_fast: bool,
}

impl SweepConfig {
    pub fn new(
        base_range: RangeInclusive<u64>,
        modulus_range: RangeInclusive<u64>,
        jobs: usize,
        fail_fast: bool,
    ) -> Result<Self, CliError> {
        if base_range.is_empty() || modulus_range.is_empty() {
            return Err(CliError::Usage("empty base or modulus range".into()));
        }
        if *base_range.start() < 2 {
            return Err(CliError::Usage("bases start at 2".into()));
        }
        if *modulus_range.start() < 1 {
            return Err(CliError::Usage("moduli start at 1".into()));
        }
        if jobs < 1 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        Ok(SweepConfig {
            base_range,
            modulus_range,
            jobs,
            fail_fast,
        })
    }

    pub fn specs(&self) -> impl Iterator<Item = DivSpec> + '_ {
        self.base_range.clone().flat_map(move |b| {
            self.modulus_range
                .clone()
                .map(move |k| DivSpec::new(b, k).expect("validated ranges"))
        })
    }
}

/// Parses `N`, `LO..HI` or `LO..=HI` (both inclusive).
pub fn parse_range(text: &str) -> Result<RangeInclusive<u64>, CliError> {
    let number = |s: &str| {
        s.trim()
            .parse::<u64>()
            .map_err(|_| CliError::Usage(format!("invalid range {text:?}")))
    };
    match text.split_once("..") {
        Some((lo, hi)) => Ok(number(lo)?..=number(hi.strip_prefix('=').unwrap_or(hi))?),
        None => {
            let n = number(text)?;
            Ok(n..=n)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairOutcome {
    pub spec: DivSpec,
    pub f: u64,
    pub canonical_minimal: bool,
    pub failures: Vec<String>,
}

impl PairOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_pair(spec: DivSpec, limits: &Limits) -> PairOutcome {
    let table = breakdown(spec);
    let f = table.f;
    let mut failures = Vec::new();
    let mut fail = |msg: String| failures.push(msg);

    let by_expr: Vec<u64> = Expr::ALL.iter().map(|&e| table.evaluate(e)).collect();
    if by_expr.iter().any(|&v| v != f) {
        fail(format!("expressions disagree: {by_expr:?}"));
    }

    let k = spec.modulus();
    if f < 1 || f > k {
        fail(format!("f={f} outside 1..={k}"));
    }
    let bounds = upper_bounds(spec);
    if bounds.as_array().iter().any(|&u| (f as u128) > u) {
        fail(format!("f={f} exceeds an upper bound {:?}", bounds.as_array()));
    }
    let minimal = canonical_is_minimal(spec);
    if minimal != (f == k) {
        fail(format!("canonical-minimality predicts {minimal} but f={f}, k={k}"));
    }

    let mut run = || -> Result<(), divdfa_core::Error> {
        let canonical = build_canonical(spec, limits)?;
        let (hopcroft, hopcroft_blocks) = hopcroft_minimize(&canonical)?;
        let report = verify_against_nerode(spec, limits)?;
        let (packaged, _) = minimal_dfa_from_packages(spec, limits)?;
        let counts = [
            hopcroft.num_states() as u64,
            report.nerode.len() as u64,
            packaged.num_states() as u64,
        ];
        if counts.iter().any(|&c| c != f) {
            fail(format!("state counts (hopcroft, nerode, packages) = {counts:?}, formula f={f}"));
        }
        if !hopcroft_blocks.same_family(&report.nerode) {
            fail("hopcroft and nerode partitions differ".into());
        }
        if !isomorphic(&hopcroft, &packaged) {
            fail("package automaton is not isomorphic to the hopcroft result".into());
        }
        for msg in report.failures() {
            fail(msg);
        }
        Ok(())
    };
    if let Err(e) = run() {
        failures.push(e.to_string());
    }

    PairOutcome {
        spec,
        f,
        canonical_minimal: minimal,
        failures,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub outcomes: Vec<PairOutcome>,
}

impl SweepReport {
    pub fn failure_count(&self) -> usize {
        self.outcomes.iter().filter(|o| !o.passed()).count()
    }

    pub fn passed(&self) -> bool {
        self.failure_count() == 0
    }

    /// The worker count is deliberately left out so that reports are
    /// comparable across `--jobs` settings.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let cfg = &self.config;
        let _ = writeln!(
            out,
            "bases {}..={} moduli {}..={}",
            cfg.base_range.start(),
            cfg.base_range.end(),
            cfg.modulus_range.start(),
            cfg.modulus_range.end()
        );
        let _ = writeln!(out, "pairs checked: {}", self.outcomes.len());
        let minimal = self.outcomes.iter().filter(|o| o.canonical_minimal).count();
        let _ = writeln!(out, "canonical-minimal: {minimal}");
        for o in self.outcomes.iter().filter(|o| !o.passed()) {
            let _ = writeln!(out, "FAIL b={} k={}", o.spec.base(), o.spec.modulus());
            for msg in &o.failures {
                let _ = writeln!(out, "  {msg}");
            }
            for line in render_breakdown(&breakdown(o.spec)).lines() {
                let _ = writeln!(out, "    {line}");
            }
        }
        let _ = writeln!(out, "{} failures", self.failure_count());
        out
    }
}

pub fn run_sweep(config: &SweepConfig, limits: &Limits) -> Result<SweepReport, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start workers: {e}")))?;
    let specs: Vec<DivSpec> = config.specs().collect();
    let mut outcomes = Vec::with_capacity(specs.len());

    if config.fail_fast {
        let chunk = config.jobs * 8;
        for batch in specs.chunks(chunk) {
            let results: Vec<PairOutcome> =
                pool.install(|| batch.par_iter().map(|&s| check_pair(s, limits)).collect());
            if let Some(first) = results.iter().position(|o| !o.passed()) {
                outcomes.extend(results.into_iter().take(first + 1));
                break;
            }
            outcomes.extend(results);
        }
    } else {
        outcomes = pool.install(|| specs.par_iter().map(|&s| check_pair(s, limits)).collect());
    }

    Ok(SweepReport {
        config: config.clone(),
        outcomes,
    })
}
