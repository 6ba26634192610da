//! Minimal deterministic automata for divisibility languages.
//!
//! For a base `b ≥ 2` and modulus `k ≥ 1` the language in question is the set
//! of base-`b` digit strings whose value is a multiple of `k`. This crate
//! provides:
//!
//! - [`automaton`]: the [`Dfa`] type, the canonical `k`-state residue automaton
//!   and small utilities (membership, reachability, isomorphism).
//! - [`minimize`]: Hopcroft partition refinement plus an independent Moore
//!   style Nerode partition used as an oracle.
//! - [`formula`]: the closed-form minimal state count `f_b(k)`, in three
//!   equivalent forms, with its tabular breakdown and corollaries.
//! - [`packages`]: direct construction of the minimal automaton from residue
//!   classes grouped into packages, without running a generic minimizer.
//!
//! Digits are integers `0..b`; the empty string has value zero and is accepted,
//! and leading zeros are allowed.

pub mod automaton;
mod error;
pub mod formula;
pub mod minimize;
pub mod packages;

pub use automaton::{
    accepts, build_canonical, isomorphic, reachable, value_mod, Dfa, DigitString, DivSpec,
    Limits, StateId, DEFAULT_MAX_ALPHABET, DEFAULT_MAX_STATES,
};
pub use error::{Error, Result};
pub use formula::{
    breakdown, canonical_is_minimal, f6_power2_closed_form, f_count, gcd_pow_sequence, lam,
    lam_inf, prime_power_f, upper_bounds, BreakdownRow, Expr, FormulaBreakdown, GcdPowers,
    UpperBounds,
};
pub use minimize::{hopcroft_minimize, nerode_partition, quotient, StatePartition};
pub use packages::{
    build_packages, minimal_dfa_from_packages, verify_against_nerode, NerodeReport,
    PackagePartition, ResidueClass,
};
