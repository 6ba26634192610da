use std::fmt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid base {0}: must be at least 2")]
    InvalidBase(u64),

    #[error("invalid modulus {0}: must be at least 1")]
    InvalidModulus(u64),

    #[error("digit {digit} at position {position} is out of range for base {base}")]
    InvalidDigit { digit: u64, position: usize, base: u64 },

    #[error("{what} ({requested}) exceeds the configured limit of {limit}")]
    Capacity {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("malformed automaton: {0}")]
    InvalidDfa(String),

    #[error("malformed partition: {0}")]
    InvalidPartition(String),

    #[error("{} unreachable from the start state: {}", plural(.states.len()), StateList(.states))]
    Unreachable { states: Vec<usize> },

    /// A block of a partition is not closed under the transition function.
    /// `symbol` is `None` when the two states disagree on acceptance.
    #[error("{}", describe_violation(*.block, *.symbol, *.states, *.successors))]
    CongruenceViolation {
        block: usize,
        symbol: Option<usize>,
        states: (usize, usize),
        successors: Option<(usize, usize)>,
    },

    #[error("domain error: {0}")]
    Domain(String),

    /// Residues sharing a package class led to different classes on the same
    /// digit. This would contradict the package construction and is never
    /// repaired silently.
    #[error(
        "package class {class} is inconsistent on digit {digit}: residues {} and {} move to classes {} and {}",
        .residues.0, .residues.1, .targets.0, .targets.1
    )]
    InconsistentPackages {
        class: usize,
        digit: usize,
        residues: (u64, u64),
        targets: (usize, usize),
    },
}

impl Error {
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}

fn plural(n: usize) -> &'static str {
    if n == 1 {
        "state is"
    } else {
        "states are"
    }
}

struct StateList<'a>(&'a [usize]);

impl fmt::Display for StateList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SHOWN: usize = 16;
        for (i, s) in self.0.iter().take(SHOWN).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        if self.0.len() > SHOWN {
            write!(f, ", ... ({} more)", self.0.len() - SHOWN)?;
        }
        Ok(())
    }
}

fn describe_violation(
    block: usize,
    symbol: Option<usize>,
    states: (usize, usize),
    successors: Option<(usize, usize)>,
) -> String {
    match (symbol, successors) {
        (Some(sym), Some((p, q))) => format!(
            "partition is not a congruence: block {block} holds states {} and {} whose successors on symbol {sym} lie in blocks {p} and {q}",
            states.0, states.1
        ),
        _ => format!(
            "partition is not a congruence: block {block} holds states {} and {} which disagree on acceptance",
            states.0, states.1
        ),
    }
}
