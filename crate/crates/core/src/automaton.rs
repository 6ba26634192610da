//! Complete deterministic automata over the digit alphabet `0..b`.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type StateId = usize;

/// Default cap on the number of states of any materialized automaton.
pub const DEFAULT_MAX_STATES: usize = 5_000_000;

/// Default cap on the alphabet size of any materialized automaton.
pub const DEFAULT_MAX_ALPHABET: usize = 1 << 16;

/// A divisibility problem: base-`b` strings whose value is a multiple of `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivSpec {
    base: u64,
    modulus: u64,
}

impl DivSpec {
    pub fn new(base: u64, modulus: u64) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        if modulus < 1 {
            return Err(Error::InvalidModulus(modulus));
        }
        Ok(DivSpec { base, modulus })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// Bounds on explicitly materialized automata. The closed-form count in
/// [`crate::formula`] is not subject to these.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_states: usize,
    pub max_alphabet: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: DEFAULT_MAX_STATES,
            max_alphabet: DEFAULT_MAX_ALPHABET,
        }
    }
}

impl Limits {
    pub fn with_max_states(max_states: usize) -> Self {
        Limits {
            max_states,
            ..Limits::default()
        }
    }

    pub(crate) fn states(&self, what: &'static str, requested: u128) -> Result<usize> {
        if requested > self.max_states as u128 {
            return Err(Error::Capacity {
                what,
                requested,
                limit: self.max_states as u128,
            });
        }
        Ok(requested as usize)
    }

    pub(crate) fn alphabet(&self, base: u64) -> Result<usize> {
        if base as u128 > self.max_alphabet as u128 {
            return Err(Error::Capacity {
                what: "alphabet size",
                requested: base as u128,
                limit: self.max_alphabet as u128,
            });
        }
        Ok(base as usize)
    }

    /// Checks that a `k`-state automaton over base `b` may be materialized.
    pub fn check(&self, spec: DivSpec) -> Result<(usize, usize)> {
        let states = self.states("modulus", spec.modulus as u128)?;
        let symbols = self.alphabet(spec.base)?;
        if states.checked_mul(symbols).is_none() {
            return Err(Error::Capacity {
                what: "transition table size",
                requested: states as u128 * symbols as u128,
                limit: usize::MAX as u128,
            });
        }
        Ok((states, symbols))
    }
}

/// A finite string of digits, most significant first. May be empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DigitString(Vec<u64>);

impl DigitString {
    /// Builds a digit string, rejecting any digit `>= base`.
    pub fn new(digits: Vec<u64>, base: u64) -> Result<Self> {
        check_digits(&digits, base)?;
        Ok(DigitString(digits))
    }

    pub fn empty() -> Self {
        DigitString(Vec::new())
    }

    pub fn digits(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn check_digits(digits: &[u64], base: u64) -> Result<()> {
    match digits.iter().position(|&d| d >= base) {
        Some(position) => Err(Error::InvalidDigit {
            digit: digits[position],
            position,
            base,
        }),
        None => Ok(()),
    }
}

/// A complete DFA with a dense row-major transition table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    num_states: usize,
    alphabet_size: usize,
    start: StateId,
    transitions: Vec<StateId>,
    accepting: Vec<bool>,
}

impl Dfa {
    /// Validates and builds a DFA. `transitions[state * alphabet_size + symbol]`
    /// is the successor of `state` on `symbol`.
    pub fn new(
        num_states: usize,
        alphabet_size: usize,
        start: StateId,
        transitions: Vec<StateId>,
        accepting: impl IntoIterator<Item = StateId>,
    ) -> Result<Self> {
        if num_states == 0 {
            return Err(Error::InvalidDfa("an automaton needs at least one state".into()));
        }
        if alphabet_size == 0 {
            return Err(Error::InvalidDfa("the alphabet must be nonempty".into()));
        }
        if start >= num_states {
            return Err(Error::InvalidDfa(format!(
                "start state {start} is out of range for {num_states} states"
            )));
        }
        let expected = num_states.checked_mul(alphabet_size).ok_or_else(|| {
            Error::InvalidDfa("transition table size overflows".into())
        })?;
        if transitions.len() != expected {
            return Err(Error::InvalidDfa(format!(
                "transition table has {} entries, expected {expected}",
                transitions.len()
            )));
        }
        if let Some(i) = transitions.iter().position(|&t| t >= num_states) {
            return Err(Error::InvalidDfa(format!(
                "transition from state {} on symbol {} targets state {}, out of range",
                i / alphabet_size,
                i % alphabet_size,
                transitions[i]
            )));
        }
        let mut flags = vec![false; num_states];
        for s in accepting {
            if s >= num_states {
                return Err(Error::InvalidDfa(format!(
                    "accepting state {s} is out of range for {num_states} states"
                )));
            }
            flags[s] = true;
        }
        Ok(Dfa {
            num_states,
            alphabet_size,
            start,
            transitions,
            accepting: flags,
        })
    }

    pub(crate) fn from_parts(
        num_states: usize,
        alphabet_size: usize,
        start: StateId,
        transitions: Vec<StateId>,
        accepting: Vec<bool>,
    ) -> Self {
        debug_assert_eq!(transitions.len(), num_states * alphabet_size);
        debug_assert_eq!(accepting.len(), num_states);
        debug_assert!(start < num_states);
        Dfa {
            num_states,
            alphabet_size,
            start,
            transitions,
            accepting,
        }
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    #[inline]
    pub fn next(&self, state: StateId, symbol: usize) -> StateId {
        self.transitions[state * self.alphabet_size + symbol]
    }

    /// Successors of `state`, indexed by symbol.
    pub fn row(&self, state: StateId) -> &[StateId] {
        &self.transitions[state * self.alphabet_size..(state + 1) * self.alphabet_size]
    }

    pub fn transitions(&self) -> &[StateId] {
        &self.transitions
    }

    #[inline]
    pub fn is_accepting(&self, state: StateId) -> bool {
        self.accepting[state]
    }

    /// Accepting states in increasing order.
    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.accepting
            .iter()
            .enumerate()
            .filter_map(|(s, &a)| a.then_some(s))
    }

    /// Runs the automaton from the start state and returns the final state.
    pub fn run(&self, digits: &DigitString) -> Result<StateId> {
        check_digits(digits.digits(), self.alphabet_size as u64)?;
        Ok(digits
            .digits()
            .iter()
            .fold(self.start, |s, &d| self.next(s, d as usize)))
    }

    /// Renames states: state `s` becomes `mapping[s]`. `mapping` must be a
    /// permutation of `0..num_states`.
    pub fn permuted(&self, mapping: &[StateId]) -> Result<Dfa> {
        let n = self.num_states;
        let mut seen = vec![false; n];
        if mapping.len() != n || mapping.iter().any(|&m| m >= n || std::mem::replace(&mut seen[m], true)) {
            return Err(Error::InvalidDfa("state mapping is not a permutation".into()));
        }
        let b = self.alphabet_size;
        let mut transitions = vec![0; n * b];
        let mut accepting = vec![false; n];
        for s in 0..n {
            let t = mapping[s];
            for (sym, &succ) in self.row(s).iter().enumerate() {
                transitions[t * b + sym] = mapping[succ];
            }
            accepting[t] = self.accepting[s];
        }
        Ok(Dfa::from_parts(n, b, mapping[self.start], transitions, accepting))
    }

    /// Renumbers the reachable part in breadth-first order from the start
    /// state, exploring symbols in increasing order. Unreachable states are
    /// dropped.
    pub fn bfs_canonical(&self) -> Dfa {
        let order = bfs_numbering(self);
        let reached = order.iter().filter(|o| o.is_some()).count();
        let b = self.alphabet_size;
        let mut transitions = vec![0; reached * b];
        let mut accepting = vec![false; reached];
        for (s, o) in order.iter().enumerate() {
            if let Some(t) = *o {
                for (sym, &succ) in self.row(s).iter().enumerate() {
                    transitions[t * b + sym] = order[succ].expect("successor of a reachable state");
                }
                accepting[t] = self.accepting[s];
            }
        }
        Dfa::from_parts(reached, b, 0, transitions, accepting)
    }
}

/// BFS number of every state, `None` for unreachable ones.
pub(crate) fn bfs_numbering(dfa: &Dfa) -> Vec<Option<StateId>> {
    let mut order = vec![None; dfa.num_states];
    let mut queue = VecDeque::new();
    order[dfa.start] = Some(0);
    queue.push_back(dfa.start);
    let mut next_id = 1;
    while let Some(s) = queue.pop_front() {
        for &t in dfa.row(s) {
            if order[t].is_none() {
                order[t] = Some(next_id);
                next_id += 1;
                queue.push_back(t);
            }
        }
    }
    order
}

/// The canonical residue automaton: state `r` stands for "value ≡ r (mod k)",
/// digit `d` moves `r` to `(b·r + d) mod k`, start and sole accepting state
/// are `0`.
pub fn build_canonical(spec: DivSpec, limits: &Limits) -> Result<Dfa> {
    let (n, b) = limits.check(spec)?;
    let k = spec.modulus;
    let base_mod = spec.base % k;
    let mut transitions = Vec::with_capacity(n * b);
    for r in 0..k {
        let mut t = ((base_mod as u128 * r as u128) % k as u128) as u64;
        for _ in 0..b {
            transitions.push(t as StateId);
            t += 1;
            if t == k {
                t = 0;
            }
        }
    }
    let mut accepting = vec![false; n];
    accepting[0] = true;
    Ok(Dfa::from_parts(n, b, 0, transitions, accepting))
}

/// Value of `digits` in base `b`, reduced mod `k`, by the left fold
/// `r ← (b·r + d) mod k` from `r = 0`.
pub fn value_mod(digits: &DigitString, spec: DivSpec) -> Result<u64> {
    fold_from(0, digits, spec)
}

/// Continues the residue fold from `residue` (the residue of a prefix).
pub fn fold_from(residue: u64, digits: &DigitString, spec: DivSpec) -> Result<u64> {
    check_digits(digits.digits(), spec.base)?;
    let (b, k) = (spec.base as u128, spec.modulus as u128);
    Ok(digits
        .digits()
        .iter()
        .fold(residue as u128 % k, |r, &d| (b * r + d as u128) % k) as u64)
}

pub fn accepts(dfa: &Dfa, digits: &DigitString) -> Result<bool> {
    Ok(dfa.is_accepting(dfa.run(digits)?))
}

/// States reachable from the start state, in increasing order.
pub fn reachable(dfa: &Dfa) -> Vec<StateId> {
    bfs_numbering(dfa)
        .iter()
        .enumerate()
        .filter_map(|(s, o)| o.map(|_| s))
        .collect()
}

/// Structural isomorphism of two automata whose states are all reachable.
/// Differing alphabets simply compare unequal.
pub fn isomorphic(a: &Dfa, b: &Dfa) -> bool {
    a.alphabet_size == b.alphabet_size
        && a.num_states == b.num_states
        && a.bfs_canonical() == b.bfs_canonical()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(b: u64, k: u64) -> DivSpec {
        DivSpec::new(b, k).unwrap()
    }

    fn canonical(b: u64, k: u64) -> Dfa {
        build_canonical(spec(b, k), &Limits::default()).unwrap()
    }

    fn digits(ds: &[u64], base: u64) -> DigitString {
        DigitString::new(ds.to_vec(), base).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert_eq!(DivSpec::new(1, 3), Err(Error::InvalidBase(1)));
        assert_eq!(DivSpec::new(2, 0), Err(Error::InvalidModulus(0)));
        assert!(DivSpec::new(2, 1).is_ok());
    }

    #[test]
    fn canonical_binary_mod_three() {
        let dfa = canonical(2, 3);
        assert_eq!(dfa.num_states(), 3);
        assert_eq!(dfa.alphabet_size(), 2);
        assert_eq!(dfa.start(), 0);
        assert_eq!(dfa.accepting_states().collect::<Vec<_>>(), vec![0]);
        for r in 0..3 {
            for d in 0..2 {
                assert_eq!(dfa.next(r, d), (2 * r + d) % 3);
            }
        }
    }

    #[test]
    fn canonical_mod_one_is_a_single_accepting_loop() {
        let dfa = canonical(2, 1);
        assert_eq!(dfa.num_states(), 1);
        assert_eq!(dfa.transitions(), &[0, 0]);
        assert!(dfa.is_accepting(0));
    }

    #[test]
    fn canonical_base_larger_than_modulus() {
        let dfa = canonical(10, 3);
        for r in 0..3 {
            for d in 0..10 {
                assert_eq!(dfa.next(r, d), (10 * r + d) % 3);
            }
        }
    }

    #[test]
    fn canonical_capacity() {
        let limits = Limits::with_max_states(10);
        let err = build_canonical(spec(2, 11), &limits).unwrap_err();
        assert!(err.is_capacity());
        assert!(build_canonical(spec(2, 10), &limits).is_ok());
        let err = build_canonical(spec(1 << 20, 3), &Limits::default()).unwrap_err();
        assert!(err.is_capacity());
    }

    #[test]
    fn value_mod_examples() {
        assert_eq!(value_mod(&digits(&[1, 1, 0, 1], 2), spec(2, 16)).unwrap(), 13);
        assert_eq!(value_mod(&DigitString::empty(), spec(7, 5)).unwrap(), 0);
        assert_eq!(value_mod(&digits(&[2, 3], 6), spec(6, 16)).unwrap(), 15);
    }

    #[test]
    fn value_mod_rejects_bad_digit() {
        let d = DigitString::new(vec![1, 2], 3).unwrap();
        assert_eq!(
            value_mod(&d, spec(2, 5)),
            Err(Error::InvalidDigit { digit: 2, position: 1, base: 2 })
        );
        assert!(DigitString::new(vec![0, 6], 6).is_err());
    }

    #[test]
    fn value_mod_handles_wide_operands() {
        let b = u64::MAX;
        let k = u64::MAX - 1;
        let d = digits(&[b - 1, b - 1, 3], b);
        // b ≡ 1 (mod k), so the value is congruent to the digit sum.
        let expected = ((b - 1) as u128 * 2 + 3) % k as u128;
        assert_eq!(value_mod(&d, spec(b, k)).unwrap() as u128, expected);
    }

    #[test]
    fn accepts_examples() {
        let dfa = canonical(2, 3);
        assert!(accepts(&dfa, &digits(&[1, 1, 0], 2)).unwrap());
        assert!(!accepts(&dfa, &digits(&[1, 0], 2)).unwrap());
        assert!(accepts(&dfa, &DigitString::empty()).unwrap());
        assert!(accepts(&canonical(6, 16), &DigitString::empty()).unwrap());
        let bad = DigitString::new(vec![2], 3).unwrap();
        assert!(matches!(accepts(&dfa, &bad), Err(Error::InvalidDigit { .. })));
    }

    #[test]
    fn reachable_examples() {
        assert_eq!(reachable(&canonical(6, 16)), (0..16).collect::<Vec<_>>());
        assert_eq!(reachable(&canonical(3, 1)), vec![0]);
        // state 2 is never targeted
        let dfa = Dfa::new(3, 2, 0, vec![1, 0, 0, 1, 0, 1], [1]).unwrap();
        assert_eq!(reachable(&dfa), vec![0, 1]);
    }

    #[test]
    fn isomorphic_examples() {
        let a = canonical(2, 3);
        assert!(isomorphic(&a, &a));
        let renamed = a.permuted(&[2, 0, 1]).unwrap();
        assert_ne!(a, renamed);
        assert!(isomorphic(&a, &renamed));
        assert!(!isomorphic(&a, &canonical(3, 3)));
        assert!(!isomorphic(&a, &canonical(2, 4)));
        // same shape, different accepting set
        let other = Dfa::new(3, 2, 0, a.transitions().to_vec(), [1]).unwrap();
        assert!(!isomorphic(&a, &other));
    }

    #[test]
    fn dfa_validation() {
        assert!(Dfa::new(0, 2, 0, vec![], []).is_err());
        assert!(Dfa::new(2, 0, 0, vec![], []).is_err());
        assert!(Dfa::new(2, 1, 2, vec![0, 1], []).is_err());
        assert!(Dfa::new(2, 1, 0, vec![0], []).is_err());
        assert!(Dfa::new(2, 1, 0, vec![0, 2], []).is_err());
        assert!(Dfa::new(2, 1, 0, vec![0, 1], [2]).is_err());
        assert!(Dfa::new(2, 1, 0, vec![1, 0], [1]).is_ok());
    }

    #[test]
    fn permuted_rejects_non_permutations() {
        let a = canonical(2, 3);
        assert!(a.permuted(&[0, 0, 1]).is_err());
        assert!(a.permuted(&[0, 1]).is_err());
    }
}
