//! DFA minimization.
//!
//! [`hopcroft_minimize`] is the production path. [`nerode_partition`] computes
//! the same equivalence by naive Moore refinement and shares no code with it,
//! so the two can check each other.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{bfs_numbering, reachable, Dfa, StateId};
use crate::error::{Error, Result};

/// A partition of the states `0..n` into nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatePartition {
    blocks: Vec<Vec<StateId>>,
    block_of: Vec<usize>,
}

impl StatePartition {
    /// Builds a partition from explicit blocks over `num_states` states.
    pub fn from_blocks(num_states: usize, blocks: Vec<Vec<StateId>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; num_states];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {i} is empty")));
            }
            for &s in block {
                if s >= num_states {
                    return Err(Error::InvalidPartition(format!(
                        "state {s} is out of range for {num_states} states"
                    )));
                }
                if block_of[s] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "state {s} appears in blocks {} and {i}",
                        block_of[s]
                    )));
                }
                block_of[s] = i;
            }
        }
        if let Some(s) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!("state {s} is not covered")));
        }
        let mut blocks = blocks;
        for block in &mut blocks {
            block.sort_unstable();
        }
        Ok(StatePartition { blocks, block_of })
    }

    /// Builds a partition from a state → block map whose block ids are
    /// exactly `0..m`.
    pub fn from_block_of(block_of: Vec<usize>) -> Result<Self> {
        let count = block_of.iter().map(|&b| b + 1).max().unwrap_or(0);
        let mut blocks = vec![Vec::new(); count];
        for (s, &b) in block_of.iter().enumerate() {
            blocks[b].push(s);
        }
        if let Some(i) = blocks.iter().position(Vec::is_empty) {
            return Err(Error::InvalidPartition(format!("block {i} is empty")));
        }
        Ok(StatePartition { blocks, block_of })
    }

    pub fn singletons(num_states: usize) -> Self {
        StatePartition {
            blocks: (0..num_states).map(|s| vec![s]).collect(),
            block_of: (0..num_states).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn num_states(&self) -> usize {
        self.block_of.len()
    }

    /// Blocks, each sorted ascending.
    pub fn blocks(&self) -> &[Vec<StateId>] {
        &self.blocks
    }

    pub fn block_of(&self, state: StateId) -> usize {
        self.block_of[state]
    }

    /// The blocks as a sorted family of sorted sets, independent of block
    /// numbering.
    pub fn family(&self) -> Vec<Vec<StateId>> {
        let mut family = self.blocks.clone();
        family.sort_unstable();
        family
    }

    /// Equality as set families, ignoring block numbering.
    pub fn same_family(&self, other: &StatePartition) -> bool {
        self.num_states() == other.num_states()
            && self.len() == other.len()
            && self.family() == other.family()
    }

    /// Whether every block of `self` lies inside a single block of `coarser`.
    pub fn refines(&self, coarser: &StatePartition) -> bool {
        self.num_states() == coarser.num_states()
            && self.blocks.iter().all(|block| {
                let target = coarser.block_of[block[0]];
                block.iter().all(|&s| coarser.block_of[s] == target)
            })
    }
}

fn require_reachable(dfa: &Dfa) -> Result<()> {
    let reached = reachable(dfa);
    if reached.len() == dfa.num_states() {
        return Ok(());
    }
    let mut is_reached = vec![false; dfa.num_states()];
    for s in reached {
        is_reached[s] = true;
    }
    Err(Error::Unreachable {
        states: (0..dfa.num_states()).filter(|&s| !is_reached[s]).collect(),
    })
}

/// Refinable partition: the states of each block occupy a contiguous slice
/// of `elems`, with the marked states of a block moved to its front.
struct Refinable {
    elems: Vec<StateId>,
    loc: Vec<usize>,
    block_of: Vec<usize>,
    first: Vec<usize>,
    end: Vec<usize>,
    marked: Vec<usize>,
}

impl Refinable {
    fn new(num_states: usize, groups: &[Vec<StateId>]) -> Self {
        let mut r = Refinable {
            elems: Vec::with_capacity(num_states),
            loc: vec![0; num_states],
            block_of: vec![0; num_states],
            first: Vec::new(),
            end: Vec::new(),
            marked: Vec::new(),
        };
        for (b, group) in groups.iter().enumerate() {
            r.first.push(r.elems.len());
            for &s in group {
                r.loc[s] = r.elems.len();
                r.block_of[s] = b;
                r.elems.push(s);
            }
            r.end.push(r.elems.len());
            r.marked.push(0);
        }
        r
    }

    fn block_count(&self) -> usize {
        self.first.len()
    }

    fn members(&self, b: usize) -> &[StateId] {
        &self.elems[self.first[b]..self.end[b]]
    }

    fn size(&self, b: usize) -> usize {
        self.end[b] - self.first[b]
    }

    fn min_state(&self, b: usize) -> StateId {
        *self.members(b).iter().min().expect("blocks are nonempty")
    }

    fn mark(&mut self, s: StateId) {
        let b = self.block_of[s];
        let boundary = self.first[b] + self.marked[b];
        let pos = self.loc[s];
        if pos >= boundary {
            let other = self.elems[boundary];
            self.elems.swap(pos, boundary);
            self.loc[other] = pos;
            self.loc[s] = boundary;
            self.marked[b] += 1;
        }
    }

    /// Splits the marked prefix of `b` off into a new block, unless every
    /// state or no state was marked. Clears the marks either way.
    fn split(&mut self, b: usize) -> Option<usize> {
        let marked = std::mem::take(&mut self.marked[b]);
        if marked == 0 || marked == self.size(b) {
            return None;
        }
        let new = self.block_count();
        let start = self.first[b];
        self.first.push(start);
        self.end.push(start + marked);
        self.marked.push(0);
        self.first[b] = start + marked;
        for i in start..start + marked {
            self.block_of[self.elems[i]] = new;
        }
        Some(new)
    }
}

/// Hopcroft's algorithm. Splitters are `(block, symbol)` pairs. When a block
/// splits, a pending splitter for it is extended to both halves; otherwise
/// only the smaller half is queued (ties go to the half holding the lowest
/// state id).
///
/// Returns the minimal DFA, numbered breadth-first from the start state,
/// together with the partition of the input states whose block `i` is
/// output state `i`.
pub fn hopcroft_minimize(dfa: &Dfa) -> Result<(Dfa, StatePartition)> {
    require_reachable(dfa)?;
    let n = dfa.num_states();
    let sigma = dfa.alphabet_size();

    // Predecessor lists in CSR form, keyed by symbol * n + target.
    let mut offsets = vec![0usize; n * sigma + 1];
    for s in 0..n {
        for (sym, &t) in dfa.row(s).iter().enumerate() {
            offsets[sym * n + t + 1] += 1;
        }
    }
    for i in 1..offsets.len() {
        offsets[i] += offsets[i - 1];
    }
    let mut fill = offsets.clone();
    let mut preds = vec![0; n * sigma];
    for s in 0..n {
        for (sym, &t) in dfa.row(s).iter().enumerate() {
            let key = sym * n + t;
            preds[fill[key]] = s;
            fill[key] += 1;
        }
    }
    drop(fill);

    let (acc, rej): (Vec<StateId>, Vec<StateId>) = (0..n).partition(|&s| dfa.is_accepting(s));
    let groups: Vec<Vec<StateId>> = [acc, rej].into_iter().filter(|g| !g.is_empty()).collect();
    let mut part = Refinable::new(n, &groups);

    let mut pending: Vec<bool> = vec![false; part.block_count() * sigma];
    let mut worklist = VecDeque::new();
    if part.block_count() == 2 {
        let seed = smaller_half(&part, 0, 1);
        for sym in 0..sigma {
            pending[seed * sigma + sym] = true;
            worklist.push_back((seed, sym));
        }
    }

    let mut incoming = Vec::new();
    let mut touched = Vec::new();
    while let Some((splitter, sym)) = worklist.pop_front() {
        pending[splitter * sigma + sym] = false;
        incoming.clear();
        for &t in part.members(splitter) {
            let key = sym * n + t;
            incoming.extend_from_slice(&preds[offsets[key]..offsets[key + 1]]);
        }
        touched.clear();
        for &p in &incoming {
            let b = part.block_of[p];
            if part.marked[b] == 0 {
                touched.push(b);
            }
            part.mark(p);
        }
        for &b in &touched {
            let Some(new) = part.split(b) else { continue };
            pending.resize(part.block_count() * sigma, false);
            for a in 0..sigma {
                let target = if pending[b * sigma + a] {
                    new
                } else {
                    smaller_half(&part, b, new)
                };
                pending[target * sigma + a] = true;
                worklist.push_back((target, a));
            }
        }
    }

    Ok(quotient_bfs(dfa, &part.block_of, part.block_count()))
}

fn smaller_half(part: &Refinable, x: usize, y: usize) -> usize {
    match part.size(x).cmp(&part.size(y)) {
        std::cmp::Ordering::Less => x,
        std::cmp::Ordering::Greater => y,
        std::cmp::Ordering::Equal => {
            if part.min_state(x) < part.min_state(y) {
                x
            } else {
                y
            }
        }
    }
}

/// Quotient by a congruence given as a block map, renumbered breadth-first.
fn quotient_bfs(dfa: &Dfa, block_of: &[usize], count: usize) -> (Dfa, StatePartition) {
    let sigma = dfa.alphabet_size();
    let mut rep = vec![usize::MAX; count];
    for (s, &b) in block_of.iter().enumerate() {
        if rep[b] == usize::MAX {
            rep[b] = s;
        }
    }
    let mut transitions = vec![0; count * sigma];
    let mut accepting = vec![false; count];
    for b in 0..count {
        for (sym, &t) in dfa.row(rep[b]).iter().enumerate() {
            transitions[b * sigma + sym] = block_of[t];
        }
        accepting[b] = dfa.is_accepting(rep[b]);
    }
    let blocks_dfa = Dfa::from_parts(count, sigma, block_of[dfa.start()], transitions, accepting);
    let order = bfs_numbering(&blocks_dfa);
    let renumber: Vec<usize> = order
        .iter()
        .map(|o| o.expect("every block holds a reachable state"))
        .collect();
    let minimal = blocks_dfa
        .permuted(&renumber)
        .expect("BFS numbering of a fully reachable automaton is a permutation");
    let partition = StatePartition::from_block_of(block_of.iter().map(|&b| renumber[b]).collect())
        .expect("block map is onto");
    (minimal, partition)
}

/// Nerode equivalence by Moore refinement: start from the acceptance split
/// and repeatedly split blocks by their successor-block signatures until the
/// block count stops growing. Blocks are numbered by their lowest state.
pub fn nerode_partition(dfa: &Dfa) -> Result<StatePartition> {
    require_reachable(dfa)?;
    let n = dfa.num_states();
    let sigma = dfa.alphabet_size();

    let mut ids = renumber_by_first_seen((0..n).map(|s| dfa.is_accepting(s)));
    let mut count = ids.iter().max().map_or(0, |&m| m + 1);
    loop {
        let signatures = (0..n).map(|s| {
            let mut sig = Vec::with_capacity(sigma + 1);
            sig.push(ids[s]);
            sig.extend(dfa.row(s).iter().map(|&t| ids[t]));
            sig
        });
        let next = renumber_by_first_seen(signatures);
        let next_count = next.iter().max().map_or(0, |&m| m + 1);
        ids = next;
        if next_count == count {
            break;
        }
        count = next_count;
    }
    StatePartition::from_block_of(ids)
}

fn renumber_by_first_seen<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> Vec<usize> {
    let mut seen = HashMap::new();
    keys.map(|key| {
        let next = seen.len();
        *seen.entry(key).or_insert(next)
    })
    .collect()
}

/// Collapses each block of a congruence to a single state. Block `i` becomes
/// state `i`.
pub fn quotient(dfa: &Dfa, partition: &StatePartition) -> Result<Dfa> {
    if partition.num_states() != dfa.num_states() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} states but the automaton has {}",
            partition.num_states(),
            dfa.num_states()
        )));
    }
    let sigma = dfa.alphabet_size();
    let count = partition.len();
    let mut transitions = vec![0; count * sigma];
    let mut accepting = vec![false; count];
    for (b, block) in partition.blocks().iter().enumerate() {
        let rep = block[0];
        for &s in &block[1..] {
            if dfa.is_accepting(s) != dfa.is_accepting(rep) {
                return Err(Error::CongruenceViolation {
                    block: b,
                    symbol: None,
                    states: (rep, s),
                    successors: None,
                });
            }
            for sym in 0..sigma {
                let (p, q) = (
                    partition.block_of(dfa.next(rep, sym)),
                    partition.block_of(dfa.next(s, sym)),
                );
                if p != q {
                    return Err(Error::CongruenceViolation {
                        block: b,
                        symbol: Some(sym),
                        states: (rep, s),
                        successors: Some((p, q)),
                    });
                }
            }
        }
        for sym in 0..sigma {
            transitions[b * sigma + sym] = partition.block_of(dfa.next(rep, sym));
        }
        accepting[b] = dfa.is_accepting(rep);
    }
    Ok(Dfa::from_parts(
        count,
        sigma,
        partition.block_of(dfa.start()),
        transitions,
        accepting,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{build_canonical, isomorphic, DivSpec, Limits};

    fn canonical(b: u64, k: u64) -> Dfa {
        build_canonical(DivSpec::new(b, k).unwrap(), &Limits::default()).unwrap()
    }

    #[test]
    fn hopcroft_examples() {
        assert_eq!(hopcroft_minimize(&canonical(6, 16)).unwrap().0.num_states(), 8);
        let (min, part) = hopcroft_minimize(&canonical(2, 3)).unwrap();
        assert_eq!(min.num_states(), 3);
        assert_eq!(part.len(), 3);
        assert_eq!(hopcroft_minimize(&canonical(6, 1024)).unwrap().0.num_states(), 104);
    }

    #[test]
    fn hopcroft_single_state() {
        let (min, part) = hopcroft_minimize(&canonical(5, 1)).unwrap();
        assert_eq!(min.num_states(), 1);
        assert!(min.is_accepting(0));
        assert_eq!(part.blocks(), &[vec![0]]);
    }

    #[test]
    fn hopcroft_all_rejecting() {
        let dfa = Dfa::new(2, 1, 0, vec![1, 0], []).unwrap();
        let (min, _) = hopcroft_minimize(&dfa).unwrap();
        assert_eq!(min.num_states(), 1);
        assert!(!min.is_accepting(0));
    }

    #[test]
    fn hopcroft_output_is_bfs_numbered() {
        let (min, part) = hopcroft_minimize(&canonical(6, 16)).unwrap();
        assert_eq!(min.start(), 0);
        assert_eq!(min, min.bfs_canonical());
        assert_eq!(part.block_of(0), 0);
    }

    #[test]
    fn unreachable_states_are_rejected() {
        let dfa = Dfa::new(3, 2, 0, vec![1, 0, 0, 1, 0, 1], [1]).unwrap();
        assert_eq!(
            hopcroft_minimize(&dfa).unwrap_err(),
            Error::Unreachable { states: vec![2] }
        );
        assert!(matches!(nerode_partition(&dfa), Err(Error::Unreachable { .. })));
    }

    #[test]
    fn nerode_examples() {
        assert_eq!(nerode_partition(&canonical(6, 16)).unwrap().len(), 8);
        let p = nerode_partition(&canonical(10, 21)).unwrap();
        assert_eq!(p.len(), 21);
        assert!(p.blocks().iter().all(|b| b.len() == 1));
        assert_eq!(nerode_partition(&canonical(2, 1)).unwrap().len(), 1);
    }

    #[test]
    fn nerode_matches_package_table_for_6_16() {
        let p = nerode_partition(&canonical(6, 16)).unwrap();
        let mut expected = vec![
            vec![0],
            vec![8],
            vec![5, 13],
            vec![2, 10],
            vec![4, 12],
            vec![3, 7, 11, 15],
            vec![6, 14],
            vec![1, 9],
        ];
        expected.sort();
        assert_eq!(p.family(), expected);
    }

    #[test]
    fn hopcroft_and_nerode_agree() {
        for b in 2..=7 {
            for k in 1..=60 {
                let dfa = canonical(b, k);
                let (_, hp) = hopcroft_minimize(&dfa).unwrap();
                let np = nerode_partition(&dfa).unwrap();
                assert!(hp.same_family(&np), "b={b} k={k}");
            }
        }
    }

    #[test]
    fn quotient_by_nerode_matches_hopcroft() {
        let dfa = canonical(6, 16);
        let q = quotient(&dfa, &nerode_partition(&dfa).unwrap()).unwrap();
        assert_eq!(q.num_states(), 8);
        assert!(isomorphic(&q, &hopcroft_minimize(&dfa).unwrap().0));
    }

    #[test]
    fn quotient_by_singletons_is_identity() {
        let dfa = canonical(3, 9);
        let q = quotient(&dfa, &StatePartition::singletons(9)).unwrap();
        assert_eq!(q, dfa);
    }

    #[test]
    fn quotient_rejects_non_congruence() {
        let dfa = canonical(6, 16);
        let mut blocks = vec![vec![0, 1]];
        blocks.extend((2..16).map(|s| vec![s]));
        let p = StatePartition::from_blocks(16, blocks).unwrap();
        let err = quotient(&dfa, &p).unwrap_err();
        assert!(matches!(
            err,
            Error::CongruenceViolation { block: 0, states: (0, 1), .. }
        ));

        // Same acceptance, different successors: 8 → 0 on digit 0, 5 → 14.
        let mut blocks = vec![vec![5, 8]];
        blocks.extend((0..16).filter(|s| *s != 5 && *s != 8).map(|s| vec![s]));
        let p = StatePartition::from_blocks(16, blocks).unwrap();
        assert!(matches!(
            quotient(&dfa, &p).unwrap_err(),
            Error::CongruenceViolation { symbol: Some(0), .. }
        ));
    }

    #[test]
    fn partition_validation() {
        assert!(StatePartition::from_blocks(3, vec![vec![0, 1], vec![2]]).is_ok());
        assert!(StatePartition::from_blocks(3, vec![vec![0, 1]]).is_err());
        assert!(StatePartition::from_blocks(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(StatePartition::from_blocks(3, vec![vec![0, 1, 2], vec![]]).is_err());
        assert!(StatePartition::from_blocks(2, vec![vec![0, 1, 2]]).is_err());
        assert!(StatePartition::from_block_of(vec![0, 2, 2]).is_err());
    }

    #[test]
    fn refinement() {
        let fine = StatePartition::from_blocks(4, vec![vec![0], vec![1], vec![2, 3]]).unwrap();
        let coarse = StatePartition::from_blocks(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
    }
}
