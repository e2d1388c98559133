//! Transition semigroups, quotient complexities and atoms.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use indexmap::IndexSet;

use crate::automata::{minimize, Dfa, Letter, StateId};
use crate::error::{Error, Result};
use crate::transform::Transformation;

/// Default element cap for semigroup enumeration.
pub const DEFAULT_SEMIGROUP_CAP: usize = 2_000_000;

/// Default state limit for atom enumeration (all `2^n` subsets are visited).
pub const DEFAULT_ATOM_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupSummary {
    /// Number of distinct transformations; a lower bound when `truncated`.
    pub size: usize,
    pub generators: Vec<(Letter, Transformation)>,
    pub truncated: bool,
}

/// Transition semigroup of `d`: all transformations induced by non-empty
/// words, enumerated breadth-first (by word length, then alphabet order).
///
/// Enumeration stops once more than `cap` elements have been found. An empty
/// alphabet yields the empty semigroup.
pub fn transition_semigroup(d: &Dfa, cap: usize) -> SemigroupSummary {
    let n = d.n();
    assert!(n <= usize::from(u16::MAX), "semigroup elements are packed as u16");
    let generators: Vec<(Letter, Transformation)> = d
        .alphabet()
        .iter()
        .cloned()
        .zip(d.transformations().iter().cloned())
        .collect();
    let gens: Vec<Vec<u16>> = d
        .transformations()
        .iter()
        .map(|t| t.image().iter().map(|&q| q as u16).collect())
        .collect();

    let mut elements: IndexSet<Box<[u16]>> = IndexSet::new();
    let mut truncated = false;
    'outer: for g in &gens {
        elements.insert(g.clone().into_boxed_slice());
        if elements.len() > cap {
            truncated = true;
            break 'outer;
        }
    }
    let mut head = 0;
    let mut buf = vec![0u16; n];
    while !truncated && head < elements.len() {
        for g in &gens {
            let t = &elements[head];
            for (slot, &p) in buf.iter_mut().zip(t.iter()) {
                *slot = g[usize::from(p)];
            }
            if !elements.contains(buf.as_slice()) {
                elements.insert(buf.clone().into_boxed_slice());
                if elements.len() > cap {
                    truncated = true;
                    break;
                }
            }
        }
        head += 1;
    }
    SemigroupSummary {
        size: elements.len(),
        generators,
        truncated,
    }
}

/// Syntactic semigroup of `L(d)`, as the transition semigroup of its minimal DFA.
pub fn syntactic_semigroup_size(d: &Dfa, cap: usize) -> SemigroupSummary {
    transition_semigroup(&minimize(d), cap)
}

/// Complexity of every quotient: entry `q` is the size of the minimal DFA of
/// the language of state `q` of `minimize(d)`. Each quotient keeps the full
/// alphabet of `d`.
pub fn quotient_complexities(d: &Dfa) -> Vec<usize> {
    let m = minimize(d);
    (0..m.n())
        .map(|q| minimize(&m.with_initial(q).expect("state in range")).n())
        .collect()
}

/// Names the atom `A_S`: the words in every quotient `K_q` with `q ∈ S` and in
/// no quotient `K_q` with `q ∉ S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomKey(Vec<StateId>);

impl AtomKey {
    pub fn new(states: impl IntoIterator<Item = StateId>) -> Self {
        let mut v: Vec<StateId> = states.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        AtomKey(v)
    }

    fn from_mask(mask: u64) -> Self {
        AtomKey((0..64).filter(|q| mask >> q & 1 == 1).collect())
    }

    pub fn states(&self) -> &[StateId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, q: StateId) -> bool {
        self.0.binary_search(&q).is_ok()
    }

    fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &q| m | 1 << q)
    }
}

impl fmt::Display for AtomKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|q| q.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Quotients of `A_S` are determined by the pair `(X, Y) = (Sw, S̄w)`: the
/// quotient by `w` is the intersection of the `K_x`, `x ∈ X`, with the
/// complements of the `K_y`, `y ∈ Y`.
struct PairSpace {
    full: u64,
    finals: u64,
    /// `table[a][q]`
    table: Vec<Vec<usize>>,
}

type Pair = (u64, u64);

impl PairSpace {
    fn new(m: &Dfa) -> Self {
        let n = m.n();
        PairSpace {
            full: if n == 64 { u64::MAX } else { (1 << n) - 1 },
            finals: m.finals().iter().fold(0, |acc, &q| acc | 1 << q),
            table: m.transformations().iter().map(|t| t.image().to_vec()).collect(),
        }
    }

    fn image(&self, a: usize, mut set: u64) -> u64 {
        let mut out = 0;
        while set != 0 {
            let q = set.trailing_zeros() as usize;
            set &= set - 1;
            out |= 1 << self.table[a][q];
        }
        out
    }

    fn step(&self, a: usize, (x, y): Pair) -> Pair {
        (self.image(a, x), self.image(a, y))
    }

    fn start(&self, s: u64) -> Pair {
        (s, self.full & !s)
    }

    /// A word is in the quotient `(X, Y)` iff every `x` accepts and no `y` does.
    fn is_final(&self, (x, y): Pair) -> bool {
        x & !self.finals == 0 && y & self.finals == 0
    }

    /// `X ∩ Y ≠ ∅` means the quotient asks a word to be both in and out of one `K_q`.
    fn is_dead((x, y): Pair) -> bool {
        x & y != 0
    }

    fn non_empty(&self, s: u64) -> bool {
        let start = self.start(s);
        let mut seen = std::collections::HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            if self.is_final(p) {
                return true;
            }
            for a in 0..self.table.len() {
                let q = self.step(a, p);
                if !Self::is_dead(q) && seen.insert(q) {
                    queue.push_back(q);
                }
            }
        }
        false
    }
}

fn minimized_within(d: &Dfa, limit: usize) -> Result<Dfa> {
    let m = minimize(d);
    let limit = limit.min(63);
    if m.n() > limit {
        return Err(Error::SizeLimit {
            size: m.n(),
            limit,
        });
    }
    Ok(m)
}

/// Non-empty atoms of `L(d)`, keyed by subsets of the states of `minimize(d)`.
pub fn atoms(d: &Dfa) -> Result<Vec<AtomKey>> {
    atoms_with_limit(d, DEFAULT_ATOM_LIMIT)
}

pub fn atoms_with_limit(d: &Dfa, limit: usize) -> Result<Vec<AtomKey>> {
    let m = minimized_within(d, limit)?;
    let space = PairSpace::new(&m);
    let mut keys: Vec<AtomKey> = (0..=space.full)
        .filter(|&s| space.non_empty(s))
        .map(AtomKey::from_mask)
        .collect();
    keys.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(keys)
}

/// Complexity of the atom `A_S` of `L(d)`, where `S` indexes the states of
/// `minimize(d)`.
pub fn atom_complexity(d: &Dfa, key: &AtomKey) -> Result<usize> {
    atom_complexity_with_limit(d, key, 63)
}

pub fn atom_complexity_with_limit(d: &Dfa, key: &AtomKey, limit: usize) -> Result<usize> {
    let m = minimized_within(d, limit)?;
    if key.states().iter().any(|&q| q >= m.n()) {
        return Err(Error::rejected(format!("atom key {key} outside Q_{}", m.n())));
    }
    let space = PairSpace::new(&m);
    let k = m.alphabet().len();
    // every dead pair collapses into one empty state
    const DEAD: Pair = (u64::MAX, u64::MAX);
    let start = space.start(key.mask());
    let mut index: HashMap<Pair, usize> = HashMap::from([(start, 0)]);
    let mut order = vec![start];
    let mut table: Vec<Vec<StateId>> = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let p = order[head];
        head += 1;
        let row = (0..k)
            .map(|a| {
                let q = if p == DEAD { DEAD } else { space.step(a, p) };
                let q = if PairSpace::is_dead(q) { DEAD } else { q };
                let fresh = order.len();
                *index.entry(q).or_insert_with(|| {
                    order.push(q);
                    fresh
                })
            })
            .collect();
        table.push(row);
    }
    let finals: Vec<bool> = order
        .iter()
        .map(|&p| p != DEAD && space.is_final(p))
        .collect();
    if !finals.iter().any(|&f| f) {
        return Err(Error::rejected(format!("atom {key} is empty")));
    }
    let atom = Dfa::from_parts(m.alphabet().to_vec(), table, 0, finals);
    Ok(minimize(&atom).n())
}

/// Language classes with closed-form atom complexities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AtomClass {
    LeftIdeal,
    SuffixClosed,
    SuffixFree,
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Closed-form complexity of the atom `A_S` of a maximally complex language of
/// complexity `n` in `class`; `0` in `S` denotes the initial state.
pub fn atom_formula(class: AtomClass, n: usize, key: &AtomKey) -> Result<u64> {
    if key.states().iter().any(|&q| q >= n) {
        return Err(Error::rejected(format!("atom key {key} outside Q_{n}")));
    }
    let s = key.len();
    let pow2 = |e: usize| 1u64 << e;
    let outside = || Error::rejected(format!("no closed form for S = {key} in Q_{n}"));
    let value = match class {
        AtomClass::LeftIdeal => {
            if s == n {
                n as u64
            } else if s == 0 {
                pow2(n - 1)
            } else {
                1 + double_sum(1..=s, 1..=n - s, |x, y| {
                    binomial(n - 1, x) * binomial(n - x - 1, y - 1)
                })
            }
        }
        AtomClass::SuffixClosed => {
            if s == 0 {
                n as u64
            } else if s == n {
                pow2(n - 1)
            } else if key.contains(0) {
                1 + double_sum(1..=s, 1..=n - s, |x, y| {
                    binomial(n - 1, y) * binomial(n - y - 1, x - 1)
                })
            } else {
                return Err(outside());
            }
        }
        AtomClass::SuffixFree => {
            if s == 0 {
                pow2(n - 2) + 1
            } else if key.states() == [0] {
                n as u64
            } else if !key.contains(0) && s + 2 <= n {
                1 + double_sum(1..=s, 0..=n - 2 - s, |x, y| {
                    binomial(n - 2, x) * binomial(n - 2 - x, y)
                })
            } else {
                return Err(outside());
            }
        }
    };
    Ok(value)
}

fn double_sum(
    xs: std::ops::RangeInclusive<usize>,
    ys: std::ops::RangeInclusive<usize>,
    term: impl Fn(usize, usize) -> u64,
) -> u64 {
    xs.flat_map(|x| ys.clone().map(move |y| (x, y)))
        .map(|(x, y)| term(x, y))
        .sum()
}
