//! Decision procedures for left ideals, suffix-closed, suffix-free and
//! suffix-convex languages. Every negative answer comes with the
//! length-lexicographically smallest counterexample word.

use std::collections::VecDeque;

use serde::Serialize;

use crate::automata::{
    determinize, format_word, product, shortest_difference, Dfa, Letter, Nfa, StateId,
};

/// Outcome of one class test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub holds: bool,
    /// A word witnessing the failure, when there is one.
    pub counterexample: Option<Vec<Letter>>,
}

impl Decision {
    fn yes() -> Self {
        Decision {
            holds: true,
            counterexample: None,
        }
    }

    fn no(w: Option<Vec<Letter>>) -> Self {
        Decision {
            holds: false,
            counterexample: w,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub is_left_ideal: bool,
    pub is_suffix_closed: bool,
    pub is_suffix_free: bool,
    pub is_suffix_convex: bool,
    /// Counterexample per failed class, rendered as words.
    pub witness_words: Vec<(String, String)>,
}

pub fn classify(d: &Dfa) -> ClassReport {
    let checks = [
        ("left-ideal", is_left_ideal(d)),
        ("suffix-closed", is_suffix_closed(d)),
        ("suffix-free", is_suffix_free(d)),
        ("suffix-convex", is_suffix_convex(d)),
    ];
    let witness_words = checks
        .iter()
        .filter_map(|(name, dec)| {
            dec.counterexample
                .as_ref()
                .map(|w| (name.to_string(), format_word(w)))
        })
        .collect();
    ClassReport {
        is_left_ideal: checks[0].1.holds,
        is_suffix_closed: checks[1].1.holds,
        is_suffix_free: checks[2].1.holds,
        is_suffix_convex: checks[3].1.holds,
        witness_words,
    }
}

/// States that are both reachable and co-reachable.
fn useful_states(d: &Dfa) -> Vec<StateId> {
    let reach = d.reachable();
    let coreach = d.coreachable();
    (0..d.n()).filter(|&q| reach[q] && coreach[q]).collect()
}

/// DFA for the set of all suffixes of words of `L(d)`.
pub fn suffix_language(d: &Dfa) -> Dfa {
    let mut nfa = Nfa::from_dfa(d);
    nfa.clear_initials();
    for q in useful_states(d) {
        nfa.add_initial(q).unwrap();
    }
    determinize(&nfa)
}

/// `Σ⁺L` when `at_least_one` is set, otherwise `Σ*L`.
fn prefixed(d: &Dfa, at_least_one: bool) -> Dfa {
    let n = d.n();
    let (loop_state, entry) = (n, n + 1);
    let mut nfa = Nfa::new(n + 2, d.alphabet().to_vec());
    for (a, t) in d.transformations().iter().enumerate() {
        for p in 0..n {
            nfa.add_transition(p, a, t.apply(p)).unwrap();
        }
        nfa.add_transition(entry, a, loop_state).unwrap();
        nfa.add_transition(loop_state, a, loop_state).unwrap();
    }
    for f in d.finals() {
        nfa.set_final(f, true).unwrap();
    }
    nfa.add_epsilon(loop_state, d.initial()).unwrap();
    if at_least_one {
        nfa.add_initial(entry).unwrap();
    } else {
        nfa.add_initial(loop_state).unwrap();
    }
    determinize(&nfa)
}

/// `L` is a left ideal iff it is non-empty and `ℓL ⊆ L` for every letter `ℓ`.
/// The counterexample is the smallest `ℓw` with `w ∈ L` and `ℓw ∉ L`.
pub fn is_left_ideal(d: &Dfa) -> Decision {
    if d.is_empty_language() {
        return Decision::no(None);
    }
    // Breadth-first search over pairs (state after w, state after ℓw),
    // from a virtual root that reads ℓ first.
    let n = d.n();
    let k = d.alphabet().len();
    let id = |p: StateId, q: StateId| p * n + q;
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n * n + 1];
    let mut seen = vec![false; n * n];
    let root = n * n;
    let mut queue = VecDeque::new();
    for a in 0..k {
        let pair = (d.initial(), d.step(d.initial(), a));
        let i = id(pair.0, pair.1);
        if !seen[i] {
            seen[i] = true;
            parent[i] = Some((root, a));
            queue.push_back(pair);
        }
    }
    while let Some((p, q)) = queue.pop_front() {
        if d.is_final(p) && !d.is_final(q) {
            let mut w = Vec::new();
            let mut i = id(p, q);
            while let Some((prev, a)) = parent[i] {
                w.push(d.alphabet()[a].clone());
                i = prev;
                if i == root {
                    break;
                }
            }
            w.reverse();
            return Decision::no(Some(w));
        }
        for a in 0..k {
            let next = (d.step(p, a), d.step(q, a));
            let i = id(next.0, next.1);
            if !seen[i] {
                seen[i] = true;
                parent[i] = Some((id(p, q), a));
                queue.push_back(next);
            }
        }
    }
    Decision::yes()
}

/// The counterexample is the smallest suffix of a word of `L` that is not in `L`.
pub fn is_suffix_closed(d: &Dfa) -> Decision {
    match shortest_difference(&suffix_language(d), d) {
        None => Decision::yes(),
        w => Decision::no(w),
    }
}

/// The counterexample is the smallest word of `L` with a proper suffix in `L`.
pub fn is_suffix_free(d: &Dfa) -> Decision {
    let both = product(d, &prefixed(d, true), |a, b| a && b);
    match both.shortest_accepted() {
        None => Decision::yes(),
        w => Decision::no(w),
    }
}

/// For a word `w` rejected by [`is_suffix_free`], the shortest proper suffix of
/// `w` that is in `L(d)`.
pub fn shortest_suffix_in(d: &Dfa, w: &[Letter]) -> Option<Vec<Letter>> {
    (0..w.len())
        .map(|len| &w[w.len() - len..])
        .find(|s| d.accepts(s).unwrap_or(false))
        .map(<[Letter]>::to_vec)
}

/// `L` is suffix-convex iff every suffix of a word of `L` that itself has a
/// suffix in `L` belongs to `L`, i.e. `Σ*L ∩ Suff(L) ⊆ L`.
pub fn is_suffix_convex(d: &Dfa) -> Decision {
    let candidates = product(&prefixed(d, false), &suffix_language(d), |a, b| a && b);
    match shortest_difference(&candidates, d) {
        None => Decision::yes(),
        w => Decision::no(w),
    }
}
