use std::collections::HashMap;

use super::{Dfa, Letter, StateId};
use crate::error::{Error, Result};

/// An ε-NFA with a set of initial states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    n: usize,
    alphabet: Vec<Letter>,
    /// `delta[q][a]`: successors of `q` under letter `a`.
    delta: Vec<Vec<Vec<StateId>>>,
    epsilon: Vec<Vec<StateId>>,
    initials: Vec<StateId>,
    finals: Vec<bool>,
}

impl Nfa {
    /// `n` states, no transitions, no initial or final states.
    pub fn new(n: usize, alphabet: Vec<Letter>) -> Self {
        let k = alphabet.len();
        Nfa {
            n,
            alphabet,
            delta: vec![vec![Vec::new(); k]; n],
            epsilon: vec![Vec::new(); n],
            initials: Vec::new(),
            finals: vec![false; n],
        }
    }

    /// The NFA with the same transitions as `d`.
    pub fn from_dfa(d: &Dfa) -> Self {
        let mut nfa = Nfa::new(d.n(), d.alphabet().to_vec());
        for (a, t) in d.transformations().iter().enumerate() {
            for p in 0..d.n() {
                nfa.delta[p][a].push(t.apply(p));
            }
        }
        nfa.initials.push(d.initial());
        nfa.finals = d.final_flags().to_vec();
        nfa
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn initials(&self) -> &[StateId] {
        &self.initials
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn letter_index(&self, letter: &Letter) -> Option<usize> {
        self.alphabet.iter().position(|l| l == letter)
    }

    fn check(&self, q: StateId) -> Result<()> {
        if q < self.n {
            Ok(())
        } else {
            Err(Error::rejected(format!("state {q} outside Q_{}", self.n)))
        }
    }

    /// Adds `p -a-> q` where `a` indexes the alphabet.
    pub fn add_transition(&mut self, p: StateId, a: usize, q: StateId) -> Result<()> {
        self.check(p)?;
        self.check(q)?;
        if a >= self.alphabet.len() {
            return Err(Error::rejected(format!("letter index {a} out of range")));
        }
        if !self.delta[p][a].contains(&q) {
            self.delta[p][a].push(q);
        }
        Ok(())
    }

    pub fn add_letter_transition(&mut self, p: StateId, letter: &Letter, q: StateId) -> Result<()> {
        let a = self
            .letter_index(letter)
            .ok_or_else(|| Error::UnknownLetter(letter.to_string()))?;
        self.add_transition(p, a, q)
    }

    pub fn add_epsilon(&mut self, p: StateId, q: StateId) -> Result<()> {
        self.check(p)?;
        self.check(q)?;
        if p != q && !self.epsilon[p].contains(&q) {
            self.epsilon[p].push(q);
        }
        Ok(())
    }

    pub fn add_initial(&mut self, q: StateId) -> Result<()> {
        self.check(q)?;
        if !self.initials.contains(&q) {
            self.initials.push(q);
        }
        Ok(())
    }

    pub fn clear_initials(&mut self) {
        self.initials.clear();
    }

    pub fn set_final(&mut self, q: StateId, is_final: bool) -> Result<()> {
        self.check(q)?;
        self.finals[q] = is_final;
        Ok(())
    }

    /// Smallest ε-closed superset of `states`, sorted.
    pub fn epsilon_closure(&self, states: &[StateId]) -> SubsetState {
        let mut member = vec![false; self.n];
        let mut stack: Vec<StateId> = Vec::new();
        for &q in states {
            if !member[q] {
                member[q] = true;
                stack.push(q);
            }
        }
        while let Some(p) = stack.pop() {
            for &q in &self.epsilon[p] {
                if !member[q] {
                    member[q] = true;
                    stack.push(q);
                }
            }
        }
        SubsetState(
            member
                .iter()
                .enumerate()
                .filter_map(|(q, &m)| m.then_some(q))
                .collect(),
        )
    }

    /// ε-closure of the image of `subset` under letter `a`.
    pub fn successor(&self, subset: &SubsetState, a: usize) -> SubsetState {
        let image: Vec<StateId> = subset
            .0
            .iter()
            .flat_map(|&p| self.delta[p][a].iter().copied())
            .collect();
        self.epsilon_closure(&image)
    }
}

/// A set of NFA states in sorted order; the empty set is the sink.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetState(pub Vec<StateId>);

impl SubsetState {
    pub fn members(&self) -> &[StateId] {
        &self.0
    }

    pub fn contains(&self, q: StateId) -> bool {
        self.0.binary_search(&q).is_ok()
    }
}

/// Subset construction.
///
/// States of the result are the reachable ε-closed subsets, numbered in
/// breadth-first discovery order with letters scanned in alphabet order. A
/// subset is final iff it contains a final state; the empty subset is an
/// ordinary sink when reachable.
pub fn determinize(nfa: &Nfa) -> Dfa {
    determinize_with_subsets(nfa).0
}

/// [`determinize`], also returning the subset that labels each DFA state.
pub fn determinize_with_subsets(nfa: &Nfa) -> (Dfa, Vec<SubsetState>) {
    let start = nfa.epsilon_closure(&nfa.initials);
    let mut index: HashMap<SubsetState, usize> = HashMap::from([(start.clone(), 0)]);
    let mut subsets = vec![start];
    let mut table: Vec<Vec<StateId>> = Vec::new();
    let mut head = 0;
    while head < subsets.len() {
        let row = (0..nfa.alphabet.len())
            .map(|a| {
                let next = nfa.successor(&subsets[head], a);
                if let Some(&i) = index.get(&next) {
                    i
                } else {
                    let i = subsets.len();
                    index.insert(next.clone(), i);
                    subsets.push(next);
                    i
                }
            })
            .collect();
        table.push(row);
        head += 1;
    }
    let finals = subsets
        .iter()
        .map(|s| s.0.iter().any(|&q| nfa.finals[q]))
        .collect();
    (
        Dfa::from_parts(nfa.alphabet.clone(), table, 0, finals),
        subsets,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{equivalent, word};
    use crate::transform::Transformation;

    #[test]
    fn deterministic_nfa_round_trips() {
        let t = |v: &[usize]| Transformation::from_image(v.to_vec()).unwrap();
        let d = Dfa::new(3, word("ab"), vec![t(&[1, 2, 0]), t(&[0, 0, 2])], 0, [2]).unwrap();
        let back = determinize(&Nfa::from_dfa(&d));
        assert_eq!(back, d.canonical());
    }

    #[test]
    fn epsilon_closure_before_and_after_steps() {
        // 0 -ε-> 1 -a-> 2 -ε-> 3, only 3 final: accepts exactly "a"
        let mut nfa = Nfa::new(4, word("a"));
        nfa.add_epsilon(0, 1).unwrap();
        nfa.add_transition(1, 0, 2).unwrap();
        nfa.add_epsilon(2, 3).unwrap();
        nfa.add_initial(0).unwrap();
        nfa.set_final(3, true).unwrap();
        let (d, subsets) = determinize_with_subsets(&nfa);
        assert_eq!(subsets[0].members(), &[0, 1]);
        assert_eq!(subsets[1].members(), &[2, 3]);
        assert_eq!(subsets[2].members(), &[] as &[usize]);
        assert!(d.accepts(&word("a")).unwrap());
        assert!(!d.accepts(&word("")).unwrap());
        assert!(!d.accepts(&word("aa")).unwrap());
    }

    #[test]
    fn no_initial_states_gives_empty_language() {
        let nfa = Nfa::new(2, word("ab"));
        let d = determinize(&nfa);
        assert_eq!(d.n(), 1);
        assert!(d.is_empty_language());
        let empty = Dfa::new(1, word("ab"), vec![Transformation::identity(1); 2], 0, []).unwrap();
        assert!(equivalent(&d, &empty));
    }

    #[test]
    fn rejects_bad_indices() {
        let mut nfa = Nfa::new(2, word("a"));
        assert!(nfa.add_transition(0, 1, 1).is_err());
        assert!(nfa.add_transition(0, 0, 2).is_err());
        assert!(nfa.add_epsilon(3, 0).is_err());
        assert!(nfa.add_letter_transition(0, &"z".into(), 1).is_err());
    }
}
