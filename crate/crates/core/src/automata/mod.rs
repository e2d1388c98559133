//! Complete DFAs and ε-NFAs over small named alphabets.

mod minimize;
mod nfa;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transform::Transformation;

pub use minimize::minimize;
pub use nfa::{determinize, determinize_with_subsets, Nfa, SubsetState};

/// Index of a state in `0..n`.
pub type StateId = usize;

/// A letter of an alphabet: a short printable token such as `a` or `c1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(String);

impl Letter {
    /// Checked constructor: the token must be non-empty and free of whitespace.
    pub fn new(token: &str) -> Result<Self> {
        if token.is_empty() || token.chars().any(char::is_whitespace) {
            return Err(Error::rejected(format!("invalid letter token {token:?}")));
        }
        Ok(Letter(token.to_owned()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Letter {
    fn from(token: &str) -> Self {
        Letter(token.to_owned())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Splits `text` into letters: on whitespace if there is any, otherwise one
/// letter per character. `word("eaa")` and `word("e a a")` are the same word.
pub fn word(text: &str) -> Vec<Letter> {
    if text.chars().any(char::is_whitespace) {
        text.split_whitespace().map(Letter::from).collect()
    } else {
        text.chars().map(|c| Letter(c.to_string())).collect()
    }
}

/// Renders a word by concatenating its letters, with `ε` for the empty word.
pub fn format_word(w: &[Letter]) -> String {
    if w.is_empty() {
        return "ε".to_owned();
    }
    let multi = w.iter().any(|l| l.0.chars().count() > 1);
    let parts: Vec<&str> = w.iter().map(Letter::as_str).collect();
    parts.join(if multi { " " } else { "" })
}

/// A complete deterministic automaton `(Q_n, Σ, δ, q0, F)`.
///
/// Each letter acts on the states by a [`Transformation`], so the automaton is
/// complete by construction. The alphabet order is significant: canonical state
/// numberings and dialects are defined with respect to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    n: usize,
    alphabet: Vec<Letter>,
    delta: Vec<Transformation>,
    initial: StateId,
    finals: Vec<bool>,
}

impl Dfa {
    pub fn new(
        n: usize,
        alphabet: Vec<Letter>,
        delta: Vec<Transformation>,
        initial: StateId,
        finals: impl IntoIterator<Item = StateId>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::rejected("a DFA needs at least one state"));
        }
        if alphabet.len() != delta.len() {
            return Err(Error::rejected(format!(
                "{} letters but {} transformations",
                alphabet.len(),
                delta.len()
            )));
        }
        for (i, l) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(l) {
                return Err(Error::rejected(format!("letter `{l}` appears twice")));
            }
        }
        if let Some((l, t)) = alphabet.iter().zip(&delta).find(|(_, t)| t.n() != n) {
            return Err(Error::rejected(format!(
                "letter `{l}` acts on {} states, expected {n}",
                t.n()
            )));
        }
        if initial >= n {
            return Err(Error::rejected(format!("initial state {initial} outside Q_{n}")));
        }
        let mut flags = vec![false; n];
        for q in finals {
            if q >= n {
                return Err(Error::rejected(format!("final state {q} outside Q_{n}")));
            }
            flags[q] = true;
        }
        Ok(Dfa {
            n,
            alphabet,
            delta,
            initial,
            finals: flags,
        })
    }

    /// Internal constructor for values that are valid by construction.
    pub(crate) fn from_parts(
        alphabet: Vec<Letter>,
        table: Vec<Vec<StateId>>,
        initial: StateId,
        finals: Vec<bool>,
    ) -> Self {
        let n = finals.len();
        debug_assert!(initial < n);
        let delta = (0..alphabet.len())
            .map(|a| Transformation::from_image(table.iter().map(|row| row[a]).collect()).unwrap())
            .collect();
        Dfa {
            n,
            alphabet,
            delta,
            initial,
            finals,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> Vec<StateId> {
        (0..self.n).filter(|&q| self.finals[q]).collect()
    }

    pub fn final_flags(&self) -> &[bool] {
        &self.finals
    }

    /// Transformations in alphabet order.
    pub fn transformations(&self) -> &[Transformation] {
        &self.delta
    }

    pub fn transformation(&self, letter: &Letter) -> Option<&Transformation> {
        self.letter_index(letter).map(|i| &self.delta[i])
    }

    pub fn letter_index(&self, letter: &Letter) -> Option<usize> {
        self.alphabet.iter().position(|l| l == letter)
    }

    #[inline]
    pub fn step(&self, q: StateId, letter: usize) -> StateId {
        self.delta[letter].apply(q)
    }

    pub fn apply_word(&self, q: StateId, w: &[Letter]) -> Result<StateId> {
        if q >= self.n {
            return Err(Error::rejected(format!("state {q} outside Q_{}", self.n)));
        }
        w.iter().try_fold(q, |p, l| {
            let a = self
                .letter_index(l)
                .ok_or_else(|| Error::UnknownLetter(l.to_string()))?;
            Ok(self.step(p, a))
        })
    }

    pub fn accepts(&self, w: &[Letter]) -> Result<bool> {
        Ok(self.finals[self.apply_word(self.initial, w)?])
    }

    /// Same automaton started in `q`; its language is the quotient `L^q`.
    pub fn with_initial(&self, q: StateId) -> Result<Dfa> {
        if q >= self.n {
            return Err(Error::rejected(format!("state {q} outside Q_{}", self.n)));
        }
        Ok(Dfa {
            initial: q,
            ..self.clone()
        })
    }

    pub fn with_finals(&self, finals: impl IntoIterator<Item = StateId>) -> Result<Dfa> {
        Dfa::new(
            self.n,
            self.alphabet.clone(),
            self.delta.clone(),
            self.initial,
            finals,
        )
    }

    /// Successor table: `table[q][a]`.
    pub(crate) fn table(&self) -> Vec<Vec<StateId>> {
        (0..self.n)
            .map(|q| self.delta.iter().map(|t| t.apply(q)).collect())
            .collect()
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[self.initial] = true;
        let mut stack = vec![self.initial];
        while let Some(p) = stack.pop() {
            for t in &self.delta {
                let q = t.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        seen
    }

    /// States from which some final state can be reached.
    pub fn coreachable(&self) -> Vec<bool> {
        let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); self.n];
        for t in &self.delta {
            for p in 0..self.n {
                preds[t.apply(p)].push(p);
            }
        }
        let mut seen = self.finals.clone();
        let mut stack: Vec<StateId> = self.finals();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Reachable states in breadth-first discovery order; entry `i` is the
    /// state that [`Dfa::canonical`] numbers `i`.
    pub fn bfs_order(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.n];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut head = 0;
        while head < order.len() {
            let p = order[head];
            head += 1;
            for t in &self.delta {
                let q = t.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    order.push(q);
                }
            }
        }
        order
    }

    /// Reachable part, renumbered breadth-first from the initial state with
    /// letters scanned in alphabet order.
    pub fn canonical(&self) -> Dfa {
        let order = self.bfs_order();
        let mut index = vec![usize::MAX; self.n];
        for (i, &p) in order.iter().enumerate() {
            index[p] = i;
        }
        let table = order
            .iter()
            .map(|&p| self.delta.iter().map(|t| index[t.apply(p)]).collect())
            .collect();
        let finals = order.iter().map(|&p| self.finals[p]).collect();
        Dfa::from_parts(self.alphabet.clone(), table, 0, finals)
    }

    /// Keeps only the given letters (in the given order).
    pub fn restrict(&self, letters: &[Letter]) -> Result<Dfa> {
        let delta = letters
            .iter()
            .map(|l| {
                self.transformation(l)
                    .cloned()
                    .ok_or_else(|| Error::UnknownLetter(l.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Dfa::new(self.n, letters.to_vec(), delta, self.initial, self.finals())
    }

    /// Shortest accepted word in length-lexicographic order (alphabet order).
    pub fn shortest_accepted(&self) -> Option<Vec<Letter>> {
        let mut parent: Vec<Option<(StateId, usize)>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(p) = queue.pop_front() {
            if self.finals[p] {
                let mut w = Vec::new();
                let mut q = p;
                while let Some((prev, a)) = parent[q] {
                    w.push(self.alphabet[a].clone());
                    q = prev;
                }
                w.reverse();
                return Some(w);
            }
            for (a, t) in self.delta.iter().enumerate() {
                let q = t.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    parent[q] = Some((p, a));
                    queue.push_back(q);
                }
            }
        }
        None
    }

    pub fn is_empty_language(&self) -> bool {
        let reach = self.reachable();
        (0..self.n).all(|q| !(reach[q] && self.finals[q]))
    }
}

/// Letters of `left` in order, followed by the letters of `right` not in `left`.
pub fn union_alphabet(left: &[Letter], right: &[Letter]) -> Vec<Letter> {
    let mut out = left.to_vec();
    out.extend(right.iter().filter(|l| !left.contains(l)).cloned());
    out
}

/// Extends `d` to the alphabet `sigma`.
///
/// If `sigma` has letters `d` lacks, one fresh non-final sink is appended and
/// every new letter leads there. If `sigma` is a reordering of `d`'s alphabet,
/// only the letter order changes.
pub fn complete_over(d: &Dfa, sigma: &[Letter]) -> Result<Dfa> {
    if let Some(l) = d.alphabet.iter().find(|l| !sigma.contains(l)) {
        return Err(Error::rejected(format!("target alphabet lacks letter `{l}`")));
    }
    for (i, l) in sigma.iter().enumerate() {
        if sigma[..i].contains(l) {
            return Err(Error::rejected(format!("letter `{l}` appears twice")));
        }
    }
    if sigma == d.alphabet.as_slice() {
        return Ok(d.clone());
    }
    if sigma.len() == d.alphabet.len() {
        return d.restrict(sigma);
    }
    let sink = d.n;
    let n = d.n + 1;
    let delta = sigma
        .iter()
        .map(|l| {
            let image = match d.transformation(l) {
                Some(t) => t.image().iter().copied().chain([sink]).collect(),
                None => vec![sink; n],
            };
            Transformation::from_image(image).unwrap()
        })
        .collect();
    Dfa::new(n, sigma.to_vec(), delta, d.initial, d.finals())
}

/// Direct product over the union alphabet; a pair is final iff
/// `accept(left final, right final)`. Only reachable pairs are kept, numbered
/// in canonical breadth-first order.
pub fn product(left: &Dfa, right: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Dfa {
    let sigma = union_alphabet(&left.alphabet, &right.alphabet);
    let l = complete_over(left, &sigma).expect("union alphabet covers the left operand");
    let r = complete_over(right, &sigma).expect("union alphabet covers the right operand");
    let start = (l.initial, r.initial);
    let mut index: HashMap<(StateId, StateId), usize> = HashMap::from([(start, 0)]);
    let mut order = vec![start];
    let mut table: Vec<Vec<StateId>> = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let (p, q) = order[head];
        head += 1;
        let row = (0..sigma.len())
            .map(|a| {
                let next = (l.step(p, a), r.step(q, a));
                let fresh = order.len();
                *index.entry(next).or_insert_with(|| {
                    order.push(next);
                    fresh
                })
            })
            .collect();
        table.push(row);
    }
    let finals = order
        .iter()
        .map(|&(p, q)| accept(l.finals[p], r.finals[q]))
        .collect();
    Dfa::from_parts(sigma, table, 0, finals)
}

/// Language equality; differing alphabets are compared over their union.
pub fn equivalent(d1: &Dfa, d2: &Dfa) -> bool {
    product(d1, d2, |a, b| a != b).is_empty_language()
}

/// Shortest word (length-lexicographic) in `L(d1) \ L(d2)`, if any.
pub fn shortest_difference(d1: &Dfa, d2: &Dfa) -> Option<Vec<Letter>> {
    product(d1, d2, |a, b| a && !b).shortest_accepted()
}

/// Letters that appear in some accepted word.
pub fn occurring_letters(d: &Dfa) -> Vec<Letter> {
    let reach = d.reachable();
    let coreach = d.coreachable();
    d.alphabet
        .iter()
        .zip(&d.delta)
        .filter(|(_, t)| (0..d.n).any(|p| reach[p] && coreach[t.apply(p)]))
        .map(|(l, _)| l.clone())
        .collect()
}

/// Quotient complexity: the size of the minimal complete DFA over the letters
/// that actually occur in the language.
pub fn complexity(d: &Dfa) -> usize {
    let letters = occurring_letters(d);
    let restricted = d.restrict(&letters).expect("occurring letters belong to the alphabet");
    minimize(&restricted).n()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(image: &[usize]) -> Transformation {
        Transformation::from_image(image.to_vec()).unwrap()
    }

    /// `{a}` over `{a, b}`: 0 -a-> 1, everything else into the sink 2.
    fn just_a() -> Dfa {
        Dfa::new(3, word("ab"), vec![t(&[1, 2, 2]), t(&[2, 2, 2])], 0, [1]).unwrap()
    }

    #[test]
    fn construction_is_validated() {
        assert!(Dfa::new(0, vec![], vec![], 0, []).is_err());
        assert!(Dfa::new(2, word("a"), vec![t(&[0, 1])], 2, []).is_err());
        assert!(Dfa::new(2, word("a"), vec![t(&[0, 1])], 0, [5]).is_err());
        assert!(Dfa::new(2, word("aa"), vec![t(&[0, 1]), t(&[0, 1])], 0, []).is_err());
        assert!(Dfa::new(2, word("a"), vec![t(&[0, 1, 2])], 0, []).is_err());
        assert!(Dfa::new(2, word("ab"), vec![t(&[0, 1])], 0, []).is_err());
    }

    #[test]
    fn words_and_letters() {
        assert_eq!(word("e a a"), word("eaa"));
        assert_eq!(word("c1 a"), vec![Letter::from("c1"), Letter::from("a")]);
        assert_eq!(format_word(&word("ab")), "ab");
        assert_eq!(format_word(&[]), "ε");
        assert!(Letter::new("").is_err());
        assert!(Letter::new("a b").is_err());
    }

    #[test]
    fn apply_word_and_accepts() {
        let d = just_a();
        assert_eq!(d.apply_word(1, &[]).unwrap(), 1);
        assert!(d.accepts(&word("a")).unwrap());
        assert!(!d.accepts(&word("ab")).unwrap());
        assert!(!d.accepts(&[]).unwrap());
        assert_eq!(d.accepts(&word("z")), Err(Error::UnknownLetter("z".into())));
    }

    #[test]
    fn complete_over_adds_one_sink() {
        let d = just_a();
        assert_eq!(complete_over(&d, d.alphabet()).unwrap(), d);
        let wide = complete_over(&d, &word("abc")).unwrap();
        assert_eq!(wide.n(), 4);
        assert_eq!(wide.transformation(&"c".into()).unwrap().image(), &[3, 3, 3, 3]);
        assert!(equivalent(&wide, &d));
        assert!(complete_over(&d, &word("a")).is_err());
        let swapped = complete_over(&d, &word("ba")).unwrap();
        assert_eq!(swapped.n(), 3);
        assert_eq!(swapped.alphabet(), word("ba").as_slice());
    }

    #[test]
    fn occurring_letters_and_complexity() {
        let d = just_a();
        assert_eq!(occurring_letters(&d), word("a"));
        // {a} over its occurring alphabet {a}: initial, final, sink
        assert_eq!(complexity(&d), 3);
        let empty = Dfa::new(1, word("ab"), vec![t(&[0]), t(&[0])], 0, []).unwrap();
        assert!(occurring_letters(&empty).is_empty());
        assert_eq!(complexity(&empty), 1);
        // {ε}: accepting initial state, everything else to a sink
        let eps = Dfa::new(2, word("a"), vec![t(&[1, 1])], 0, [0]).unwrap();
        assert_eq!(complexity(&eps), 1);
    }

    #[test]
    fn equivalence_over_different_alphabets() {
        let d = just_a();
        let only_a = Dfa::new(3, word("a"), vec![t(&[1, 2, 2])], 0, [1]).unwrap();
        assert!(equivalent(&d, &only_a));
        let aa = Dfa::new(3, word("a"), vec![t(&[1, 2, 2])], 0, [2]).unwrap();
        assert!(!equivalent(&d, &aa));
        assert_eq!(shortest_difference(&aa, &d), Some(word("aa")));
        assert_eq!(shortest_difference(&d, &aa), Some(word("a")));
    }

    #[test]
    fn canonical_numbering_is_bfs() {
        // states listed out of order: 2 is initial, 0 unreachable
        let d = Dfa::new(3, word("ab"), vec![t(&[0, 1, 1]), t(&[0, 2, 2])], 2, [1]).unwrap();
        let c = d.canonical();
        assert_eq!(c.n(), 2);
        assert_eq!(c.initial(), 0);
        assert_eq!(c.transformations()[0].image(), &[1, 1]);
        assert_eq!(c.finals(), vec![1]);
    }

    #[test]
    fn shortest_accepted_is_shortlex() {
        // accepts words ending in b or of length 2 starting with a
        let d = Dfa::new(4, word("ab"), vec![t(&[1, 2, 1, 1]), t(&[3, 2, 3, 3])], 0, [2, 3]).unwrap();
        assert_eq!(d.shortest_accepted(), Some(word("b")));
        let none = Dfa::new(1, word("a"), vec![t(&[0])], 0, []).unwrap();
        assert_eq!(none.shortest_accepted(), None);
    }
}
