//! Transformations of `Q_n = {0, .., n-1}`.
//!
//! Composition is written left to right: `s.then(&t)` maps `q` to `(qs)t`.
//! The textual notation concatenates atoms that are applied in order:
//!
//! | atom          | meaning                                 |
//! |---------------|-----------------------------------------|
//! | `1`           | identity                                |
//! | `(0,1,2)`     | cycle `0 -> 1 -> 2 -> 0`                |
//! | `(3->0)`      | send `3` to `0`                         |
//! | `({0,1}->3)`  | send every listed state to `3`          |
//! | `(Q->1)`      | constant map onto `1`                   |

use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A total map `Q_n -> Q_n`, stored as its image sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Transformation {
    image: Vec<usize>,
}

/// Direction for [`Transformation::shift_range`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shift {
    Up,
    Down,
}

impl Transformation {
    pub fn identity(n: usize) -> Self {
        Transformation {
            image: (0..n).collect(),
        }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if let Some((q, &p)) = image.iter().enumerate().find(|(_, &p)| p >= n) {
            return Err(Error::rejected(format!(
                "image of {q} is {p}, outside Q_{n}"
            )));
        }
        Ok(Transformation { image })
    }

    /// Number of states the transformation acts on.
    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, q: usize) -> usize {
        self.image[q]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(q, &p)| q == p)
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.n()];
        self.image.iter().all(|&p| !std::mem::replace(&mut seen[p], true))
    }

    /// The cycle `(q_0, q_1, .., q_{k-1})`; identity on every other state.
    pub fn cycle(n: usize, states: &[usize]) -> Result<Self> {
        if states.len() < 2 {
            return Err(Error::rejected("a cycle needs at least two states"));
        }
        check_range(n, states)?;
        let mut seen = vec![false; n];
        for &q in states {
            if std::mem::replace(&mut seen[q], true) {
                return Err(Error::rejected(format!("state {q} repeated in cycle")));
            }
        }
        let mut image: Vec<usize> = (0..n).collect();
        for (i, &q) in states.iter().enumerate() {
            image[q] = states[(i + 1) % states.len()];
        }
        Ok(Transformation { image })
    }

    /// `(P -> q)`: every state of `from` goes to `to`, the rest are fixed.
    pub fn send_to(n: usize, from: &[usize], to: usize) -> Result<Self> {
        check_range(n, from)?;
        check_range(n, &[to])?;
        let mut image: Vec<usize> = (0..n).collect();
        for &p in from {
            image[p] = to;
        }
        Ok(Transformation { image })
    }

    /// The constant map `(Q_n -> q)`.
    pub fn constant(n: usize, to: usize) -> Result<Self> {
        check_range(n, &[to])?;
        Ok(Transformation { image: vec![to; n] })
    }

    /// `q -> q+1` (or `q -> q-1`) for `i <= q <= j`, identity elsewhere.
    pub fn shift_range(n: usize, i: usize, j: usize, dir: Shift) -> Result<Self> {
        if i > j || j >= n {
            return Err(Error::rejected(format!("bad range {i}..={j} in Q_{n}")));
        }
        let mut image: Vec<usize> = (0..n).collect();
        match dir {
            Shift::Up => {
                if j + 1 >= n {
                    return Err(Error::rejected("shift moves n-1 outside Q_n"));
                }
                image[i..=j].iter_mut().for_each(|q| *q += 1);
            }
            Shift::Down => {
                if i == 0 {
                    return Err(Error::rejected("shift moves 0 outside Q_n"));
                }
                image[i..=j].iter_mut().for_each(|q| *q -= 1);
            }
        }
        Ok(Transformation { image })
    }

    /// Apply `self` first, then `other`.
    ///
    /// Panics if the two transformations act on different state counts; use
    /// [`Transformation::compose_many`] for a checked version.
    pub fn then(&self, other: &Transformation) -> Transformation {
        assert_eq!(self.n(), other.n(), "composing transformations of different degree");
        Transformation {
            image: self.image.iter().map(|&p| other.image[p]).collect(),
        }
    }

    /// Left-to-right composition of all parts.
    pub fn compose_many(parts: &[Transformation]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::rejected("nothing to compose"))?;
        let mut acc = first.clone();
        for t in &parts[1..] {
            if t.n() != acc.n() {
                return Err(Error::rejected(format!(
                    "cannot compose transformations of Q_{} and Q_{}",
                    acc.n(),
                    t.n()
                )));
            }
            acc = acc.then(t);
        }
        Ok(acc)
    }

    /// `t` composed with itself `k` times; `k = 0` gives the identity.
    pub fn power(&self, k: usize) -> Transformation {
        (0..k).fold(Transformation::identity(self.n()), |acc, _| acc.then(self))
    }

    /// Parse the atom notation described in the module docs.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        Parser { n, text, pos: 0 }.parse()
    }

    /// Canonical atom notation; [`Transformation::parse`] inverts it.
    pub fn notation(&self) -> String {
        self.to_string()
    }

    /// Split into atoms whose left-to-right composition is `self`.
    fn atoms(&self) -> Vec<Atom> {
        let n = self.n();
        let t = &self.image;
        // A state lies on a cycle iff iterating t from it returns to it.
        let on_cycle: Vec<bool> = (0..n)
            .map(|q| {
                let mut p = t[q];
                for _ in 0..n {
                    if p == q {
                        return true;
                    }
                    p = t[p];
                }
                false
            })
            .collect();

        let mut atoms = Vec::new();
        let mut cycle_of = vec![usize::MAX; n];
        let mut visited = vec![false; n];
        for q in 0..n {
            if on_cycle[q] && t[q] != q && !visited[q] {
                let mut members = vec![q];
                visited[q] = true;
                let mut p = t[q];
                while p != q {
                    visited[p] = true;
                    members.push(p);
                    p = t[p];
                }
                for &m in &members {
                    cycle_of[m] = atoms.len();
                }
                atoms.push(Atom::Cycle(members));
            }
        }

        let mut send_of = vec![usize::MAX; n];
        for q in 0..n {
            if !on_cycle[q] {
                let target = t[q];
                if send_of[target] == usize::MAX {
                    send_of[target] = atoms.len();
                    atoms.push(Atom::Send(Vec::new(), target));
                }
                if let Atom::Send(from, _) = &mut atoms[send_of[target]] {
                    from.push(q);
                }
            }
        }

        // A send onto q must follow whatever else moves q.
        let mut after: Vec<Vec<usize>> = vec![Vec::new(); atoms.len()];
        let mut pending = vec![0usize; atoms.len()];
        for (i, atom) in atoms.iter().enumerate() {
            if let Atom::Send(_, q) = atom {
                let q = *q;
                let blocker = if cycle_of[q] != usize::MAX {
                    Some(cycle_of[q])
                } else if !on_cycle[q] {
                    Some(send_of[t[q]])
                } else {
                    None
                };
                if let Some(b) = blocker {
                    after[b].push(i);
                    pending[i] += 1;
                }
            }
        }

        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| pending[*i] == 0)
            .map(|(i, a)| Reverse((a.smallest_moved(), i)))
            .collect();
        let mut order = Vec::with_capacity(atoms.len());
        while let Some(Reverse((_, i))) = heap.pop() {
            order.push(i);
            for &j in &after[i] {
                pending[j] -= 1;
                if pending[j] == 0 {
                    heap.push(Reverse((atoms[j].smallest_moved(), j)));
                }
            }
        }
        let mut slots: Vec<Option<Atom>> = atoms.into_iter().map(Some).collect();
        order.into_iter().filter_map(|i| slots[i].take()).collect()
    }
}

fn check_range(n: usize, states: &[usize]) -> Result<()> {
    match states.iter().find(|&&q| q >= n) {
        Some(q) => Err(Error::rejected(format!("state {q} outside Q_{n}"))),
        None => Ok(()),
    }
}

enum Atom {
    Cycle(Vec<usize>),
    Send(Vec<usize>, usize),
}

impl Atom {
    fn smallest_moved(&self) -> usize {
        match self {
            Atom::Cycle(c) => c[0],
            Atom::Send(from, _) => from[0],
        }
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        let n = self.n();
        for atom in self.atoms() {
            match atom {
                Atom::Cycle(members) => {
                    let parts: Vec<String> = members.iter().map(|q| q.to_string()).collect();
                    write!(f, "({})", parts.join(","))?;
                }
                Atom::Send(from, to) if from.len() + 1 == n => write!(f, "(Q->{to})")?,
                Atom::Send(from, to) if from.len() == 1 => write!(f, "({}->{to})", from[0])?,
                Atom::Send(from, to) => {
                    let parts: Vec<String> = from.iter().map(|q| q.to_string()).collect();
                    write!(f, "({{{}}}->{to})", parts.join(","))?;
                }
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    n: usize,
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn parse(mut self) -> Result<Transformation> {
        if self.text.is_empty() {
            return Err(Error::parse(0, "empty transformation"));
        }
        let mut acc = Transformation::identity(self.n);
        while self.pos < self.text.len() {
            let atom = self.atom()?;
            acc = acc.then(&atom);
        }
        Ok(acc)
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{token}`")))
        }
    }

    fn arrow(&mut self) -> Result<()> {
        if self.eat("->") || self.eat("→") {
            Ok(())
        } else {
            Err(Error::parse(self.pos, "expected `->`"))
        }
    }

    fn state(&mut self) -> Result<usize> {
        let start = self.pos;
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(Error::parse(start, "expected a state number"));
        }
        self.pos += digits;
        let q: usize = self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(start, "state number too large"))?;
        if q >= self.n {
            return Err(Error::parse(start, format!("state {q} outside Q_{}", self.n)));
        }
        Ok(q)
    }

    fn state_list(&mut self, close: &str) -> Result<Vec<usize>> {
        let mut states = vec![self.state()?];
        while self.eat(",") {
            states.push(self.state()?);
        }
        self.expect(close)?;
        Ok(states)
    }

    fn atom(&mut self) -> Result<Transformation> {
        let start = self.pos;
        if self.eat("1") {
            return Ok(Transformation::identity(self.n));
        }
        self.expect("(")?;
        let t = if self.eat("Q") {
            self.arrow()?;
            let to = self.state()?;
            Transformation::constant(self.n, to)?
        } else if self.eat("{") {
            let from = self.state_list("}")?;
            self.arrow()?;
            let to = self.state()?;
            Transformation::send_to(self.n, &from, to)?
        } else {
            let first = self.state()?;
            if self.rest().starts_with("->") || self.rest().starts_with('→') {
                self.arrow()?;
                let to = self.state()?;
                Transformation::send_to(self.n, &[first], to)?
            } else {
                self.expect(",")?;
                let mut members = vec![first];
                members.extend(self.state_list(")")?);
                self.pos -= 1;
                Transformation::cycle(self.n, &members)
                    .map_err(|e| Error::parse(start, e.to_string()))?
            }
        };
        self.expect(")")?;
        Ok(t)
    }
}
