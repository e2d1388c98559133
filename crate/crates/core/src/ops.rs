//! Operations on regular languages, each returning a complete DFA.
//!
//! Results are determinized and trimmed to reachable states but not minimized;
//! use [`complexity`](crate::automata::complexity) to measure them.

use std::fmt;
use std::str::FromStr;

use crate::automata::{
    complete_over, determinize, product, union_alphabet, Dfa, Letter, Nfa,
};
use crate::error::{Error, Result};

/// The four binary boolean operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoolOp {
    Union,
    SymmetricDifference,
    Difference,
    Intersection,
}

impl BoolOp {
    pub const ALL: [BoolOp; 4] = [
        BoolOp::Union,
        BoolOp::SymmetricDifference,
        BoolOp::Difference,
        BoolOp::Intersection,
    ];

    pub fn eval(self, left: bool, right: bool) -> bool {
        match self {
            BoolOp::Union => left || right,
            BoolOp::SymmetricDifference => left != right,
            BoolOp::Difference => left && !right,
            BoolOp::Intersection => left && right,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            BoolOp::Union => "union",
            BoolOp::SymmetricDifference => "symdiff",
            BoolOp::Difference => "difference",
            BoolOp::Intersection => "intersection",
        }
    }
}

impl fmt::Display for BoolOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for BoolOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoolOp::ALL
            .into_iter()
            .find(|op| op.tag() == s)
            .ok_or_else(|| Error::rejected(format!("unknown boolean operation `{s}`")))
    }
}

/// A partial injective renaming of letters, given positionally: the `k`-th
/// entry says what becomes of the `k`-th letter of the source alphabet.
/// `None` deletes the letter; missing trailing entries are deletions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterMap {
    targets: Vec<Option<Letter>>,
}

impl LetterMap {
    pub fn new(targets: Vec<Option<Letter>>) -> Result<Self> {
        let defined: Vec<&Letter> = targets.iter().flatten().collect();
        for (i, l) in defined.iter().enumerate() {
            if defined[..i].contains(l) {
                return Err(Error::rejected(format!(
                    "letter map is not injective: `{l}` is a target twice"
                )));
            }
        }
        Ok(LetterMap { targets })
    }

    /// Parses a tuple such as `a,-,-,d,e` or `(a,-,c)`; `-` marks a deletion.
    pub fn parse(text: &str) -> Result<Self> {
        let inner = text.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(inner);
        if inner.trim().is_empty() {
            return LetterMap::new(Vec::new());
        }
        let targets = inner
            .split(',')
            .map(|tok| match tok.trim() {
                "-" | "−" => Ok(None),
                tok => Letter::new(tok).map(Some),
            })
            .collect::<Result<Vec<_>>>()?;
        LetterMap::new(targets)
    }

    /// The identity map on `alphabet`.
    pub fn identity(alphabet: &[Letter]) -> Self {
        LetterMap {
            targets: alphabet.iter().cloned().map(Some).collect(),
        }
    }

    pub fn targets(&self) -> &[Option<Letter>] {
        &self.targets
    }
}

impl fmt::Display for LetterMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .targets
            .iter()
            .map(|t| t.as_ref().map_or("-", Letter::as_str))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for LetterMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LetterMap::parse(s)
    }
}

/// The dialect of `d` under `pi`: deleted letters lose their transitions and
/// the remaining ones are renamed. The state set is unchanged.
pub fn apply_dialect(d: &Dfa, pi: &LetterMap) -> Result<Dfa> {
    if pi.targets.len() > d.alphabet().len() {
        return Err(Error::rejected(format!(
            "letter map has {} entries for an alphabet of {} letters",
            pi.targets.len(),
            d.alphabet().len()
        )));
    }
    let (alphabet, delta): (Vec<Letter>, Vec<_>) = pi
        .targets
        .iter()
        .zip(d.transformations())
        .filter_map(|(target, t)| target.clone().map(|l| (l, t.clone())))
        .unzip();
    Dfa::new(d.n(), alphabet, delta, d.initial(), d.finals())
}

/// Direct product of two DFAs over the same set of letters.
pub fn boolean_restricted(d1: &Dfa, d2: &Dfa, op: BoolOp) -> Result<Dfa> {
    let same_letters = d1.alphabet().len() == d2.alphabet().len()
        && d1.alphabet().iter().all(|l| d2.alphabet().contains(l));
    if !same_letters {
        return Err(Error::rejected(
            "restricted boolean operations need operands over the same alphabet",
        ));
    }
    Ok(product(d1, d2, |p, q| op.eval(p, q)))
}

/// Direct product after completing both operands over the union alphabet.
pub fn boolean_unrestricted(d1: &Dfa, d2: &Dfa, op: BoolOp) -> Dfa {
    product(d1, d2, |p, q| op.eval(p, q))
}

/// Side-by-side ε-NFA of `d1` and `d2` over the union alphabet.
fn disjoint_union(d1: &Dfa, d2: &Dfa) -> Nfa {
    let sigma = union_alphabet(d1.alphabet(), d2.alphabet());
    let offset = d1.n();
    let mut nfa = Nfa::new(d1.n() + d2.n(), sigma.clone());
    for (a, l) in sigma.iter().enumerate() {
        if let Some(t) = d1.transformation(l) {
            for p in 0..d1.n() {
                nfa.add_transition(p, a, t.apply(p)).unwrap();
            }
        }
        if let Some(t) = d2.transformation(l) {
            for p in 0..d2.n() {
                nfa.add_transition(offset + p, a, offset + t.apply(p)).unwrap();
            }
        }
    }
    nfa
}

/// Product (concatenation) `L(d1) L(d2)`.
pub fn concat(d1: &Dfa, d2: &Dfa) -> Dfa {
    let mut nfa = disjoint_union(d1, d2);
    let offset = d1.n();
    nfa.add_initial(d1.initial()).unwrap();
    for f in d1.finals() {
        nfa.add_epsilon(f, offset + d2.initial()).unwrap();
    }
    for f in d2.finals() {
        nfa.set_final(offset + f, true).unwrap();
    }
    determinize(&nfa)
}

/// Kleene star. A fresh initial state `0'` is final and copies the outgoing
/// transitions of the old initial state; every final state gets an
/// ε-transition to `0'`.
pub fn star(d: &Dfa) -> Dfa {
    let fresh = d.n();
    let mut nfa = Nfa::new(d.n() + 1, d.alphabet().to_vec());
    for (a, t) in d.transformations().iter().enumerate() {
        for p in 0..d.n() {
            nfa.add_transition(p, a, t.apply(p)).unwrap();
        }
        nfa.add_transition(fresh, a, t.apply(d.initial())).unwrap();
    }
    for f in d.finals() {
        nfa.set_final(f, true).unwrap();
        nfa.add_epsilon(f, fresh).unwrap();
    }
    nfa.set_final(fresh, true).unwrap();
    nfa.add_initial(fresh).unwrap();
    determinize(&nfa)
}

/// The reversal NFA of `d` (every transition reversed, final states initial,
/// the initial state the only final one).
pub fn reversal_nfa(d: &Dfa) -> Nfa {
    let mut nfa = Nfa::new(d.n(), d.alphabet().to_vec());
    for (a, t) in d.transformations().iter().enumerate() {
        for p in 0..d.n() {
            nfa.add_transition(t.apply(p), a, p).unwrap();
        }
    }
    for f in d.finals() {
        nfa.add_initial(f).unwrap();
    }
    nfa.set_final(d.initial(), true).unwrap();
    nfa
}

/// Reversal, determinized.
pub fn reverse(d: &Dfa) -> Dfa {
    determinize(&reversal_nfa(d))
}

/// Complement with respect to `d`'s own alphabet.
pub fn complement(d: &Dfa) -> Dfa {
    let flipped: Vec<usize> = (0..d.n()).filter(|&q| !d.is_final(q)).collect();
    d.with_finals(flipped).expect("same state set")
}

/// Completes `d` over `sigma` (see [`complete_over`]) and complements.
pub fn complement_over(d: &Dfa, sigma: &[Letter]) -> Result<Dfa> {
    Ok(complement(&complete_over(d, sigma)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{complexity, equivalent, minimize, word};
    use crate::transform::Transformation;

    fn t(image: &[usize]) -> Transformation {
        Transformation::from_image(image.to_vec()).unwrap()
    }

    /// `{a, ab, ac}` over `{a, b, c}`.
    fn a_ab_ac() -> Dfa {
        // 0 -a-> 1 (final) -b,c-> 2 (final), everything else to the sink 3
        Dfa::new(
            4,
            word("abc"),
            vec![t(&[1, 3, 3, 3]), t(&[3, 2, 3, 3]), t(&[3, 2, 3, 3])],
            0,
            [1, 2],
        )
        .unwrap()
    }

    /// Finite language given by its words, as a trie DFA over `sigma`.
    pub(crate) fn finite(sigma: &str, words: &[&str]) -> Dfa {
        let sigma = word(sigma);
        let mut rows: Vec<Vec<Option<usize>>> = vec![vec![None; sigma.len()]];
        let mut finals = vec![false];
        for w in words {
            let mut q = 0;
            for l in word(w) {
                let a = sigma.iter().position(|x| *x == l).unwrap();
                q = match rows[q][a] {
                    Some(p) => p,
                    None => {
                        rows.push(vec![None; sigma.len()]);
                        finals.push(false);
                        let p = rows.len() - 1;
                        rows[q][a] = Some(p);
                        p
                    }
                };
            }
            finals[q] = true;
        }
        let sink = rows.len();
        finals.push(false);
        let table: Vec<Vec<usize>> = rows
            .iter()
            .map(|r| r.iter().map(|x| x.unwrap_or(sink)).collect())
            .chain([vec![sink; sigma.len()]])
            .collect();
        Dfa::from_parts(sigma, table, 0, finals)
    }

    #[test]
    fn dialect_deletes_and_renames() {
        let pi = LetterMap::parse("b,-,d").unwrap();
        let dialect = apply_dialect(&a_ab_ac(), &pi).unwrap();
        assert_eq!(dialect.alphabet(), word("bd").as_slice());
        assert!(equivalent(&dialect, &finite("bd", &["b", "bd"])));
        let same = apply_dialect(&a_ab_ac(), &LetterMap::identity(&word("abc"))).unwrap();
        assert_eq!(same, a_ab_ac());
        // trailing deletions may be omitted
        let short = apply_dialect(&a_ab_ac(), &LetterMap::parse("(a)").unwrap()).unwrap();
        assert!(equivalent(&short, &finite("a", &["a"])));
    }

    #[test]
    fn dialect_errors() {
        assert!(LetterMap::parse("a,a").is_err());
        assert!(apply_dialect(&a_ab_ac(), &LetterMap::parse("a,b,c,d").unwrap()).is_err());
        assert_eq!(LetterMap::parse("a,-,−,d").unwrap().to_string(), "(a,-,-,d)");
    }

    #[test]
    fn restricted_needs_same_letters() {
        let x = finite("ab", &["a"]);
        let y = finite("ba", &["b"]);
        let z = finite("abc", &["c"]);
        assert!(boolean_restricted(&x, &y, BoolOp::Union).is_ok());
        assert!(boolean_restricted(&x, &z, BoolOp::Union).is_err());
        let u = boolean_unrestricted(&x, &z, BoolOp::Union);
        assert!(equivalent(&u, &finite("abc", &["a", "c"])));
    }

    #[test]
    fn boolean_truth_tables() {
        let x = finite("ab", &["a", "ab"]);
        let y = finite("ab", &["ab", "b"]);
        let cases = [
            (BoolOp::Union, vec!["a", "ab", "b"]),
            (BoolOp::SymmetricDifference, vec!["a", "b"]),
            (BoolOp::Difference, vec!["a"]),
            (BoolOp::Intersection, vec!["ab"]),
        ];
        for (op, expect) in cases {
            let r = boolean_restricted(&x, &y, op).unwrap();
            assert!(equivalent(&r, &finite("ab", &expect)), "{op}");
        }
        let d = a_ab_ac();
        assert_eq!(
            complexity(&boolean_restricted(&d, &d, BoolOp::Union).unwrap()),
            complexity(&d)
        );
    }

    #[test]
    fn concat_star_reverse_on_finite_languages() {
        let x = finite("ab", &["a", "b"]);
        let y = finite("ab", &["b"]);
        assert!(equivalent(&concat(&x, &y), &finite("ab", &["ab", "bb"])));
        let a = finite("a", &["a"]);
        assert!(equivalent(&reverse(&a), &a));
        assert!(equivalent(&reverse(&finite("ab", &["ab"])), &finite("ab", &["ba"])));
        let s = star(&finite("a", &["aa"]));
        for (w, expect) in [("", true), ("a", false), ("aa", true), ("aaa", false), ("aaaa", true)] {
            assert_eq!(s.accepts(&word(w)).unwrap(), expect, "{w}");
        }
    }

    #[test]
    fn concat_over_different_alphabets() {
        let x = finite("a", &["a"]);
        let y = finite("b", &["b"]);
        let xy = concat(&x, &y);
        assert_eq!(xy.alphabet(), word("ab").as_slice());
        assert!(equivalent(&xy, &finite("ab", &["ab"])));
    }

    #[test]
    fn star_with_self_loop_on_initial() {
        // a*b over {a,b}: star must not accept "a" alone
        let d = Dfa::new(3, word("ab"), vec![t(&[0, 2, 2]), t(&[1, 2, 2])], 0, [1]).unwrap();
        let s = star(&d);
        assert!(s.accepts(&word("")).unwrap());
        assert!(!s.accepts(&word("a")).unwrap());
        assert!(s.accepts(&word("abab")).unwrap());
        assert!(s.accepts(&word("aabb")).unwrap());
    }

    #[test]
    fn complement_is_an_involution() {
        let d = a_ab_ac();
        assert_eq!(complement(&complement(&d)), d);
        assert!(!equivalent(&complement(&d), &d));
        assert_eq!(minimize(&complement(&d)).n(), minimize(&d).n());
        let wide = complement_over(&finite("a", &["a"]), &word("ab")).unwrap();
        assert!(wide.accepts(&word("b")).unwrap());
    }
}
