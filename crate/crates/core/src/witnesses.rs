//! Witness DFA streams and the closed-form complexities they meet.
//!
//! | family              | alphabet                 | final states                 | from |
//! |---------------------|--------------------------|------------------------------|------|
//! | `regular`           | a b c                    | {n-1}                        | 3    |
//! | `left-ideal`        | a b c d e                | {n-1}                        | 4    |
//! | `left-ideal-alt`    | a b c d e                | {1, .., n-1}                 | 4    |
//! | `suffix-closed`     | a b c d e                | {0}                          | 4    |
//! | `suffix-free-5`     | a b c d e                | odd q with 0 < q < n-1       | 4    |
//! | `suffix-free-n`     | a b c1 .. c(n-2)         | {n-2}                        | 4    |
//! | `suffix-free-3`     | a b c                    | {n-2}                        | 4    |
//! | `suffix-free-2star` | a b c                    | {1}                          | 6    |

use std::fmt;
use std::str::FromStr;

use crate::automata::{Dfa, Letter};
use crate::error::{Error, Result};
use crate::measures::{atom_formula, AtomClass, AtomKey};
use crate::ops::{apply_dialect, BoolOp, LetterMap};
use crate::transform::Transformation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Regular,
    LeftIdeal,
    LeftIdealAlt,
    SuffixClosed,
    SuffixFree5,
    SuffixFreeN,
    SuffixFree3,
    SuffixFree2Star,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Regular,
        Family::LeftIdeal,
        Family::LeftIdealAlt,
        Family::SuffixClosed,
        Family::SuffixFree5,
        Family::SuffixFreeN,
        Family::SuffixFree3,
        Family::SuffixFree2Star,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Regular => "regular",
            Family::LeftIdeal => "left-ideal",
            Family::LeftIdealAlt => "left-ideal-alt",
            Family::SuffixClosed => "suffix-closed",
            Family::SuffixFree5 => "suffix-free-5",
            Family::SuffixFreeN => "suffix-free-n",
            Family::SuffixFree3 => "suffix-free-3",
            Family::SuffixFree2Star => "suffix-free-2star",
        }
    }

    /// Smallest `n` for which the stream is defined.
    pub fn min_n(self) -> usize {
        match self {
            Family::Regular => 3,
            Family::SuffixFree2Star => 6,
            _ => 4,
        }
    }

    pub fn atom_class(self) -> Option<AtomClass> {
        match self {
            Family::LeftIdeal | Family::LeftIdealAlt => Some(AtomClass::LeftIdeal),
            Family::SuffixClosed => Some(AtomClass::SuffixClosed),
            Family::SuffixFree5 => Some(AtomClass::SuffixFree),
            _ => None,
        }
    }

    pub fn is_suffix_free(self) -> bool {
        matches!(
            self,
            Family::SuffixFree5 | Family::SuffixFreeN | Family::SuffixFree3 | Family::SuffixFree2Star
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::rejected(format!("unknown family `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Restricted,
    Unrestricted,
}

impl Mode {
    pub fn tag(self) -> &'static str {
        match self {
            Mode::Restricted => "restricted",
            Mode::Unrestricted => "unrestricted",
        }
    }
}

/// A measured quantity. Binary quantities carry the alphabet mode.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantity {
    Semigroup,
    /// Sum of the complexities of all quotients.
    Quotients,
    Reverse,
    AtomCount,
    Atom(AtomKey),
    Star,
    Product(Mode),
    Boolean(BoolOp, Mode),
}

impl Quantity {
    /// Every quantity tag, in report order. `atom` stands for all atoms.
    pub const TAGS: [&'static str; 16] = [
        "semigroup",
        "quotients",
        "reverse",
        "atoms-count",
        "atom",
        "star",
        "product-restricted",
        "product-unrestricted",
        "union-restricted",
        "union-unrestricted",
        "symdiff-restricted",
        "symdiff-unrestricted",
        "difference-restricted",
        "difference-unrestricted",
        "intersection-restricted",
        "intersection-unrestricted",
    ];

    pub fn tag(&self) -> String {
        match self {
            Quantity::Semigroup => "semigroup".into(),
            Quantity::Quotients => "quotients".into(),
            Quantity::Reverse => "reverse".into(),
            Quantity::AtomCount => "atoms-count".into(),
            Quantity::Atom(_) => "atom".into(),
            Quantity::Star => "star".into(),
            Quantity::Product(mode) => format!("product-{}", mode.tag()),
            Quantity::Boolean(op, mode) => format!("{}-{}", op.tag(), mode.tag()),
        }
    }

    pub fn is_binary(&self) -> bool {
        matches!(self, Quantity::Product(_) | Quantity::Boolean(..))
    }

    /// Parses a tag other than `atom`.
    pub fn parse_tag(tag: &str) -> Result<Quantity> {
        let simple = match tag {
            "semigroup" => Some(Quantity::Semigroup),
            "quotients" => Some(Quantity::Quotients),
            "reverse" => Some(Quantity::Reverse),
            "atoms-count" => Some(Quantity::AtomCount),
            "star" => Some(Quantity::Star),
            _ => None,
        };
        if let Some(q) = simple {
            return Ok(q);
        }
        let (head, mode) = tag
            .rsplit_once('-')
            .ok_or_else(|| Error::rejected(format!("unknown quantity `{tag}`")))?;
        let mode = match mode {
            "restricted" => Mode::Restricted,
            "unrestricted" => Mode::Unrestricted,
            _ => return Err(Error::rejected(format!("unknown quantity `{tag}`"))),
        };
        if head == "product" {
            return Ok(Quantity::Product(mode));
        }
        head.parse::<BoolOp>()
            .map(|op| Quantity::Boolean(op, mode))
            .map_err(|_| Error::rejected(format!("unknown quantity `{tag}`")))
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Atom(key) => write!(f, "atom{key}"),
            q => f.write_str(&q.tag()),
        }
    }
}

fn cyc(n: usize, states: impl IntoIterator<Item = usize>) -> Transformation {
    let states: Vec<usize> = states.into_iter().collect();
    if states.len() < 2 {
        Transformation::identity(n)
    } else {
        Transformation::cycle(n, &states).expect("witness cycle is valid")
    }
}

fn send(n: usize, from: impl IntoIterator<Item = usize>, to: usize) -> Transformation {
    let from: Vec<usize> = from.into_iter().collect();
    Transformation::send_to(n, &from, to).expect("witness send is valid")
}

fn then(parts: &[Transformation]) -> Transformation {
    Transformation::compose_many(parts).expect("witness parts share a degree")
}

fn letters(tokens: &[&str]) -> Vec<Letter> {
    tokens.iter().map(|&t| Letter::from(t)).collect()
}

/// The DFA of the given stream at size `n`.
pub fn make_witness(family: Family, n: usize) -> Result<Dfa> {
    if n < family.min_n() {
        return Err(Error::rejected(format!(
            "{family} is defined for n >= {}, got {n}",
            family.min_n()
        )));
    }
    let last = n - 1;
    let build = |alphabet: Vec<Letter>, delta: Vec<Transformation>, finals: Vec<usize>| {
        Dfa::new(n, alphabet, delta, 0, finals)
    };
    match family {
        Family::Regular => build(
            letters(&["a", "b", "c"]),
            vec![cyc(n, 0..n), cyc(n, [0, 1]), send(n, [last], 0)],
            vec![last],
        ),
        Family::LeftIdeal | Family::LeftIdealAlt | Family::SuffixClosed => {
            let finals = match family {
                Family::LeftIdeal => vec![last],
                Family::LeftIdealAlt => (1..n).collect(),
                _ => vec![0],
            };
            build(
                letters(&["a", "b", "c", "d", "e"]),
                vec![
                    cyc(n, 1..n),
                    cyc(n, [1, 2]),
                    send(n, [last], 1),
                    send(n, [last], 0),
                    send(n, 0..n, 1),
                ],
                finals,
            )
        }
        Family::SuffixFree5 => build(
            letters(&["a", "b", "c", "d", "e"]),
            vec![
                then(&[send(n, [0], last), cyc(n, 1..last)]),
                then(&[send(n, [0], last), cyc(n, [1, 2])]),
                then(&[send(n, [0], last), send(n, [n - 2], 1)]),
                send(n, [0, 1], last),
                then(&[send(n, 1..n, last), send(n, [0], 1)]),
            ],
            (1..last).filter(|q| q % 2 == 1).collect(),
        ),
        Family::SuffixFreeN => {
            let mut alphabet = letters(&["a", "b"]);
            let mut delta = vec![
                then(&[send(n, [0], last), cyc(n, 1..last)]),
                then(&[send(n, [0], last), cyc(n, [1, 2])]),
            ];
            for p in 1..=n - 2 {
                alphabet.push(Letter::from(format!("c{p}").as_str()));
                delta.push(then(&[send(n, [p], last), send(n, [0], p)]));
            }
            build(alphabet, delta, vec![n - 2])
        }
        Family::SuffixFree3 => build(
            letters(&["a", "b", "c"]),
            vec![
                then(&[send(n, [0], last), cyc(n, 1..last)]),
                then(&[send(n, [0], last), cyc(n, [1, 2])]),
                // 1 goes to the empty state n-1, which is a sink
                then(&[send(n, [1], last), send(n, [0], 1)]),
            ],
            vec![n - 2],
        ),
        Family::SuffixFree2Star => build(
            letters(&["a", "b", "c"]),
            vec![
                then(&[send(n, [0], last), cyc(n, [1, 2, 3]), cyc(n, 4..last)]),
                then(&[
                    send(n, [2], last),
                    send(n, [1], 2),
                    send(n, [0], 1),
                    cyc(n, [3, 4]),
                ]),
                then(&[send(n, [0], last), cyc(n, 1..last)]),
            ],
            vec![1],
        ),
    }
}

/// `make_witness` followed by [`apply_dialect`].
pub fn make_dialect(family: Family, n: usize, pi: &LetterMap) -> Result<Dfa> {
    apply_dialect(&make_witness(family, n)?, pi)
}

/// Closed-form value of `quantity` for the stream `family`; `m` is the size of
/// the left operand of binary quantities.
pub fn expected(family: Family, quantity: &Quantity, m: Option<usize>, n: usize) -> Result<u64> {
    let uncovered = || {
        Error::rejected(format!(
            "no closed form for {quantity} on {family} (m = {m:?}, n = {n})"
        ))
    };
    if n < family.min_n() {
        return Err(uncovered());
    }
    let m = match (quantity.is_binary(), m) {
        (true, Some(m)) if m >= family.min_n() => m as u64,
        (true, _) => return Err(uncovered()),
        (false, _) => 0,
    };
    let nn = n as u64;
    let pow = |b: u64, e: u64| b.pow(e as u32);
    let value = match (family, quantity) {
        (_, Quantity::Atom(key)) => {
            let class = family.atom_class().ok_or_else(uncovered)?;
            atom_formula(class, n, key)?
        }

        (Family::Regular, Quantity::Semigroup) => pow(nn, nn),
        (Family::Regular, Quantity::Quotients) => nn * nn,
        (Family::Regular, Quantity::Reverse | Quantity::AtomCount) => pow(2, nn),
        (Family::Regular, Quantity::Star) => pow(2, nn - 1) + pow(2, nn - 2),
        (Family::Regular, Quantity::Product(Mode::Restricted)) => (m - 1) * pow(2, nn) + pow(2, nn - 1),
        (Family::Regular, Quantity::Product(Mode::Unrestricted)) => m * pow(2, nn) + pow(2, nn - 1),

        (
            Family::LeftIdeal | Family::LeftIdealAlt | Family::SuffixClosed,
            Quantity::Semigroup,
        ) => pow(nn, nn - 1) + nn - 1,
        (Family::LeftIdeal | Family::LeftIdealAlt | Family::SuffixClosed, Quantity::Quotients) => {
            nn * nn
        }
        (
            Family::LeftIdeal | Family::LeftIdealAlt | Family::SuffixClosed,
            Quantity::Reverse | Quantity::AtomCount,
        ) => pow(2, nn - 1) + 1,
        (Family::LeftIdeal | Family::LeftIdealAlt, Quantity::Star) => nn + 1,
        (Family::LeftIdeal, Quantity::Product(Mode::Restricted)) => m + nn - 1,
        (Family::LeftIdeal, Quantity::Product(Mode::Unrestricted)) => m * nn + m + nn,
        (Family::SuffixClosed, Quantity::Star) => nn,
        (Family::SuffixClosed, Quantity::Product(Mode::Restricted)) => m * nn - nn + 1,
        (Family::SuffixClosed, Quantity::Product(Mode::Unrestricted)) => m * nn + m + 1,

        (
            Family::Regular | Family::LeftIdeal | Family::LeftIdealAlt | Family::SuffixClosed,
            Quantity::Boolean(op, mode),
        ) => match (mode, op) {
            (Mode::Restricted, _) | (Mode::Unrestricted, BoolOp::Intersection) => m * nn,
            (Mode::Unrestricted, BoolOp::Union | BoolOp::SymmetricDifference) => (m + 1) * (nn + 1),
            (Mode::Unrestricted, BoolOp::Difference) => m * nn + m,
        },

        (Family::SuffixFree5, Quantity::Semigroup) if n >= 6 => pow(nn - 1, nn - 2) + nn - 2,
        // L itself, the empty quotient, and n-2 quotients of complexity n-1
        (Family::SuffixFree5, Quantity::Quotients) => nn + 1 + (nn - 2) * (nn - 1),
        (Family::SuffixFree5, Quantity::Reverse | Quantity::AtomCount) => pow(2, nn - 2) + 1,
        (Family::SuffixFree3 | Family::SuffixFree2Star, Quantity::Star) => pow(2, nn - 2) + 1,
        (Family::SuffixFree3 | Family::SuffixFree2Star, Quantity::Product(_)) => {
            (m - 1) * pow(2, nn - 2) + 1
        }
        (Family::SuffixFree3, Quantity::Boolean(..)) if (m, nn) == (4, 4) => {
            return Err(uncovered())
        }
        (
            Family::SuffixFree5 | Family::SuffixFree3 | Family::SuffixFree2Star,
            Quantity::Boolean(op, _),
        ) => match op {
            BoolOp::Union | BoolOp::SymmetricDifference => m * nn - (m + nn - 2),
            BoolOp::Difference => m * nn - (m + 2 * nn - 4),
            BoolOp::Intersection => m * nn - 2 * (m + nn - 3),
        },

        _ => return Err(uncovered()),
    };
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{minimize, word};

    fn images(d: &Dfa) -> Vec<Vec<usize>> {
        d.transformations().iter().map(|t| t.image().to_vec()).collect()
    }

    #[test]
    fn left_ideal_expansion() {
        let d = make_witness(Family::LeftIdeal, 4).unwrap();
        assert_eq!(
            images(&d),
            vec![
                vec![0, 2, 3, 1],
                vec![0, 2, 1, 3],
                vec![0, 1, 2, 1],
                vec![0, 1, 2, 0],
                vec![1, 1, 1, 1],
            ]
        );
        assert_eq!(d.finals(), vec![3]);
        assert_eq!(d.alphabet(), word("abcde").as_slice());
    }

    #[test]
    fn regular_expansion() {
        let d = make_witness(Family::Regular, 3).unwrap();
        assert_eq!(images(&d), vec![vec![1, 2, 0], vec![1, 0, 2], vec![0, 1, 0]]);
        assert_eq!(d.finals(), vec![2]);
    }

    #[test]
    fn suffix_free_expansions() {
        let d = make_witness(Family::SuffixFree3, 4).unwrap();
        assert_eq!(images(&d), vec![vec![3, 2, 1, 3], vec![3, 2, 1, 3], vec![1, 3, 2, 3]]);
        assert_eq!(d.finals(), vec![2]);

        let d = make_witness(Family::SuffixFree5, 6).unwrap();
        assert_eq!(
            images(&d),
            vec![
                vec![5, 2, 3, 4, 1, 5],
                vec![5, 2, 1, 3, 4, 5],
                vec![5, 1, 2, 3, 1, 5],
                vec![5, 5, 2, 3, 4, 5],
                vec![1, 5, 5, 5, 5, 5],
            ]
        );
        assert_eq!(d.finals(), vec![1, 3]);
        let d4 = make_witness(Family::SuffixFree5, 4).unwrap();
        assert_eq!(d4.transformations()[0], d4.transformations()[1]);

        let d = make_witness(Family::SuffixFreeN, 5).unwrap();
        assert_eq!(d.alphabet(), word("a b c1 c2 c3").as_slice());
        assert_eq!(d.transformations()[3].image(), &[2, 1, 4, 3, 4]);
        assert_eq!(d.finals(), vec![3]);

        let d = make_witness(Family::SuffixFree2Star, 7).unwrap();
        assert_eq!(
            images(&d),
            vec![
                vec![6, 2, 3, 1, 5, 4, 6],
                vec![1, 2, 6, 4, 3, 5, 6],
                vec![6, 2, 3, 4, 5, 1, 6],
            ]
        );
        assert_eq!(d.finals(), vec![1]);
    }

    #[test]
    fn minimum_sizes() {
        assert!(make_witness(Family::Regular, 2).is_err());
        assert!(make_witness(Family::LeftIdeal, 3).is_err());
        assert!(make_witness(Family::SuffixFree2Star, 5).is_err());
        for f in Family::ALL {
            let d = make_witness(f, f.min_n() + 1).unwrap();
            assert_eq!(minimize(&d).n(), f.min_n() + 1, "{f}");
        }
    }

    #[test]
    fn dialects() {
        let pi = LetterMap::parse("a,-,-,d,e").unwrap();
        let d = make_dialect(Family::LeftIdealAlt, 4, &pi).unwrap();
        assert_eq!(d.alphabet(), word("ade").as_slice());
        let id = LetterMap::identity(&word("abcde"));
        assert_eq!(
            make_dialect(Family::LeftIdeal, 5, &id).unwrap(),
            make_witness(Family::LeftIdeal, 5).unwrap()
        );
        let p = make_dialect(Family::SuffixFree3, 5, &"c,a,b".parse().unwrap()).unwrap();
        assert_eq!(p.alphabet(), word("cab").as_slice());
        assert_eq!(p.transformations()[0], make_witness(Family::SuffixFree3, 5).unwrap().transformations()[0]);
    }

    #[test]
    fn family_and_quantity_tags() {
        for f in Family::ALL {
            assert_eq!(f.tag().parse::<Family>().unwrap(), f);
        }
        for tag in Quantity::TAGS.iter().filter(|t| **t != "atom") {
            assert_eq!(Quantity::parse_tag(tag).unwrap().tag(), *tag);
        }
        assert_eq!(
            Quantity::parse_tag("intersection-unrestricted").unwrap(),
            Quantity::Boolean(BoolOp::Intersection, Mode::Unrestricted)
        );
        assert!(Quantity::parse_tag("bogus-restricted").is_err());
        assert!("nope".parse::<Family>().is_err());
    }

    #[test]
    fn expected_values() {
        let e = |f, q: Quantity, m, n| expected(f, &q, m, n).unwrap();
        assert_eq!(e(Family::LeftIdeal, Quantity::Product(Mode::Unrestricted), Some(4), 5), 29);
        assert_eq!(e(Family::SuffixClosed, Quantity::Star, None, 7), 7);
        assert_eq!(
            e(Family::SuffixFree3, Quantity::Boolean(BoolOp::Union, Mode::Restricted), Some(5), 4),
            13
        );
        assert_eq!(e(Family::LeftIdeal, Quantity::Semigroup, None, 4), 67);
        assert_eq!(e(Family::LeftIdeal, Quantity::Semigroup, None, 7), 117_655);
        assert_eq!(e(Family::SuffixFree5, Quantity::Semigroup, None, 6), 629);
        assert_eq!(e(Family::SuffixFree5, Quantity::Reverse, None, 8), 65);
        assert_eq!(e(Family::SuffixFree3, Quantity::Product(Mode::Restricted), Some(5), 5), 33);
        assert_eq!(e(Family::Regular, Quantity::Reverse, None, 5), 32);
        assert_eq!(e(Family::Regular, Quantity::Star, None, 4), 12);
        assert_eq!(
            e(Family::SuffixClosed, Quantity::Boolean(BoolOp::Difference, Mode::Unrestricted), Some(4), 4),
            20
        );
        assert_eq!(e(Family::LeftIdeal, Quantity::Atom(AtomKey::new([1])), None, 4), 13);
    }

    #[test]
    fn expected_rejects_uncovered() {
        let union = Quantity::Boolean(BoolOp::Union, Mode::Restricted);
        assert!(expected(Family::SuffixFree3, &union, Some(4), 4).is_err());
        assert!(expected(Family::SuffixFree5, &union, Some(4), 4).is_ok());
        assert!(expected(Family::LeftIdealAlt, &Quantity::Product(Mode::Restricted), Some(4), 4).is_err());
        assert!(expected(Family::SuffixFree5, &Quantity::Semigroup, None, 5).is_err());
        assert!(expected(Family::SuffixFree5, &Quantity::Star, None, 5).is_err());
        assert!(expected(Family::LeftIdeal, &union, None, 5).is_err());
        assert!(expected(Family::LeftIdeal, &Quantity::Star, None, 3).is_err());
    }
}
