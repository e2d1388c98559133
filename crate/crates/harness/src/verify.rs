//! Reproduces the closed-form complexities of the witness streams by direct
//! measurement.
//!
//! Each (family, quantity) pair has a fixed dialect plan: the letter maps
//! under which the stream is claimed to meet the bound. Cases outside the
//! claims are either omitted or reported as skipped with a reason.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use suffix_convex::automata::complexity;
use suffix_convex::measures::{
    atom_complexity_with_limit, atoms_with_limit, quotient_complexities,
    syntactic_semigroup_size, DEFAULT_ATOM_LIMIT, DEFAULT_SEMIGROUP_CAP,
};
use suffix_convex::ops::{
    boolean_restricted, boolean_unrestricted, concat, reverse, star, LetterMap,
};
use suffix_convex::witnesses::{expected, make_dialect, Family, Mode, Quantity};
use suffix_convex::{Dfa, Error};

use crate::report::{ComplexityReport, Entry, Status};
use crate::{HarnessError, Result};

/// Resource limits. Cases beyond them are reported as truncated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    pub semigroup_n: usize,
    pub reverse_n: usize,
    pub binary_n: usize,
    pub semigroup_cap: usize,
    pub atom_limit: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            semigroup_n: 7,
            reverse_n: 8,
            binary_n: 6,
            semigroup_cap: DEFAULT_SEMIGROUP_CAP,
            atom_limit: DEFAULT_ATOM_LIMIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    pub families: Vec<Family>,
    /// Quantity tags from [`Quantity::TAGS`].
    pub quantities: Vec<&'static str>,
    pub n: Option<RangeInclusive<usize>>,
    pub m: Option<RangeInclusive<usize>>,
}

impl Default for Selection {
    fn default() -> Self {
        Selection {
            families: Family::ALL.to_vec(),
            quantities: Quantity::TAGS.to_vec(),
            n: None,
            m: None,
        }
    }
}

/// Expands a quantity selector: a full tag, or `product`, `union`, `symdiff`,
/// `difference`, `intersection` for both modes.
pub fn quantity_tags(selector: &str) -> Result<Vec<&'static str>> {
    if let Some(tag) = Quantity::TAGS.iter().find(|t| **t == selector) {
        return Ok(vec![*tag]);
    }
    let both: Vec<&'static str> = Quantity::TAGS
        .iter()
        .copied()
        .filter(|t| t.strip_prefix(selector).is_some_and(|rest| rest.starts_with('-')))
        .collect();
    if both.is_empty() {
        Err(HarnessError::at("--quantity", format!("unknown quantity `{selector}`")))
    } else {
        Ok(both)
    }
}

/// Parses `A..B` or a single number.
pub fn parse_range(text: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let (lo, hi) = text.split_once("..").unwrap_or((text, text));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("bad range `{text}`"));
    let (lo, hi) = (num(lo)?, num(hi)?);
    if lo > hi {
        return Err(format!("empty range `{text}`"));
    }
    Ok(lo..=hi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Plan {
    Unary(&'static str),
    Binary(&'static str, &'static str),
    Skip(&'static str),
}

const NO_PRODUCT: &str = "product bounds are not claimed for this stream";
const NO_STAR_PRODUCT: &str = "this stream cannot meet the star and product bounds";
const FOUR_LETTERS: &str = "the bound needs a fourth letter, which this witness lacks";

/// The dialect plan of `tag` for `family`, or `None` when nothing is claimed.
pub fn plan(family: Family, tag: &str) -> Option<Plan> {
    use Family::*;
    use Plan::*;
    let boolean = |t: &str| {
        ["union", "symdiff", "difference", "intersection"]
            .iter()
            .any(|op| t.strip_prefix(op).is_some_and(|r| r.starts_with('-')))
    };
    let restricted = tag.ends_with("-restricted");
    let p = match (family, tag) {
        (Regular, "semigroup" | "reverse" | "star") => Unary("a,b,c"),
        (Regular, "product-restricted") => Binary("a,b,c", "a,b,c"),
        (Regular, "product-unrestricted") => Skip(FOUR_LETTERS),
        (Regular, t) if boolean(t) && restricted => Binary("a,b,c", "b,a,c"),
        (Regular, t) if boolean(t) => Binary("a,b,c", "b,a,d"),

        (LeftIdeal, "semigroup" | "atom") => Unary("a,b,c,d,e"),
        (LeftIdeal, "quotients") => Unary("a,-,-,d,e"),
        (LeftIdeal, "reverse" | "atoms-count") => Unary("a,-,c,d,e"),
        (LeftIdeal, "star") => Unary("a,-,-,-,e"),
        (LeftIdeal, "product-restricted") => Binary("a,-,-,-,e", "a,-,-,-,e"),
        (LeftIdeal, "product-unrestricted") => Binary("a,b,-,d,e", "a,d,-,c,e"),
        (LeftIdeal, t) if boolean(t) && restricted => Binary("a,-,c,-,e", "a,-,e,-,c"),
        (LeftIdeal, t) if boolean(t) => Binary("a,b,-,d,e", "a,e,-,c,d"),

        (LeftIdealAlt, "semigroup" | "atom") => Unary("a,b,c,d,e"),
        (LeftIdealAlt, "quotients" | "reverse" | "atoms-count" | "star") => Unary("a,-,-,d,e"),
        (LeftIdealAlt, t) if t.starts_with("product") => Skip(NO_PRODUCT),
        (LeftIdealAlt | SuffixClosed, t) if boolean(t) && restricted => {
            Binary("a,b,-,d,e", "a,e,-,d,b")
        }
        (LeftIdealAlt | SuffixClosed, t) if boolean(t) => Binary("a,b,c,d,e", "a,e,f,d,b"),

        (SuffixClosed, "semigroup" | "atom") => Unary("a,b,c,d,e"),
        (SuffixClosed, "quotients" | "reverse" | "atoms-count" | "star") => Unary("a,-,-,d,e"),
        (SuffixClosed, "product-restricted") => Binary("a,b,-,d,e", "a,e,-,d,b"),
        (SuffixClosed, "product-unrestricted") => Binary("a,b,c,d,e", "a,e,f,d,b"),

        (SuffixFree5, "semigroup" | "atom") => Unary("a,b,c,d,e"),
        (SuffixFree5, "quotients") => Unary("a,-,-,-,e"),
        (SuffixFree5, "reverse" | "atoms-count") => Unary("a,-,c,-,e"),
        (SuffixFree5, t) if t == "star" || t.starts_with("product") => Skip(NO_STAR_PRODUCT),
        (SuffixFree5, t) if boolean(t) => Binary("a,b,-,d,e", "b,a,-,d,e"),

        (SuffixFree3, "star") => Unary("a,b,c"),
        (SuffixFree3, t) if t.starts_with("product") => Binary("a,b,c", "c,a,b"),
        (SuffixFree3, t) if boolean(t) => Binary("a,b,c", "b,a,c"),

        (SuffixFree2Star, "star") => Unary("a,b,-"),
        (SuffixFree2Star, t) if t.starts_with("product") => Binary("a,b,c", "c,a,b"),
        (SuffixFree2Star, t) if boolean(t) => Binary("a,b,-", "-,b,a"),

        _ => return None,
    };
    Some(p)
}

fn default_range(family: Family, tag: &str, binary: bool) -> RangeInclusive<usize> {
    let lo = family.min_n();
    let hi = match (family, tag) {
        (Family::Regular, _) if binary => 5,
        (Family::Regular, _) => 6,
        (_, "semigroup" | "quotients") => 7,
        (_, "atom") => 6,
        (_, _) if binary => 6,
        _ => 8,
    };
    lo..=hi
}

fn cap_for(caps: &Caps, tag: &str, binary: bool) -> usize {
    match tag {
        _ if binary => caps.binary_n,
        "semigroup" => caps.semigroup_n,
        _ => caps.reverse_n,
    }
}

#[derive(Clone, Debug)]
struct Case {
    family: Family,
    tag: &'static str,
    plan: Plan,
    m: Option<usize>,
    n: usize,
}

fn cases(sel: &Selection) -> Vec<Case> {
    let mut out = Vec::new();
    for &family in &sel.families {
        for &tag in &sel.quantities {
            let Some(plan) = plan(family, tag) else { continue };
            let binary = tag.ends_with("restricted");
            let default = default_range(family, tag, binary);
            let clip = |r: &RangeInclusive<usize>| (*r.start()).max(family.min_n())..=*r.end();
            let ns = sel.n.as_ref().map_or(default.clone(), clip);
            let ms = sel.m.as_ref().map_or(default, clip);
            for n in ns {
                if binary {
                    for m in ms.clone() {
                        out.push(Case { family, tag, plan, m: Some(m), n });
                    }
                } else {
                    out.push(Case { family, tag, plan, m: None, n });
                }
            }
        }
    }
    out
}

fn dialect(family: Family, n: usize, pi: &str) -> Result<Dfa> {
    Ok(make_dialect(family, n, &LetterMap::parse(pi)?)?)
}

fn show(pi: &str) -> String {
    format!("({pi})")
}

struct Row {
    family: Family,
    quantity: Quantity,
    entry: Entry,
}

impl Case {
    fn dialects(&self) -> Vec<String> {
        match self.plan {
            Plan::Unary(p) => vec![show(p)],
            Plan::Binary(l, r) => vec![show(l), show(r)],
            Plan::Skip(_) => vec![],
        }
    }

    fn row(&self, quantity: Quantity, expected: Option<u64>, measured: Option<u64>, status: Status, note: Option<String>) -> Row {
        Row {
            family: self.family,
            entry: Entry {
                family: self.family.tag().to_string(),
                quantity: quantity.to_string(),
                dialects: self.dialects(),
                m: self.m,
                n: self.n,
                expected,
                measured,
                status,
                note,
            },
            quantity,
        }
    }

    fn judged(&self, quantity: Quantity, expected: u64, measured: u64) -> Row {
        let status = if expected == measured { Status::Pass } else { Status::Fail };
        self.row(quantity, Some(expected), Some(measured), status, None)
    }

    fn run(&self, caps: &Caps) -> Vec<Row> {
        let binary = self.m.is_some();
        let quantity = if self.tag == "atom" {
            None
        } else {
            Some(Quantity::parse_tag(self.tag).expect("plan tags parse"))
        };
        let shown = quantity.clone().unwrap_or(Quantity::AtomCount);
        let placeholder = || shown.clone();
        let cap = cap_for(caps, self.tag, binary);
        if self.n > cap || self.m.is_some_and(|m| m > cap) {
            let note = format!("beyond the size cap {cap}");
            return vec![self.row(placeholder(), None, None, Status::Truncated, Some(note))];
        }
        if let Plan::Skip(reason) = self.plan {
            return vec![self.row(placeholder(), None, None, Status::Skipped, Some(reason.into()))];
        }
        match self.measure(quantity, caps) {
            Ok(rows) => rows,
            Err(e) => vec![self.row(placeholder(), None, None, Status::Truncated, Some(e.to_string()))],
        }
    }

    fn measure(&self, quantity: Option<Quantity>, caps: &Caps) -> Result<Vec<Row>> {
        let (family, n) = (self.family, self.n);
        let Some(quantity) = quantity else {
            let Plan::Unary(p) = self.plan else { unreachable!("atoms are unary") };
            let d = dialect(family, n, p)?;
            let mut rows = Vec::new();
            for key in atoms_with_limit(&d, caps.atom_limit)? {
                let measured = atom_complexity_with_limit(&d, &key, caps.atom_limit)? as u64;
                let q = Quantity::Atom(key);
                rows.push(match expected(family, &q, None, n) {
                    Ok(e) => self.judged(q, e, measured),
                    Err(_) => self.row(q, None, Some(measured), Status::Fail, Some("no closed form for a non-empty atom".into())),
                });
            }
            return Ok(rows);
        };
        let excluded = family == Family::SuffixFree3
            && matches!(quantity, Quantity::Boolean(..))
            && self.m == Some(4)
            && n == 4;
        let expected = match expected(family, &quantity, self.m, n) {
            Ok(e) => Some(e),
            Err(_) if excluded => None,
            Err(_) => return Ok(vec![]),
        };
        let measured = match (self.plan, &quantity) {
            (Plan::Unary(p), Quantity::Semigroup) => {
                let s = syntactic_semigroup_size(&dialect(family, n, p)?, caps.semigroup_cap);
                if s.truncated {
                    let note = format!("semigroup cap {} reached", caps.semigroup_cap);
                    return Ok(vec![self.row(quantity, expected, Some(s.size as u64), Status::Truncated, Some(note))]);
                }
                s.size
            }
            (Plan::Unary(p), Quantity::Quotients) => {
                quotient_complexities(&dialect(family, n, p)?).iter().sum()
            }
            (Plan::Unary(p), Quantity::Reverse) => complexity(&reverse(&dialect(family, n, p)?)),
            (Plan::Unary(p), Quantity::AtomCount) => {
                atoms_with_limit(&dialect(family, n, p)?, caps.atom_limit)?.len()
            }
            (Plan::Unary(p), Quantity::Star) => complexity(&star(&dialect(family, n, p)?)),
            (Plan::Binary(l, r), q) => {
                let m = self.m.expect("binary cases carry m");
                let (l, r) = (dialect(family, m, l)?, dialect(family, n, r)?);
                let d = match q {
                    Quantity::Product(_) => concat(&l, &r),
                    Quantity::Boolean(op, Mode::Restricted) => boolean_restricted(&l, &r, *op)?,
                    Quantity::Boolean(op, Mode::Unrestricted) => boolean_unrestricted(&l, &r, *op),
                    _ => unreachable!("binary plans only for binary quantities"),
                };
                complexity(&d)
            }
            _ => return Err(Error::Rejected(format!("no measurement for {quantity}")).into()),
        } as u64;
        Ok(vec![match expected {
            Some(e) => self.judged(quantity, e, measured),
            None => self.row(
                quantity,
                None,
                Some(measured),
                Status::Skipped,
                Some("(m,n) = (4,4) is excluded from the claim".into()),
            ),
        }])
    }
}

/// Runs every selected case in parallel. Entries are sorted by family,
/// quantity, `m` and `n`, so the report does not depend on scheduling.
pub fn verify(sel: &Selection, caps: &Caps) -> ComplexityReport {
    let mut rows: Vec<Row> = cases(sel).par_iter().flat_map_iter(|c| c.run(caps)).collect();
    rows.sort_by(|a, b| {
        (a.family, &a.quantity, a.entry.m, a.entry.n).cmp(&(b.family, &b.quantity, b.entry.m, b.entry.n))
    });
    ComplexityReport::new(rows.into_iter().map(|r| r.entry).collect())
}

/// Convenience for a single family and quantity selector over explicit ranges.
pub fn verify_one(
    family: Family,
    selector: &str,
    n: Option<RangeInclusive<usize>>,
    m: Option<RangeInclusive<usize>>,
) -> Result<ComplexityReport> {
    let sel = Selection {
        families: vec![family],
        quantities: quantity_tags(selector)?,
        n,
        m,
    };
    Ok(verify(&sel, &Caps::default()))
}
