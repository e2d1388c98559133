//! Graphviz rendering of a DFA.

use std::collections::BTreeMap;
use std::fmt::Write;

use suffix_convex::Dfa;

/// One node per state, finals double-circled, an arrow into the initial
/// state, and one edge per pair of states labelled with its letters in
/// alphabet order.
pub fn export_dot(d: &Dfa, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", name.replace('"', "\\\"")).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  start [shape=point];").unwrap();
    for q in 0..d.n() {
        let shape = if d.is_final(q) { "doublecircle" } else { "circle" };
        writeln!(out, "  {q} [shape={shape}];").unwrap();
    }
    writeln!(out, "  start -> {};", d.initial()).unwrap();
    for p in 0..d.n() {
        let mut edges: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
        for (a, letter) in d.alphabet().iter().enumerate() {
            edges.entry(d.step(p, a)).or_default().push(letter.as_str());
        }
        for (q, letters) in edges {
            writeln!(out, "  {p} -> {q} [label=\"{}\"];", letters.join(",")).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use suffix_convex::witnesses::{make_witness, Family};

    #[test]
    fn regular_witness() {
        let dot = export_dot(&make_witness(Family::Regular, 3).unwrap(), "D3");
        assert!(dot.contains("  0 -> 0 [label=\"c\"];"));
        assert!(dot.contains("  0 -> 1 [label=\"a,b\"];"));
        assert!(dot.contains("  2 [shape=doublecircle];"));
        assert!(dot.contains("  start -> 0;"));
        assert_eq!(dot.lines().filter(|l| l.contains("[shape=circle]")).count(), 2);
    }

    #[test]
    fn single_state_without_letters() {
        let d = Dfa::new(1, vec![], vec![], 0, []).unwrap();
        let dot = export_dot(&d, "e");
        assert!(!dot.contains("label"));
        assert!(dot.contains("  0 [shape=circle];"));
    }

    #[test]
    fn suffix_free_sink_loops_on_everything() {
        let dot = export_dot(&make_witness(Family::SuffixFree3, 5).unwrap(), "L5");
        assert!(dot.contains("  4 -> 4 [label=\"a,b,c\"];"));
        assert_eq!(dot, export_dot(&make_witness(Family::SuffixFree3, 5).unwrap(), "L5"));
    }
}
