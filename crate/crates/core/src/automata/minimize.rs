use std::collections::HashMap;

use super::{Dfa, StateId};

/// Minimal complete DFA for `L(d)`, in canonical breadth-first numbering.
///
/// Unreachable states are dropped first; equivalent states are then merged by
/// Moore-style partition refinement (split blocks by the blocks of their
/// successors until the partition is stable).
pub fn minimize(d: &Dfa) -> Dfa {
    let d = d.canonical();
    let table = d.table();
    let n = d.n();

    let mut block: Vec<usize> = d.final_flags().iter().map(|&f| usize::from(f)).collect();
    let mut count = if block.iter().all(|&b| b == block[0]) {
        block.iter_mut().for_each(|b| *b = 0);
        1
    } else {
        2
    };

    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::with_capacity(n);
        let next: Vec<usize> = (0..n)
            .map(|q| {
                let mut sig = Vec::with_capacity(table[q].len() + 1);
                sig.push(block[q]);
                sig.extend(table[q].iter().map(|&p| block[p]));
                let fresh = ids.len();
                *ids.entry(sig).or_insert(fresh)
            })
            .collect();
        let new_count = ids.len();
        block = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }

    let mut rep: Vec<Option<StateId>> = vec![None; count];
    for q in 0..n {
        rep[block[q]].get_or_insert(q);
    }
    let quotient_table = rep
        .iter()
        .map(|r| table[r.unwrap()].iter().map(|&p| block[p]).collect())
        .collect();
    let finals = rep.iter().map(|r| d.is_final(r.unwrap())).collect();
    Dfa::from_parts(d.alphabet().to_vec(), quotient_table, block[d.initial()], finals).canonical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{equivalent, word};
    use crate::transform::Transformation;

    fn t(image: &[usize]) -> Transformation {
        Transformation::from_image(image.to_vec()).unwrap()
    }

    #[test]
    fn merges_duplicate_final_sinks() {
        // 0 -a-> 1, 0 -b-> 2, 1 and 2 are accepting sinks
        let d = Dfa::new(3, word("ab"), vec![t(&[1, 1, 2]), t(&[2, 1, 2])], 0, [1, 2]).unwrap();
        let m = minimize(&d);
        assert_eq!(m.n(), 2);
        assert!(equivalent(&d, &m));
    }

    #[test]
    fn single_block_stays_single() {
        let d = Dfa::new(3, word("a"), vec![t(&[1, 2, 0])], 0, [0, 1, 2]).unwrap();
        assert_eq!(minimize(&d).n(), 1);
        let d = Dfa::new(3, word("a"), vec![t(&[1, 2, 0])], 0, []).unwrap();
        assert_eq!(minimize(&d).n(), 1);
    }

    #[test]
    fn idempotent_on_small_example() {
        let d = Dfa::new(4, word("ab"), vec![t(&[1, 2, 3, 0]), t(&[0, 0, 0, 0])], 0, [3]).unwrap();
        let m = minimize(&d);
        assert_eq!(m.n(), 4);
        assert_eq!(minimize(&m), m);
    }
}
