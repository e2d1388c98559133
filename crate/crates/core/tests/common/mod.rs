#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use suffix_convex::automata::word;
use suffix_convex::{Dfa, Letter, Transformation};

/// Trie DFA for a finite language over `sigma`.
pub fn finite(sigma: &str, words: &[&str]) -> Dfa {
    let sigma = word(sigma);
    let k = sigma.len();
    let mut rows: Vec<Vec<Option<usize>>> = vec![vec![None; k]];
    let mut finals = vec![];
    for w in words {
        let mut q = 0;
        for l in word(w) {
            let a = sigma.iter().position(|x| *x == l).expect("letter in sigma");
            q = match rows[q][a] {
                Some(p) => p,
                None => {
                    rows.push(vec![None; k]);
                    rows[q][a] = Some(rows.len() - 1);
                    rows.len() - 1
                }
            };
        }
        finals.push(q);
    }
    let sink = rows.len();
    let n = sink + 1;
    let delta = (0..k)
        .map(|a| {
            let image = (0..n)
                .map(|q| rows.get(q).and_then(|r| r[a]).unwrap_or(sink))
                .collect();
            Transformation::from_image(image).unwrap()
        })
        .collect();
    Dfa::new(n, sigma, delta, 0, finals).unwrap()
}

/// Uniformly random complete DFA with `n` states over the first `k` letters of `abc..`.
pub fn random_dfa(rng: &mut StdRng, n: usize, k: usize) -> Dfa {
    let sigma: Vec<Letter> = "abcdef"[..k].chars().map(|c| Letter::from(c.to_string().as_str())).collect();
    let delta = (0..k)
        .map(|_| Transformation::from_image((0..n).map(|_| rng.gen_range(0..n)).collect()).unwrap())
        .collect();
    let finals: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
    Dfa::new(n, sigma, delta, 0, finals).unwrap()
}

/// All words over `sigma` of length at most `max_len`, in shortlex order.
pub fn words_up_to(sigma: &[Letter], max_len: usize) -> Vec<Vec<Letter>> {
    let mut all = vec![vec![]];
    let mut layer: Vec<Vec<Letter>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                sigma.iter().map(move |l| {
                    let mut v = w.clone();
                    v.push(l.clone());
                    v
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

pub fn t(image: &[usize]) -> Transformation {
    Transformation::from_image(image.to_vec()).unwrap()
}

pub fn images(d: &Dfa) -> Vec<Vec<usize>> {
    d.transformations().iter().map(|t| t.image().to_vec()).collect()
}

/// Proptest strategy for complete DFAs with `1..=max_n` states over `1..=max_k` letters.
pub fn arb_dfa(max_n: usize, max_k: usize) -> impl proptest::strategy::Strategy<Value = Dfa> {
    use proptest::prelude::*;
    (1..=max_n, 1..=max_k).prop_flat_map(|(n, k)| {
        (
            proptest::collection::vec(proptest::collection::vec(0..n, n), k),
            proptest::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(rows, finals)| {
                let sigma: Vec<Letter> = "abcdef"[..k]
                    .chars()
                    .map(|c| Letter::from(c.to_string().as_str()))
                    .collect();
                let delta = rows.into_iter().map(|r| Transformation::from_image(r).unwrap()).collect();
                let finals: Vec<usize> = (0..n).filter(|&q| finals[q]).collect();
                Dfa::new(n, sigma, delta, 0, finals).unwrap()
            })
    })
}
