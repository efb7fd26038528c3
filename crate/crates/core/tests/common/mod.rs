#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use raag::graph::Graph;
use raag::word::{Letter, Word};

pub fn names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect()
}

/// Graph on `n` vertices whose edges are the set bits of `mask`, in
/// lexicographic pair order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let ns = names(n);
    let mut g = Graph::edgeless("G", &ns).unwrap();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(&ns[i], &ns[j]).unwrap();
            }
            bit += 1;
        }
    }
    g
}

pub fn pairs(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

pub fn arb_graph(min: usize, max: usize) -> impl Strategy<Value = Arc<Graph>> {
    (min..=max).prop_flat_map(|n| {
        (Just(n), 0..(1u64 << pairs(n))).prop_map(|(n, m)| Arc::new(graph_from_mask(n, m)))
    })
}

pub fn arb_word(g: Arc<Graph>, max_len: usize) -> impl Strategy<Value = Word> {
    let n = g.len();
    prop::collection::vec((0..n, any::<bool>()), 0..=max_len).prop_map(move |ls| {
        let letters = ls
            .into_iter()
            .map(|(v, inverse)| Letter { vertex: v, inverse })
            .collect();
        Word::from_letters(&g, letters).unwrap()
    })
}

pub fn arb_graph_and_word(max_n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    arb_graph(1, max_n).prop_flat_map(move |g| arb_word(g, max_len))
}

pub fn arb_graph_and_words(max_n: usize, max_len: usize) -> impl Strategy<Value = (Word, Word)> {
    arb_graph(1, max_n)
        .prop_flat_map(move |g| (arb_word(Arc::clone(&g), max_len), arb_word(g, max_len)))
}
