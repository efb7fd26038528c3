//! Brute-force word-problem oracle.
//!
//! Explores every word reachable by two local moves: deleting an adjacent pair
//! `v^e v^-e`, and swapping adjacent letters whose vertices are joined by an
//! edge. Both moves are length-non-increasing, so the reachable set is finite;
//! the word is trivial iff the empty word is reachable. Shares no code with
//! [`Word::reduce`](crate::word::Word::reduce).

use std::collections::{HashSet, VecDeque};

use crate::word::Word;

/// Default cap on visited states.
pub const DEFAULT_ORACLE_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleVerdict {
    Trivial,
    Nontrivial,
    /// The budget ran out before the reachable set was exhausted.
    Inconclusive,
}

impl OracleVerdict {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            OracleVerdict::Trivial => Some(true),
            OracleVerdict::Nontrivial => Some(false),
            OracleVerdict::Inconclusive => None,
        }
    }
}

/// Breadth-first search over the rewriting system, visiting at most `budget`
/// distinct words.
pub fn oracle_is_trivial(w: &Word, budget: usize) -> OracleVerdict {
    let g = w.ambient();
    // vertex * 2 + sign bit
    let start: Vec<u32> = w
        .letters()
        .iter()
        .map(|l| (l.vertex as u32) << 1 | l.inverse as u32)
        .collect();
    if start.is_empty() {
        return OracleVerdict::Trivial;
    }
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(cur) = queue.pop_front() {
        for i in 0..cur.len().saturating_sub(1) {
            let (x, y) = (cur[i], cur[i + 1]);
            let next = if x ^ y == 1 {
                let mut n = Vec::with_capacity(cur.len() - 2);
                n.extend_from_slice(&cur[..i]);
                n.extend_from_slice(&cur[i + 2..]);
                n
            } else if x >> 1 != y >> 1 && g.adjacent((x >> 1) as usize, (y >> 1) as usize) {
                let mut n = cur.clone();
                n.swap(i, i + 1);
                n
            } else {
                continue;
            };
            if next.is_empty() {
                return OracleVerdict::Trivial;
            }
            if seen.contains(&next) {
                continue;
            }
            if seen.len() >= budget {
                return OracleVerdict::Inconclusive;
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    OracleVerdict::Nontrivial
}
