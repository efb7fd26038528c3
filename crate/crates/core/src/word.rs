//! Words and group elements of a right-angled Artin group.
//!
//! A [`Word`] is a raw sequence of signed generators over an ambient graph.
//! [`Word::reduce`] deletes cancelling pairs `v^e x v^-e` where every letter of
//! `x` commutes with `v`; [`Word::canonical_form`] additionally picks the
//! shortlex-least word among all commutation rearrangements of the reduced
//! word, giving a unique representative per group element.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter `{0}` is not a vertex of the ambient graph")]
    ForeignVertex(String),
    #[error("words live over different graphs")]
    AmbientMismatch,
    #[error("supports not clique-shaped")]
    NotCliqueShaped,
}

/// A generator or its inverse. Letters order by vertex index, then positive
/// before negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub vertex: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(vertex: usize) -> Self {
        Letter {
            vertex,
            inverse: false,
        }
    }

    pub fn neg(vertex: usize) -> Self {
        Letter {
            vertex,
            inverse: true,
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            vertex: self.vertex,
            inverse: !self.inverse,
        }
    }

    /// +1 or -1.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// Dense key consistent with the shortlex letter order.
    #[inline]
    pub fn key(self) -> usize {
        2 * self.vertex + self.inverse as usize
    }
}

#[derive(Debug, Clone)]
pub struct Word {
    ambient: Arc<Graph>,
    letters: Vec<Letter>,
}

/// Letter-identical words over the same graph.
impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && same_graph(&self.ambient, &other.ambient)
    }
}

impl Eq for Word {}

pub(crate) fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Word {
    pub fn empty(ambient: &Arc<Graph>) -> Self {
        Word {
            ambient: Arc::clone(ambient),
            letters: Vec::new(),
        }
    }

    /// Builds a word from letters; every vertex index must be in range.
    pub fn from_letters(ambient: &Arc<Graph>, letters: Vec<Letter>) -> Result<Self, WordError> {
        if let Some(l) = letters.iter().find(|l| l.vertex >= ambient.len()) {
            return Err(WordError::ForeignVertex(format!("#{}", l.vertex)));
        }
        Ok(Word {
            ambient: Arc::clone(ambient),
            letters,
        })
    }

    /// The single-letter word for a named generator.
    pub fn generator(ambient: &Arc<Graph>, name: &str) -> Result<Self, WordError> {
        let v = ambient
            .index_of(name)
            .ok_or_else(|| WordError::ForeignVertex(name.to_string()))?;
        Ok(Word {
            ambient: Arc::clone(ambient),
            letters: vec![Letter::pos(v)],
        })
    }

    /// Parses whitespace-separated letters, `x^-1` for inverses, `1` for the
    /// empty word.
    pub fn parse(ambient: &Arc<Graph>, text: &str) -> Result<Self, WordError> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if let Some(v) = ambient.index_of(tok) {
                letters.push(Letter::pos(v));
            } else if let Some(v) = tok.strip_suffix("^-1").and_then(|b| ambient.index_of(b)) {
                letters.push(Letter::neg(v));
            } else if tok == "1" {
                continue;
            } else {
                return Err(WordError::ForeignVertex(tok.to_string()));
            }
        }
        Ok(Word {
            ambient: Arc::clone(ambient),
            letters,
        })
    }

    pub fn ambient(&self) -> &Arc<Graph> {
        &self.ambient
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_ambient(&self, other: &Word) -> Result<(), WordError> {
        if same_graph(&self.ambient, &other.ambient) {
            Ok(())
        } else {
            Err(WordError::AmbientMismatch)
        }
    }

    fn with_letters(&self, letters: Vec<Letter>) -> Word {
        Word {
            ambient: Arc::clone(&self.ambient),
            letters,
        }
    }

    /// Letter-wise render with a custom separator.
    pub fn render(&self, sep: &str) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|l| {
                let name = self.ambient.vertex_name(l.vertex);
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(sep)
    }

    // ---- raw expressions -------------------------------------------------

    /// Reverses the word and flips every sign.
    pub fn inverse(&self) -> Word {
        self.with_letters(self.letters.iter().rev().map(|l| l.inv()).collect())
    }

    /// Concatenation.
    pub fn product(&self, other: &Word) -> Result<Word, WordError> {
        self.check_ambient(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(self.with_letters(letters))
    }

    /// `y^-1 x y`, written `x^y`.
    pub fn conjugate(&self, by: &Word) -> Result<Word, WordError> {
        by.inverse().product(self)?.product(by)
    }

    /// `x y x^-1 y^-1`.
    pub fn commutator(&self, other: &Word) -> Result<Word, WordError> {
        self.product(other)?
            .product(&self.inverse())?
            .product(&other.inverse())
    }

    /// `w^k` for any integer `k`, unreduced.
    pub fn power(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        self.with_letters(letters)
    }

    // ---- reduction -------------------------------------------------------

    /// Deletes cancelling pairs until none remain.
    ///
    /// Letters are appended to a reduced prefix one at a time; an incoming
    /// `v^e` cancels against the nearest `v^-e` to its left provided every
    /// letter in between has a vertex adjacent to `v`. Deleting such a pair
    /// keeps the prefix reduced, so one pass reaches the fixpoint.
    pub fn reduce(&self) -> Word {
        self.with_letters(reduce_letters(&self.ambient, &self.letters))
    }

    /// Locates a subword `v^e x v^-e` in which every letter of `x` commutes
    /// with `v`, scanning left to right. `None` means the word is reduced.
    pub fn find_cancellation(&self) -> Option<(usize, usize)> {
        let g = &self.ambient;
        for (i, a) in self.letters.iter().enumerate() {
            for (j, b) in self.letters.iter().enumerate().skip(i + 1) {
                if b.vertex == a.vertex {
                    if b.inverse != a.inverse {
                        return Some((i, j));
                    }
                } else if !g.adjacent(a.vertex, b.vertex) {
                    break;
                }
            }
        }
        None
    }

    pub fn is_reduced(&self) -> bool {
        self.find_cancellation().is_none()
    }

    pub fn is_trivial(&self) -> bool {
        reduce_letters(&self.ambient, &self.letters).is_empty()
    }

    /// The unique canonical representative of this word's group element.
    pub fn canonical_form(&self) -> GroupElement {
        let reduced = reduce_letters(&self.ambient, &self.letters);
        GroupElement {
            word: self.with_letters(shortlex_rearrangement(&self.ambient, &reduced)),
        }
    }

    /// Generators occurring in a reduced form, in vertex order.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ambient.len()];
        for l in reduce_letters(&self.ambient, &self.letters) {
            seen[l.vertex] = true;
        }
        seen.iter()
            .enumerate()
            .filter_map(|(v, &s)| s.then_some(v))
            .collect()
    }

    pub fn support_names(&self) -> Vec<String> {
        self.support()
            .into_iter()
            .map(|v| self.ambient.vertex_name(v).to_string())
            .collect()
    }

    /// Whether every letter's vertex lies in `allowed` (indexed by vertex).
    pub fn is_word_in(&self, allowed: &[bool]) -> bool {
        self.letters.iter().all(|l| allowed[l.vertex])
    }

    /// Exponent sum of each generator, indexed by vertex.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0; self.ambient.len()];
        for l in &self.letters {
            sums[l.vertex] += l.sign();
        }
        sums
    }

    /// Decides `[self, other] = 1`.
    pub fn commutes(&self, other: &Word) -> Result<bool, WordError> {
        Ok(self.commutator(other)?.is_trivial())
    }

    /// Commutation for clique-supported words, decided from supports alone:
    /// such words commute iff their supports together span a clique.
    pub fn clique_commute_check(&self, other: &Word) -> Result<bool, WordError> {
        self.check_ambient(other)?;
        let (s1, s2) = (self.support(), other.support());
        if !self.ambient.is_clique(&s1) || !self.ambient.is_clique(&s2) {
            return Err(WordError::NotCliqueShaped);
        }
        let mut union = s1;
        union.extend(s2);
        union.sort_unstable();
        union.dedup();
        Ok(self.ambient.is_clique(&union))
    }

    /// Rewrites this word over another graph that contains all of its
    /// letters, matching vertices by name.
    pub fn transport(&self, onto: &Arc<Graph>) -> Result<Word, WordError> {
        let letters = self
            .letters
            .iter()
            .map(|l| {
                let name = self.ambient.vertex_name(l.vertex);
                onto.index_of(name)
                    .map(|vertex| Letter {
                        vertex,
                        inverse: l.inverse,
                    })
                    .ok_or_else(|| WordError::ForeignVertex(name.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Word {
            ambient: Arc::clone(onto),
            letters,
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(" "))
    }
}

fn reduce_letters(g: &Graph, letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    'next: for &x in letters {
        for j in (0..out.len()).rev() {
            let y = out[j];
            if y.vertex == x.vertex {
                if y.inverse != x.inverse {
                    out.remove(j);
                    continue 'next;
                }
                break;
            }
            if !g.adjacent(y.vertex, x.vertex) {
                break;
            }
        }
        out.push(x);
    }
    out
}

/// Lexicographically least linearization of the dependency order of a word:
/// two positions are ordered when their vertices are equal or non-adjacent.
/// Kahn's algorithm with a min-heap on the letter order.
fn shortlex_rearrangement(g: &Graph, letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    let mut last: Vec<Option<usize>> = vec![None; g.len()];
    for (q, l) in letters.iter().enumerate() {
        for (u, p) in last.iter().enumerate() {
            if let Some(p) = *p {
                if !g.adjacent(u, l.vertex) {
                    succ[p].push(q);
                    indeg[q] += 1;
                }
            }
        }
        last[l.vertex] = Some(q);
    }
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..n)
        .filter(|&q| indeg[q] == 0)
        .map(|q| Reverse((letters[q].key(), q)))
        .collect();
    let mut out = Vec::with_capacity(n);
    while let Some(Reverse((_, p))) = heap.pop() {
        out.push(letters[p]);
        for &q in &succ[p] {
            indeg[q] -= 1;
            if indeg[q] == 0 {
                heap.push(Reverse((letters[q].key(), q)));
            }
        }
    }
    out
}

/// An element of `A(Γ)`, stored as its canonical word.
#[derive(Debug, Clone)]
pub struct GroupElement {
    word: Word,
}

impl GroupElement {
    pub fn identity(ambient: &Arc<Graph>) -> Self {
        GroupElement {
            word: Word::empty(ambient),
        }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn into_word(self) -> Word {
        self.word
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement, WordError> {
        Ok(self.word.product(&other.word)?.canonical_form())
    }

    pub fn inverse(&self) -> GroupElement {
        self.word.inverse().canonical_form()
    }

    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.word.letters.iter().map(|l| l.vertex).collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.word.letters.hash(state);
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex on canonical words.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.letters.cmp(&other.word.letters))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExprKind {
    /// `args[0]^args[1]`
    Conjugate,
    /// `[args[0], args[1]]`
    Commutator,
    /// `args[0]^-1`
    Inverse,
    /// `args[0] args[1] ...`
    Product,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("{kind:?} takes {expected} argument(s), got {got}")]
    Arity {
        kind: ExprKind,
        expected: usize,
        got: usize,
    },
}

/// Builds a raw (unreduced) expression word.
pub fn build_expression(kind: ExprKind, args: &[Word]) -> Result<Word, ExprError> {
    let arity = |expected| {
        if args.len() == expected {
            Ok(())
        } else {
            Err(ExprError::Arity {
                kind,
                expected,
                got: args.len(),
            })
        }
    };
    match kind {
        ExprKind::Conjugate => {
            arity(2)?;
            Ok(args[0].conjugate(&args[1])?)
        }
        ExprKind::Commutator => {
            arity(2)?;
            Ok(args[0].commutator(&args[1])?)
        }
        ExprKind::Inverse => {
            arity(1)?;
            Ok(args[0].inverse())
        }
        ExprKind::Product => {
            let (first, rest) = args.split_first().ok_or(ExprError::Arity {
                kind,
                expected: 1,
                got: 0,
            })?;
            rest.iter()
                .try_fold(first.clone(), |acc, w| acc.product(w))
                .map_err(Into::into)
        }
    }
}
