//! Finite balls of the extension graph.
//!
//! Vertices are conjugates `w^-1 v w` of generators, keyed by canonical form;
//! two are adjacent when they commute. The full extension graph is infinite,
//! so a ball keeps only conjugators of length at most the given radius.

use std::collections::HashMap;
use std::sync::Arc;

use crate::graph::Graph;
use crate::word::{same_graph, GroupElement, Letter, Word, WordError};

/// A conjugate of a generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtVertex {
    base: usize,
    representative: GroupElement,
}

impl ExtVertex {
    /// Index of the conjugated generator in the source graph.
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn representative(&self) -> &GroupElement {
        &self.representative
    }

    /// `base` for an unconjugated generator, otherwise
    /// `base@l1.l2...` over the canonical representative.
    pub fn name(&self) -> String {
        let w = self.representative.word();
        let g = w.ambient();
        let base = g.vertex_name(self.base);
        if w.letters() == [Letter::pos(self.base)] {
            base.to_string()
        } else {
            format!("{base}@{}", w.render("."))
        }
    }
}

/// The conjugate `conjugator^-1 v conjugator`.
pub fn ext_vertex(v: &str, conjugator: &Word) -> Result<ExtVertex, WordError> {
    let g = conjugator.ambient();
    let gen = Word::generator(g, v)?;
    let base = gen.letters()[0].vertex;
    Ok(ExtVertex {
        base,
        representative: gen.conjugate(conjugator)?.canonical_form(),
    })
}

/// Distinct conjugates that commute.
pub fn ext_adjacent(x: &ExtVertex, y: &ExtVertex) -> Result<bool, WordError> {
    if !same_graph(
        x.representative.word().ambient(),
        y.representative.word().ambient(),
    ) {
        return Err(WordError::AmbientMismatch);
    }
    if x == y {
        return Ok(false);
    }
    x.representative.word().commutes(y.representative.word())
}

#[derive(Debug, Clone)]
pub struct ExtBall {
    source: Arc<Graph>,
    radius: usize,
    vertices: Vec<ExtVertex>,
    adjacency: Vec<Vec<bool>>,
}

impl ExtBall {
    pub fn source(&self) -> &Arc<Graph> {
        &self.source
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn vertices(&self) -> &[ExtVertex] {
        &self.vertices
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn position(&self, x: &ExtVertex) -> Option<usize> {
        self.vertices.iter().position(|v| v == x)
    }
}

/// All reduced words of length at most `radius`, in shortlex order.
pub fn reduced_words_up_to(g: &Arc<Graph>, radius: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (0..g.len())
        .flat_map(|v| [Letter::pos(v), Letter::neg(v)])
        .collect();
    let mut all = vec![Word::empty(g)];
    let mut level = vec![Vec::<Letter>::new()];
    for len in 1..=radius {
        let mut next = Vec::new();
        for prefix in &level {
            for &l in &letters {
                let mut ls = prefix.clone();
                ls.push(l);
                let w = Word::from_letters(g, ls).expect("letters from the graph");
                if w.reduce().len() == len {
                    next.push(w.letters().to_vec());
                    all.push(w);
                }
            }
        }
        level = next;
    }
    all
}

/// Conjugates of every generator by every reduced conjugator of length at
/// most `radius`, deduplicated by canonical representative.
///
/// Vertices appear in order of first discovery: conjugators in shortlex
/// order, generators in insertion order within each conjugator. Radius 0
/// therefore reproduces `g` vertex for vertex.
pub fn ext_ball(g: &Arc<Graph>, radius: usize) -> ExtBall {
    let mut vertices: Vec<ExtVertex> = Vec::new();
    let mut seen: HashMap<GroupElement, usize> = HashMap::new();
    for w in reduced_words_up_to(g, radius) {
        for v in 0..g.len() {
            let x = ext_vertex(g.vertex_name(v), &w).expect("generator of g");
            if !seen.contains_key(&x.representative) {
                seen.insert(x.representative.clone(), vertices.len());
                vertices.push(x);
            }
        }
    }
    let n = vertices.len();
    let mut adjacency = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let a = ext_adjacent(&vertices[i], &vertices[j]).expect("same source");
            adjacency[i][j] = a;
            adjacency[j][i] = a;
        }
    }
    ExtBall {
        source: Arc::clone(g),
        radius,
        vertices,
        adjacency,
    }
}

/// The ball as a plain graph, with vertex names from [`ExtVertex::name`].
pub fn ball_as_graph(ball: &ExtBall) -> Graph {
    let mut g = Graph::new(format!("{}_e{}", ball.source.name(), ball.radius));
    for x in &ball.vertices {
        g.add_vertex(&x.name())
            .expect("representatives are distinct");
    }
    for i in 0..ball.len() {
        for j in i + 1..ball.len() {
            if ball.adjacency[i][j] {
                g.connect(i, j);
            }
        }
    }
    g
}
