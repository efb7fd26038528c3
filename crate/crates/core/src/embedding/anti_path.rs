//! Extraction on a path-graph complement factor `P_n^c`, `n != 3`.
//!
//! With `v_1, ..., v_n` labeled so that only consecutive generators fail to
//! commute, let `C_i` be the support clique of the image of `v_i`. A sequence
//! of distinct `y_i ∈ C_i` with consecutive entries non-adjacent is a full
//! embedding. When no such sequence exists, the conjugated commutator
//! `[v_1^{v_2 ... v_{n-1}}, v_n]` lies in the kernel; the proof of that fact
//! (the sets `Y^(i)` and the peeled words) is replayed and checked here.

use std::sync::Arc;

use crate::decompose::PathLabeling;
use crate::graph::Graph;
use crate::search::{verify_full_embedding, Assignment, FullEmbedding};
use crate::word::Word;

use super::{
    trivial_generator_witness, EngineError, ExtractOptions, HomSpec, KernelWitness, Outcome,
};

/// Support cliques `C_1..C_n` of the images along a labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueChain {
    pub target: Arc<Graph>,
    /// Target vertex indices, ascending within each clique.
    pub cliques: Vec<Vec<usize>>,
}

impl CliqueChain {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }
}

/// `Y^(1) = C_1`, and `Y^(i)` holds the vertices of `C_i` that are
/// non-adjacent to some vertex of `Y^(i-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YSets {
    pub sets: Vec<Vec<usize>>,
}

/// Result of replaying the word-peeling steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelReport {
    /// Reduced images `W_1..W_{n-1}`.
    pub originals: Vec<Word>,
    /// Peeled words `Ŵ_1..Ŵ_{n-1}`, each a word in the matching `Y^(i)`.
    pub peeled: Vec<Word>,
    /// Number of peeling equalities checked (all passed).
    pub equalities_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntiPathReport {
    pub outcome: Outcome,
    pub chain: Option<CliqueChain>,
    pub y_sets: Option<YSets>,
    pub peel: Option<PeelReport>,
    /// No admissible sequence exists (only meaningful for `n >= 4`).
    pub no_sequence: bool,
}

impl AntiPathReport {
    fn plain(outcome: Outcome) -> Self {
        AntiPathReport {
            outcome,
            chain: None,
            y_sets: None,
            peel: None,
            no_sequence: false,
        }
    }
}

pub(crate) fn labeling_indices(
    h: &HomSpec,
    labeling: &PathLabeling,
) -> Result<Vec<usize>, EngineError> {
    let src = h.source();
    if !labeling.is_valid_for(src) {
        return Err(EngineError::BadLabeling(labeling.order.clone()));
    }
    Ok(labeling
        .order
        .iter()
        .map(|n| src.index_of(n).expect("validated"))
        .collect())
}

/// Builds `C_1..C_n` and checks that cliques two or more steps apart are
/// pairwise identical-or-adjacent, which any homomorphism with clique
/// supports must satisfy.
pub fn build_clique_chain(
    h: &HomSpec,
    labeling: &PathLabeling,
) -> Result<CliqueChain, EngineError> {
    let idx = labeling_indices(h, labeling)?;
    let tgt = h.target();
    let cliques: Vec<Vec<usize>> = idx.iter().map(|&v| h.image(v).support()).collect();
    for (i, c) in cliques.iter().enumerate() {
        if !tgt.is_clique(c) {
            return Err(EngineError::KkViolation {
                vertex: labeling.order[i].clone(),
                support: c.iter().map(|&x| tgt.vertex_name(x).to_string()).collect(),
            });
        }
    }
    for i in 0..cliques.len() {
        for j in i + 2..cliques.len() {
            let ok = cliques[i]
                .iter()
                .all(|&x| cliques[j].iter().all(|&y| tgt.adjacent_or_equal(x, y)));
            if !ok {
                return Err(EngineError::FarCliquesNotAdjacent { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(CliqueChain {
        target: Arc::clone(tgt),
        cliques,
    })
}

/// First sequence (in vertex order) of distinct `y_i ∈ C_i` with `y_{i-1}`
/// and `y_i` non-adjacent.
pub fn sequence_search(chain: &CliqueChain) -> Option<Vec<usize>> {
    fn go(chain: &CliqueChain, seq: &mut Vec<usize>) -> bool {
        let i = seq.len();
        if i == chain.len() {
            return true;
        }
        for &y in &chain.cliques[i] {
            if seq.contains(&y) {
                continue;
            }
            if let Some(&prev) = seq.last() {
                if chain.target.adjacent(prev, y) {
                    continue;
                }
            }
            seq.push(y);
            if go(chain, seq) {
                return true;
            }
            seq.pop();
        }
        false
    }
    let mut seq = Vec::with_capacity(chain.len());
    go(chain, &mut seq).then_some(seq)
}

/// `Y^(1)..Y^(n-1)`.
pub fn y_sets(chain: &CliqueChain) -> YSets {
    let n = chain.len();
    let mut sets: Vec<Vec<usize>> = Vec::with_capacity(n.saturating_sub(1));
    if n < 2 {
        return YSets { sets };
    }
    sets.push(chain.cliques[0].clone());
    for i in 1..n - 1 {
        let prev = &sets[i - 1];
        let next = chain.cliques[i]
            .iter()
            .copied()
            .filter(|&y| prev.iter().any(|&x| x != y && !chain.target.adjacent(x, y)))
            .collect();
        sets.push(next);
    }
    YSets { sets }
}

/// Every vertex of `C_n` is identical or adjacent to every vertex of every
/// `Y^(i)`. Holds whenever no admissible sequence exists and `n >= 4`.
pub fn check_last_clique_adjacent(chain: &CliqueChain, ys: &YSets) -> bool {
    let Some(last) = chain.cliques.last() else {
        return true;
    };
    ys.sets
        .iter()
        .flatten()
        .all(|&y| last.iter().all(|&c| chain.target.adjacent_or_equal(c, y)))
}

/// `w_k^-1 ... w_2^-1 w_1 w_2 ... w_k` for the first `k` words.
fn nested_conjugate(words: &[Word], k: usize) -> Result<Word, EngineError> {
    let mut acc = words[0].clone();
    for w in &words[1..k] {
        acc = acc.conjugate(w)?;
    }
    Ok(acc)
}

/// Replays the peeling steps: `Ŵ_1 = W_1`, and for `i >= 2` the letters of
/// `W_i` outside `Y^(i)` are deleted one at a time. The peeling equality
/// `Ŵ_i^-1 ... Ŵ_1 ... Ŵ_i = W_i^-1 ... W_1 ... W_i` is checked in canonical
/// form for each `i >= 2`.
pub fn peel_words(
    h: &HomSpec,
    labeling: &PathLabeling,
    ys: &YSets,
) -> Result<PeelReport, EngineError> {
    let idx = labeling_indices(h, labeling)?;
    let n = idx.len();
    if n < 2 || ys.sets.len() != n - 1 {
        return Err(EngineError::Internal(format!(
            "peeling needs n-1 = {} Y-sets, got {}",
            n.saturating_sub(1),
            ys.sets.len()
        )));
    }
    let tgt = h.target();
    let originals: Vec<Word> = idx[..n - 1].iter().map(|&v| h.image(v).reduce()).collect();
    let mut peeled: Vec<Word> = Vec::with_capacity(n - 1);
    let mut checked = 0;
    for (i, w) in originals.iter().enumerate() {
        let mut allowed = vec![false; tgt.len()];
        for &y in &ys.sets[i] {
            allowed[y] = true;
        }
        let mut cur = w.clone();
        if i > 0 {
            while let Some(pos) = cur.letters().iter().position(|l| !allowed[l.vertex]) {
                let mut ls = cur.letters().to_vec();
                ls.remove(pos);
                cur = Word::from_letters(tgt, ls)?;
            }
        }
        if !cur.is_word_in(&allowed) {
            return Err(EngineError::Internal(format!(
                "Ŵ_{} = `{cur}` leaves Y^({})",
                i + 1,
                i + 1
            )));
        }
        peeled.push(cur);
        if i > 0 {
            let lhs = nested_conjugate(&peeled, i + 1)?.canonical_form();
            let rhs = nested_conjugate(&originals, i + 1)?.canonical_form();
            if lhs != rhs {
                return Err(EngineError::Internal(format!(
                    "peeling equality {} fails: `{lhs}` != `{rhs}`",
                    i + 1
                )));
            }
            checked += 1;
        }
    }

    // the peeled conjugate is the image of v_1^{v_2...v_{n-1}} and commutes
    // with the image of v_n
    let src = h.source();
    let mut x = Word::generator(src, &labeling.order[0])?;
    if n > 2 {
        let mut conj = Word::empty(src);
        for name in &labeling.order[1..n - 1] {
            conj = conj.product(&Word::generator(src, name)?)?;
        }
        x = x.conjugate(&conj)?;
    }
    let peeled_conj = nested_conjugate(&peeled, n - 1)?;
    if h.apply(&x)?.canonical_form() != peeled_conj.canonical_form() {
        return Err(EngineError::Internal(
            "peeled conjugate differs from the image of v_1^(v_2...v_{n-1})".into(),
        ));
    }
    if !peeled_conj.commutes(h.image(idx[n - 1]))? {
        return Err(EngineError::Internal(
            "peeled conjugate does not commute with the image of v_n".into(),
        ));
    }

    Ok(PeelReport {
        originals,
        peeled,
        equalities_checked: checked,
    })
}

/// `[v_1, v_2]` for `n = 2`; `[v_1^{v_2 ... v_{n-1}}, v_n]` for `n >= 4`.
/// Both checks are run; failure of either is an error.
pub fn obstruction_commutator(
    h: &HomSpec,
    labeling: &PathLabeling,
) -> Result<KernelWitness, EngineError> {
    let n = labeling.len();
    if n != 2 && n < 4 {
        return Err(EngineError::UnsupportedLength(n));
    }
    labeling_indices(h, labeling)?;
    let src = h.source();
    let gen = |k: usize| Word::generator(src, &labeling.order[k]);
    let mut conj = Word::empty(src);
    for k in 1..n - 1 {
        conj = conj.product(&gen(k)?)?;
    }
    let word = gen(0)?.conjugate(&conj)?.commutator(&gen(n - 1)?)?;
    KernelWitness::certify(h, word)
}

fn embedding_from(h: &HomSpec, labeling: &PathLabeling, ys: &[usize]) -> FullEmbedding {
    FullEmbedding {
        map: labeling
            .order
            .iter()
            .zip(ys)
            .map(|(v, &y)| Assignment {
                source: v.clone(),
                target: h.target().vertex_name(y).to_string(),
                note: Some(format!("in supp of image of {v}")),
            })
            .collect(),
    }
}

fn verified(
    h: &HomSpec,
    labeling: &PathLabeling,
    e: FullEmbedding,
) -> Result<FullEmbedding, EngineError> {
    let sub = h.source().induced_by_names(&labeling.order)?;
    verify_full_embedding(&sub, h.target(), &e)
        .map_err(|v| EngineError::Internal(v.to_string()))?;
    Ok(e)
}

/// Full embedding with `ι(v_i) ∈ supp(ψ(v_i))`, or a kernel witness.
pub fn extract_anti_path(
    h: &HomSpec,
    labeling: &PathLabeling,
    opts: ExtractOptions,
) -> Result<AntiPathReport, EngineError> {
    let n = labeling.len();
    if n == 3 {
        return Err(EngineError::UseAntiPath3);
    }
    if n == 0 {
        return Err(EngineError::UnsupportedLength(0));
    }
    let idx = labeling_indices(h, labeling)?;
    if let Some(w) = trivial_generator_witness(h, &idx)? {
        return Ok(AntiPathReport::plain(Outcome::Witness(w)));
    }
    let tgt = h.target();

    if n == 1 {
        let y = h.image(idx[0]).support()[0];
        let e = verified(h, labeling, embedding_from(h, labeling, &[y]))?;
        return Ok(AntiPathReport::plain(Outcome::Embedding(e)));
    }

    if n == 2 {
        let (s1, s2) = (h.image(idx[0]).support(), h.image(idx[1]).support());
        let pair = s1
            .iter()
            .flat_map(|&a| s2.iter().map(move |&b| (a, b)))
            .find(|&(a, b)| a != b && !tgt.adjacent(a, b));
        return Ok(AntiPathReport::plain(match pair {
            Some((a, b)) => {
                Outcome::Embedding(verified(h, labeling, embedding_from(h, labeling, &[a, b]))?)
            }
            None => Outcome::Witness(obstruction_commutator(h, labeling)?),
        }));
    }

    let chain = build_clique_chain(h, labeling)?;
    if let Some(seq) = sequence_search(&chain) {
        let e = verified(h, labeling, embedding_from(h, labeling, &seq))?;
        return Ok(AntiPathReport {
            outcome: Outcome::Embedding(e),
            chain: Some(chain),
            y_sets: None,
            peel: None,
            no_sequence: false,
        });
    }

    let ys = y_sets(&chain);
    if !check_last_clique_adjacent(&chain, &ys) {
        return Err(EngineError::Internal(
            "C_n has a vertex non-adjacent to some Y^(i) vertex although no sequence exists".into(),
        ));
    }
    let peel = if opts.peel_check {
        Some(peel_words(h, labeling, &ys)?)
    } else {
        None
    };
    let witness = obstruction_commutator(h, labeling)?;
    Ok(AntiPathReport {
        outcome: Outcome::Witness(witness),
        chain: Some(chain),
        y_sets: Some(ys),
        peel,
        no_sequence: true,
    })
}
