//! Extraction of full embeddings from (KK) homomorphisms.
//!
//! A [`HomSpec`] gives a homomorphism `A(Λ) → A(Γ)` by the images of the
//! generators of `Λ`. When every image has clique support and `Λ` is a join
//! of path-graph complements, [`extract_full`] either finds a full embedding
//! `Λ → Γ` inside the support of the map, or returns evidence that the map is
//! not injective: an explicit kernel word, or (for `P_3^c` factors) a
//! structural certificate about the target.
//!
//! Every outcome is independently checkable; nothing here assumes the input
//! map is injective.

mod abelian;
mod anti_path;
mod pipeline;

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::search::{EmbeddingViolation, FullEmbedding};
use crate::word::{Letter, Word, WordError};

pub use abelian::extract_abelian;
pub use anti_path::{
    build_clique_chain, check_last_clique_adjacent, extract_anti_path, obstruction_commutator,
    peel_words, sequence_search, y_sets, AntiPathReport, CliqueChain, PeelReport, YSets,
};
pub use pipeline::{
    extract_anti_path3, extract_full, glue_join, recheck_outcome, ComponentClass, ComponentReport,
    ExtractionReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("missing image for `{0}`")]
    MissingImage(String),
    #[error("image for `{0}` given twice")]
    DuplicateImage(String),
    #[error("`{0}` is not a source vertex")]
    UnknownSourceVertex(String),
    #[error("hom file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cannot read `{path}`: {msg}")]
    Io { path: String, msg: String },
    #[error("not a homomorphism: images of `{0}` and `{1}` do not commute")]
    NotHomomorphism(String, String),
    #[error("(KK) fails: support of the image of `{vertex}` is {{{}}}, not a clique", support.join(", "))]
    KkViolation {
        vertex: String,
        support: Vec<String>,
    },
    #[error("out of theorem scope: source is not the complement of a linear forest")]
    OutOfScope,
    #[error("source vertices {0:?} do not span a clique")]
    NotComplete(Vec<String>),
    #[error("support {0:?} of the abelian factor does not span a clique")]
    SupportNotClique(Vec<String>),
    #[error("labeling {0:?} does not order a path-graph complement in the source")]
    BadLabeling(Vec<String>),
    #[error("use extract_anti_path3 for a 3-vertex path complement")]
    UseAntiPath3,
    #[error("anti-path extraction needs 1, 2 or at least 4 vertices, got {0}")]
    UnsupportedLength(usize),
    #[error("not a homomorphism on this component: C_{i} and C_{j} contain non-adjacent distinct vertices")]
    FarCliquesNotAdjacent { i: usize, j: usize },
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error("glue: images of `{0}` and `{1}` coincide")]
    GlueOverlap(String, String),
    #[error("glue: images of `{0}` and `{1}` are not adjacent")]
    GlueNotAdjacent(String, String),
    #[error("glued map is not a full embedding: {0}")]
    GlueVerify(#[from] EmbeddingViolation),
}

/// A homomorphism `A(source) → A(target)` given on generators.
#[derive(Debug, Clone)]
pub struct HomSpec {
    source: Arc<Graph>,
    target: Arc<Graph>,
    images: Vec<Word>,
}

impl HomSpec {
    /// `images` must name every source vertex exactly once; words must live
    /// over `target`.
    pub fn new(
        source: Arc<Graph>,
        target: Arc<Graph>,
        images: impl IntoIterator<Item = (String, Word)>,
    ) -> Result<Self, EngineError> {
        let mut slots: Vec<Option<Word>> = vec![None; source.len()];
        for (name, w) in images {
            let i = source
                .index_of(&name)
                .ok_or_else(|| EngineError::UnknownSourceVertex(name.clone()))?;
            if slots[i].is_some() {
                return Err(EngineError::DuplicateImage(name));
            }
            slots[i] = Some(w.transport(&target)?);
        }
        let images = slots
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| EngineError::MissingImage(source.vertex_name(i).to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HomSpec {
            source,
            target,
            images,
        })
    }

    /// Each generator to the same-named generator of `target`.
    pub fn identity_into(source: Arc<Graph>, target: Arc<Graph>) -> Result<Self, EngineError> {
        let images = source
            .vertex_names()
            .iter()
            .map(|v| Ok((v.clone(), Word::generator(&target, v)?)))
            .collect::<Result<Vec<_>, WordError>>()?;
        HomSpec::new(source, target, images)
    }

    pub fn source(&self) -> &Arc<Graph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Graph> {
        &self.target
    }

    pub fn image(&self, v: usize) -> &Word {
        &self.images[v]
    }

    pub fn image_of(&self, name: &str) -> Option<&Word> {
        self.source.index_of(name).map(|i| &self.images[i])
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// The image of a source word, as an unreduced target word.
    pub fn apply(&self, w: &Word) -> Result<Word, EngineError> {
        let w = w.transport(&self.source)?;
        let mut letters: Vec<Letter> = Vec::new();
        for l in w.letters() {
            let img = &self.images[l.vertex];
            if l.inverse {
                letters.extend(img.inverse().letters());
            } else {
                letters.extend(img.letters());
            }
        }
        Ok(Word::from_letters(&self.target, letters)?)
    }

    /// Union of the supports of the images of `vertices`, ascending.
    pub fn support_of(&self, vertices: &[usize]) -> Vec<usize> {
        let mut s: Vec<usize> = vertices
            .iter()
            .flat_map(|&v| self.images[v].support())
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// The same map with its target cut down to the induced subgraph on
    /// `keep`, which must contain the support of every image.
    pub fn restrict_target(&self, keep: &[usize]) -> Result<HomSpec, EngineError> {
        let sub = Arc::new(self.target.induced(keep));
        let images = self
            .images
            .iter()
            .map(|w| w.reduce().transport(&sub))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HomSpec {
            source: Arc::clone(&self.source),
            target: sub,
            images,
        })
    }

    /// Parses the hom file format, resolving graph paths with `load`.
    ///
    /// ```text
    /// hom
    /// source: lambda.txt
    /// target: gamma.txt
    /// map v1 = a b^-1
    /// ```
    pub fn parse_with(
        text: &str,
        mut load: impl FnMut(&str) -> Result<Graph, EngineError>,
    ) -> Result<HomSpec, EngineError> {
        let err = |line, msg: String| EngineError::Parse { line, msg };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some((_, "hom")) => {}
            Some((ln, _)) => return Err(err(ln, "expected `hom` header".into())),
            None => return Err(err(1, "empty hom file".into())),
        }
        let mut field = |key: &str| -> Result<Graph, EngineError> {
            let (ln, l) = lines
                .next()
                .ok_or_else(|| err(0, format!("missing `{key}:` line")))?;
            let path = l
                .strip_prefix(key)
                .and_then(|r| r.strip_prefix(':'))
                .ok_or_else(|| err(ln, format!("expected `{key}: <graph-file>`")))?
                .trim();
            load(path)
        };
        let source = Arc::new(field("source")?);
        let target = Arc::new(field("target")?);
        let mut images = Vec::new();
        for (ln, l) in lines {
            let body = l
                .strip_prefix("map")
                .filter(|r| r.starts_with(char::is_whitespace))
                .ok_or_else(|| err(ln, "expected `map <vertex> = <word>`".into()))?;
            let (v, w) = body
                .split_once('=')
                .ok_or_else(|| err(ln, "expected `=`".into()))?;
            let word = Word::parse(&target, w).map_err(|e| err(ln, e.to_string()))?;
            images.push((v.trim().to_string(), word));
        }
        HomSpec::new(source, target, images)
    }

    /// Reads a hom file; graph paths are relative to the file's directory.
    pub fn load(path: &Path) -> Result<HomSpec, EngineError> {
        let text = read(path)?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        HomSpec::parse_with(&text, |p| load_graph(&dir.join(p)))
    }

    /// Renders the hom file body given the paths to write for the graphs.
    pub fn to_text(&self, source_path: &str, target_path: &str) -> String {
        let mut s = format!("hom\nsource: {source_path}\ntarget: {target_path}\n");
        for (v, w) in self.source.vertex_names().iter().zip(&self.images) {
            s.push_str(&format!("map {v} = {w}\n"));
        }
        s
    }
}

fn read(path: &Path) -> Result<String, EngineError> {
    std::fs::read_to_string(path).map_err(|e| EngineError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

/// Reads a graph file.
pub fn load_graph(path: &Path) -> Result<Graph, EngineError> {
    Ok(Graph::parse(&read(path)?)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KkReport {
    pub holds: bool,
    /// Source vertex and the support of its image, for each failure.
    pub violations: Vec<(String, Vec<String>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomValidation {
    /// Source edges whose images do not commute.
    pub relator_failures: Vec<(String, String)>,
    pub kk: KkReport,
    /// Source vertices mapped to the identity.
    pub trivial_images: Vec<String>,
    /// Union of all image supports, as target indices.
    pub support: Vec<usize>,
    pub support_names: Vec<String>,
}

impl HomValidation {
    pub fn is_homomorphism(&self) -> bool {
        self.relator_failures.is_empty()
    }
}

/// Checks the edge relators and the (KK) condition, and computes the support
/// of the map.
pub fn validate_hom(h: &HomSpec) -> HomValidation {
    let src = &h.source;
    let relator_failures = src
        .edges()
        .filter(|&(u, v)| !h.images[u].commutes(&h.images[v]).expect("shared target"))
        .map(|(u, v)| {
            (
                src.vertex_name(u).to_string(),
                src.vertex_name(v).to_string(),
            )
        })
        .collect();
    let names = |s: &[usize]| -> Vec<String> {
        s.iter()
            .map(|&x| h.target.vertex_name(x).to_string())
            .collect()
    };
    let mut violations = Vec::new();
    let mut trivial_images = Vec::new();
    for (v, w) in h.images.iter().enumerate() {
        let s = w.support();
        if s.is_empty() {
            trivial_images.push(src.vertex_name(v).to_string());
        }
        if !h.target.is_clique(&s) {
            violations.push((src.vertex_name(v).to_string(), names(&s)));
        }
    }
    let support = h.support_of(&(0..src.len()).collect::<Vec<_>>());
    HomValidation {
        relator_failures,
        kk: KkReport {
            holds: violations.is_empty(),
            violations,
        },
        trivial_images,
        support_names: names(&support),
        support,
    }
}

/// A source word that is nontrivial in `A(source)` and maps to the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelWitness {
    pub word: Word,
    pub nontrivial_in_source: bool,
    pub trivial_image: bool,
}

impl KernelWitness {
    /// Runs both checks; fails unless both hold.
    pub fn certify(h: &HomSpec, word: Word) -> Result<Self, EngineError> {
        let w = Self::evaluate(h, word)?;
        if !w.nontrivial_in_source {
            return Err(EngineError::Internal(format!(
                "witness `{}` is trivial in the source",
                w.word
            )));
        }
        if !w.trivial_image {
            return Err(EngineError::Internal(format!(
                "witness `{}` has nontrivial image",
                w.word
            )));
        }
        Ok(w)
    }

    /// Runs both checks and records the results without judging them.
    pub fn evaluate(h: &HomSpec, word: Word) -> Result<Self, EngineError> {
        let word = word.transport(h.source())?;
        let nontrivial_in_source = !word.is_trivial();
        let trivial_image = h.apply(&word)?.is_trivial();
        Ok(KernelWitness {
            word,
            nontrivial_in_source,
            trivial_image,
        })
    }

    pub fn is_valid(&self) -> bool {
        self.nontrivial_in_source && self.trivial_image
    }
}

/// Evidence that a `P_3^c` factor has no full embedding into the support of
/// its image: the complement of the induced subgraph on that support is a
/// disjoint union of complete graphs, so the support generates a direct
/// product of free groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralCertificate {
    /// Source vertices of the factor.
    pub component: Vec<String>,
    /// Target vertices in the support of the factor's image.
    pub support: Vec<String>,
    /// Vertex sets of the complete components of the complement.
    pub complement_cliques: Vec<Vec<String>>,
}

impl StructuralCertificate {
    pub const TAG: &'static str = "complement-of-supp-is-union-of-cliques";

    /// Recomputes the complement components on `target` and checks each is
    /// complete and that they partition the support.
    pub fn check(&self, target: &Graph) -> bool {
        let Ok(sub) = target.induced_by_names(&self.support) else {
            return false;
        };
        let co = sub.complement();
        let comps = co.connected_components();
        let complete = comps.iter().all(|c| co.is_clique(c));
        let as_names: Vec<Vec<String>> = comps
            .iter()
            .map(|c| c.iter().map(|&i| sub.vertex_name(i).to_string()).collect())
            .collect();
        complete && as_names == self.complement_cliques
    }
}

/// What an extraction produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Embedding(FullEmbedding),
    Witness(KernelWitness),
    Certificate(StructuralCertificate),
}

impl Outcome {
    pub fn is_embedding(&self) -> bool {
        matches!(self, Outcome::Embedding(_))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Outcome::Embedding(_) => "embedding",
            Outcome::Witness(_) => "witness",
            Outcome::Certificate(_) => "certificate",
        }
    }

    /// `embed u -> x` lines, a `witness <word>` line, or a `certificate` line.
    pub fn machine_block(&self) -> String {
        match self {
            Outcome::Embedding(e) => e.to_string(),
            Outcome::Witness(w) => format!("witness {}\n", w.word),
            Outcome::Certificate(_) => format!("certificate {}\n", StructuralCertificate::TAG),
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.machine_block())
    }
}

/// Tunables for extraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractOptions {
    /// Re-run the word-peeling construction and its equalities whenever an
    /// anti-path factor ends in a kernel witness.
    pub peel_check: bool,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions { peel_check: true }
    }
}

/// If some vertex in `vertices` maps to the identity, that generator is a
/// kernel witness.
pub(crate) fn trivial_generator_witness(
    h: &HomSpec,
    vertices: &[usize],
) -> Result<Option<KernelWitness>, EngineError> {
    match vertices.iter().find(|&&v| h.images[v].is_trivial()) {
        Some(&v) => {
            let w = Word::from_letters(&h.source, vec![Letter::pos(v)])?;
            Ok(Some(KernelWitness::certify(h, w)?))
        }
        None => Ok(None),
    }
}
