//! Right-angled Artin groups: words, canonical forms, extension-graph balls,
//! join decompositions, full-embedding search and extraction of embeddings
//! from homomorphisms with clique-supported images.

pub mod decompose;
pub mod embedding;
pub mod extension;
pub mod graph;
pub mod linalg;
pub mod oracle;
pub mod search;
pub mod word;

pub use decompose::{
    join_decompose, recognize_linear_forest_complement, JoinDecomposition, PathLabeling,
};
pub use embedding::{extract_full, EngineError, HomSpec, Outcome};
pub use graph::{Graph, GraphError};
pub use search::{full_embedding_search, verify_full_embedding, FullEmbedding};
pub use word::{GroupElement, Letter, Word, WordError};

/// Exponent-sum matrices over the integers.
pub type ExponentMatrix = linalg::IntMatrix<i64>;
