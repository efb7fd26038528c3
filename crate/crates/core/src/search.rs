//! Full (induced) embeddings: a backtracking search and an independent checker.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

/// One source vertex and its image, with an optional note on where the image
/// came from (e.g. which support it was drawn from).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub source: String,
    pub target: String,
    pub note: Option<String>,
}

/// A name-based vertex map, ordered like the source graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FullEmbedding {
    pub map: Vec<Assignment>,
}

impl FullEmbedding {
    pub fn from_pairs<S: Into<String>, T: Into<String>>(
        pairs: impl IntoIterator<Item = (S, T)>,
    ) -> Self {
        FullEmbedding {
            map: pairs
                .into_iter()
                .map(|(s, t)| Assignment {
                    source: s.into(),
                    target: t.into(),
                    note: None,
                })
                .collect(),
        }
    }

    pub fn image_of(&self, source: &str) -> Option<&str> {
        self.map
            .iter()
            .find(|a| a.source == source)
            .map(|a| a.target.as_str())
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map
            .iter()
            .map(|a| (a.source.as_str(), a.target.as_str()))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Re-orders the assignments to follow the vertex order of `source`.
    pub fn sorted_by(mut self, source: &Graph) -> Self {
        self.map
            .sort_by_key(|a| source.index_of(&a.source).unwrap_or(usize::MAX));
        self
    }
}

impl fmt::Display for FullEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.map {
            writeln!(f, "embed {} -> {}", a.source, a.target)?;
        }
        Ok(())
    }
}

/// First reason a vertex map fails to be a full embedding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingViolation {
    #[error("no image for source vertex `{0}`")]
    Missing(String),
    #[error("`{0}` is not a source vertex")]
    UnknownSource(String),
    #[error("`{0}` is not a target vertex")]
    UnknownTarget(String),
    #[error("`{0}` and `{1}` share an image")]
    NotInjective(String, String),
    #[error("edge {0}-{1} is not mapped to an edge")]
    EdgeLost(String, String),
    #[error("non-edge {0},{1} is mapped to an edge")]
    NonEdgeLost(String, String),
}

/// Checks that `map` is total, injective, and preserves both adjacency and
/// non-adjacency. Reports the first violating pair in source order.
pub fn verify_full_embedding(
    lambda: &Graph,
    gamma: &Graph,
    map: &FullEmbedding,
) -> Result<(), EmbeddingViolation> {
    let mut image = vec![None; lambda.len()];
    for a in &map.map {
        let s = lambda
            .index_of(&a.source)
            .ok_or_else(|| EmbeddingViolation::UnknownSource(a.source.clone()))?;
        let t = gamma
            .index_of(&a.target)
            .ok_or_else(|| EmbeddingViolation::UnknownTarget(a.target.clone()))?;
        image[s] = Some(t);
    }
    let image = image
        .iter()
        .enumerate()
        .map(|(i, t)| {
            t.ok_or_else(|| EmbeddingViolation::Missing(lambda.vertex_name(i).to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    for u in 0..lambda.len() {
        for v in u + 1..lambda.len() {
            let (nu, nv) = (
                lambda.vertex_name(u).to_string(),
                lambda.vertex_name(v).to_string(),
            );
            if image[u] == image[v] {
                return Err(EmbeddingViolation::NotInjective(nu, nv));
            }
            match (lambda.adjacent(u, v), gamma.adjacent(image[u], image[v])) {
                (true, false) => return Err(EmbeddingViolation::EdgeLost(nu, nv)),
                (false, true) => return Err(EmbeddingViolation::NonEdgeLost(nu, nv)),
                _ => {}
            }
        }
    }
    Ok(())
}

/// Searches for a full embedding of `lambda` into `gamma`, optionally with
/// image inside `restrict`.
///
/// Source vertices are assigned in insertion order and candidates tried in
/// target insertion order, so the result is the lexicographically first full
/// embedding. Candidates are pruned by degree and complement degree inside
/// the restricted target.
pub fn full_embedding_search(
    lambda: &Graph,
    gamma: &Graph,
    restrict: Option<&[String]>,
) -> Result<Option<FullEmbedding>, GraphError> {
    let allowed: Vec<usize> = match restrict {
        None => (0..gamma.len()).collect(),
        Some(names) => {
            let set = names
                .iter()
                .map(|n| gamma.require(n))
                .collect::<Result<HashSet<_>, _>>()?;
            (0..gamma.len()).filter(|i| set.contains(i)).collect()
        }
    };
    let n = lambda.len();
    if n > allowed.len() {
        return Ok(None);
    }
    let deg = |i| allowed.iter().filter(|&&j| gamma.adjacent(i, j)).count();
    let m = allowed.len();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|u| {
            let du = lambda.degree(u);
            let cu = n - 1 - du;
            allowed
                .iter()
                .copied()
                .filter(|&x| {
                    let dx = deg(x);
                    du <= dx && cu <= m - 1 - dx
                })
                .collect()
        })
        .collect();

    let mut assigned: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; gamma.len()];
    let mut cursor = vec![0usize; n];
    // iterative backtracking over source vertices 0..n
    let mut depth = 0;
    if n == 0 {
        return Ok(Some(FullEmbedding::default()));
    }
    loop {
        let mut placed = false;
        while cursor[depth] < candidates[depth].len() {
            let x = candidates[depth][cursor[depth]];
            cursor[depth] += 1;
            if used[x] {
                continue;
            }
            let consistent = assigned
                .iter()
                .enumerate()
                .all(|(u, &y)| lambda.adjacent(u, depth) == gamma.adjacent(y, x));
            if consistent {
                assigned.push(x);
                used[x] = true;
                placed = true;
                break;
            }
        }
        if placed {
            if depth + 1 == n {
                return Ok(Some(FullEmbedding::from_pairs(
                    assigned
                        .iter()
                        .enumerate()
                        .map(|(u, &x)| (lambda.vertex_name(u), gamma.vertex_name(x))),
                )));
            }
            depth += 1;
            cursor[depth] = 0;
        } else {
            if depth == 0 {
                return Ok(None);
            }
            depth -= 1;
            let x = assigned.pop().expect("one assignment per level");
            used[x] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    #[test]
    fn edge_into_triangle() {
        let k2 = Graph::complete("K2", &["u", "v"]).unwrap();
        let k3 = Graph::complete("K3", &["a", "b", "c"]).unwrap();
        let e = full_embedding_search(&k2, &k3, None).unwrap().unwrap();
        assert_eq!(e, FullEmbedding::from_pairs([("u", "a"), ("v", "b")]));
        assert_eq!(verify_full_embedding(&k2, &k3, &e), Ok(()));
    }

    #[test]
    fn non_edge_into_triangle_fails() {
        let e2 = Graph::edgeless("E2", &["u", "v"]).unwrap();
        let k3 = Graph::complete("K3", &["a", "b", "c"]).unwrap();
        assert_eq!(full_embedding_search(&e2, &k3, None).unwrap(), None);
    }

    #[test]
    fn identity_on_p3_complement() {
        let g = Graph::path_complement("P3c", &names("v", 3)).unwrap();
        let e = full_embedding_search(&g, &g, None).unwrap().unwrap();
        assert!(e.pairs().all(|(s, t)| s == t));
    }

    #[test]
    fn restriction_is_honoured_and_checked() {
        let k2 = Graph::complete("K2", &["u", "v"]).unwrap();
        let k3 = Graph::complete("K3", &["a", "b", "c"]).unwrap();
        let r = vec!["b".to_string(), "c".to_string()];
        let e = full_embedding_search(&k2, &k3, Some(&r)).unwrap().unwrap();
        assert_eq!(e, FullEmbedding::from_pairs([("u", "b"), ("v", "c")]));
        let r = vec!["c".to_string()];
        assert_eq!(full_embedding_search(&k2, &k3, Some(&r)).unwrap(), None);
        let bad = vec!["z".to_string()];
        assert!(full_embedding_search(&k2, &k3, Some(&bad)).is_err());
    }

    #[test]
    fn verify_reports_violations() {
        let g = Graph::path_complement("P4c", &names("v", 4)).unwrap();
        let id = FullEmbedding::from_pairs(g.vertex_names().iter().map(|v| (v.clone(), v.clone())));
        assert_eq!(verify_full_embedding(&g, &g, &id), Ok(()));

        let k2 = Graph::complete("K2", &["u", "v"]).unwrap();
        let constant = FullEmbedding::from_pairs([("u", "u"), ("v", "u")]);
        assert!(matches!(
            verify_full_embedding(&k2, &k2, &constant),
            Err(EmbeddingViolation::NotInjective(..))
        ));

        let e2 = Graph::edgeless("E2", &["u", "v"]).unwrap();
        let c4 = Graph::cycle("C4", &names("c", 4)).unwrap();
        let onto_edge = FullEmbedding::from_pairs([("u", "c1"), ("v", "c2")]);
        assert_eq!(
            verify_full_embedding(&e2, &c4, &onto_edge),
            Err(EmbeddingViolation::NonEdgeLost("u".into(), "v".into()))
        );
        let onto_diagonal = FullEmbedding::from_pairs([("u", "c1"), ("v", "c3")]);
        assert_eq!(verify_full_embedding(&e2, &c4, &onto_diagonal), Ok(()));

        let partial = FullEmbedding::from_pairs([("u", "c1")]);
        assert!(matches!(
            verify_full_embedding(&e2, &c4, &partial),
            Err(EmbeddingViolation::Missing(_))
        ));
    }
}
