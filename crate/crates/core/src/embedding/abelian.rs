use crate::linalg::IntMatrix;
use crate::search::{Assignment, FullEmbedding};
use crate::word::{Letter, Word};

use super::{trivial_generator_witness, EngineError, HomSpec, KernelWitness, Outcome};

/// Extraction on a complete factor of the source.
///
/// The images generate a subgroup of the free abelian group on the support
/// clique. Their exponent-sum matrix has full row rank iff the restricted map
/// is injective; in that case the `k`-th source vertex goes to the `k`-th
/// support vertex. Otherwise an integer left-kernel vector `x` gives the
/// witness `u_1^{x_1} ... u_n^{x_n}`.
pub fn extract_abelian(h: &HomSpec, vertices: &[usize]) -> Result<Outcome, EngineError> {
    let src = h.source();
    if !src.is_clique(vertices) {
        return Err(EngineError::NotComplete(
            vertices
                .iter()
                .map(|&v| src.vertex_name(v).to_string())
                .collect(),
        ));
    }
    if let Some(w) = trivial_generator_witness(h, vertices)? {
        return Ok(Outcome::Witness(w));
    }
    let support = h.support_of(vertices);
    let tgt = h.target();
    if !tgt.is_clique(&support) {
        return Err(EngineError::SupportNotClique(
            support
                .iter()
                .map(|&x| tgt.vertex_name(x).to_string())
                .collect(),
        ));
    }

    let sums: Vec<Vec<i64>> = vertices
        .iter()
        .map(|&v| {
            let all = h.image(v).exponent_sums();
            support.iter().map(|&x| all[x]).collect()
        })
        .collect();
    let matrix = IntMatrix::from_rows(sums);

    match matrix.left_kernel_vector() {
        None => Ok(Outcome::Embedding(FullEmbedding {
            map: vertices
                .iter()
                .zip(&support)
                .map(|(&v, &x)| Assignment {
                    source: src.vertex_name(v).to_string(),
                    target: tgt.vertex_name(x).to_string(),
                    note: Some("abelian factor: full-rank exponent matrix".to_string()),
                })
                .collect(),
        })),
        Some(kernel) => {
            let mut letters = Vec::new();
            for (&v, &k) in vertices.iter().zip(&kernel) {
                let l = if k < 0 {
                    Letter::neg(v)
                } else {
                    Letter::pos(v)
                };
                letters.extend(std::iter::repeat_n(l, k.unsigned_abs() as usize));
            }
            let word = Word::from_letters(src, letters)?;
            Ok(Outcome::Witness(KernelWitness::certify(h, word)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use std::sync::Arc;

    fn spec(src: &Arc<Graph>, tgt: &Arc<Graph>, images: &[(&str, &str)]) -> HomSpec {
        HomSpec::new(
            Arc::clone(src),
            Arc::clone(tgt),
            images
                .iter()
                .map(|(v, w)| (v.to_string(), Word::parse(tgt, w).unwrap())),
        )
        .unwrap()
    }

    #[test]
    fn single_vertex() {
        let src = Arc::new(Graph::complete("K1", &["v"]).unwrap());
        let tgt = Arc::new(Graph::complete("K2", &["a", "b"]).unwrap());
        let h = spec(&src, &tgt, &[("v", "a")]);
        assert_eq!(
            extract_abelian(&h, &[0]).unwrap(),
            Outcome::Embedding(FullEmbedding {
                map: vec![Assignment {
                    source: "v".into(),
                    target: "a".into(),
                    note: Some("abelian factor: full-rank exponent matrix".into())
                }]
            })
        );
    }

    #[test]
    fn rank_deficient_pair_gives_witness() {
        let src = Arc::new(Graph::complete("K2", &["u", "v"]).unwrap());
        let tgt = Arc::new(Graph::complete("K2", &["a", "b"]).unwrap());
        let h = spec(&src, &tgt, &[("u", "a b"), ("v", "a b")]);
        match extract_abelian(&h, &[0, 1]).unwrap() {
            Outcome::Witness(w) => {
                assert_eq!(w.word.to_string(), "u v^-1");
                assert!(w.is_valid());
            }
            o => panic!("expected witness, got {o:?}"),
        }
    }

    #[test]
    fn full_rank_pair_embeds_in_order() {
        let src = Arc::new(Graph::complete("K2", &["u", "v"]).unwrap());
        let tgt = Arc::new(Graph::complete("K3", &["a", "b", "c"]).unwrap());
        let h = spec(&src, &tgt, &[("u", "a"), ("v", "b c")]);
        match extract_abelian(&h, &[0, 1]).unwrap() {
            Outcome::Embedding(e) => {
                assert_eq!(e.pairs().collect::<Vec<_>>(), [("u", "a"), ("v", "b")]);
            }
            o => panic!("expected embedding, got {o:?}"),
        }
    }

    #[test]
    fn powers_of_one_generator() {
        let src = Arc::new(Graph::complete("K3", &["u", "v", "w"]).unwrap());
        let tgt = Arc::new(Graph::complete("K2", &["a", "b"]).unwrap());
        let h = spec(
            &src,
            &tgt,
            &[("u", "a a"), ("v", "a^-1 a^-1 a^-1"), ("w", "b")],
        );
        match extract_abelian(&h, &[0, 1, 2]).unwrap() {
            Outcome::Witness(w) => {
                assert_eq!(w.word.to_string(), "u u u v v");
                assert!(w.is_valid());
            }
            o => panic!("expected witness, got {o:?}"),
        }
    }

    #[test]
    fn errors_on_bad_inputs() {
        let src = Arc::new(Graph::edgeless("E2", &["u", "v"]).unwrap());
        let tgt = Arc::new(Graph::edgeless("T", &["a", "b"]).unwrap());
        let h = spec(&src, &tgt, &[("u", "a"), ("v", "b")]);
        assert!(matches!(
            extract_abelian(&h, &[0, 1]),
            Err(EngineError::NotComplete(_))
        ));
        let src = Arc::new(Graph::complete("K2", &["u", "v"]).unwrap());
        let h = spec(&src, &tgt, &[("u", "a"), ("v", "b")]);
        assert!(matches!(
            extract_abelian(&h, &[0, 1]),
            Err(EngineError::SupportNotClique(_))
        ));
    }

    #[test]
    fn trivial_image_short_circuits() {
        let src = Arc::new(Graph::complete("K2", &["u", "v"]).unwrap());
        let tgt = Arc::new(Graph::complete("K2", &["a", "b"]).unwrap());
        let h = spec(&src, &tgt, &[("u", "a"), ("v", "b b^-1")]);
        match extract_abelian(&h, &[0, 1]).unwrap() {
            Outcome::Witness(w) => assert_eq!(w.word.to_string(), "v"),
            o => panic!("expected witness, got {o:?}"),
        }
    }
}
