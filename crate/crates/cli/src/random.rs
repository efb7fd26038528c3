//! Seeded generators for graphs, words and clique-supported homomorphisms.

use std::sync::Arc;

use raag::graph::Graph;
use raag::word::{Letter, Word};
use raag::HomSpec;
use rand::seq::SliceRandom;
use rand::Rng;

/// `a`, `b`, ... for small graphs, `t0`, `t1`, ... beyond 26 vertices.
pub fn vertex_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect()
    } else {
        (0..n).map(|i| format!("t{i}")).collect()
    }
}

/// Erdős–Rényi graph on `n` vertices named by [`vertex_names`].
pub fn random_graph(rng: &mut impl Rng, name: &str, n: usize, density: f64) -> Graph {
    let names = vertex_names(n);
    let mut g = Graph::edgeless(name, &names).expect("distinct names");
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(&names[i], &names[j]).expect("fresh edge");
            }
        }
    }
    g
}

/// Uniform random word of length `len` over the letters of `vertices`.
pub fn random_word(rng: &mut impl Rng, g: &Arc<Graph>, vertices: &[usize], len: usize) -> Word {
    let letters = (0..len)
        .map(|_| {
            let v = *vertices.choose(rng).expect("nonempty alphabet");
            if rng.gen_bool(0.5) {
                Letter::pos(v)
            } else {
                Letter::neg(v)
            }
        })
        .collect();
    Word::from_letters(g, letters).expect("letters from g")
}

/// Join of path-graph complements with the given sizes; vertices `v1, v2, ...`
/// numbered consecutively along each path.
pub fn linear_forest_complement(sizes: &[usize]) -> Graph {
    let mut next = 1;
    let parts: Vec<Graph> = sizes
        .iter()
        .enumerate()
        .map(|(k, &n)| {
            let names: Vec<String> = (next..next + n).map(|i| format!("v{i}")).collect();
            next += n;
            Graph::path_complement(format!("P{}c_{k}", n), &names).expect("distinct names")
        })
        .collect();
    let refs: Vec<&Graph> = parts.iter().collect();
    Graph::join("L", &refs).expect("disjoint names")
}

/// A random homomorphism whose images have clique support.
///
/// Source vertices are visited in order. The image of `u` lives on a random
/// clique drawn from the target vertices that are identical or adjacent to
/// every support vertex of every image already chosen for a neighbour of
/// `u`. That makes both the (KK) condition and the edge relators hold by
/// construction. When no such vertex exists the image is the identity.
pub fn random_kk_hom(
    rng: &mut impl Rng,
    source: &Arc<Graph>,
    target: &Arc<Graph>,
    max_len: usize,
) -> HomSpec {
    let mut supports: Vec<Vec<usize>> = Vec::with_capacity(source.len());
    let mut images = Vec::with_capacity(source.len());
    for u in 0..source.len() {
        let mut allowed: Vec<usize> = (0..target.len())
            .filter(|&x| {
                source
                    .neighbors(u)
                    .filter(|&w| w < u)
                    .all(|w| supports[w].iter().all(|&y| target.adjacent_or_equal(x, y)))
            })
            .collect();
        let word = if allowed.is_empty() {
            Word::empty(target)
        } else {
            allowed.shuffle(rng);
            let mut clique = vec![allowed[0]];
            for &x in &allowed[1..] {
                if rng.gen_bool(0.5) && clique.iter().all(|&c| target.adjacent(c, x)) {
                    clique.push(x);
                }
            }
            let len = rng.gen_range(1..=max_len);
            random_word(rng, target, &clique, len)
        };
        supports.push(word.support());
        images.push((source.vertex_name(u).to_string(), word));
    }
    HomSpec::new(Arc::clone(source), Arc::clone(target), images).expect("one image per vertex")
}

/// A random permutation of `letters` obtained by swapping adjacent
/// commuting letters of distinct vertices, `steps` times.
pub fn legal_shuffle(rng: &mut impl Rng, w: &Word, steps: usize) -> Word {
    let g = w.ambient();
    let mut ls = w.letters().to_vec();
    if ls.len() >= 2 {
        for _ in 0..steps {
            let i = rng.gen_range(0..ls.len() - 1);
            let (a, b) = (ls[i].vertex, ls[i + 1].vertex);
            if a != b && g.adjacent(a, b) {
                ls.swap(i, i + 1);
            }
        }
    }
    Word::from_letters(g, ls).expect("same letters")
}

#[cfg(test)]
mod tests {
    use super::*;
    use raag::embedding::validate_hom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_homs_are_kk_homomorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=7);
            let tgt = Arc::new(random_graph(&mut rng, "G", n, 0.5));
            let src = Arc::new(linear_forest_complement(&[4, 1, 2]));
            let h = random_kk_hom(&mut rng, &src, &tgt, 4);
            let v = validate_hom(&h);
            assert!(v.is_homomorphism() && v.kk.holds);
        }
    }

    #[test]
    fn shuffles_preserve_the_element() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = Arc::new(Graph::path("P4", &["a", "b", "c", "d"]).unwrap());
        for _ in 0..100 {
            let w = random_word(&mut rng, &g, &[0, 1, 2, 3], 8);
            let s = legal_shuffle(&mut rng, &w, 20);
            assert_eq!(w.canonical_form(), s.canonical_form());
        }
    }

    #[test]
    fn forest_complement_names() {
        let g = linear_forest_complement(&[2, 1]);
        assert_eq!(g.vertex_names(), ["v1", "v2", "v3"]);
        assert!(!g.adjacent(0, 1));
        assert!(g.adjacent(0, 2) && g.adjacent(1, 2));
    }
}
