use crate::decompose::{recognize_linear_forest_complement, PathLabeling};
use crate::graph::Graph;
use crate::search::{full_embedding_search, verify_full_embedding, FullEmbedding};
use std::collections::HashSet;
use std::fmt;

use super::anti_path::labeling_indices;
use super::{
    extract_abelian, extract_anti_path, trivial_generator_witness, validate_hom, EngineError,
    ExtractOptions, HomSpec, Outcome, PeelReport, StructuralCertificate,
};

/// `P_3^c` factor: exhaustive search inside the support of the factor's image,
/// or the structural certificate when none exists.
pub fn extract_anti_path3(h: &HomSpec, labeling: &PathLabeling) -> Result<Outcome, EngineError> {
    if labeling.len() != 3 {
        return Err(EngineError::UnsupportedLength(labeling.len()));
    }
    let idx = labeling_indices(h, labeling)?;
    if let Some(w) = trivial_generator_witness(h, &idx)? {
        return Ok(Outcome::Witness(w));
    }
    let tgt = h.target();
    let support = h.support_of(&idx);
    let support_names: Vec<String> = support
        .iter()
        .map(|&x| tgt.vertex_name(x).to_string())
        .collect();
    let factor = h.source().induced(&idx);
    if let Some(mut e) = full_embedding_search(&factor, tgt, Some(&support_names))? {
        for a in &mut e.map {
            a.note = Some("P3c factor: found in supp of factor image".to_string());
        }
        return Ok(Outcome::Embedding(e));
    }
    let sub = tgt.induced(&support);
    let co = sub.complement();
    let comps = co.connected_components();
    if !comps.iter().all(|c| co.is_clique(c)) {
        return Err(EngineError::Internal(format!(
            "no P3c inside {support_names:?}, yet its complement is not a union of cliques"
        )));
    }
    Ok(Outcome::Certificate(StructuralCertificate {
        component: labeling.order.clone(),
        support: support_names,
        complement_cliques: comps
            .iter()
            .map(|c| c.iter().map(|&i| sub.vertex_name(i).to_string()).collect())
            .collect(),
    }))
}

/// Unions per-factor embeddings of a join, checking that images are disjoint
/// and that images of different factors are adjacent, then verifying the
/// result as a full embedding of the whole source.
pub fn glue_join(parts: &[FullEmbedding], h: &HomSpec) -> Result<FullEmbedding, EngineError> {
    let tgt = h.target();
    let lookup = |name: &str| tgt.require(name).map_err(EngineError::from);
    for (a, pa) in parts.iter().enumerate() {
        for pb in &parts[a + 1..] {
            for (su, tu) in pa.pairs() {
                for (sv, tv) in pb.pairs() {
                    if tu == tv {
                        return Err(EngineError::GlueOverlap(su.to_string(), sv.to_string()));
                    }
                    if !tgt.adjacent(lookup(tu)?, lookup(tv)?) {
                        return Err(EngineError::GlueNotAdjacent(su.to_string(), sv.to_string()));
                    }
                }
            }
        }
    }
    let glued = FullEmbedding {
        map: parts.iter().flat_map(|p| p.map.iter().cloned()).collect(),
    }
    .sorted_by(h.source());
    verify_full_embedding(h.source(), tgt, &glued)?;
    Ok(glued)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentClass {
    /// All singleton join factors, merged into one complete factor.
    Abelian,
    /// `P_n^c` with `n = 2` or `n >= 4`.
    AntiPath(usize),
    AntiPath3,
}

impl fmt::Display for ComponentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentClass::Abelian => write!(f, "abelian"),
            ComponentClass::AntiPath(n) => write!(f, "anti-path-{n}"),
            ComponentClass::AntiPath3 => write!(f, "anti-path-3"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub class: ComponentClass,
    /// Source vertices, in labeling order for anti-paths.
    pub vertices: Vec<String>,
    pub outcome: Outcome,
    /// Set when an anti-path factor with `n >= 4` had no admissible sequence.
    pub no_sequence: bool,
    pub peel: Option<PeelReport>,
}

#[derive(Debug, Clone)]
pub struct ExtractionReport {
    pub outcome: Outcome,
    /// Induced subgraph of the target on the support of the map.
    pub restricted_target: Graph,
    pub components: Vec<ComponentReport>,
}

impl fmt::Display for ExtractionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "outcome: {}", self.outcome.kind())?;
        writeln!(
            f,
            "support: {}",
            self.restricted_target.vertex_names().join(" ")
        )?;
        for c in &self.components {
            writeln!(
                f,
                "component: {} [{}] -> {}",
                c.class,
                c.vertices.join(" "),
                c.outcome.kind()
            )?;
        }
        match &self.outcome {
            Outcome::Embedding(_) => writeln!(f, "result: full embedding of the source inside supp(psi)")?,
            Outcome::Witness(w) => writeln!(
                f,
                "result: kernel element (nontrivial in source: {}, image trivial: {})",
                w.nontrivial_in_source, w.trivial_image
            )?,
            Outcome::Certificate(c) => writeln!(
                f,
                "result: P3c factor [{}] has no full embedding into supp [{}]; complement splits into cliques {}",
                c.component.join(" "),
                c.support.join(" "),
                c.complement_cliques
                    .iter()
                    .map(|k| format!("{{{}}}", k.join(" ")))
                    .collect::<Vec<_>>()
                    .join(" ")
            )?,
        }
        f.write_str(&self.outcome.machine_block())
    }
}

/// End-to-end extraction for a source that is a join of path-graph
/// complements.
///
/// The target is first cut down to the induced subgraph on the support of
/// the map. Singleton factors are merged into one complete factor; every
/// factor is handled separately, and the first factor that does not embed
/// decides the outcome. Otherwise the factor embeddings are glued.
pub fn extract_full(h: &HomSpec, opts: ExtractOptions) -> Result<ExtractionReport, EngineError> {
    let labelings =
        recognize_linear_forest_complement(h.source()).ok_or(EngineError::OutOfScope)?;
    let v = validate_hom(h);
    if let Some((a, b)) = v.relator_failures.first() {
        return Err(EngineError::NotHomomorphism(a.clone(), b.clone()));
    }
    if let Some((vertex, support)) = v.kk.violations.first() {
        return Err(EngineError::KkViolation {
            vertex: vertex.clone(),
            support: support.clone(),
        });
    }

    let restricted = h.restrict_target(&v.support)?;
    let all: Vec<usize> = (0..h.source().len()).collect();
    if let Some(w) = trivial_generator_witness(&restricted, &all)? {
        return Ok(ExtractionReport {
            outcome: Outcome::Witness(w),
            restricted_target: restricted.target().as_ref().clone(),
            components: Vec::new(),
        });
    }

    let (singletons, others): (Vec<PathLabeling>, Vec<PathLabeling>) =
        labelings.into_iter().partition(|l| l.len() == 1);
    let mut components = Vec::new();
    if !singletons.is_empty() {
        let names: Vec<String> = singletons.into_iter().map(|l| l.order[0].clone()).collect();
        let idx: Vec<usize> = names
            .iter()
            .map(|n| h.source().index_of(n).expect("recognized vertex"))
            .collect();
        components.push(ComponentReport {
            class: ComponentClass::Abelian,
            vertices: names,
            outcome: extract_abelian(&restricted, &idx)?,
            no_sequence: false,
            peel: None,
        });
    }
    for l in others {
        let report = if l.len() == 3 {
            ComponentReport {
                class: ComponentClass::AntiPath3,
                outcome: extract_anti_path3(&restricted, &l)?,
                vertices: l.order,
                no_sequence: false,
                peel: None,
            }
        } else {
            let r = extract_anti_path(&restricted, &l, opts)?;
            ComponentReport {
                class: ComponentClass::AntiPath(l.len()),
                vertices: l.order,
                outcome: r.outcome,
                no_sequence: r.no_sequence,
                peel: r.peel,
            }
        };
        components.push(report);
    }

    let restricted_target = restricted.target().as_ref().clone();
    if let Some(failed) = components.iter().find(|c| !c.outcome.is_embedding()) {
        return Ok(ExtractionReport {
            outcome: failed.outcome.clone(),
            restricted_target,
            components,
        });
    }
    let parts: Vec<FullEmbedding> = components
        .iter()
        .map(|c| match &c.outcome {
            Outcome::Embedding(e) => e.clone(),
            _ => unreachable!("all components embedded"),
        })
        .collect();
    let glued = glue_join(&parts, &restricted)?;
    Ok(ExtractionReport {
        outcome: Outcome::Embedding(glued),
        restricted_target,
        components,
    })
}

/// Checks an extraction outcome against the original map, without reusing
/// any intermediate result: embeddings are re-verified as full embeddings
/// with image inside the support of the map; witnesses are re-reduced in
/// source and target; certificates are recomputed and the absence of an
/// induced `P_3^c` in the support is confirmed by brute force.
pub fn recheck_outcome(h: &HomSpec, outcome: &Outcome) -> Result<(), String> {
    match outcome {
        Outcome::Embedding(e) => {
            verify_full_embedding(h.source(), h.target(), e).map_err(|v| v.to_string())?;
            let supp: HashSet<String> = (0..h.source().len())
                .flat_map(|v| h.image(v).support_names())
                .collect();
            match e.pairs().find(|(_, t)| !supp.contains(*t)) {
                Some((s, t)) => Err(format!("image {s} -> {t} outside supp(psi)")),
                None => Ok(()),
            }
        }
        Outcome::Witness(w) => {
            let word = w.word.transport(h.source()).map_err(|e| e.to_string())?;
            if word.is_trivial() {
                return Err(format!("witness `{word}` is trivial in the source"));
            }
            let img = h.apply(&word).map_err(|e| e.to_string())?;
            if !img.is_trivial() {
                return Err(format!(
                    "witness `{word}` has nontrivial image `{}`",
                    img.reduce()
                ));
            }
            Ok(())
        }
        Outcome::Certificate(c) => {
            if !c.check(h.target()) {
                return Err("certificate cliques do not match the target".into());
            }
            let sub = h
                .target()
                .induced_by_names(&c.support)
                .map_err(|e| e.to_string())?;
            if has_induced_anti_p3(&sub) {
                return Err("support contains an induced P3c".into());
            }
            let idx: Vec<usize> = c
                .component
                .iter()
                .map(|n| h.source().require(n).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            let mut want = h.support_of(&idx);
            want.sort_unstable();
            let mut got: Vec<usize> = c
                .support
                .iter()
                .map(|n| h.target().require(n).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            got.sort_unstable();
            if want != got {
                return Err("certificate support differs from the factor's support".into());
            }
            Ok(())
        }
    }
}

/// Brute force: three distinct vertices with exactly one edge among them.
fn has_induced_anti_p3(g: &Graph) -> bool {
    let n = g.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let e = g.adjacent(a, b) as u8 + g.adjacent(b, c) as u8 + g.adjacent(a, c) as u8;
                if e == 1 {
                    return true;
                }
            }
        }
    }
    false
}
