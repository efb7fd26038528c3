//! Seeded randomized check of the extraction dichotomy.
//!
//! Each trial draws a target graph, a join of path-graph complements and a
//! clique-supported homomorphism between their groups, runs the extraction,
//! and re-verifies whatever comes back without trusting the extractor.
//! Trial `t` uses its own ChaCha8 stream, so any trial can be replayed alone.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use raag::decompose::PathLabeling;
use raag::embedding::{
    build_clique_chain, check_last_clique_adjacent, extract_full, peel_words, recheck_outcome,
    validate_hom, y_sets, ComponentClass, ExtractOptions, HomSpec, Outcome,
};
use raag::oracle::{oracle_is_trivial, OracleVerdict};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::random::{linear_forest_complement, random_graph, random_kk_hom};

#[derive(Debug, Clone, PartialEq)]
pub struct HarnessConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_target_vertices: usize,
    /// Allowed sizes of the path-graph complement factors of the source.
    pub component_sizes: Vec<usize>,
    pub edge_density: f64,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            trials: 100,
            seed: 0,
            max_target_vertices: 7,
            component_sizes: vec![1, 2, 4, 5],
            edge_density: 0.5,
        }
    }
}

/// Longest image word drawn for a source generator.
const MAX_IMAGE_LEN: usize = 4;
/// At most this many join factors per source.
const MAX_FACTORS: usize = 3;
/// Witnesses up to this length are also checked against the search oracle.
const ORACLE_WITNESS_LEN: usize = 12;
const ORACLE_BUDGET: usize = 500_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrialOutcome {
    Embedding,
    Witness,
    Certificate,
    Error,
}

impl fmt::Display for TrialOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TrialOutcome::Embedding => "embedding",
            TrialOutcome::Witness => "witness",
            TrialOutcome::Certificate => "certificate",
            TrialOutcome::Error => "error",
        })
    }
}

/// Replay of the peeling argument for one anti-path factor without an
/// admissible sequence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PeelStats {
    /// Factors with `n >= 4` that reached the no-sequence case.
    pub factors: usize,
    pub equalities: usize,
    pub y_adjacency_checks: usize,
    pub failures: usize,
}

impl PeelStats {
    fn absorb(&mut self, other: &PeelStats) {
        self.factors += other.factors;
        self.equalities += other.equalities;
        self.y_adjacency_checks += other.y_adjacency_checks;
        self.failures += other.failures;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub index: usize,
    pub target_vertices: usize,
    pub factor_sizes: Vec<usize>,
    pub outcome: TrialOutcome,
    pub peel: PeelStats,
    /// Failed checks for this trial; empty when the trial is clean.
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarnessReport {
    pub config: HarnessConfig,
    pub trials: Vec<TrialRecord>,
    pub embeddings: usize,
    pub witnesses: usize,
    pub certificates: usize,
    pub errors: usize,
    pub peel: PeelStats,
    /// `trial <i>: <what failed>` lines.
    pub failed_invariants: Vec<String>,
}

impl HarnessReport {
    pub fn is_clean(&self) -> bool {
        self.failed_invariants.is_empty()
    }

    /// Per-trial lines followed by `key: value` totals.
    pub fn render(&self, per_trial: bool) -> String {
        let mut s = String::new();
        if per_trial {
            for t in &self.trials {
                let sizes: Vec<String> = t.factor_sizes.iter().map(|n| n.to_string()).collect();
                let _ = writeln!(
                    s,
                    "trial {}: target={} factors={} outcome={}",
                    t.index,
                    t.target_vertices,
                    sizes.join(","),
                    t.outcome
                );
            }
        }
        let c = &self.config;
        let sizes: Vec<String> = c.component_sizes.iter().map(|n| n.to_string()).collect();
        let _ = writeln!(s, "seed: {}", c.seed);
        let _ = writeln!(s, "trials: {}", self.trials.len());
        let _ = writeln!(s, "max_target: {}", c.max_target_vertices);
        let _ = writeln!(s, "component_sizes: {}", sizes.join(","));
        let _ = writeln!(s, "density: {}", c.edge_density);
        let _ = writeln!(s, "embeddings: {}", self.embeddings);
        let _ = writeln!(s, "witnesses: {}", self.witnesses);
        let _ = writeln!(s, "certificates: {}", self.certificates);
        let _ = writeln!(s, "errors: {}", self.errors);
        let _ = writeln!(s, "peel_factors: {}", self.peel.factors);
        let _ = writeln!(s, "peel_equalities: {}", self.peel.equalities);
        let _ = writeln!(s, "y_adjacency_checks: {}", self.peel.y_adjacency_checks);
        let _ = writeln!(s, "peel_failures: {}", self.peel.failures);
        let _ = writeln!(s, "failed_invariants: {}", self.failed_invariants.len());
        for f in &self.failed_invariants {
            let _ = writeln!(s, "failed: {f}");
        }
        s
    }
}

/// The random instance for trial `index`.
pub fn generate_trial(cfg: &HarnessConfig, index: usize) -> (HomSpec, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let k = rng.gen_range(1..=cfg.max_target_vertices.max(1));
    let target = Arc::new(random_graph(&mut rng, "G", k, cfg.edge_density));
    let factors = rng.gen_range(1..=MAX_FACTORS);
    let sizes: Vec<usize> = (0..factors)
        .map(|_| {
            *cfg.component_sizes
                .choose(&mut rng)
                .expect("nonempty size list")
        })
        .collect();
    let source = Arc::new(linear_forest_complement(&sizes));
    (
        random_kk_hom(&mut rng, &source, &target, MAX_IMAGE_LEN),
        sizes,
    )
}

/// Runs extraction on `h` and checks the result independently.
pub fn run_trial_on(h: &HomSpec, index: usize, factor_sizes: Vec<usize>) -> TrialRecord {
    let mut failures = Vec::new();
    let mut peel = PeelStats::default();
    let validation = validate_hom(h);
    if !validation.is_homomorphism() || !validation.kk.holds {
        failures.push("generated map is not a (KK) homomorphism".to_string());
    }

    let outcome = match extract_full(h, ExtractOptions::default()) {
        Err(e) => {
            failures.push(format!("extraction error: {e}"));
            TrialOutcome::Error
        }
        Ok(report) => {
            if let Err(e) = recheck_outcome(h, &report.outcome) {
                failures.push(format!("recheck: {e}"));
            }
            match &report.outcome {
                Outcome::Embedding(e) => {
                    for c in &report.components {
                        if !matches!(c.class, ComponentClass::AntiPath(_)) {
                            continue;
                        }
                        for v in &c.vertices {
                            let img = e.image_of(v).unwrap_or("");
                            if !h
                                .image_of(v)
                                .is_some_and(|w| w.support_names().iter().any(|x| x == img))
                            {
                                failures.push(format!(
                                    "image of {v} is outside supp of its image word"
                                ));
                            }
                        }
                    }
                }
                Outcome::Witness(w)
                    if w.word.len() <= ORACLE_WITNESS_LEN
                        && oracle_is_trivial(&w.word, ORACLE_BUDGET) == OracleVerdict::Trivial =>
                {
                    failures.push(format!("oracle finds witness `{}` trivial", w.word));
                }
                _ => {}
            }
            for c in report.components.iter().filter(|c| c.no_sequence) {
                let labeling = PathLabeling {
                    order: c.vertices.clone(),
                };
                let stats = replay_peel(h, &labeling);
                if stats.failures > 0 {
                    failures.push(format!("peel replay failed on [{}]", c.vertices.join(" ")));
                }
                peel.absorb(&stats);
            }
            match report.outcome {
                Outcome::Embedding(_) => TrialOutcome::Embedding,
                Outcome::Witness(_) => TrialOutcome::Witness,
                Outcome::Certificate(_) => TrialOutcome::Certificate,
            }
        }
    };
    TrialRecord {
        index,
        target_vertices: h.target().len(),
        factor_sizes,
        outcome,
        peel,
        failures,
    }
}

/// Rebuilds the chain and `Y`-sets on the unrestricted map, checks that C_n is adjacent or equal to every Y-set vertex
/// and reruns the peeling equalities.
fn replay_peel(h: &HomSpec, labeling: &PathLabeling) -> PeelStats {
    let mut stats = PeelStats {
        factors: 1,
        ..PeelStats::default()
    };
    let chain = match build_clique_chain(h, labeling) {
        Ok(c) => c,
        Err(_) => {
            stats.failures += 1;
            return stats;
        }
    };
    let ys = y_sets(&chain);
    stats.y_adjacency_checks += 1;
    if !check_last_clique_adjacent(&chain, &ys) {
        stats.failures += 1;
    }
    match peel_words(h, labeling, &ys) {
        Ok(p) => stats.equalities += p.equalities_checked,
        Err(_) => stats.failures += 1,
    }
    stats
}

pub fn run_harness(cfg: &HarnessConfig) -> HarnessReport {
    let trials: Vec<TrialRecord> = (0..cfg.trials)
        .map(|i| {
            let (h, sizes) = generate_trial(cfg, i);
            run_trial_on(&h, i, sizes)
        })
        .collect();
    let count = |o: TrialOutcome| trials.iter().filter(|t| t.outcome == o).count();
    let mut peel = PeelStats::default();
    let mut failed_invariants = Vec::new();
    for t in &trials {
        peel.absorb(&t.peel);
        failed_invariants.extend(t.failures.iter().map(|f| format!("trial {}: {f}", t.index)));
    }
    HarnessReport {
        config: cfg.clone(),
        embeddings: count(TrialOutcome::Embedding),
        witnesses: count(TrialOutcome::Witness),
        certificates: count(TrialOutcome::Certificate),
        errors: count(TrialOutcome::Error),
        trials,
        peel,
        failed_invariants,
    }
}
