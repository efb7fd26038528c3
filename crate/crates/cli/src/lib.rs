//! Command-line front end for `raag`.
//!
//! Every command prints flat `key: value` lines (graphs are printed in the
//! graph text format or as DOT). Exit status: 0 for success or an embedding,
//! 2 when a kernel witness or structural certificate is produced, 1 for
//! usage and input errors.

pub mod harness;
pub mod random;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use raag::decompose::{join_decompose, recognize_linear_forest_complement, ComponentKind};
use raag::embedding::{extract_full, load_graph, validate_hom, ExtractOptions, HomSpec, Outcome};
use raag::extension::{ball_as_graph, ext_ball};
use raag::graph::Graph;
use raag::oracle::{oracle_is_trivial, DEFAULT_ORACLE_BUDGET};
use raag::search::full_embedding_search;
use raag::word::{Word, WordError};

use harness::{run_harness, HarnessConfig};

#[derive(Debug, Parser)]
#[command(
    name = "raag",
    version,
    about = "Computation in right-angled Artin groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Freely reduce a word.
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        word: String,
    },
    /// Shortlex-least representative of a word.
    Canon {
        #[arg(long)]
        graph: PathBuf,
        word: String,
    },
    /// Decide whether a word is the identity.
    Triv {
        #[arg(long)]
        graph: PathBuf,
        word: String,
        /// Also run the exhaustive rewriting oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Support of a word.
    Support {
        #[arg(long)]
        graph: PathBuf,
        word: String,
    },
    /// Decide whether two words commute.
    Commute {
        #[arg(long)]
        graph: PathBuf,
        first: String,
        second: String,
    },
    /// Complement graph.
    Complement {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Join decomposition (components of the complement).
    Decompose {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Recognize the complement of a linear forest and print path labelings.
    Recognize {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Search for a full embedding of one graph into another.
    EmbedSearch {
        #[arg(long, alias = "graph")]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Ball of the extension graph.
    ExtBall {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        radius: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Check the relators and the (KK) condition of a hom file.
    CheckHom {
        #[arg(long)]
        hom: PathBuf,
    },
    /// Extract a full embedding or a non-injectivity certificate.
    Extract {
        #[arg(long)]
        hom: PathBuf,
        /// Skip replaying the peeling construction on witnesses.
        #[arg(long)]
        no_peel: bool,
    },
    /// Randomized verification harness.
    Verify {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long = "max-target", default_value_t = 7)]
        max_target: usize,
        /// Allowed factor sizes of the source.
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,5")]
        sizes: Vec<usize>,
        /// Print one line per trial.
        #[arg(long)]
        per_trial: bool,
    },
}

/// Output text and exit status of a command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Response {
    pub output: String,
    pub code: i32,
}

impl Response {
    fn ok(output: String) -> Self {
        Response { output, code: 0 }
    }
}

fn graph(path: &Path) -> Result<Arc<Graph>> {
    Ok(Arc::new(load_graph(path)?))
}

fn word(g: &Arc<Graph>, text: &str) -> Result<Word> {
    Word::parse(g, text).with_context(|| format!("bad word `{text}`"))
}

fn render_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Plain => g.to_text(),
        Format::Dot => g.to_dot(),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

pub fn run(command: Command) -> Result<Response> {
    let mut out = String::new();
    match command {
        Command::Reduce { graph: p, word: w } => {
            let g = graph(&p)?;
            let r = word(&g, &w)?.reduce();
            writeln!(out, "reduced: {r}")?;
            writeln!(out, "length: {}", r.len())?;
        }
        Command::Canon { graph: p, word: w } => {
            let g = graph(&p)?;
            let c = word(&g, &w)?.canonical_form();
            writeln!(out, "canonical: {c}")?;
            writeln!(out, "length: {}", c.word().len())?;
        }
        Command::Triv {
            graph: p,
            word: w,
            oracle,
        } => {
            let g = graph(&p)?;
            let w = word(&g, &w)?;
            writeln!(out, "trivial: {}", yes(w.is_trivial()))?;
            if oracle {
                let v = oracle_is_trivial(&w, DEFAULT_ORACLE_BUDGET);
                let s = match v.as_bool() {
                    Some(b) => yes(b),
                    None => "inconclusive",
                };
                writeln!(out, "oracle: {s}")?;
            }
        }
        Command::Support { graph: p, word: w } => {
            let g = graph(&p)?;
            let w = word(&g, &w)?;
            writeln!(out, "support: {}", w.support_names().join(" "))?;
            writeln!(out, "clique: {}", yes(g.is_clique(&w.support())))?;
        }
        Command::Commute {
            graph: p,
            first,
            second,
        } => {
            let g = graph(&p)?;
            let (a, b) = (word(&g, &first)?, word(&g, &second)?);
            writeln!(out, "commute: {}", yes(a.commutes(&b)?))?;
            match a.clique_commute_check(&b) {
                Ok(c) => writeln!(out, "clique_check: {}", yes(c))?,
                Err(WordError::NotCliqueShaped) => writeln!(out, "clique_check: n/a")?,
                Err(e) => return Err(e.into()),
            }
        }
        Command::Complement { graph: p, format } => {
            out.push_str(&render_graph(&graph(&p)?.complement(), format));
        }
        Command::Decompose { graph: p } => {
            let g = graph(&p)?;
            let d = join_decompose(&g)?;
            writeln!(out, "components: {}", d.components.len())?;
            for c in &d.components {
                let names: Vec<&str> = c.vertices.iter().map(|&i| g.vertex_name(i)).collect();
                let kind = match &c.kind {
                    ComponentKind::Singleton => "singleton".to_string(),
                    ComponentKind::PathComplement(l) => format!("anti-path-{}", l.len()),
                    ComponentKind::Other => "other".to_string(),
                };
                writeln!(out, "component: {} ({kind})", names.join(" "))?;
            }
        }
        Command::Recognize { graph: p } => {
            let g = graph(&p)?;
            match recognize_linear_forest_complement(&g) {
                Some(ls) => {
                    writeln!(out, "linear_forest_complement: true")?;
                    for l in ls {
                        writeln!(out, "labeling: {}", l.order.join(" "))?;
                    }
                }
                None => writeln!(out, "linear_forest_complement: false")?,
            }
        }
        Command::EmbedSearch { source, target } => {
            let (s, t) = (graph(&source)?, graph(&target)?);
            match full_embedding_search(&s, &t, None)? {
                Some(e) => {
                    writeln!(out, "found: true")?;
                    out.push_str(&e.to_string());
                }
                None => writeln!(out, "found: false")?,
            }
        }
        Command::ExtBall {
            graph: p,
            radius,
            format,
        } => {
            let g = graph(&p)?;
            out.push_str(&render_graph(&ball_as_graph(&ext_ball(&g, radius)), format));
        }
        Command::CheckHom { hom } => {
            let h = HomSpec::load(&hom)?;
            let v = validate_hom(&h);
            writeln!(out, "homomorphism: {}", yes(v.is_homomorphism()))?;
            for (a, b) in &v.relator_failures {
                writeln!(out, "relator_failure: {a} {b}")?;
            }
            writeln!(out, "kk: {}", yes(v.kk.holds))?;
            for (x, s) in &v.kk.violations {
                writeln!(out, "kk_violation: {x} {{{}}}", s.join(" "))?;
            }
            writeln!(out, "trivial_images: {}", v.trivial_images.join(" "))?;
            writeln!(out, "support: {}", v.support_names.join(" "))?;
            let code = if v.is_homomorphism() && v.kk.holds {
                0
            } else {
                1
            };
            return Ok(Response { output: out, code });
        }
        Command::Extract { hom, no_peel } => {
            let h = HomSpec::load(&hom)?;
            let report = extract_full(
                &h,
                ExtractOptions {
                    peel_check: !no_peel,
                },
            )?;
            let code = match report.outcome {
                Outcome::Embedding(_) => 0,
                _ => 2,
            };
            return Ok(Response {
                output: report.to_string(),
                code,
            });
        }
        Command::Verify {
            trials,
            seed,
            density,
            max_target,
            sizes,
            per_trial,
        } => {
            if trials == 0 {
                bail!("--trials must be at least 1");
            }
            if !(0.0..=1.0).contains(&density) {
                bail!("--density must lie in [0, 1]");
            }
            if max_target == 0 || sizes.is_empty() || sizes.contains(&0) {
                bail!("--max-target and every --sizes entry must be positive");
            }
            let report = run_harness(&HarnessConfig {
                trials,
                seed,
                max_target_vertices: max_target,
                component_sizes: sizes,
                edge_density: density,
            });
            let code = if report.is_clean() { 0 } else { 1 };
            return Ok(Response {
                output: report.render(per_trial),
                code,
            });
        }
    }
    Ok(Response::ok(out))
}
