//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so
//! the lines are always printed.

use std::collections::{BTreeSet, VecDeque};
use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use raag::decompose::{join_decompose, ComponentKind};
use raag::embedding::{extract_full, recheck_outcome, ExtractOptions, HomSpec, Outcome};
use raag::extension::{ball_as_graph, ext_ball};
use raag::graph::Graph;
use raag::oracle::{oracle_is_trivial, OracleVerdict, DEFAULT_ORACLE_BUDGET};
use raag::search::verify_full_embedding;
use raag::word::{Letter, Word, WordError};
use raag_cli::random::{legal_shuffle, random_graph, random_word, vertex_names};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let ns = vertex_names(n);
    let mut g = Graph::edgeless("G", &ns).unwrap();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(&ns[i], &ns[j]).unwrap();
            }
            bit += 1;
        }
    }
    g
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of graphs on `n` vertices.
fn iso_classes(n: usize) -> Vec<Graph> {
    let perms = permutations(n);
    let pairs = n * n.saturating_sub(1) / 2;
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for mask in 0..(1u64 << pairs) {
        let g = graph_from_mask(n, mask);
        let key = perms
            .iter()
            .map(|p| {
                let mut m = 0u64;
                let mut bit = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if g.adjacent(p[i], p[j]) {
                            m |= 1 << bit;
                        }
                        bit += 1;
                    }
                }
                m
            })
            .min()
            .unwrap();
        if seen.insert(key) {
            reps.push(g);
        }
    }
    reps
}

fn criterion_1() -> Verdict {
    let classes = iso_classes(4);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut cases, mut disagree, mut inconclusive) = (0, 0, 0);
    for g in &classes {
        let g = Arc::new(g.clone());
        let all: Vec<usize> = (0..4).collect();
        for _ in 0..1000 {
            let len = rng.gen_range(0..=8);
            let w = random_word(&mut rng, &g, &all, len);
            cases += 1;
            match oracle_is_trivial(&w, DEFAULT_ORACLE_BUDGET) {
                OracleVerdict::Inconclusive => inconclusive += 1,
                v => {
                    if v.as_bool() != Some(w.is_trivial()) {
                        disagree += 1;
                    }
                }
            }
        }
    }
    Verdict {
        pass: classes.len() == 11 && disagree == 0 && inconclusive == 0,
        detail: format!(
            "{} classes, {cases} words, {disagree} disagreements, {inconclusive} inconclusive",
            classes.len()
        ),
    }
}

fn criterion_2() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = 0;
    let mut moved = 0;
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=5);
        let density = rng.gen_range(0.0..=1.0);
        let g = Arc::new(random_graph(&mut rng, "G", n, density));
        let all: Vec<usize> = (0..n).collect();
        let len = rng.gen_range(0..=12);
        let w = random_word(&mut rng, &g, &all, len);
        let s = legal_shuffle(&mut rng, &w, 40);
        if s.letters() != w.letters() {
            moved += 1;
        }
        if w.canonical_form() != s.canonical_form() {
            failures += 1;
        }
    }
    Verdict {
        pass: failures == 0,
        detail: format!("10000 pairs ({moved} shuffled to a different word), {failures} failures"),
    }
}

fn words_up_to(g: &Arc<Graph>, len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty(g)];
    let mut level = vec![Vec::<Letter>::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for prefix in &level {
            for v in 0..g.len() {
                for inverse in [false, true] {
                    let mut ls = prefix.clone();
                    ls.push(Letter { vertex: v, inverse });
                    out.push(Word::from_letters(g, ls.clone()).unwrap());
                    next.push(ls);
                }
            }
        }
        level = next;
    }
    out
}

fn criterion_3() -> Verdict {
    let (mut pairs, mut disagree, mut graphs) = (0u64, 0u64, 0);
    for n in 1..=4 {
        for g in iso_classes(n) {
            graphs += 1;
            let g = Arc::new(g);
            let words: Vec<Word> = words_up_to(&g, 3)
                .into_iter()
                .filter(|w| g.is_clique(&w.support()))
                .collect();
            for a in &words {
                for b in &words {
                    pairs += 1;
                    match a.clique_commute_check(b) {
                        Ok(c) if c == a.commutes(b).unwrap() => {}
                        Ok(_) | Err(WordError::NotCliqueShaped) => disagree += 1,
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }
    Verdict {
        pass: disagree == 0,
        detail: format!("{graphs} graphs, {pairs} pairs, {disagree} disagreements"),
    }
}

/// Runs the harness through the binary; returns its `key: value` output.
fn harness_output() -> (i32, String, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_raag"))
        .args(["verify", "--trials", "500", "--seed", "42"])
        .output()
        .expect("run raag");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        start.elapsed(),
    )
}

fn field(out: &str, key: &str) -> Option<usize> {
    out.lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix(": "))
        .and_then(|v| v.trim().parse().ok())
}

fn criterion_4(code: i32, out: &str, took: Duration) -> Verdict {
    let get = |k| field(out, k).unwrap_or(usize::MAX);
    let total = get("embeddings") + get("witnesses") + get("certificates");
    Verdict {
        pass: code == 0
            && get("trials") == 500
            && total == 500
            && get("errors") == 0
            && get("failed_invariants") == 0
            && took < Duration::from_secs(600),
        detail: format!(
            "exit {code}, {} embeddings, {} witnesses, {} certificates, {} errors, {} failed invariants, harness {:.2}s",
            get("embeddings"),
            get("witnesses"),
            get("certificates"),
            get("errors"),
            get("failed_invariants"),
            took.as_secs_f64()
        ),
    }
}

fn criterion_5(out: &str) -> Verdict {
    let get = |k| field(out, k).unwrap_or(usize::MAX);
    let factors = get("peel_factors");
    Verdict {
        pass: factors > 0
            && factors != usize::MAX
            && get("peel_failures") == 0
            && get("y_adjacency_checks") == factors,
        detail: format!(
            "{factors} factors without admissible sequence, {} peeling equalities, {} Y-adjacency checks, {} failures",
            get("peel_equalities"),
            get("y_adjacency_checks"),
            get("peel_failures")
        ),
    }
}

fn criterion_6() -> Verdict {
    let mut graphs = 0;
    let mut mismatches = 0;
    for n in 1..=5 {
        for mask in 0..(1u64 << (n * (n - 1) / 2)) {
            graphs += 1;
            let g = Arc::new(graph_from_mask(n, mask));
            if ball_as_graph(&ext_ball(&g, 0)) != *g {
                mismatches += 1;
            }
        }
    }
    let e2 = Arc::new(Graph::edgeless("E2", &["a", "b"]).unwrap());
    let ball = ext_ball(&e2, 1);
    let mut edge_mismatch = 0;
    for i in 0..ball.len() {
        for j in i + 1..ball.len() {
            let (x, y) = (
                ball.vertices()[i].representative().word(),
                ball.vertices()[j].representative().word(),
            );
            let oracle = oracle_is_trivial(&x.commutator(y).unwrap(), DEFAULT_ORACLE_BUDGET);
            if oracle.as_bool() != Some(ball.adjacent(i, j)) {
                edge_mismatch += 1;
            }
        }
    }
    Verdict {
        pass: mismatches == 0 && ball.len() == 6 && edge_mismatch == 0,
        detail: format!(
            "{graphs} graphs at radius 0, {mismatches} mismatches; edgeless-2 radius 1 has {} vertices, {edge_mismatch} edge mismatches",
            ball.len()
        ),
    }
}

fn complement_bfs(g: &Graph) -> BTreeSet<BTreeSet<usize>> {
    let n = g.len();
    let mut seen = vec![false; n];
    let mut out = BTreeSet::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            comp.insert(u);
            for (v, s) in seen.iter_mut().enumerate() {
                if v != u && !*s && !g.adjacent(u, v) {
                    *s = true;
                    queue.push_back(v);
                }
            }
        }
        out.insert(comp);
    }
    out
}

fn criterion_7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=6);
        let density = rng.gen_range(0.0..=1.0);
        let g = random_graph(&mut rng, "G", n, density);
        let d = join_decompose(&g).unwrap();
        let got: BTreeSet<BTreeSet<usize>> = d
            .components
            .iter()
            .map(|c| c.vertices.iter().copied().collect())
            .collect();
        let kinds_ok = d.components.iter().all(|c| match &c.kind {
            ComponentKind::Singleton => c.vertices.len() == 1,
            ComponentKind::PathComplement(l) => l.is_valid_for(&c.graph),
            ComponentKind::Other => c.vertices.len() > 1,
        });
        if got != complement_bfs(&g) || d.reconstruct(&g) != g || !kinds_ok {
            failures += 1;
        }
    }
    Verdict {
        pass: failures == 0,
        detail: format!("200 graphs, {failures} mismatches"),
    }
}

fn smoke_sources() -> Vec<(&'static str, Graph)> {
    let p2c = Graph::path_complement("P2c", &["v1", "v2"]).unwrap();
    let p4c = Graph::path_complement("P4c", &["v1", "v2", "v3", "v4"]).unwrap();
    let c4 = Graph::cycle("C4", &["v1", "v2", "v3", "v4"]).unwrap();
    let k2 = Graph::complete("K2", &["u1", "u2"]).unwrap();
    let join = Graph::join("K2*P4c", &[&k2, &p4c]).unwrap();
    vec![("P2c", p2c), ("P4c", p4c), ("C4", c4), ("K2*P4c", join)]
}

/// `src` with vertices renamed `x_<v>`, plus two extra vertices wired at random.
fn host(rng: &mut ChaCha8Rng, src: &Graph) -> Graph {
    let mut g = Graph::new("host");
    for v in src.vertex_names() {
        g.add_vertex(&format!("x_{v}")).unwrap();
    }
    for (a, b) in src.edges() {
        g.add_edge(
            &format!("x_{}", src.vertex_name(a)),
            &format!("x_{}", src.vertex_name(b)),
        )
        .unwrap();
    }
    for extra in ["y", "z"] {
        g.add_vertex(extra).unwrap();
        for v in src.vertex_names() {
            if rng.gen_bool(0.5) {
                g.add_edge(extra, &format!("x_{v}")).unwrap();
            }
        }
    }
    g.add_edge("y", "z").unwrap();
    g
}

fn criterion_8() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut notes = Vec::new();
    let mut pass = true;
    for (name, src) in smoke_sources() {
        let src = Arc::new(src);
        let tgt = Arc::new(host(&mut rng, &src));
        let identity = HomSpec::new(
            Arc::clone(&src),
            Arc::clone(&tgt),
            src.vertex_names()
                .iter()
                .map(|v| (v.clone(), Word::generator(&tgt, &format!("x_{v}")).unwrap())),
        )
        .unwrap();
        let embedded = match extract_full(&identity, ExtractOptions::default()) {
            Ok(r) => match &r.outcome {
                Outcome::Embedding(e) => {
                    verify_full_embedding(&src, &tgt, e).is_ok()
                        && recheck_outcome(&identity, &r.outcome).is_ok()
                }
                _ => false,
            },
            Err(_) => false,
        };
        // v_k -> y^k: everything lands in one cyclic subgroup
        let collapsed = HomSpec::new(
            Arc::clone(&src),
            Arc::clone(&tgt),
            src.vertex_names().iter().enumerate().map(|(k, v)| {
                (
                    v.clone(),
                    Word::generator(&tgt, "y").unwrap().power(k as i64 + 1),
                )
            }),
        )
        .unwrap();
        let witnessed = match extract_full(&collapsed, ExtractOptions::default()) {
            Ok(r) => match &r.outcome {
                Outcome::Witness(w) => {
                    w.is_valid() && recheck_outcome(&collapsed, &r.outcome).is_ok()
                }
                _ => false,
            },
            Err(_) => false,
        };
        pass &= embedded && witnessed;
        notes.push(format!(
            "{name}: {}/{}",
            if embedded {
                "embedding"
            } else {
                "NO-EMBEDDING"
            },
            if witnessed { "witness" } else { "NO-WITNESS" }
        ));
    }
    let cli = cli_smoke();
    pass &= cli.is_ok();
    notes.push(match cli {
        Ok(()) => "cli extract exit codes 0/2".to_string(),
        Err(e) => format!("cli: {e}"),
    });
    Verdict {
        pass,
        detail: notes.join(", "),
    }
}

/// The same P4c pair through `raag extract` on files.
fn cli_smoke() -> Result<(), String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p4c = Graph::path_complement("P4c", &["v1", "v2", "v3", "v4"]).unwrap();
    let write = |name: &str, text: String| {
        std::fs::write(dir.path().join(name), text).map_err(|e| e.to_string())
    };
    write("l.txt", p4c.to_text())?;
    write("g.txt", p4c.to_text())?;
    write(
        "id.hom",
        "hom\nsource: l.txt\ntarget: g.txt\nmap v1 = v1\nmap v2 = v2\nmap v3 = v3\nmap v4 = v4\n"
            .into(),
    )?;
    write("col.hom", "hom\nsource: l.txt\ntarget: g.txt\nmap v1 = v1\nmap v2 = v1 v1\nmap v3 = v1^-1\nmap v4 = v1\n".into())?;
    let run = |f: &str| -> Result<(i32, String), String> {
        let o = Command::new(env!("CARGO_BIN_EXE_raag"))
            .args(["extract", "--hom"])
            .arg(Path::new(dir.path()).join(f))
            .output()
            .map_err(|e| e.to_string())?;
        Ok((
            o.status.code().unwrap_or(-1),
            String::from_utf8_lossy(&o.stdout).into_owned(),
        ))
    };
    let (c1, o1) = run("id.hom")?;
    let (c2, o2) = run("col.hom")?;
    if c1 != 0 || !o1.contains("embed v1 -> v1") {
        return Err(format!("identity: exit {c1}\n{o1}"));
    }
    if c2 != 2 || !o2.contains("witness ") {
        return Err(format!("collapsed: exit {c2}\n{o2}"));
    }
    Ok(())
}

fn main() {
    let mut all = true;
    let mut report = |k: usize, title: &str, f: &mut dyn FnMut() -> Verdict| {
        let start = Instant::now();
        let v = f();
        all &= v.pass;
        println!(
            "criterion {k} ({title}): {} [{}; {:.2}s]",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail,
            start.elapsed().as_secs_f64()
        );
    };
    report(1, "word problem vs oracle", &mut criterion_1);
    report(2, "canonical form stability", &mut criterion_2);
    report(3, "clique commutation", &mut criterion_3);
    let (code, out, took) = harness_output();
    report(4, "extraction dichotomy harness", &mut || {
        criterion_4(code, &out, took)
    });
    report(5, "peeling replay", &mut || criterion_5(&out));
    report(6, "extension balls", &mut criterion_6);
    report(7, "join decomposition", &mut criterion_7);
    report(8, "end-to-end smoke", &mut criterion_8);
    if !all {
        std::process::exit(1);
    }
}
