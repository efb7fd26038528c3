//! Finite simple graphs with named vertices.
//!
//! Vertices are identified by name and kept in insertion order. Every
//! deterministic tie-break in the crate (search order, shortlex letter order,
//! component order) is derived from that order, so a graph read from disk
//! always produces the same results.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(String, String),
    #[error("invalid vertex id `{0}`")]
    InvalidId(String),
    #[error("empty input")]
    Empty,
    #[error("vertex sets of joined graphs overlap at `{0}`")]
    Overlap(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A finite simple graph. Adjacency is stored as a dense symmetric matrix.
#[derive(Debug, Clone)]
pub struct Graph {
    name: String,
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<bool>>,
}

/// Two graphs are equal when they have the same vertex list (in order) and
/// the same edges. The graph label is ignored.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.adj == other.adj
    }
}

impl Eq for Graph {}

fn is_plain_id(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Accepts plain ids and extension-graph names `base@l1.l2...` where each
/// letter is a plain id optionally followed by `^-1`.
pub fn is_valid_id(s: &str) -> bool {
    match s.split_once('@') {
        None => is_plain_id(s),
        Some((base, rep)) => {
            is_plain_id(base)
                && rep
                    .split('.')
                    .all(|l| is_plain_id(l.strip_suffix("^-1").unwrap_or(l)))
        }
    }
}

impl Graph {
    pub fn new(name: impl Into<String>) -> Self {
        Graph {
            name: name.into(),
            vertices: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
        }
    }

    /// Builds a graph from vertex names and an edge list.
    pub fn from_edges<S: AsRef<str>>(
        name: impl Into<String>,
        vertices: &[S],
        edges: &[(S, S)],
    ) -> Result<Self, GraphError> {
        let mut g = Graph::new(name);
        for v in vertices {
            g.add_vertex(v.as_ref())?;
        }
        for (u, v) in edges {
            g.add_edge(u.as_ref(), v.as_ref())?;
        }
        Ok(g)
    }

    /// Complete graph on `names`.
    pub fn complete<S: AsRef<str>>(
        name: impl Into<String>,
        names: &[S],
    ) -> Result<Self, GraphError> {
        let mut g = Graph::new(name);
        for v in names {
            g.add_vertex(v.as_ref())?;
        }
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                g.connect(i, j);
            }
        }
        Ok(g)
    }

    /// Edgeless graph on `names`.
    pub fn edgeless<S: AsRef<str>>(
        name: impl Into<String>,
        names: &[S],
    ) -> Result<Self, GraphError> {
        let mut g = Graph::new(name);
        for v in names {
            g.add_vertex(v.as_ref())?;
        }
        Ok(g)
    }

    /// Path graph through `names` in order.
    pub fn path<S: AsRef<str>>(name: impl Into<String>, names: &[S]) -> Result<Self, GraphError> {
        let mut g = Graph::edgeless(name, names)?;
        for i in 1..g.len() {
            g.connect(i - 1, i);
        }
        Ok(g)
    }

    /// Complement of the path graph through `names`: consecutive names are the
    /// only non-adjacent pairs.
    pub fn path_complement<S: AsRef<str>>(
        name: impl Into<String>,
        names: &[S],
    ) -> Result<Self, GraphError> {
        Ok(Graph::path(name, names)?.complement())
    }

    /// Cycle through `names` in order (needs at least 3 names to be simple).
    pub fn cycle<S: AsRef<str>>(name: impl Into<String>, names: &[S]) -> Result<Self, GraphError> {
        let mut g = Graph::path(name, names)?;
        let n = g.len();
        if n >= 3 {
            g.connect(0, n - 1);
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize, GraphError> {
        if !is_valid_id(name) {
            return Err(GraphError::InvalidId(name.to_string()));
        }
        if self.index.contains_key(name) {
            return Err(GraphError::DuplicateVertex(name.to_string()));
        }
        let i = self.vertices.len();
        self.vertices.push(name.to_string());
        self.index.insert(name.to_string(), i);
        for row in &mut self.adj {
            row.push(false);
        }
        self.adj.push(vec![false; i + 1]);
        Ok(i)
    }

    pub fn add_edge(&mut self, u: &str, v: &str) -> Result<(), GraphError> {
        let i = self.require(u)?;
        let j = self.require(v)?;
        if i == j {
            return Err(GraphError::SelfLoop(u.to_string()));
        }
        if self.adj[i][j] {
            return Err(GraphError::DuplicateEdge(u.to_string(), v.to_string()));
        }
        self.connect(i, j);
        Ok(())
    }

    /// Adds the edge `{i, j}` by index. Idempotent; ignores `i == j`.
    pub(crate) fn connect(&mut self, i: usize, j: usize) {
        if i != j {
            self.adj[i][j] = true;
            self.adj[j][i] = true;
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize, GraphError> {
        self.index_of(name)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    /// True when `i == j` or `{i, j}` is an edge.
    #[inline]
    pub fn adjacent_or_equal(&self, i: usize, j: usize) -> bool {
        i == j || self.adj[i][j]
    }

    pub fn adjacent_names(&self, u: &str, v: &str) -> Result<bool, GraphError> {
        Ok(self.adjacent(self.require(u)?, self.require(v)?))
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i]
            .iter()
            .enumerate()
            .filter_map(|(j, &a)| a.then_some(j))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].iter().filter(|&&a| a).count()
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| (i + 1..n).filter_map(move |j| self.adj[i][j].then_some((i, j))))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Whether the given vertices are pairwise adjacent.
    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(k, &a)| vs[k + 1..].iter().all(|&b| a != b && self.adj[a][b]))
    }

    pub fn complement(&self) -> Graph {
        let n = self.len();
        let mut adj = vec![vec![false; n]; n];
        for (i, row) in adj.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = i != j && !self.adj[i][j];
            }
        }
        Graph {
            name: format!("{}_c", self.name),
            vertices: self.vertices.clone(),
            index: self.index.clone(),
            adj,
        }
    }

    /// Induced subgraph on `vs`, keeping the order given.
    pub fn induced(&self, vs: &[usize]) -> Graph {
        let mut g = Graph::new(self.name.clone());
        for &v in vs {
            g.add_vertex(&self.vertices[v])
                .expect("induced vertex list has no duplicates");
        }
        for (a, &u) in vs.iter().enumerate() {
            for (b, &v) in vs.iter().enumerate().skip(a + 1) {
                if self.adj[u][v] {
                    g.connect(a, b);
                }
            }
        }
        g
    }

    /// Induced subgraph on the named vertices.
    pub fn induced_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Graph, GraphError> {
        let vs = names
            .iter()
            .map(|n| self.require(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.induced(&vs))
    }

    /// Disjoint union; vertex names must not collide.
    pub fn disjoint_union(name: impl Into<String>, parts: &[&Graph]) -> Result<Graph, GraphError> {
        let mut g = Graph::new(name);
        for part in parts {
            let offset = g.len();
            for v in &part.vertices {
                if g.contains(v) {
                    return Err(GraphError::Overlap(v.clone()));
                }
                g.add_vertex(v)?;
            }
            for (i, j) in part.edges() {
                g.connect(offset + i, offset + j);
            }
        }
        Ok(g)
    }

    /// Join: disjoint union plus every edge between different parts.
    pub fn join(name: impl Into<String>, parts: &[&Graph]) -> Result<Graph, GraphError> {
        let mut g = Graph::disjoint_union(name, parts)?;
        let mut bounds = Vec::with_capacity(parts.len());
        let mut start = 0;
        for p in parts {
            bounds.push(start..start + p.len());
            start += p.len();
        }
        for (a, ra) in bounds.iter().enumerate() {
            for rb in &bounds[a + 1..] {
                for i in ra.clone() {
                    for j in rb.clone() {
                        g.connect(i, j);
                    }
                }
            }
        }
        Ok(g)
    }

    /// Connected components, each sorted by index; components are ordered by
    /// their smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Parses the line-oriented text format:
    ///
    /// ```text
    /// graph <name>
    /// vertices: a b c
    /// edges: a-b b-c
    /// ```
    ///
    /// Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let err = |line, msg: &str| GraphError::Parse {
            line,
            msg: msg.to_string(),
        };

        let (ln, header) = lines
            .next()
            .ok_or_else(|| err(1, "missing `graph` header"))?;
        let name = header
            .strip_prefix("graph")
            .filter(|rest| rest.is_empty() || rest.starts_with(char::is_whitespace))
            .ok_or_else(|| err(ln, "expected `graph <name>`"))?
            .trim();

        let (ln, vline) = lines
            .next()
            .ok_or_else(|| err(ln + 1, "missing `vertices:` line"))?;
        let vlist = vline
            .strip_prefix("vertices:")
            .ok_or_else(|| err(ln, "expected `vertices:`"))?;
        let mut g = Graph::new(if name.is_empty() { "G" } else { name });
        for v in vlist.split_whitespace() {
            g.add_vertex(v).map_err(|e| err(ln, &e.to_string()))?;
        }

        if let Some((ln, eline)) = lines.next() {
            let elist = eline
                .strip_prefix("edges:")
                .ok_or_else(|| err(ln, "expected `edges:`"))?;
            for tok in elist.split_whitespace() {
                let (u, v) =
                    split_edge(tok).ok_or_else(|| err(ln, &format!("bad edge `{tok}`")))?;
                g.add_edge(u, v).map_err(|e| err(ln, &e.to_string()))?;
            }
            if let Some((ln, _)) = lines.next() {
                return Err(err(ln, "trailing content after `edges:` line"));
            }
        }
        Ok(g)
    }

    /// Renders the text format accepted by [`Graph::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("graph {}\nvertices:", self.name);
        for v in &self.vertices {
            s.push(' ');
            s.push_str(v);
        }
        s.push_str("\nedges:");
        for (i, j) in self.edges() {
            s.push(' ');
            s.push_str(&self.vertices[i]);
            s.push('-');
            s.push_str(&self.vertices[j]);
        }
        s.push('\n');
        s
    }

    /// Undirected DOT rendering.
    pub fn to_dot(&self) -> String {
        let mut s = format!("graph \"{}\" {{\n", escape_dot(&self.name));
        for v in &self.vertices {
            s.push_str(&format!("  \"{}\";\n", escape_dot(v)));
        }
        for (i, j) in self.edges() {
            s.push_str(&format!(
                "  \"{}\" -- \"{}\";\n",
                escape_dot(&self.vertices[i]),
                escape_dot(&self.vertices[j])
            ));
        }
        s.push_str("}\n");
        s
    }
}

/// Splits `u-v` at the single `-` that is not part of a `^-1` suffix.
fn split_edge(tok: &str) -> Option<(&str, &str)> {
    let bytes = tok.as_bytes();
    let mut cut = None;
    for (i, &b) in bytes.iter().enumerate() {
        if b == b'-' && !(i > 0 && bytes[i - 1] == b'^') {
            if cut.is_some() {
                return None;
            }
            cut = Some(i);
        }
    }
    let i = cut?;
    let (u, v) = (&tok[..i], &tok[i + 1..]);
    (!u.is_empty() && !v.is_empty()).then_some((u, v))
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("v{i}")).collect()
    }

    #[test]
    fn complement_of_triangle_is_edgeless() {
        let k3 = Graph::complete("K3", &["a", "b", "c"]).unwrap();
        let c = k3.complement();
        assert_eq!(c.edge_count(), 0);
        assert_eq!(c.vertex_names(), k3.vertex_names());
    }

    #[test]
    fn complement_of_single_vertex() {
        let g = Graph::edgeless("K1", &["a"]).unwrap();
        assert_eq!(g.complement(), g);
    }

    #[test]
    fn complement_of_p4() {
        let p4 = Graph::path("P4", &["a", "b", "c", "d"]).unwrap();
        let c = p4.complement();
        let expected = Graph::from_edges(
            "x",
            &["a", "b", "c", "d"],
            &[("a", "c"), ("a", "d"), ("b", "d")],
        )
        .unwrap();
        assert_eq!(c, expected);
        // b-d-a-c is a path again
        let relabeled = Graph::path("P4", &["b", "d", "a", "c"]).unwrap();
        assert_eq!(c.edge_count(), relabeled.edge_count());
        for (u, v) in [("b", "d"), ("d", "a"), ("a", "c")] {
            assert!(c.adjacent_names(u, v).unwrap());
        }
    }

    #[test]
    fn builder_rejects_bad_edges() {
        let mut g = Graph::edgeless("g", &["a", "b"]).unwrap();
        assert_eq!(g.add_edge("a", "a"), Err(GraphError::SelfLoop("a".into())));
        g.add_edge("a", "b").unwrap();
        assert!(matches!(
            g.add_edge("b", "a"),
            Err(GraphError::DuplicateEdge(..))
        ));
        assert!(matches!(
            g.add_edge("a", "z"),
            Err(GraphError::UnknownVertex(_))
        ));
        assert!(matches!(
            g.add_vertex("a"),
            Err(GraphError::DuplicateVertex(_))
        ));
        assert!(matches!(g.add_vertex("a b"), Err(GraphError::InvalidId(_))));
    }

    #[test]
    fn text_round_trip() {
        let g = Graph::cycle("C4", &names(4)).unwrap();
        let parsed = Graph::parse(&g.to_text()).unwrap();
        assert_eq!(parsed, g);
        assert_eq!(parsed.name(), "C4");
    }

    #[test]
    fn parse_accepts_empty_edges_line_and_missing_edges_line() {
        let g = Graph::parse("graph e\nvertices: a b\nedges:\n").unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.edge_count(), 0);
        let g = Graph::parse("graph e\nvertices: a b\n").unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_rejects_self_loops_and_duplicates() {
        assert!(Graph::parse("graph g\nvertices: a b\nedges: a-a\n").is_err());
        assert!(Graph::parse("graph g\nvertices: a b\nedges: a-b b-a\n").is_err());
        assert!(Graph::parse("graph g\nvertices: a a\nedges:\n").is_err());
        assert!(Graph::parse("graph g\nvertices: a b\nedges: a-c\n").is_err());
        assert!(Graph::parse("graph g\nvertices: a b\nedges: ab\n").is_err());
        assert!(Graph::parse("vertices: a b\n").is_err());
    }

    #[test]
    fn parse_extension_vertex_names() {
        let text = "graph ball\nvertices: a b a@b^-1.a.b\nedges: a@b^-1.a.b-b\n";
        let g = Graph::parse(text).unwrap();
        assert!(g.adjacent_names("a@b^-1.a.b", "b").unwrap());
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn join_and_union() {
        let a = Graph::edgeless("a", &["x", "y"]).unwrap();
        let b = Graph::edgeless("b", &["z"]).unwrap();
        let j = Graph::join("j", &[&a, &b]).unwrap();
        assert_eq!(j.edge_count(), 2);
        assert!(!j.adjacent_names("x", "y").unwrap());
        let u = Graph::disjoint_union("u", &[&a, &b]).unwrap();
        assert_eq!(u.edge_count(), 0);
        assert!(matches!(
            Graph::join("bad", &[&a, &a]),
            Err(GraphError::Overlap(_))
        ));
    }

    #[test]
    fn dot_output_lists_vertices_and_edges() {
        let g = Graph::path("P2", &["a", "b"]).unwrap();
        let dot = g.to_dot();
        assert!(dot.starts_with("graph \"P2\" {"));
        assert!(dot.contains("\"a\" -- \"b\";"));
    }

    #[test]
    fn complement_involution_exhaustive_up_to_five() {
        for n in 0..=5 {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect();
            for mask in 0u32..(1 << pairs.len()) {
                let mut g = Graph::edgeless("g", &names(n)).unwrap();
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        g.connect(i, j);
                    }
                }
                assert_eq!(g.complement().complement(), g);
            }
        }
    }
}
