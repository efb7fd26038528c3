//! Join decomposition and recognition of linear-forest complements.
//!
//! A graph is the join of the induced subgraphs on the connected components of
//! its complement, and each of those pieces is join-irreducible.

use crate::graph::{Graph, GraphError};

/// Vertex order `v_1, ..., v_n` of a path-graph complement: consecutive
/// entries are exactly the non-adjacent pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathLabeling {
    pub order: Vec<String>,
}

impl PathLabeling {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Checks the labeling against `g`: within the labeled vertices, a pair
    /// is non-adjacent iff it is consecutive.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let Ok(ix) = self
            .order
            .iter()
            .map(|n| g.require(n))
            .collect::<Result<Vec<_>, _>>()
        else {
            return false;
        };
        for a in 0..ix.len() {
            for b in a + 1..ix.len() {
                if ix[a] == ix[b] || g.adjacent(ix[a], ix[b]) == (b == a + 1) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentKind {
    Singleton,
    PathComplement(PathLabeling),
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinComponent {
    /// Indices into the decomposed graph, ascending.
    pub vertices: Vec<usize>,
    /// The induced subgraph on `vertices`.
    pub graph: Graph,
    pub kind: ComponentKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinDecomposition {
    pub components: Vec<JoinComponent>,
}

impl JoinDecomposition {
    /// Joins the components back together, in the vertex order of `original`.
    pub fn reconstruct(&self, original: &Graph) -> Graph {
        let mut g = Graph::new(original.name());
        let mut owner = vec![usize::MAX; original.len()];
        for (c, comp) in self.components.iter().enumerate() {
            for &v in &comp.vertices {
                owner[v] = c;
            }
        }
        for v in 0..original.len() {
            g.add_vertex(original.vertex_name(v))
                .expect("distinct names");
        }
        for a in 0..original.len() {
            for b in a + 1..original.len() {
                let joined = if owner[a] != owner[b] {
                    true
                } else {
                    let comp = &self.components[owner[a]];
                    let ia = comp.graph.require(original.vertex_name(a)).expect("member");
                    let ib = comp.graph.require(original.vertex_name(b)).expect("member");
                    comp.graph.adjacent(ia, ib)
                };
                if joined {
                    g.connect(a, b);
                }
            }
        }
        g
    }
}

/// Splits `g` into join-irreducible components.
pub fn join_decompose(g: &Graph) -> Result<JoinDecomposition, GraphError> {
    if g.is_empty() {
        return Err(GraphError::Empty);
    }
    let components = g
        .complement()
        .connected_components()
        .into_iter()
        .map(|vertices| {
            let graph = g.induced(&vertices);
            let kind = if vertices.len() == 1 {
                ComponentKind::Singleton
            } else if let Some(order) = path_order(&graph.complement()) {
                ComponentKind::PathComplement(PathLabeling {
                    order: order
                        .into_iter()
                        .map(|i| graph.vertex_name(i).to_string())
                        .collect(),
                })
            } else {
                ComponentKind::Other
            };
            JoinComponent {
                vertices,
                graph,
                kind,
            }
        })
        .collect();
    Ok(JoinDecomposition { components })
}

/// If `h` is a path graph (connected, acyclic, max degree at most two),
/// returns its vertices in path order starting from the endpoint with the
/// smaller index.
fn path_order(h: &Graph) -> Option<Vec<usize>> {
    let n = h.len();
    if n == 0 || !h.is_connected() || h.edge_count() != n - 1 {
        return None;
    }
    if (0..n).any(|v| h.degree(v) > 2) {
        return None;
    }
    let start = (0..n).find(|&v| h.degree(v) <= 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < n {
        let next = h.neighbors(cur).find(|&w| w != prev)?;
        order.push(next);
        prev = cur;
        cur = next;
    }
    Some(order)
}

/// Returns one labeling per join component when every component's complement
/// is a path graph, i.e. when `g` is the complement of a linear forest.
/// The empty graph is not recognized.
pub fn recognize_linear_forest_complement(g: &Graph) -> Option<Vec<PathLabeling>> {
    let dec = join_decompose(g).ok()?;
    dec.components
        .into_iter()
        .map(|c| match c.kind {
            ComponentKind::Singleton => Some(PathLabeling {
                order: vec![c.graph.vertex_name(0).to_string()],
            }),
            ComponentKind::PathComplement(l) => Some(l),
            ComponentKind::Other => None,
        })
        .collect()
}
