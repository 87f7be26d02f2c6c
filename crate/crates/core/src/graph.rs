//! Labeled undirected simple graphs with dense vertex labels `0..n-1`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected simple graph. Edges are stored normalized (`u < v`) and
/// sorted, so equal graphs compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

/// Wire form of [`Graph`]; deserialization funnels through [`Graph::new`]
/// so invalid edge lists are rejected at parse time.
#[derive(Deserialize)]
struct RawGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        Graph::new(raw.vertex_count, raw.edges)
    }
}

/// Normalize an edge to `(min, max)` order.
pub fn norm_edge(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Build a graph, rejecting self-loops, duplicate edges, and endpoints
    /// outside `0..vertex_count`.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut norm: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{vertex_count}"
                )));
            }
            norm.push(norm_edge(u, v));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self {
            vertex_count,
            edges: norm,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in sorted `(u, v)` order with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&norm_edge(u, v)).is_ok()
    }

    /// Position of the edge in `edges()` order.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&norm_edge(u, v)).ok()
    }

    /// Adjacency lists, neighbors sorted ascending.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Whether `subset` induces a connected subgraph. The empty set counts
    /// as disconnected; a singleton as connected.
    pub fn is_connected_subset(&self, subset: &[usize]) -> bool {
        if subset.is_empty() {
            return false;
        }
        let mut member = vec![false; self.vertex_count];
        for &q in subset {
            if q >= self.vertex_count {
                return false;
            }
            member[q] = true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::new();
        seen[subset[0]] = true;
        queue.push_back(subset[0]);
        let mut reached = 0usize;
        while let Some(q) = queue.pop_front() {
            reached += 1;
            for &r in &adj[q] {
                if member[r] && !seen[r] {
                    seen[r] = true;
                    queue.push_back(r);
                }
            }
        }
        reached == subset.iter().filter(|&&q| member[q]).count() && subset.iter().all(|&q| seen[q])
    }

    /// Edges of the subgraph induced on `subset`.
    pub fn induced_edges(&self, subset: &[usize]) -> Vec<(usize, usize)> {
        let mut member = vec![false; self.vertex_count];
        for &q in subset {
            member[q] = true;
        }
        self.edges
            .iter()
            .copied()
            .filter(|&(u, v)| member[u] && member[v])
            .collect()
    }
}

/// The complete graph `K_n`.
pub fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::with_capacity(n.saturating_sub(1) * n / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, edges).expect("complete graph is always simple")
}
