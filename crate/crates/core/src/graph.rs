//! Simple undirected graphs used for facet-ridge and vertex-edge graphs.

use std::collections::VecDeque;

use itertools::Itertools;

/// A finite simple undirected graph with labelled nodes `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombGraph {
    labels: Vec<String>,
    adj: Vec<Vec<usize>>,
}

impl CombGraph {
    pub fn new<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let adj = vec![Vec::new(); labels.len()];
        CombGraph { labels, adj }
    }

    /// Graph on `n` nodes labelled by their index.
    pub fn with_nodes(n: usize) -> Self {
        Self::new((0..n).map(|i| i.to_string()))
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::with_nodes(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Inserts `{u, v}`. Returns `false` (and changes nothing) for self-loops
    /// and edges already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u < self.adj.len() && v < self.adj.len(), "edge endpoint out of range");
        if u == v {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                true
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn label(&self, u: usize) -> &str {
        &self.labels[u]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Sorted neighbours of `u`.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_regular(&self, degree: usize) -> bool {
        self.adj.iter().all(|ns| ns.len() == degree)
    }

    /// Subgraph induced on `nodes`, relabelled `0..nodes.len()` in the given order.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> CombGraph {
        let mut pos = vec![usize::MAX; self.adj.len()];
        for (i, &u) in nodes.iter().enumerate() {
            pos[u] = i;
        }
        let mut g = CombGraph::new(nodes.iter().map(|&u| self.labels[u].clone()));
        for (i, &u) in nodes.iter().enumerate() {
            for &v in &self.adj[u] {
                if pos[v] != usize::MAX && pos[v] > i {
                    g.add_edge(i, pos[v]);
                }
            }
        }
        g
    }

    /// Component id per node (removed nodes get `usize::MAX`) and the component count.
    fn components_avoiding(&self, removed: &[bool]) -> (Vec<usize>, usize) {
        let n = self.adj.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if removed[s] || comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !removed[v] && comp[v] == usize::MAX {
                        comp[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// Connected components as sorted node lists.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let (comp, count) = self.components_avoiding(&vec![false; self.adj.len()]);
        let mut out = vec![Vec::new(); count];
        for (u, c) in comp.into_iter().enumerate() {
            out[c].push(u);
        }
        out
    }

    /// Non-empty and a single component.
    pub fn is_connected(&self) -> bool {
        !self.adj.is_empty() && self.components_avoiding(&vec![false; self.adj.len()]).1 == 1
    }

    /// More than `k` nodes, and deleting any `k - 1` of them leaves a connected graph.
    pub fn is_k_connected(&self, k: usize) -> bool {
        let n = self.adj.len();
        if k == 0 {
            return true;
        }
        if n <= k {
            return false;
        }
        let mut removed = vec![false; n];
        for subset in (0..n).combinations(k - 1) {
            for &u in &subset {
                removed[u] = true;
            }
            let connected = self.components_avoiding(&removed).1 == 1;
            for &u in &subset {
                removed[u] = false;
            }
            if !connected {
                return false;
            }
        }
        true
    }
}

pub fn is_connected(g: &CombGraph) -> bool {
    g.is_connected()
}

pub fn is_k_connected(g: &CombGraph, k: usize) -> bool {
    g.is_k_connected(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> CombGraph {
        let edges: Vec<_> = (0..n).tuple_combinations().collect();
        CombGraph::from_edges(n, &edges)
    }

    #[test]
    fn simple_graph_rules() {
        let mut g = CombGraph::with_nodes(3);
        assert!(g.add_edge(0, 1));
        assert!(!g.add_edge(1, 0));
        assert!(!g.add_edge(2, 2));
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn connectivity() {
        assert!(complete(5).is_connected());
        assert!(!CombGraph::with_nodes(2).is_connected());
        assert!(!CombGraph::with_nodes(0).is_connected());
        assert!(CombGraph::with_nodes(1).is_connected());
    }

    #[test]
    fn k_connectivity() {
        assert!(complete(4).is_k_connected(3));
        assert!(!complete(4).is_k_connected(4));
        let path = CombGraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert!(!path.is_k_connected(2));
        assert!(path.is_k_connected(1));
        let cycle = CombGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(cycle.is_k_connected(2));
        assert!(!cycle.is_k_connected(3));
    }

    #[test]
    fn induced() {
        let g = complete(5).induced_subgraph(&[4, 2, 0]);
        assert_eq!(g.labels(), &["4", "2", "0"]);
        assert_eq!(g.edge_count(), 3);
    }
}
