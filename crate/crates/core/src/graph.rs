//! Immutable undirected simple graphs and the structural predicates used
//! throughout the crate.

use crate::error::GraphError;

/// A set of vertex indices, kept sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut m: Vec<usize> = members.into_iter().collect();
        m.sort_unstable();
        m.dedup();
        VertexSet { members: m }
    }

    pub fn empty() -> Self {
        VertexSet { members: vec![] }
    }

    /// All vertices `0..n`.
    pub fn full(n: usize) -> Self {
        VertexSet {
            members: (0..n).collect(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn max(&self) -> Option<usize> {
        self.members.last().copied()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::new(iter)
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

/// Immutable undirected simple graph. Vertices are `0..n`; adjacency is a
/// matrix so lookups are O(1). Labels are optional display names and never
/// take part in equality.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    neighbors: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs and swapped
    /// orderings collapse to a single edge.
    pub fn new(
        n: usize,
        edges: &[(usize, usize)],
        labels: Option<Vec<String>>,
    ) -> Result<Graph, GraphError> {
        if let Some(ref l) = labels {
            if l.len() != n {
                return Err(GraphError::LabelCount {
                    expected: n,
                    got: l.len(),
                });
            }
        }
        let mut adj = vec![false; n * n];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u >= n || v >= n {
                return Err(GraphError::EdgeOutOfRange(u, v, n));
            }
            adj[u * n + v] = true;
            adj[v * n + u] = true;
        }
        Ok(Self::from_matrix(n, adj, labels))
    }

    fn from_matrix(n: usize, adj: Vec<bool>, labels: Option<Vec<String>>) -> Graph {
        let mut neighbors = vec![vec![]; n];
        let mut edge_list = vec![];
        for u in 0..n {
            for v in 0..n {
                if adj[u * n + v] {
                    neighbors[u].push(v);
                    if u < v {
                        edge_list.push((u, v));
                    }
                }
            }
        }
        Graph {
            n,
            adj,
            neighbors,
            edges: edge_list,
            labels,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` pairs with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Edge-complement. Labels carry over.
    pub fn complement(&self) -> Graph {
        let n = self.n;
        let mut adj = vec![false; n * n];
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    adj[u * n + v] = !self.adj[u * n + v];
                }
            }
        }
        Self::from_matrix(n, adj, self.labels.clone())
    }

    /// Induced subgraph on `s`. Vertices are reindexed `0..s.len()` in the
    /// original order; the returned vector maps new indices back.
    pub fn induced(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        if let Some(max) = s.max() {
            if max >= self.n {
                return Err(GraphError::VertexOutOfRange(max, self.n));
            }
        }
        let back: Vec<usize> = s.members().to_vec();
        let k = back.len();
        let mut adj = vec![false; k * k];
        for i in 0..k {
            for j in 0..k {
                adj[i * k + j] = i != j && self.adjacent(back[i], back[j]);
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| back.iter().map(|&v| l[v].clone()).collect());
        Ok((Self::from_matrix(k, adj, labels), back))
    }

    /// Disjoint union; the right operand's vertices shift by `self.n`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut adj = vec![false; n * n];
        for &(u, v) in &self.edges {
            adj[u * n + v] = true;
            adj[v * n + u] = true;
        }
        for &(u, v) in &other.edges {
            let (u, v) = (u + self.n, v + self.n);
            adj[u * n + v] = true;
            adj[v * n + u] = true;
        }
        let labels = match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => Some(a.iter().chain(b.iter()).cloned().collect()),
            _ => None,
        };
        Self::from_matrix(n, adj, labels)
    }

    /// Two disjoint copies of `self`.
    pub fn double(&self) -> Graph {
        self.disjoint_union(self)
    }

    /// Maximal connected vertex sets, sorted by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut comps = vec![];
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = vec![];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comps.push(VertexSet::new(comp));
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// True iff every pair inside `s` is an edge. Empty and singleton sets
    /// qualify. Panics on out-of-range members.
    pub fn is_clique(&self, s: &VertexSet) -> bool {
        let m = s.members();
        for (i, &u) in m.iter().enumerate() {
            assert!(u < self.n, "vertex {u} out of range");
            for &v in &m[i + 1..] {
                if !self.adjacent(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff no pair inside `s` is an edge.
    pub fn is_independent(&self, s: &VertexSet) -> bool {
        let m = s.members();
        for (i, &u) in m.iter().enumerate() {
            assert!(u < self.n, "vertex {u} out of range");
            for &v in &m[i + 1..] {
                if self.adjacent(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// A union of disjoint cliques: every connected component is a clique.
    pub fn is_cluster(&self) -> bool {
        self.connected_components()
            .iter()
            .all(|c| self.is_clique(c))
    }

    /// Complement of a union of disjoint cliques.
    pub fn is_co_cluster(&self) -> bool {
        self.complement().is_cluster()
    }

    /// A co-cluster is either connected or has no edges at all. This is a
    /// runtime assertion used by tests; the precondition is checked.
    pub fn co_cluster_connectivity_check(&self) -> Result<bool, GraphError> {
        if !self.is_co_cluster() {
            return Err(GraphError::NotCoCluster);
        }
        Ok(self.edge_count() == 0 || self.is_connected())
    }

    /// True iff four vertices are pairwise adjacent.
    pub fn has_k4(&self) -> bool {
        for &(u, v) in &self.edges {
            // common neighbourhood of an edge; any edge inside it closes a K4
            let common: Vec<usize> = self.neighbors[u]
                .iter()
                .copied()
                .filter(|&w| w > v && self.adjacent(v, w))
                .collect();
            for (i, &w) in common.iter().enumerate() {
                for &x in &common[i + 1..] {
                    if self.adjacent(w, x) {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Size of a largest clique, by branch-and-bound over vertex subsets.
    /// Intended for small test graphs.
    pub fn max_clique_size(&self) -> usize {
        fn grow(g: &Graph, cand: &[usize], size: usize, best: &mut usize) {
            if size > *best {
                *best = size;
            }
            if size + cand.len() <= *best {
                return;
            }
            for (i, &v) in cand.iter().enumerate() {
                let next: Vec<usize> = cand[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&u| g.adjacent(u, v))
                    .collect();
                grow(g, &next, size + 1, best);
            }
        }
        let all: Vec<usize> = (0..self.n).collect();
        let mut best = 0;
        grow(self, &all, 0, &mut best);
        best
    }
}

/// Path on `n` vertices, 0-1-2-...
pub fn path(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges, None).expect("path edges are valid")
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((0, n - 1));
    Graph::new(n, &edges, None).expect("cycle edges are valid")
}

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Graph {
    let mut edges = vec![];
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges, None).expect("complete edges are valid")
}

/// Every graph on `n` vertices, one per subset of the `n*(n-1)/2` vertex
/// pairs. The pair order is `(0,1), (0,2), .., (1,2), ..` ascending.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = {
        let mut p = vec![];
        for u in 0..n {
            for v in u + 1..n {
                p.push((u, v));
            }
        }
        p
    };
    let m = pairs.len();
    assert!(m < 32, "too many pairs to enumerate");
    (0u32..1 << m).map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::new(n, &edges, None).expect("enumerated edges are valid")
    })
}

/// Seeded G(n, p)-style random graph with edge probability `num/den`.
pub fn random_graph(n: usize, num: u64, den: u64, rng: &mut crate::rng::SplitMix64) -> Graph {
    let mut edges = vec![];
    for u in 0..n {
        for v in u + 1..n {
            if rng.chance(num, den) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges, None).expect("random edges are valid")
}
