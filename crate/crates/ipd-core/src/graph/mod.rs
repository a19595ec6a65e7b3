//! Simple undirected graphs on dense vertex ids `0..n`, plus the path and
//! cycle sequences the rest of the toolkit passes around.

pub mod codec;
pub mod generate;

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Hamiltonian-cycle search refuses graphs larger than this unless the caller
/// raises the cap explicitly.
pub const DEFAULT_HAMILTONIAN_CAP: usize = 16;

/// A simple undirected graph. Vertex ids are exactly `0..n`; adjacency is
/// symmetric, loop-free and deduplicated by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    /// Creates an edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
        }
    }

    /// Builds a graph from an edge list, deduplicating repeated edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            });
        }
        Ok(())
    }

    /// Inserts the undirected edge `uv`. Re-inserting an existing edge is a
    /// no-op; self-loops are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(&v)
    }

    /// Neighbors of `v` in ascending id order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// All edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for &v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Per-vertex adjacency bitmasks; only available for `n <= 64`, which is
    /// where all the exponential kernels operate.
    pub fn adjacency_masks(&self) -> Result<Vec<u64>> {
        if self.n() > 64 {
            return Err(Error::InvalidParameter(format!(
                "bitset kernels support at most 64 vertices, got {}",
                self.n()
            )));
        }
        Ok(self
            .adj
            .iter()
            .map(|s| s.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect())
    }

    /// Connected components as sorted vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = vec![start];
            while let Some(u) = queue.pop() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The empty graph counts as connected so that callers can reject `n = 0`
    /// via explicit preconditions instead of relying on this predicate.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// A 2-coloring `(A, B)` if one exists. Within each component the color
    /// class of its lowest vertex goes to `A`.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.n();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(true);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for v in self.neighbors(u) {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let mut a = Vec::new();
        let mut b = Vec::new();
        for v in 0..n {
            if color[v] == Some(true) {
                a.push(v);
            } else {
                b.push(v);
            }
        }
        Some((a, b))
    }

    /// `Some(r)` when every vertex has degree `r`; `None` for irregular
    /// graphs and for `n = 0`.
    pub fn regular_degree(&self) -> Option<usize> {
        let first = self.adj.first()?.len();
        if self.adj.iter().all(|s| s.len() == first) {
            Some(first)
        } else {
            None
        }
    }

    /// The subgraph induced by `vertices`, relabeled to dense ids, together
    /// with the mapping `new id -> old id` in ascending old-id order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut sorted: Vec<usize> = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &v in &sorted {
            self.check_vertex(v)?;
        }
        let mut g = Graph::new(sorted.len());
        for (i, &u) in sorted.iter().enumerate() {
            for (j, &v) in sorted.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok((g, sorted))
    }

    /// Relabels the graph by `perm`, where vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n() {
            return Err(Error::InvalidParameter(
                "permutation length does not match graph order".into(),
            ));
        }
        let mut g = Graph::new(self.n());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v])?;
        }
        Ok(g)
    }
}

/// An ordered vertex sequence intended to be a path. Validity against a host
/// graph is checked by the operations that consume it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct VertexPath(pub Vec<usize>);

impl VertexPath {
    pub fn new(vertices: Vec<usize>) -> Self {
        VertexPath(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    /// Distinct vertices with consecutive ones adjacent in `g` (chords are
    /// allowed; see `solver::is_induced_path` for the induced check).
    pub fn is_path_of(&self, g: &Graph) -> bool {
        let vs = &self.0;
        if vs.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let mut seen = std::collections::BTreeSet::new();
        if !vs.iter().all(|&v| seen.insert(v)) {
            return false;
        }
        vs.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

/// An ordered vertex sequence closed into a cycle (last adjacent to first).
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct VertexCycle(pub Vec<usize>);

impl VertexCycle {
    pub fn new(vertices: Vec<usize>) -> Self {
        VertexCycle(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn is_cycle_of(&self, g: &Graph) -> bool {
        let vs = &self.0;
        if vs.len() < 3 {
            return false;
        }
        VertexPath(vs.clone()).is_path_of(g) && g.has_edge(vs[vs.len() - 1], vs[0])
    }
}

/// Searches for a Hamiltonian cycle by backtracking: start at vertex 0,
/// extend with the smallest admissible neighbor first, so the first cycle
/// found is the lexicographically least sequence starting at 0. Returns
/// `Ok(None)` when the graph has no Hamiltonian cycle.
pub fn find_hamiltonian_cycle(g: &Graph, cap: usize) -> Result<Option<VertexCycle>> {
    let n = g.n();
    if n > cap {
        return Err(Error::CapExceeded {
            op: "hamiltonian cycle search",
            n,
            cap,
        });
    }
    if n < 3 || !g.is_connected() || (0..n).any(|v| g.degree(v) < 2) {
        return Ok(None);
    }
    if n > 64 {
        return Err(Error::InvalidParameter(
            "hamiltonian search supports at most 64 vertices".into(),
        ));
    }
    let masks = g.adjacency_masks()?;
    let mut path = Vec::with_capacity(n);
    path.push(0usize);
    if extend_hamiltonian(&masks, n, &mut path, 1u64) {
        return Ok(Some(VertexCycle(path)));
    }
    Ok(None)
}

fn extend_hamiltonian(masks: &[u64], n: usize, path: &mut Vec<usize>, visited: u64) -> bool {
    let last = *path.last().unwrap();
    if path.len() == n {
        return masks[last] & 1 != 0;
    }
    // Every unvisited vertex still needs two cycle neighbors drawn from the
    // unvisited set plus the two open endpoints.
    let remaining = !visited & ((1u64 << n) - 1);
    let avail = remaining | (1 << last) | 1;
    let mut scan = remaining;
    while scan != 0 {
        let v = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        if (masks[v] & avail).count_ones() < 2 {
            return false;
        }
    }
    if !reaches_all(masks, last, remaining) {
        return false;
    }
    let mut cand = masks[last] & remaining;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        path.push(v);
        if extend_hamiltonian(masks, n, path, visited | (1 << v)) {
            return true;
        }
        path.pop();
    }
    false
}

/// True when every vertex of `remaining` is reachable from `from` through
/// `remaining` vertices only.
fn reaches_all(masks: &[u64], from: usize, remaining: u64) -> bool {
    if remaining == 0 {
        return true;
    }
    let mut reached = masks[from] & remaining;
    loop {
        let mut grown = reached;
        let mut scan = reached;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            grown |= masks[v] & remaining;
        }
        if grown == reached {
            break;
        }
        reached = grown;
    }
    reached == remaining
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn build_and_query() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(1, 0));
        assert!(!g.has_edge(0, 2));
        assert_eq!(g.degree(1), 2);
    }

    #[test]
    fn add_edge_rejects_loops_and_range() {
        let mut g = Graph::new(2);
        assert!(matches!(
            g.add_edge(0, 0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            g.add_edge(0, 5),
            Err(Error::VertexOutOfRange { vertex: 5, .. })
        ));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn connectivity() {
        assert!(generate::cycle(6).unwrap().is_connected());
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_connected());
        assert_eq!(two_edges.components().len(), 2);
        assert!(Graph::new(1).is_connected());
        assert!(Graph::new(0).is_connected());
    }

    #[test]
    fn bipartition_examples() {
        let (a, b) = generate::complete_bipartite(3, 3).unwrap().bipartition().unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(b.len(), 3);
        assert!(generate::cycle(5).unwrap().bipartition().is_none());
        let (a, b) = Graph::new(4).bipartition().unwrap();
        assert_eq!(a, vec![0, 1, 2, 3]);
        assert!(b.is_empty());
    }

    #[test]
    fn regular_degree_examples() {
        assert_eq!(generate::complete(5).unwrap().regular_degree(), Some(4));
        assert_eq!(generate::path(3).unwrap().regular_degree(), None);
        assert_eq!(generate::cycle(7).unwrap().regular_degree(), Some(2));
        assert_eq!(Graph::new(0).regular_degree(), None);
    }

    #[test]
    fn induced_subgraph_examples() {
        let k5 = generate::complete(5).unwrap();
        let (t, map) = k5.induced_subgraph(&[0, 2, 4]).unwrap();
        assert_eq!(t.edge_count(), 3);
        assert_eq!(map, vec![0, 2, 4]);

        let c6 = generate::cycle(6).unwrap();
        let (p, _) = c6.induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(p.edges(), vec![(0, 1), (1, 2)]);
        let (e, _) = c6.induced_subgraph(&[0, 2, 4]).unwrap();
        assert_eq!(e.edge_count(), 0);

        let (whole, map) = c6.induced_subgraph(&[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(whole, c6);
        assert_eq!(map, (0..6).collect::<Vec<_>>());

        assert!(c6.induced_subgraph(&[7]).is_err());
    }

    #[test]
    fn hamiltonian_cycle_examples() {
        let c6 = generate::cycle(6).unwrap();
        let cyc = find_hamiltonian_cycle(&c6, 16).unwrap().unwrap();
        assert_eq!(cyc.vertices(), &[0, 1, 2, 3, 4, 5]);
        assert!(cyc.is_cycle_of(&c6));

        let k4 = generate::complete(4).unwrap();
        let cyc = find_hamiltonian_cycle(&k4, 16).unwrap().unwrap();
        assert_eq!(cyc.vertices(), &[0, 1, 2, 3]);

        let claw = generate::complete_bipartite(1, 3).unwrap();
        assert!(find_hamiltonian_cycle(&claw, 16).unwrap().is_none());

        let petersen = generate::petersen();
        assert!(find_hamiltonian_cycle(&petersen, 16).unwrap().is_none());

        let big = generate::cycle(20).unwrap();
        assert!(matches!(
            find_hamiltonian_cycle(&big, 16),
            Err(Error::CapExceeded { .. })
        ));
        assert!(find_hamiltonian_cycle(&big, 20).unwrap().is_some());
    }
}
