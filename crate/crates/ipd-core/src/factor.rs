//! Bipartite matching, 3-edge-coloring of cubic bipartite graphs, 2-factors,
//! and the spanning factor whose cycles all have at least six vertices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexCycle};

/// The exhaustive 2-factor fallback refuses graphs larger than this.
pub const DEFAULT_FACTOR_ENUM_CAP: usize = 24;

/// How many local C4 repairs to attempt before falling back to exhaustive
/// enumeration.
const C4_SWAP_LIMIT_FACTOR: usize = 1; // n^2 * this

/// A set of pairwise vertex-disjoint edges of a host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    /// Edges as `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl Matching {
    fn from_pairs(mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        Matching { edges }
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn is_perfect(&self, g: &Graph) -> bool {
        self.edges.len() * 2 == g.n()
    }

    /// Disjointness and membership in the host graph.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges
            .iter()
            .all(|&(u, v)| g.has_edge(u, v) && seen.insert(u) && seen.insert(v))
    }
}

/// A spanning collection of vertex-disjoint cycles: every vertex has degree
/// exactly two in the factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFactor {
    pub cycles: Vec<VertexCycle>,
}

impl TwoFactor {
    pub fn min_cycle_order(&self) -> usize {
        self.cycles.iter().map(|c| c.order()).min().unwrap_or(0)
    }

    /// Spanning, disjoint, and every cycle valid in `g`.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut seen = std::collections::HashSet::new();
        for c in &self.cycles {
            if !c.is_cycle_of(g) {
                return false;
            }
            for &v in c.vertices() {
                if !seen.insert(v) {
                    return false;
                }
            }
        }
        seen.len() == g.n()
    }
}

/// Maximum-cardinality matching in a bipartite graph via Hopcroft–Karp,
/// processing vertices in ascending id order so the result is deterministic.
pub fn max_matching_bipartite(g: &Graph, parts: (&[usize], &[usize])) -> Result<Matching> {
    let (a, b) = parts;
    let n = g.n();
    let mut side = vec![None::<bool>; n];
    for &v in a {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        side[v] = Some(true);
    }
    for &v in b {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if side[v].is_some() {
            return Err(Error::Precondition(format!(
                "vertex {v} appears in both parts"
            )));
        }
        side[v] = Some(false);
    }
    for (u, v) in g.edges() {
        match (side[u], side[v]) {
            (Some(x), Some(y)) if x != y => {}
            _ => {
                return Err(Error::Precondition(format!(
                    "edge {u}-{v} does not cross the given bipartition"
                )))
            }
        }
    }

    // Indices into `a`; pair_for_b maps b-vertices to their matched a-index.
    let a_sorted: Vec<usize> = {
        let mut s = a.to_vec();
        s.sort_unstable();
        s
    };
    let index_of_b: std::collections::HashMap<usize, usize> =
        b.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = a_sorted
        .iter()
        .map(|&u| g.neighbors(u).map(|v| index_of_b[&v]).collect())
        .collect();

    let la = a_sorted.len();
    let lb = b.len();
    let mut match_a = vec![usize::MAX; la];
    let mut match_b = vec![usize::MAX; lb];
    loop {
        // BFS layering from free a-vertices.
        let mut dist = vec![usize::MAX; la];
        let mut queue = std::collections::VecDeque::new();
        for i in 0..la {
            if match_a[i] == usize::MAX {
                dist[i] = 0;
                queue.push_back(i);
            }
        }
        let mut found_free = false;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                let i2 = match_b[j];
                if i2 == usize::MAX {
                    found_free = true;
                } else if dist[i2] == usize::MAX {
                    dist[i2] = dist[i] + 1;
                    queue.push_back(i2);
                }
            }
        }
        if !found_free {
            break;
        }
        let mut advanced = false;
        for i in 0..la {
            if match_a[i] == usize::MAX && hk_augment(&adj, &mut match_a, &mut match_b, &mut dist, i)
            {
                advanced = true;
            }
        }
        if !advanced {
            break;
        }
    }
    let edges: Vec<(usize, usize)> = match_a
        .iter()
        .enumerate()
        .filter(|&(_, &j)| j != usize::MAX)
        .map(|(i, &j)| (a_sorted[i], b[j]))
        .collect();
    Ok(Matching::from_pairs(edges))
}

fn hk_augment(
    adj: &[Vec<usize>],
    match_a: &mut [usize],
    match_b: &mut [usize],
    dist: &mut [usize],
    i: usize,
) -> bool {
    let d = std::mem::replace(&mut dist[i], usize::MAX);
    for &j in &adj[i] {
        let i2 = match_b[j];
        let ok = if i2 == usize::MAX {
            true
        } else {
            dist[i2] == d + 1 && hk_augment(adj, match_a, match_b, dist, i2)
        };
        if ok {
            match_a[i] = j;
            match_b[j] = i;
            return true;
        }
    }
    false
}

/// Splits the edges of a cubic bipartite graph into three perfect matchings
/// by repeatedly extracting one (a perfect matching always exists in a
/// regular bipartite graph) and recursing on the remainder.
pub fn three_edge_coloring(g: &Graph) -> Result<[Matching; 3]> {
    if g.regular_degree() != Some(3) {
        return Err(Error::Precondition("graph is not cubic".into()));
    }
    let (a, b) = g
        .bipartition()
        .ok_or_else(|| Error::Precondition("graph is not bipartite".into()))?;
    let mut remaining = g.clone();
    let mut classes = Vec::with_capacity(3);
    for round in 0..2 {
        let m = max_matching_bipartite(&remaining, (&a, &b))?;
        if !m.is_perfect(g) {
            return Err(Error::InvariantViolation(format!(
                "round {round}: regular bipartite graph without a perfect matching"
            )));
        }
        for &(u, v) in &m.edges {
            remaining = remove_edge(&remaining, u, v);
        }
        classes.push(m);
    }
    let third = Matching::from_pairs(remaining.edges());
    if !third.is_valid(g) || !third.is_perfect(g) {
        return Err(Error::InvariantViolation(
            "leftover color class is not a perfect matching".into(),
        ));
    }
    classes.push(third);
    Ok(classes.try_into().expect("exactly three classes"))
}

fn remove_edge(g: &Graph, u: usize, v: usize) -> Graph {
    let mut h = Graph::new(g.n());
    for (x, y) in g.edges() {
        if (x, y) != (u.min(v), u.max(v)) {
            h.add_edge(x, y).unwrap();
        }
    }
    h
}

/// The union of two edge-disjoint perfect matchings, split into its cycles.
/// Cycles start at their lowest vertex, step toward that vertex's smaller
/// neighbor, and are listed by ascending lowest vertex.
pub fn two_factor_from_matchings(g: &Graph, m1: &Matching, m2: &Matching) -> Result<TwoFactor> {
    let n = g.n();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for m in [m1, m2] {
        for &(u, v) in &m.edges {
            nbrs[u].push(v);
            nbrs[v].push(u);
        }
    }
    if nbrs.iter().any(|x| x.len() != 2 || x[0] == x[1]) {
        return Err(Error::Precondition(
            "matchings do not union to a 2-regular spanning subgraph".into(),
        ));
    }
    for x in nbrs.iter_mut() {
        x.sort_unstable();
    }
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut prev = start;
        let mut cur = nbrs[start][0];
        while cur != start {
            seen[cur] = true;
            cycle.push(cur);
            let next = if nbrs[cur][0] == prev {
                nbrs[cur][1]
            } else {
                nbrs[cur][0]
            };
            prev = cur;
            cur = next;
        }
        cycles.push(VertexCycle(cycle));
    }
    let f = TwoFactor { cycles };
    if !f.is_valid(g) {
        return Err(Error::Precondition(
            "matching union is not a 2-factor of the host graph".into(),
        ));
    }
    Ok(f)
}

/// The three 2-factors arising from pairing the color classes 0-1, 0-2, 1-2.
pub fn two_factor_pairings(g: &Graph, coloring: &[Matching; 3]) -> Result<[TwoFactor; 3]> {
    Ok([
        two_factor_from_matchings(g, &coloring[0], &coloring[1])?,
        two_factor_from_matchings(g, &coloring[0], &coloring[2])?,
        two_factor_from_matchings(g, &coloring[1], &coloring[2])?,
    ])
}

/// A spanning 2-factor of a connected cubic bipartite graph whose every
/// cycle has at least six vertices.
///
/// Stage 1 tries the three pairings of a 3-edge-coloring. Stage 2 repairs a
/// 4-cycle component by swapping its alternating edges between the two
/// classes involved and re-deriving all pairings, at most `n^2` times.
/// Stage 3 enumerates cycle covers outright (refused above `enum_cap`).
/// Existence is guaranteed for this graph class, so exhausting stage 3 is an
/// invariant violation, not a negative answer.
pub fn c6_factor(g: &Graph, enum_cap: usize) -> Result<TwoFactor> {
    if !g.is_connected() || g.n() == 0 {
        return Err(Error::Precondition("graph is not connected".into()));
    }
    let mut coloring = three_edge_coloring(g)?; // also checks cubic + bipartite

    let mut swaps = 0usize;
    let swap_limit = g.n() * g.n() * C4_SWAP_LIMIT_FACTOR;
    loop {
        let pairings = two_factor_pairings(g, &coloring)?;
        for f in &pairings {
            if f.min_cycle_order() >= 6 {
                return Ok(f.clone());
            }
        }
        if swaps >= swap_limit {
            break;
        }
        // Find the first C4 component over the pairings in order and swap
        // its edges between the two classes of that pairing.
        let mut swapped = false;
        'pairs: for (pi, (x, y)) in [(0usize, 1usize), (0, 2), (1, 2)].iter().enumerate() {
            for cycle in &pairings[pi].cycles {
                if cycle.order() == 4 {
                    swap_c4(&mut coloring, *x, *y, cycle);
                    swapped = true;
                    break 'pairs;
                }
            }
        }
        if !swapped {
            break;
        }
        swaps += 1;
    }

    enumerate_c6_cover(g, enum_cap)
}

/// Moves the C4's edges of class `x` into class `y` and vice versa; both
/// classes stay perfect matchings.
fn swap_c4(coloring: &mut [Matching; 3], x: usize, y: usize, cycle: &VertexCycle) {
    let vs = cycle.vertices();
    let cycle_edges: Vec<(usize, usize)> = (0..4)
        .map(|i| {
            let (a, b) = (vs[i], vs[(i + 1) % 4]);
            (a.min(b), a.max(b))
        })
        .collect();
    let from_x: Vec<(usize, usize)> = coloring[x]
        .edges
        .iter()
        .copied()
        .filter(|e| cycle_edges.contains(e))
        .collect();
    let from_y: Vec<(usize, usize)> = coloring[y]
        .edges
        .iter()
        .copied()
        .filter(|e| cycle_edges.contains(e))
        .collect();
    let mut ex = coloring[x].edges.clone();
    let mut ey = coloring[y].edges.clone();
    ex.retain(|e| !from_x.contains(e));
    ey.retain(|e| !from_y.contains(e));
    ex.extend(from_y);
    ey.extend(from_x);
    coloring[x] = Matching::from_pairs(ex);
    coloring[y] = Matching::from_pairs(ey);
}

/// Backtracking enumeration of spanning cycle covers with all cycles of
/// order at least six, in a fixed deterministic order: cycles are anchored
/// at the lowest unused vertex, grown over ascending neighbors, closed as
/// early as possible, and the anchor's second cycle neighbor must exceed its
/// first so each cycle is walked in one orientation only.
fn enumerate_c6_cover(g: &Graph, enum_cap: usize) -> Result<TwoFactor> {
    let n = g.n();
    if n > enum_cap {
        return Err(Error::CapExceeded {
            op: "2-factor enumeration",
            n,
            cap: enum_cap,
        });
    }
    let masks = g.adjacency_masks()?;
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    if cover_cycles(&masks, full, &mut cycles) {
        return Ok(TwoFactor {
            cycles: cycles.into_iter().map(VertexCycle).collect(),
        });
    }
    Err(Error::InvariantViolation(
        "no cycle cover with all cycles >= 6 found although one must exist".into(),
    ))
}

fn cover_cycles(masks: &[u64], unused: u64, cycles: &mut Vec<Vec<usize>>) -> bool {
    if unused == 0 {
        return true;
    }
    let anchor = unused.trailing_zeros() as usize;
    let mut path = vec![anchor];
    extend_cycle(masks, unused & !(1 << anchor), anchor, &mut path, cycles)
}

fn extend_cycle(
    masks: &[u64],
    unused: u64,
    anchor: usize,
    path: &mut Vec<usize>,
    cycles: &mut Vec<Vec<usize>>,
) -> bool {
    let last = *path.last().unwrap();
    if path.len() >= 6 && masks[last] >> anchor & 1 == 1 && path[1] < last {
        cycles.push(path.clone());
        if cover_cycles(masks, unused, cycles) {
            return true;
        }
        cycles.pop();
    }
    let mut cand = masks[last] & unused;
    while cand != 0 {
        let w = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        path.push(w);
        if extend_cycle(masks, unused & !(1 << w), anchor, path, cycles) {
            return true;
        }
        path.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn matching_examples() {
        let k33 = generate::complete_bipartite(3, 3).unwrap();
        let (a, b) = k33.bipartition().unwrap();
        let m = max_matching_bipartite(&k33, (&a, &b)).unwrap();
        assert_eq!(m.size(), 3);
        assert!(m.is_perfect(&k33));
        assert!(m.is_valid(&k33));

        let p4 = generate::path(4).unwrap();
        let (a, b) = p4.bipartition().unwrap();
        let m = max_matching_bipartite(&p4, (&a, &b)).unwrap();
        assert_eq!(m.size(), 2);

        let star = generate::complete_bipartite(1, 4).unwrap();
        let (a, b) = star.bipartition().unwrap();
        let m = max_matching_bipartite(&star, (&a, &b)).unwrap();
        assert_eq!(m.size(), 1);
    }

    #[test]
    fn matching_rejects_bad_partition() {
        let k3 = generate::complete(3).unwrap();
        assert!(max_matching_bipartite(&k3, (&[0, 1], &[2])).is_err());
    }

    #[test]
    fn coloring_k33() {
        let k33 = generate::complete_bipartite(3, 3).unwrap();
        let classes = three_edge_coloring(&k33).unwrap();
        let mut all: Vec<(usize, usize)> =
            classes.iter().flat_map(|m| m.edges.clone()).collect();
        all.sort_unstable();
        assert_eq!(all, k33.edges());
        for m in &classes {
            assert_eq!(m.size(), 3);
            assert!(m.is_valid(&k33));
        }
    }

    #[test]
    fn coloring_heawood() {
        let h = generate::heawood();
        let classes = three_edge_coloring(&h).unwrap();
        let mut all: Vec<(usize, usize)> =
            classes.iter().flat_map(|m| m.edges.clone()).collect();
        all.sort_unstable();
        assert_eq!(all, h.edges());
        assert!(classes.iter().all(|m| m.size() == 7));
    }

    #[test]
    fn coloring_rejects_non_cubic() {
        assert!(three_edge_coloring(&generate::cycle(6).unwrap()).is_err());
        assert!(three_edge_coloring(&generate::petersen()).is_err());
    }

    #[test]
    fn k33_pairing_is_hamiltonian() {
        let k33 = generate::complete_bipartite(3, 3).unwrap();
        let classes = three_edge_coloring(&k33).unwrap();
        let f = two_factor_from_matchings(&k33, &classes[0], &classes[1]).unwrap();
        assert_eq!(f.cycles.len(), 1);
        assert_eq!(f.cycles[0].order(), 6);
        assert!(f.is_valid(&k33));
    }

    #[test]
    fn identical_classes_rejected() {
        let k33 = generate::complete_bipartite(3, 3).unwrap();
        let classes = three_edge_coloring(&k33).unwrap();
        assert!(matches!(
            two_factor_from_matchings(&k33, &classes[0], &classes[0]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn c6_factor_examples() {
        let k33 = generate::complete_bipartite(3, 3).unwrap();
        let f = c6_factor(&k33, 24).unwrap();
        assert_eq!(f.cycles.len(), 1);
        assert_eq!(f.min_cycle_order(), 6);

        let h = generate::heawood();
        let f = c6_factor(&h, 24).unwrap();
        assert!(f.is_valid(&h));
        assert!(f.min_cycle_order() >= 6);
        assert_eq!(f.cycles.iter().map(|c| c.order()).sum::<usize>(), 14);
        assert!(f.cycles.iter().all(|c| c.order() % 2 == 0));

        assert!(matches!(
            c6_factor(&generate::petersen(), 24),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn c6_factor_cube() {
        // The 3-cube's dimension coloring pairs into C4+C4, so this exercises
        // the repair stages.
        let cube = Graph::from_edges(
            8,
            &[
                (0, 1),
                (0, 2),
                (0, 4),
                (1, 3),
                (1, 5),
                (2, 3),
                (2, 6),
                (3, 7),
                (4, 5),
                (4, 6),
                (5, 7),
                (6, 7),
            ],
        )
        .unwrap();
        let f = c6_factor(&cube, 24).unwrap();
        assert!(f.is_valid(&cube));
        assert_eq!(f.cycles.len(), 1);
        assert_eq!(f.cycles[0].order(), 8);
    }

    #[test]
    fn c6_factor_deterministic() {
        let g = generate::random_cubic_bipartite(16, 3).unwrap();
        let f1 = c6_factor(&g, 24).unwrap();
        let f2 = c6_factor(&g, 24).unwrap();
        assert_eq!(f1, f2);
        assert!(f1.is_valid(&g));
        assert!(f1.min_cycle_order() >= 6);
    }
}
