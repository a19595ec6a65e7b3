//! Decomposition validation, exact IPD existence, and the exact minimum
//! number of induced paths by branch and bound.
//!
//! Everything here is the brute-force ground truth that the theorem-driven
//! constructions are checked against, so determinism matters: branches are
//! explored in a fixed documented order and the first optimum found under
//! that order is the one returned.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::graph::{Graph, VertexPath};

/// Existence search refusal threshold.
pub const DEFAULT_EXISTS_CAP: usize = 24;
/// Exact-minimum search refusal threshold.
pub const DEFAULT_MIN_IPD_CAP: usize = 18;

/// A set of vertex-disjoint induced paths covering all vertices, each of
/// order at least 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedPathDecomposition {
    pub paths: Vec<VertexPath>,
}

impl InducedPathDecomposition {
    pub fn size(&self) -> usize {
        self.paths.len()
    }

    pub fn to_doc(&self, n: usize) -> DecompositionDoc {
        DecompositionDoc {
            n,
            paths: self.paths.iter().map(|p| p.0.clone()).collect(),
        }
    }
}

/// The interchange format `{"n": ..., "paths": [[v, ...], ...]}` used by the
/// command line and the test fixtures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub n: usize,
    pub paths: Vec<Vec<usize>>,
}

impl From<DecompositionDoc> for InducedPathDecomposition {
    fn from(doc: DecompositionDoc) -> Self {
        InducedPathDecomposition {
            paths: doc.paths.into_iter().map(VertexPath).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    NotAPath,
    NotInduced,
    Overlap,
    UncoveredVertex,
    OrderBelowTwo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Index of the offending path; `None` for uncovered vertices.
    pub path: Option<usize>,
    pub kind: ViolationKind,
    pub vertices: Vec<usize>,
}

/// Result of checking every IPD invariant; `ok()` iff no violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// True iff `p` is an induced path of `g`: distinct vertices, consecutive
/// ones adjacent, and no chord between non-consecutive ones.
pub fn is_induced_path(g: &Graph, p: &VertexPath) -> Result<bool> {
    let vs = p.vertices();
    for &v in vs {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    let mut seen = HashSet::new();
    if !vs.iter().all(|&v| seen.insert(v)) {
        return Ok(false);
    }
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let adjacent = g.has_edge(vs[i], vs[j]);
            if (j == i + 1) != adjacent {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks all four IPD invariants and reports every violation found, not
/// just the first.
pub fn validate_ipd(g: &Graph, d: &InducedPathDecomposition) -> ValidationReport {
    let mut violations = Vec::new();
    let mut covered: HashSet<usize> = HashSet::new();
    for (i, p) in d.paths.iter().enumerate() {
        let vs = p.vertices();
        if vs.len() < 2 {
            violations.push(Violation {
                path: Some(i),
                kind: ViolationKind::OrderBelowTwo,
                vertices: vs.to_vec(),
            });
        }
        let out_of_range: Vec<usize> = vs.iter().copied().filter(|&v| v >= g.n()).collect();
        if !out_of_range.is_empty() {
            violations.push(Violation {
                path: Some(i),
                kind: ViolationKind::NotAPath,
                vertices: out_of_range,
            });
            continue;
        }
        let mut in_path: HashSet<usize> = HashSet::new();
        for &v in vs {
            if !in_path.insert(v) {
                violations.push(Violation {
                    path: Some(i),
                    kind: ViolationKind::NotAPath,
                    vertices: vec![v],
                });
            }
        }
        for w in vs.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                violations.push(Violation {
                    path: Some(i),
                    kind: ViolationKind::NotAPath,
                    vertices: vec![w[0], w[1]],
                });
            }
        }
        for a in 0..vs.len() {
            for b in a + 2..vs.len() {
                if vs[a] != vs[b] && g.has_edge(vs[a], vs[b]) {
                    violations.push(Violation {
                        path: Some(i),
                        kind: ViolationKind::NotInduced,
                        vertices: vec![vs[a], vs[b]],
                    });
                }
            }
        }
        for &v in vs {
            if !covered.insert(v) {
                violations.push(Violation {
                    path: Some(i),
                    kind: ViolationKind::Overlap,
                    vertices: vec![v],
                });
            }
        }
    }
    let uncovered: Vec<usize> = (0..g.n()).filter(|v| !covered.contains(v)).collect();
    if !uncovered.is_empty() {
        violations.push(Violation {
            path: None,
            kind: ViolationKind::UncoveredVertex,
            vertices: uncovered,
        });
    }
    ValidationReport { violations }
}

fn bits_ascending(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Exact IPD existence via the equivalent search for a partition of the
/// vertex set into pairs inducing an edge and triples inducing a path.
/// Returns that partition as a decomposition witness when one exists.
pub fn exists_ipd(g: &Graph, cap: usize) -> Result<Option<InducedPathDecomposition>> {
    let n = g.n();
    if n > cap {
        return Err(Error::CapExceeded {
            op: "ipd existence search",
            n,
            cap,
        });
    }
    let masks = g.adjacency_masks()?;
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut parts: Vec<VertexPath> = Vec::new();
    let mut failed: HashSet<u64> = HashSet::new();
    if search_p2_p3(&masks, full, &mut parts, &mut failed) {
        Ok(Some(InducedPathDecomposition { paths: parts }))
    } else {
        Ok(None)
    }
}

/// Branches on the lowest uncovered vertex: first every pair, then every
/// induced-path triple, in ascending vertex order. Dead uncovered sets are
/// memoized so revisits fail immediately.
fn search_p2_p3(
    masks: &[u64],
    uncovered: u64,
    parts: &mut Vec<VertexPath>,
    failed: &mut HashSet<u64>,
) -> bool {
    if uncovered == 0 {
        return true;
    }
    if failed.contains(&uncovered) {
        return false;
    }
    let v = uncovered.trailing_zeros() as usize;
    for u in bits_ascending(masks[v] & uncovered) {
        parts.push(VertexPath(vec![v, u]));
        let rest = uncovered & !(1 << v) & !(1 << u);
        if search_p2_p3(masks, rest, parts, failed) {
            return true;
        }
        parts.pop();
    }
    let others: Vec<usize> = bits_ascending(uncovered & !(1 << v)).collect();
    for (i, &a) in others.iter().enumerate() {
        for &b in &others[i + 1..] {
            if let Some(p3) = induced_p3(masks, v, a, b) {
                parts.push(VertexPath(p3.to_vec()));
                let rest = uncovered & !(1 << v) & !(1 << a) & !(1 << b);
                if search_p2_p3(masks, rest, parts, failed) {
                    return true;
                }
                parts.pop();
            }
        }
    }
    failed.insert(uncovered);
    false
}

/// When `{v, a, b}` induces a path on three vertices, returns it ordered
/// end-center-end with the smaller end first.
fn induced_p3(masks: &[u64], v: usize, a: usize, b: usize) -> Option<[usize; 3]> {
    let va = masks[v] >> a & 1 == 1;
    let vb = masks[v] >> b & 1 == 1;
    let ab = masks[a] >> b & 1 == 1;
    match (va, vb, ab) {
        (true, true, false) => Some(order_p3(a, v, b)),
        (true, false, true) => Some(order_p3(v, a, b)),
        (false, true, true) => Some(order_p3(v, b, a)),
        _ => None,
    }
}

fn order_p3(end1: usize, center: usize, end2: usize) -> [usize; 3] {
    if end1 < end2 {
        [end1, center, end2]
    } else {
        [end2, center, end1]
    }
}

/// Order of the longest induced path, found by depth-first growth over
/// induced extensions from every start vertex. Exact; used as the
/// admissible bound inside `min_ipd`.
pub fn longest_induced_path_order(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let masks = g.adjacency_masks().expect("min search caps keep n <= 64");
    let mut best = 1;
    for start in 0..n {
        grow_longest(&masks, start, 1 << start, 1, &mut best);
    }
    best
}

fn grow_longest(masks: &[u64], last: usize, used: u64, len: usize, best: &mut usize) {
    *best = (*best).max(len);
    let mut cand = masks[last] & !used;
    while cand != 0 {
        let w = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        // w may touch the path only at its tail, otherwise the extension
        // would close a chord.
        if masks[w] & used == 1 << last {
            grow_longest(masks, w, used | (1 << w), len + 1, best);
        }
    }
}

/// Exact minimum number of paths over all IPDs, with a witness of that size;
/// `None` iff the graph has no IPD. The n = 0 graph has the empty IPD.
pub fn min_ipd(g: &Graph, cap: usize) -> Result<Option<(usize, InducedPathDecomposition)>> {
    min_ipd_with(g, cap, Exec::default())
}

/// `min_ipd` with an explicit execution policy.
///
/// Sequentially this is one branch-and-bound pass; in parallel the branches
/// at the root vertex run independently and the reduction keeps the smallest
/// size from the earliest branch. Both return the first optimum under the
/// branch order (pruning never discards a subtree holding a strictly better
/// solution, so the surviving incumbent is the depth-first-first optimum
/// either way).
pub fn min_ipd_with(
    g: &Graph,
    cap: usize,
    exec: Exec,
) -> Result<Option<(usize, InducedPathDecomposition)>> {
    let n = g.n();
    if n > cap {
        return Err(Error::CapExceeded {
            op: "minimum ipd search",
            n,
            cap,
        });
    }
    let masks = g.adjacency_masks()?;
    if n == 0 {
        return Ok(Some((0, InducedPathDecomposition { paths: vec![] })));
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let lmax = longest_induced_path_order(g).max(1);

    let best = match exec {
        Exec::Sequential => {
            let mut search = MinSearch::new(&masks, lmax, usize::MAX, false);
            search.solve(full);
            search.best
        }
        #[cfg(feature = "parallel")]
        Exec::Parallel => min_branches_parallel(&masks, full, lmax),
    };
    Ok(best.map(|parts| {
        (
            parts.len(),
            InducedPathDecomposition {
                paths: parts.into_iter().map(VertexPath).collect(),
            },
        )
    }))
}

/// Fan out over the root branches: find the depth-first-first solution to
/// seed the incumbent, then let every branch independently look for strictly
/// better ones, and keep the smallest size from the earliest branch.
#[cfg(feature = "parallel")]
fn min_branches_parallel(masks: &[u64], full: u64, lmax: usize) -> Option<Vec<Vec<usize>>> {
    let mut greedy = MinSearch::new(masks, lmax, usize::MAX, true);
    greedy.solve(full);
    let first = greedy.best?;
    let seed = first.len();

    let root_branches = paths_through_lowest(masks, full);
    let greedy_branch = root_branches
        .iter()
        .position(|b| *b == first[0])
        .expect("first part of a solution is a root branch");
    let run_branch = |branch: &Vec<usize>| -> Option<Vec<Vec<usize>>> {
        let mut search = MinSearch::new(masks, lmax, seed, false);
        search.parts.push(branch.clone());
        let mut rest = full;
        for &v in branch {
            rest &= !(1 << v);
        }
        search.solve(rest);
        search.best
    };
    let results = exec::map_ordered(Exec::Parallel, &root_branches, run_branch);
    let mut best: (usize, usize, Vec<Vec<usize>>) = (seed, greedy_branch, first);
    for (idx, parts) in results.into_iter().enumerate().filter_map(|(i, r)| r.map(|p| (i, p))) {
        if (parts.len(), idx) < (best.0, best.1) {
            best = (parts.len(), idx, parts);
        }
    }
    Some(best.2)
}

struct MinSearch<'a> {
    masks: &'a [u64],
    lmax: usize,
    best_size: usize,
    best: Option<Vec<Vec<usize>>>,
    parts: Vec<Vec<usize>>,
    stop_at_first: bool,
    done: bool,
}

impl<'a> MinSearch<'a> {
    fn new(masks: &'a [u64], lmax: usize, best_size: usize, stop_at_first: bool) -> Self {
        MinSearch {
            masks,
            lmax,
            best_size,
            best: None,
            parts: Vec::new(),
            stop_at_first,
            done: false,
        }
    }

    fn solve(&mut self, uncovered: u64) {
        if self.done {
            return;
        }
        if uncovered == 0 {
            if self.parts.len() < self.best_size {
                self.best_size = self.parts.len();
                self.best = Some(self.parts.clone());
                if self.stop_at_first {
                    self.done = true;
                }
            }
            return;
        }
        let remaining = uncovered.count_ones() as usize;
        let bound = self.parts.len() + remaining.div_ceil(self.lmax);
        if bound >= self.best_size {
            return;
        }
        for branch in paths_through_lowest(self.masks, uncovered) {
            let mut rest = uncovered;
            for &v in &branch {
                rest &= !(1 << v);
            }
            self.parts.push(branch);
            self.solve(rest);
            self.parts.pop();
            if self.done {
                return;
            }
        }
    }
}

/// All induced paths of order >= 2 through the lowest uncovered vertex,
/// using uncovered vertices only. Each path appears once: it is grown tail
/// first, then head, and of the two orientations the one whose successor of
/// the pivot is smaller than its predecessor is kept.
fn paths_through_lowest(masks: &[u64], uncovered: u64) -> Vec<Vec<usize>> {
    let v = uncovered.trailing_zeros() as usize;
    let mut out = Vec::new();
    let mut path = vec![v];
    grow_tail(masks, uncovered, &mut path, 1 << v, &mut out);
    out
}

fn grow_tail(
    masks: &[u64],
    uncovered: u64,
    path: &mut Vec<usize>,
    used: u64,
    out: &mut Vec<Vec<usize>>,
) {
    if path.len() >= 2 {
        out.push(path.clone());
    }
    let last = *path.last().unwrap();
    for w in bits_ascending(masks[last] & uncovered & !used) {
        if masks[w] & used == 1 << last {
            path.push(w);
            grow_tail(masks, uncovered, path, used | (1 << w), out);
            path.pop();
        }
    }
    if path.len() >= 2 {
        grow_head(masks, uncovered, path, used, out);
    }
}

fn grow_head(
    masks: &[u64],
    uncovered: u64,
    path: &mut Vec<usize>,
    used: u64,
    out: &mut Vec<Vec<usize>>,
) {
    let first = path[0];
    let pivot = used.trailing_zeros() as usize;
    let pivot_successor = path[1];
    for u in bits_ascending(masks[first] & uncovered & !used) {
        if masks[u] & used != 1 << first {
            continue;
        }
        // The first prepend fixes the orientation: of the two mirror copies
        // keep the one whose tail-side neighbor of the pivot is smaller.
        if first == pivot && u < pivot_successor {
            continue;
        }
        path.insert(0, u);
        out.push(path.clone());
        grow_head(masks, uncovered, path, used | (1 << u), out);
        path.remove(0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Graph};
    use crate::structure::bowtie;

    #[test]
    fn induced_path_examples() {
        let c6 = generate::cycle(6).unwrap();
        assert!(is_induced_path(&c6, &VertexPath(vec![0, 1, 2])).unwrap());
        assert!(!is_induced_path(&c6, &VertexPath(vec![0, 1, 2, 3, 4, 5])).unwrap());
        let k3 = generate::complete(3).unwrap();
        assert!(!is_induced_path(&k3, &VertexPath(vec![0, 1, 2])).unwrap());
        assert!(is_induced_path(&k3, &VertexPath(vec![0, 1])).unwrap());
        assert!(is_induced_path(&c6, &VertexPath(vec![0, 9])).is_err());
    }

    #[test]
    fn validate_examples() {
        let c4 = generate::cycle(4).unwrap();
        let ok = InducedPathDecomposition {
            paths: vec![VertexPath(vec![0, 1]), VertexPath(vec![2, 3])],
        };
        assert!(validate_ipd(&c4, &ok).ok());

        let missing = InducedPathDecomposition {
            paths: vec![VertexPath(vec![0, 1, 2])],
        };
        let report = validate_ipd(&c4, &missing);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].kind, ViolationKind::UncoveredVertex);
        assert_eq!(report.violations[0].vertices, vec![3]);

        let k3 = generate::complete(3).unwrap();
        let chorded = InducedPathDecomposition {
            paths: vec![VertexPath(vec![0, 1, 2])],
        };
        let report = validate_ipd(&k3, &chorded);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].kind, ViolationKind::NotInduced);
    }

    #[test]
    fn validate_reports_everything() {
        let c4 = generate::cycle(4).unwrap();
        let messy = InducedPathDecomposition {
            paths: vec![
                VertexPath(vec![0]),
                VertexPath(vec![0, 2]),
                VertexPath(vec![1, 2]),
            ],
        };
        let report = validate_ipd(&c4, &messy);
        let kinds: Vec<ViolationKind> = report.violations.iter().map(|v| v.kind).collect();
        assert!(kinds.contains(&ViolationKind::OrderBelowTwo));
        assert!(kinds.contains(&ViolationKind::NotAPath)); // 0-2 not an edge of C4
        assert!(kinds.contains(&ViolationKind::Overlap)); // vertex 2 reused
        assert!(kinds.contains(&ViolationKind::UncoveredVertex)); // vertex 3
    }

    #[test]
    fn exists_examples() {
        assert!(exists_ipd(&generate::complete(5).unwrap(), 24).unwrap().is_none());

        let k4 = generate::complete(4).unwrap();
        let d = exists_ipd(&k4, 24).unwrap().unwrap();
        assert_eq!(d.paths, vec![VertexPath(vec![0, 1]), VertexPath(vec![2, 3])]);
        assert!(validate_ipd(&k4, &d).ok());

        assert!(exists_ipd(&bowtie(), 24).unwrap().is_none());

        assert!(matches!(
            exists_ipd(&generate::complete(30).unwrap(), 24),
            Err(Error::CapExceeded { .. })
        ));

        // Empty graph: the empty decomposition covers the empty vertex set.
        assert!(exists_ipd(&Graph::new(0), 24).unwrap().is_some());
        // A single vertex cannot lie on a path of order two.
        assert!(exists_ipd(&Graph::new(1), 24).unwrap().is_none());
    }

    #[test]
    fn triangle_with_pendant() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
        let d = exists_ipd(&g, 24).unwrap().unwrap();
        assert_eq!(d.paths, vec![VertexPath(vec![0, 3]), VertexPath(vec![1, 2])]);
    }

    #[test]
    fn min_examples() {
        let p7 = generate::path(7).unwrap();
        let (rho, d) = min_ipd(&p7, 18).unwrap().unwrap();
        assert_eq!(rho, 1);
        assert_eq!(d.paths, vec![VertexPath((0..7).collect())]);

        let (rho, d) = min_ipd(&generate::cycle(6).unwrap(), 18).unwrap().unwrap();
        assert_eq!(rho, 2);
        assert!(validate_ipd(&generate::cycle(6).unwrap(), &d).ok());

        assert!(min_ipd(&generate::complete(5).unwrap(), 18).unwrap().is_none());

        assert!(matches!(
            min_ipd(&generate::cycle(20).unwrap(), 18),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn complete_graph_minimums() {
        for m in 2..=9 {
            let km = generate::complete(m).unwrap();
            let result = min_ipd(&km, 18).unwrap();
            if m % 2 == 0 {
                let (rho, d) = result.unwrap();
                assert_eq!(rho, m / 2, "K_{m} should split into {} edges", m / 2);
                assert!(validate_ipd(&km, &d).ok());
            } else {
                assert!(result.is_none(), "K_{m} has no IPD");
            }
        }
    }

    #[test]
    fn longest_induced_path_examples() {
        assert_eq!(longest_induced_path_order(&generate::path(7).unwrap()), 7);
        assert_eq!(longest_induced_path_order(&generate::complete(5).unwrap()), 2);
        assert_eq!(longest_induced_path_order(&generate::cycle(6).unwrap()), 5);
        assert_eq!(longest_induced_path_order(&Graph::new(3)), 1);
    }

    #[test]
    fn empty_graph_minimum() {
        let (rho, d) = min_ipd(&Graph::new(0), 18).unwrap().unwrap();
        assert_eq!(rho, 0);
        assert!(d.paths.is_empty());
    }
}
