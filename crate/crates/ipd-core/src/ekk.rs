//! Both sides of the star-partition equivalence: an exhaustive search for a
//! partition of the vertex set into induced stars `K_{1,1}..K_{1,n}`, and
//! the obstruction scan looking for a set `S` whose removal leaves more than
//! `n*|S|` components in which every block is an odd complete graph.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::graph::Graph;
use crate::structure;

/// Star-partition search refusal threshold.
pub const DEFAULT_STAR_CAP: usize = 12;
/// Subset-scan refusal threshold (the scan is a `2^n` sweep).
pub const DEFAULT_EKK_CAP: usize = 16;

/// A partition of the vertex set into parts each inducing a star.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarPartition {
    /// Each part as `(center, leaves)`; for a single edge the center is the
    /// smaller endpoint.
    pub parts: Vec<(usize, Vec<usize>)>,
}

impl StarPartition {
    /// Every part induces a star with 1..=max_leaves leaves and the parts
    /// partition the vertex set of `g`.
    pub fn is_valid(&self, g: &Graph, max_leaves: usize) -> bool {
        let mut seen = HashSet::new();
        for (center, leaves) in &self.parts {
            if leaves.is_empty() || leaves.len() > max_leaves || !seen.insert(*center) {
                return false;
            }
            for &l in leaves {
                if !seen.insert(l) || !g.has_edge(*center, l) {
                    return false;
                }
            }
            for (i, &l1) in leaves.iter().enumerate() {
                for &l2 in &leaves[i + 1..] {
                    if g.has_edge(l1, l2) {
                        return false;
                    }
                }
            }
        }
        seen.len() == g.n()
    }
}

/// A witness that the star-partition condition fails: removing `s` leaves
/// more than `n*|s|` components whose blocks are all odd complete graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EkkWitness {
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    pub bad_components: Vec<Vec<usize>>,
}

/// Exhaustive search for a partition of `V(g)` into parts inducing one of
/// `K_{1,1}..K_{1,max_leaves}`. Branches on the lowest uncovered vertex,
/// first as a center with ascending leaf sets (smaller sets first), then as
/// a leaf of each uncovered neighbor.
pub fn star_partition(g: &Graph, max_leaves: usize, cap: usize) -> Result<Option<StarPartition>> {
    if max_leaves < 1 {
        return Err(Error::InvalidParameter(
            "star partition needs at least one leaf per part".into(),
        ));
    }
    let n = g.n();
    if n > cap {
        return Err(Error::CapExceeded {
            op: "star partition search",
            n,
            cap,
        });
    }
    let masks = g.adjacency_masks()?;
    let full: u64 = if n == 0 {
        0
    } else if n == 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    };
    let mut parts = Vec::new();
    let mut failed = HashSet::new();
    if star_search(&masks, max_leaves, full, &mut parts, &mut failed) {
        Ok(Some(StarPartition { parts }))
    } else {
        Ok(None)
    }
}

fn star_search(
    masks: &[u64],
    max_leaves: usize,
    uncovered: u64,
    parts: &mut Vec<(usize, Vec<usize>)>,
    failed: &mut HashSet<u64>,
) -> bool {
    if uncovered == 0 {
        return true;
    }
    if failed.contains(&uncovered) {
        return false;
    }
    let v = uncovered.trailing_zeros() as usize;

    // v as center: choose 1..=max_leaves pairwise non-adjacent uncovered
    // neighbors, smaller sets first, lexicographic within a size.
    let nbrs: Vec<usize> = bits(masks[v] & uncovered & !(1 << v)).collect();
    let mut leaves = Vec::new();
    if star_center_branch(masks, max_leaves, uncovered, v, &nbrs, 0, &mut leaves, parts, failed) {
        return true;
    }

    // v as a leaf of center c (at least two leaves; the two-vertex star was
    // covered above with v as its center).
    for &c in nbrs.iter() {
        let co_leaves: Vec<usize> = bits(masks[c] & uncovered & !(1 << v) & !(1 << c))
            .filter(|&w| masks[w] >> v & 1 == 0)
            .collect();
        let mut extra = Vec::new();
        if star_leaf_branch(
            masks, max_leaves, uncovered, v, c, &co_leaves, 0, &mut extra, parts, failed,
        ) {
            return true;
        }
    }
    failed.insert(uncovered);
    false
}

#[allow(clippy::too_many_arguments)]
fn star_center_branch(
    masks: &[u64],
    max_leaves: usize,
    uncovered: u64,
    center: usize,
    candidates: &[usize],
    from: usize,
    leaves: &mut Vec<usize>,
    parts: &mut Vec<(usize, Vec<usize>)>,
    failed: &mut HashSet<u64>,
) -> bool {
    if !leaves.is_empty() {
        let mut rest = uncovered & !(1 << center);
        for &l in leaves.iter() {
            rest &= !(1 << l);
        }
        parts.push((center, leaves.clone()));
        if star_search(masks, max_leaves, rest, parts, failed) {
            return true;
        }
        parts.pop();
    }
    if leaves.len() == max_leaves {
        return false;
    }
    for (i, &w) in candidates.iter().enumerate().skip(from) {
        if leaves.iter().any(|&l| masks[l] >> w & 1 == 1) {
            continue;
        }
        leaves.push(w);
        if star_center_branch(
            masks, max_leaves, uncovered, center, candidates, i + 1, leaves, parts, failed,
        ) {
            return true;
        }
        leaves.pop();
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn star_leaf_branch(
    masks: &[u64],
    max_leaves: usize,
    uncovered: u64,
    v: usize,
    center: usize,
    candidates: &[usize],
    from: usize,
    extra: &mut Vec<usize>,
    parts: &mut Vec<(usize, Vec<usize>)>,
    failed: &mut HashSet<u64>,
) -> bool {
    if !extra.is_empty() {
        let mut leaves = vec![v];
        leaves.extend(extra.iter().copied());
        leaves.sort_unstable();
        let mut rest = uncovered & !(1 << center) & !(1 << v);
        for &l in extra.iter() {
            rest &= !(1 << l);
        }
        parts.push((center, leaves));
        if star_search(masks, max_leaves, rest, parts, failed) {
            return true;
        }
        parts.pop();
    }
    if extra.len() + 1 == max_leaves {
        return false;
    }
    for (i, &w) in candidates.iter().enumerate().skip(from) {
        if extra.iter().any(|&l| masks[l] >> w & 1 == 1) {
            continue;
        }
        extra.push(w);
        if star_leaf_branch(
            masks, max_leaves, uncovered, v, center, candidates, i + 1, extra, parts, failed,
        ) {
            return true;
        }
        extra.pop();
    }
    false
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
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

/// Scans every `S` in size-then-lexicographic order and returns the first
/// witness with more than `n_star * |S|` bad components of `G - S`, or
/// `None` when the condition holds everywhere.
pub fn ekk_condition(g: &Graph, n_star: usize, cap: usize) -> Result<Option<EkkWitness>> {
    ekk_condition_with(g, n_star, cap, Exec::default())
}

/// `ekk_condition` with an explicit execution policy; the parallel scan still
/// reports the size-lexicographic first witness.
pub fn ekk_condition_with(
    g: &Graph,
    n_star: usize,
    cap: usize,
    exec: Exec,
) -> Result<Option<EkkWitness>> {
    let n = g.n();
    if n > cap {
        return Err(Error::CapExceeded {
            op: "ekk subset scan",
            n,
            cap,
        });
    }
    let subsets = subsets_size_then_lex(n);
    let check = |s: &Vec<usize>| -> Option<EkkWitness> {
        let bad = bad_components(g, s);
        if bad.len() > n_star * s.len() {
            Some(EkkWitness {
                s: s.clone(),
                bad_components: bad,
            })
        } else {
            None
        }
    };
    Ok(exec::find_first_map(exec, &subsets, check))
}

/// Components of `g - s` in which every block is an odd complete graph.
fn bad_components(g: &Graph, s: &[usize]) -> Vec<Vec<usize>> {
    let removed: HashSet<usize> = s.iter().copied().collect();
    let keep: Vec<usize> = (0..g.n()).filter(|v| !removed.contains(v)).collect();
    let (h, map) = g.induced_subgraph(&keep).expect("keep is in range");
    let mut bad = Vec::new();
    for comp in h.components() {
        let (c, _) = h.induced_subgraph(&comp).expect("component is in range");
        if structure::is_bad(&c).expect("components are connected") {
            bad.push(comp.iter().map(|&v| map[v]).collect());
        }
    }
    bad
}

/// All subsets of `0..n` ordered by size, then lexicographically by their
/// sorted element sequence.
fn subsets_size_then_lex(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for k in 1..=n {
        let mut cur: Vec<usize> = (0..k).collect();
        'combos: loop {
            out.push(cur.clone());
            let mut i = k - 1;
            loop {
                if cur[i] < n - k + i {
                    cur[i] += 1;
                    for j in i + 1..k {
                        cur[j] = cur[j - 1] + 1;
                    }
                    continue 'combos;
                }
                if i == 0 {
                    break 'combos;
                }
                i -= 1;
            }
        }
    }
    out
}

/// The IPD-existence decision computed through the star-partition route with
/// two leaves; exposed for cross-validation against the direct solver.
pub fn ipd_via_ekk(g: &Graph, cap: usize) -> Result<bool> {
    Ok(star_partition(g, 2, cap)?.is_some())
}
