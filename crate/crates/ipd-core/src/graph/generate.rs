//! Graph families: deterministic constructions plus seeded random regular
//! and random cubic bipartite generators (ChaCha8 keyed by the seed, so a
//! given seed always yields the same graph).

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Retry budget for the rejection-sampling generators.
const MAX_RETRIES: usize = 10_000;

pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("path requires n >= 1".into()));
    }
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle requires n >= 3, got {n}"
        )));
    }
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// `K_{m,n}` with part `A = 0..m` and part `B = m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    let mut g = Graph::new(m + n);
    for u in 0..m {
        for v in m..m + n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// Builds a cubic graph from an LCF code: the Hamiltonian cycle `0..n` plus
/// the chord `i -> i + jumps[i mod jumps.len()]` for every `i`.
fn lcf(jumps: &[i64], repeats: usize) -> Graph {
    let n = jumps.len() * repeats;
    let mut g = Graph::new(n);
    for v in 0..n {
        g.add_edge(v, (v + 1) % n).unwrap();
    }
    for v in 0..n {
        let j = jumps[v % jumps.len()];
        let w = (v as i64 + j).rem_euclid(n as i64) as usize;
        g.add_edge(v, w).unwrap();
    }
    g
}

pub fn heawood() -> Graph {
    lcf(&[5, -5], 7)
}

pub fn pappus() -> Graph {
    lcf(&[5, 7, -7, 7, -7, -5], 3)
}

pub fn desargues() -> Graph {
    lcf(&[5, -5, 9, -9], 5)
}

pub fn moebius_kantor() -> Graph {
    lcf(&[5, -5], 8)
}

pub fn petersen() -> Graph {
    let mut g = Graph::new(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5).unwrap();
        g.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
        g.add_edge(i, 5 + i).unwrap();
    }
    g
}

/// A connected simple `r`-regular graph on `n` vertices, sampled by pairing
/// stubs and rejecting loops, repeated edges and disconnected outcomes.
pub fn random_regular(n: usize, r: usize, seed: u64) -> Result<Graph> {
    if n == 0 || r >= n || n * r % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "no simple {r}-regular graph on {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = Vec::with_capacity(n * r);
    for _ in 0..MAX_RETRIES {
        stubs.clear();
        for v in 0..n {
            stubs.extend(std::iter::repeat(v).take(r));
        }
        stubs.shuffle(&mut rng);
        if let Some(g) = pair_stubs(n, &stubs) {
            if g.is_connected() {
                return Ok(g);
            }
        }
    }
    Err(Error::InvalidParameter(format!(
        "random_regular({n}, {r}) failed after {MAX_RETRIES} attempts for seed {seed}"
    )))
}

fn pair_stubs(n: usize, stubs: &[usize]) -> Option<Graph> {
    let mut g = Graph::new(n);
    for pair in stubs.chunks(2) {
        let (u, v) = (pair[0], pair[1]);
        if u == v || g.has_edge(u, v) {
            return None;
        }
        g.add_edge(u, v).ok()?;
    }
    Some(g)
}

/// A connected cubic bipartite graph on `n` vertices (parts `0..n/2` and
/// `n/2..n`), sampled as the union of three random perfect matchings.
pub fn random_cubic_bipartite(n: usize, seed: u64) -> Result<Graph> {
    if n % 2 != 0 || n < 6 {
        return Err(Error::InvalidParameter(format!(
            "cubic bipartite graphs need even n >= 6, got {n}"
        )));
    }
    let half = n / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perms: [Vec<usize>; 3] = [vec![], vec![], vec![]];
    for _ in 0..MAX_RETRIES {
        for p in perms.iter_mut() {
            *p = (0..half).collect();
            p.shuffle(&mut rng);
        }
        let distinct = (0..half).all(|i| {
            perms[0][i] != perms[1][i] && perms[0][i] != perms[2][i] && perms[1][i] != perms[2][i]
        });
        if !distinct {
            continue;
        }
        let mut g = Graph::new(n);
        for i in 0..half {
            for p in perms.iter() {
                g.add_edge(i, half + p[i])?;
            }
        }
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::InvalidParameter(format!(
        "random_cubic_bipartite({n}) failed after {MAX_RETRIES} attempts for seed {seed}"
    )))
}

/// String dispatch used by the command line: `by_name("cycle", &[6], 0)`.
pub fn by_name(family: &str, params: &[usize], seed: u64) -> Result<Graph> {
    let want = |k: usize| -> Result<()> {
        if params.len() != k {
            return Err(Error::InvalidParameter(format!(
                "family `{family}` takes {k} parameter(s), got {}",
                params.len()
            )));
        }
        Ok(())
    };
    match family {
        "path" => {
            want(1)?;
            path(params[0])
        }
        "cycle" => {
            want(1)?;
            cycle(params[0])
        }
        "complete" => {
            want(1)?;
            complete(params[0])
        }
        "complete_bipartite" => {
            want(2)?;
            complete_bipartite(params[0], params[1])
        }
        "heawood" => {
            want(0)?;
            Ok(heawood())
        }
        "pappus" => {
            want(0)?;
            Ok(pappus())
        }
        "desargues" => {
            want(0)?;
            Ok(desargues())
        }
        "petersen" => {
            want(0)?;
            Ok(petersen())
        }
        "moebius_kantor" => {
            want(0)?;
            Ok(moebius_kantor())
        }
        "random_regular" => {
            want(2)?;
            random_regular(params[0], params[1], seed)
        }
        "random_cubic_bipartite" => {
            want(1)?;
            random_cubic_bipartite(params[0], seed)
        }
        other => Err(Error::InvalidParameter(format!(
            "unknown graph family `{other}`"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_degrees() {
        let k5 = complete(5).unwrap();
        assert!((0..5).all(|v| k5.degree(v) == 4));
    }

    #[test]
    fn k33_is_cubic_bipartite() {
        let g = complete_bipartite(3, 3).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.regular_degree(), Some(3));
        assert!(g.bipartition().is_some());
    }

    #[test]
    fn infeasible_parameters() {
        assert!(random_regular(5, 3, 0).is_err()); // odd n*r
        assert!(random_cubic_bipartite(7, 0).is_err());
        assert!(cycle(2).is_err());
    }

    #[test]
    fn random_regular_is_deterministic() {
        let a = random_regular(12, 3, 7).unwrap();
        let b = random_regular(12, 3, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.regular_degree(), Some(3));
        assert!(a.is_connected());
    }

    #[test]
    fn random_cubic_bipartite_properties() {
        for seed in 0..5 {
            let g = random_cubic_bipartite(14, seed).unwrap();
            assert_eq!(g.regular_degree(), Some(3));
            assert!(g.is_connected());
            assert!(g.bipartition().is_some());
        }
    }

    #[test]
    fn by_name_dispatch() {
        assert_eq!(by_name("heawood", &[], 0).unwrap().n(), 14);
        assert_eq!(by_name("cycle", &[6], 0).unwrap().n(), 6);
        assert!(by_name("cycle", &[], 0).is_err());
        assert!(by_name("nonsense", &[], 0).is_err());
    }
}
