//! Block (biconnected component) decomposition, claw detection, and the
//! "every block is an odd complete graph" predicate.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// One block: its vertices (sorted) and the edges of the host graph inside
/// it. A block is a maximal 2-connected subgraph, a bridge with its two
/// endpoints, or a single isolated vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl Block {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    /// True when the block is a complete graph of odd order (`K1` counts).
    pub fn is_odd_complete(&self) -> bool {
        let m = self.order();
        m % 2 == 1 && self.edges.len() == m * (m - 1) / 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Blocks in DFS completion order.
    pub blocks: Vec<Block>,
    /// Sorted cut vertices of the graph.
    pub cut_vertices: Vec<usize>,
}

impl BlockDecomposition {
    pub fn is_cut_vertex(&self, v: usize) -> bool {
        self.cut_vertices.binary_search(&v).is_ok()
    }

    /// Cut vertices lying in block `i`.
    pub fn cut_vertices_in_block(&self, i: usize) -> Vec<usize> {
        self.blocks[i]
            .vertices
            .iter()
            .copied()
            .filter(|&v| self.is_cut_vertex(v))
            .collect()
    }

    /// Indices of blocks containing at most one cut vertex.
    pub fn leaf_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&i| self.cut_vertices_in_block(i).len() <= 1)
            .collect()
    }
}

/// Hopcroft–Tarjan lowpoint decomposition. Isolated vertices become
/// degenerate single-vertex blocks so the decomposition covers every vertex.
pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let mut state = BlockState {
        g,
        disc: vec![usize::MAX; n],
        low: vec![0; n],
        timer: 0,
        edge_stack: Vec::new(),
        blocks: Vec::new(),
        cut: vec![false; n],
    };
    for root in 0..n {
        if state.disc[root] == usize::MAX {
            if g.degree(root) == 0 {
                state.blocks.push(Block {
                    vertices: vec![root],
                    edges: vec![],
                });
            } else {
                state.dfs(root, usize::MAX);
            }
        }
    }
    let cut_vertices = (0..n).filter(|&v| state.cut[v]).collect();
    BlockDecomposition {
        blocks: state.blocks,
        cut_vertices,
    }
}

struct BlockState<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    timer: usize,
    edge_stack: Vec<(usize, usize)>,
    blocks: Vec<Block>,
    cut: Vec<bool>,
}

impl BlockState<'_> {
    fn dfs(&mut self, u: usize, parent: usize) {
        self.disc[u] = self.timer;
        self.low[u] = self.timer;
        self.timer += 1;
        let mut children = 0;
        for v in self.g.neighbors(u) {
            if v == parent {
                continue;
            }
            if self.disc[v] == usize::MAX {
                children += 1;
                self.edge_stack.push((u, v));
                self.dfs(v, u);
                self.low[u] = self.low[u].min(self.low[v]);
                if self.low[v] >= self.disc[u] {
                    // u separates v's subtree: pop one block.
                    if parent != usize::MAX || children > 1 {
                        self.cut[u] = true;
                    }
                    let mut edges = Vec::new();
                    while let Some(&top) = self.edge_stack.last() {
                        self.edge_stack.pop();
                        edges.push(top);
                        if top == (u, v) {
                            break;
                        }
                    }
                    self.emit_block(edges);
                }
            } else if self.disc[v] < self.disc[u] {
                self.edge_stack.push((u, v));
                self.low[u] = self.low[u].min(self.disc[v]);
            }
        }
    }

    fn emit_block(&mut self, mut edges: Vec<(usize, usize)>) {
        let mut vertices: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        self.blocks.push(Block { vertices, edges });
    }
}

/// True iff `g` is `K_m` with `m` odd.
pub fn is_odd_complete(g: &Graph) -> bool {
    let n = g.n();
    n % 2 == 1 && g.edge_count() == n * (n - 1) / 2
}

/// True iff every block of the connected graph `g` is a complete graph of
/// odd order.
pub fn is_bad(g: &Graph) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Precondition(
            "is_bad requires a connected graph".into(),
        ));
    }
    Ok(block_decomposition(g)
        .blocks
        .iter()
        .all(|b| b.is_odd_complete()))
}

/// An induced `K_{1,3}`: `center` adjacent to all three `leaves`, leaves
/// pairwise non-adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClawWitness {
    pub center: usize,
    pub leaves: [usize; 3],
}

/// First induced claw under ascending center ids and lexicographic leaf
/// triples; `None` iff the graph is claw-free.
pub fn find_claw(g: &Graph) -> Option<ClawWitness> {
    for center in 0..g.n() {
        let nbrs: Vec<usize> = g.neighbors(center).collect();
        for i in 0..nbrs.len() {
            for j in i + 1..nbrs.len() {
                if g.has_edge(nbrs[i], nbrs[j]) {
                    continue;
                }
                for k in j + 1..nbrs.len() {
                    if !g.has_edge(nbrs[i], nbrs[k]) && !g.has_edge(nbrs[j], nbrs[k]) {
                        return Some(ClawWitness {
                            center,
                            leaves: [nbrs[i], nbrs[j], nbrs[k]],
                        });
                    }
                }
            }
        }
    }
    None
}

/// Two triangles sharing one vertex; the smallest graph whose blocks are all
/// odd complete while having more than one block. Used across the test
/// suites.
pub fn bowtie() -> Graph {
    Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
}
