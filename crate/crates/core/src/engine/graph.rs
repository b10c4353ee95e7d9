//! The window graph: nodes are `(E−1)`-words, edges are admissible `E`-words
//! weighted by the potential at their center.

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::potentials::Potential;
use crate::symbolic::Sft;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Edge {
    pub word: Vec<u32>,
    pub from: usize,
    pub to: usize,
    pub weight: Interval,
}

/// Higher-block presentation of a subshift at window resolution.
#[derive(Clone, Debug, Default)]
pub struct WindowGraph {
    edge_len: usize,
    center: usize,
    nodes: Vec<Vec<u32>>,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
}

impl WindowGraph {
    /// Graph from weighted `edge_len`-words; the potential's center sits at
    /// index `center` of each word.
    pub fn from_edges(edge_len: usize, center: usize, mut list: Vec<(Vec<u32>, Interval)>) -> Self {
        assert!(edge_len >= 2, "window graph edges need length ≥ 2");
        list.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
        list.dedup_by(|a, b| a.0 == b.0);
        let mut nodes: Vec<Vec<u32>> = list
            .par_iter()
            .flat_map_iter(|(w, _)| [w[..edge_len - 1].to_vec(), w[1..].to_vec()])
            .collect();
        nodes.par_sort_unstable();
        nodes.dedup();
        let index = |key: &[u32]| {
            nodes
                .binary_search_by(|n| n.as_slice().cmp(key))
                .expect("edge endpoints are nodes")
        };
        let edges: Vec<Edge> = list
            .into_par_iter()
            .map(|(word, weight)| {
                let from = index(&word[..edge_len - 1]);
                let to = index(&word[1..]);
                Edge {
                    word,
                    from,
                    to,
                    weight,
                }
            })
            .collect();
        let mut out = vec![Vec::new(); nodes.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.from].push(i);
        }
        WindowGraph {
            edge_len,
            center,
            nodes,
            edges,
            out,
        }
    }

    pub fn edge_len(&self) -> usize {
        self.edge_len
    }

    /// Index of the potential's center inside an edge word.
    pub fn center(&self) -> usize {
        self.center
    }

    pub fn nodes(&self) -> &[Vec<u32>] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Outgoing edge ids of a node, ordered by appended symbol.
    pub fn out_edges(&self, node: usize) -> &[usize] {
        &self.out[node]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Node adjacency lists.
    pub fn successors(&self) -> Vec<Vec<usize>> {
        self.out
            .iter()
            .map(|es| es.iter().map(|&e| self.edges[e].to).collect())
            .collect()
    }

    /// Keep the edges accepted by `keep`, then remove nodes without a
    /// bi-infinite path through them.
    pub fn filter(&self, keep: impl Fn(&Edge) -> bool) -> WindowGraph {
        let list = self
            .edges
            .iter()
            .filter(|e| keep(e))
            .map(|e| (e.word.clone(), e.weight))
            .collect();
        WindowGraph::from_edges(self.edge_len, self.center, list).core()
    }

    /// Largest subgraph in which every node has an incoming and an
    /// outgoing edge.
    pub fn core(self) -> WindowGraph {
        let alive = self.core_mask(|_| true);
        if alive.iter().all(|&a| a) {
            return self;
        }
        let list = self
            .edges
            .into_iter()
            .zip(alive)
            .filter(|(_, a)| *a)
            .map(|(e, _)| (e.word, e.weight))
            .collect();
        WindowGraph::from_edges(self.edge_len, self.center, list)
    }

    /// Edge mask of the core of the subgraph of edges accepted by `keep`.
    pub fn core_mask(&self, keep: impl Fn(&Edge) -> bool) -> Vec<bool> {
        let n = self.nodes.len();
        let mut alive: Vec<bool> = self.edges.iter().map(keep).collect();
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        let mut inc = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            if alive[i] {
                outdeg[e.from] += 1;
                indeg[e.to] += 1;
                inc[e.to].push(i);
            }
        }
        let mut dead: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0 || outdeg[v] == 0).collect();
        let mut is_dead = vec![false; n];
        for &v in &dead {
            is_dead[v] = true;
        }
        while let Some(v) = dead.pop() {
            for &e in self.out[v].iter().chain(inc[v].iter()) {
                if !alive[e] {
                    continue;
                }
                alive[e] = false;
                let (a, b) = (self.edges[e].from, self.edges[e].to);
                outdeg[a] -= 1;
                indeg[b] -= 1;
                for w in [a, b] {
                    if !is_dead[w] && (indeg[w] == 0 || outdeg[w] == 0) {
                        is_dead[w] = true;
                        dead.push(w);
                    }
                }
            }
        }
        alive
    }

    /// Node adjacency lists restricted to the edges in `mask`.
    pub fn masked_successors(&self, mask: &[bool]) -> Vec<Vec<usize>> {
        self.out
            .iter()
            .map(|es| {
                es.iter()
                    .filter(|&&e| mask[e])
                    .map(|&e| self.edges[e].to)
                    .collect()
            })
            .collect()
    }

    /// Build the core of the graph of windows whose lower bound is at most
    /// `cap`. Windows grow one symbol at a time around the center; at each
    /// stage partial enclosures discard hopeless words and only words lying
    /// on bi-infinite paths are extended.
    pub fn build(sft: &Sft, f: &dyn Potential, cap: f64, budget: usize) -> Result<WindowGraph> {
        let big_l = f.left_radius();
        let w = f.window_len();
        let e_len = w.max(2);
        let big_r = e_len - 1 - big_l;
        let (mut l, mut r) = if big_r >= 1 { (0, 1) } else { (1, 0) };
        let mut words = sft.words(2);
        loop {
            if words.len() > budget {
                return Err(Error::BudgetExceeded {
                    what: "window graph candidates",
                    limit: budget,
                });
            }
            let last = l == big_l && r == big_r;
            let weighted: Vec<(Vec<u32>, Interval)> = words
                .into_par_iter()
                .map(|word| {
                    let v = if last {
                        f.eval(&word[..w])?
                    } else {
                        f.enclose_partial(&word, l).unwrap_or_else(Interval::entire)
                    };
                    Ok((word, v))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|(_, v)| v.lo() <= cap)
                .collect();
            let g = WindowGraph::from_edges(l + r + 1, l, weighted).core();
            if last {
                return Ok(g);
            }
            let extend_left = l < big_l && (r >= big_r || l < r);
            let mut next = Vec::new();
            for e in &g.edges {
                for &e2 in &g.out[e.to] {
                    let mut word = e.word.clone();
                    word.push(*g.edges[e2].word.last().expect("nonempty edge"));
                    next.push(word);
                    if next.len() > budget {
                        return Err(Error::BudgetExceeded {
                            what: "window graph candidates",
                            limit: budget,
                        });
                    }
                }
            }
            words = next;
            if extend_left {
                l += 1;
            } else {
                r += 1;
            }
        }
    }
}
