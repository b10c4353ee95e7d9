//! Minimum bottleneck cycles by threshold search.

use super::graph::WindowGraph;
use crate::scc::component_labels;
use std::collections::{BTreeSet, HashSet, VecDeque};

/// A minimizing cycle: its bottleneck, edge ids in walk order and the
/// periodic word it spells (least rotation).
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Bottleneck {
    pub value: f64,
    pub edges: Vec<usize>,
    pub word: Vec<u32>,
}

fn distinct_sorted(weights: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = weights.to_vec();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Node adjacency restricted to edges of weight ≤ t, as edge ids.
fn sub_out(g: &WindowGraph, weights: &[f64], t: f64) -> Vec<Vec<usize>> {
    (0..g.node_count())
        .map(|v| {
            g.out_edges(v)
                .iter()
                .copied()
                .filter(|&e| weights[e] <= t)
                .collect()
        })
        .collect()
}

fn node_succ(g: &WindowGraph, out: &[Vec<usize>]) -> Vec<Vec<usize>> {
    out.iter()
        .map(|es| es.iter().map(|&e| g.edges()[e].to).collect())
        .collect()
}

/// Edges of `out` whose endpoints share a cyclic component.
fn internal(g: &WindowGraph, out: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let (label, cyclic) = component_labels(&node_succ(g, out));
    out.iter()
        .map(|es| {
            es.iter()
                .copied()
                .filter(|&e| {
                    let ed = &g.edges()[e];
                    label[ed.from] == label[ed.to] && cyclic[label[ed.from]]
                })
                .collect()
        })
        .collect()
}

fn has_cycle(g: &WindowGraph, weights: &[f64], t: f64) -> bool {
    internal(g, &sub_out(g, weights, t)).iter().any(|es| !es.is_empty())
}

/// Smallest candidate satisfying a monotone predicate.
fn first_true(cands: &[f64], pred: impl Fn(f64) -> bool) -> Option<f64> {
    if cands.is_empty() || !pred(*cands.last().unwrap()) {
        return None;
    }
    let (mut lo, mut hi) = (0usize, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if pred(cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(cands[lo])
}

fn bfs(n: usize, adj: &[Vec<usize>], start: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; n];
    dist[start] = 0;
    let mut q = VecDeque::from([start]);
    while let Some(v) = q.pop_front() {
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
        }
    }
    dist
}

/// Lexicographically least closed walk of length `len` from `s`, given that
/// `len` is the shortest cycle length of `out`.
fn least_walk(
    g: &WindowGraph,
    out: &[Vec<usize>],
    rev: &[Vec<usize>],
    s: usize,
    len: usize,
) -> Option<Vec<usize>> {
    let back = bfs(g.node_count(), rev, s);
    if out[s].iter().all(|&e| back[g.edges()[e].to].saturating_add(1) > len) {
        return None;
    }
    let mut walk = Vec::with_capacity(len);
    let mut v = s;
    for step in 0..len {
        let remaining = len - step - 1;
        let e = out[v]
            .iter()
            .copied()
            .find(|&e| back[g.edges()[e].to] <= remaining)?;
        walk.push(e);
        v = g.edges()[e].to;
    }
    (v == s).then_some(walk)
}

fn walk_word(g: &WindowGraph, walk: &[usize]) -> Vec<u32> {
    walk.iter().map(|&e| g.edges()[e].word[0]).collect()
}

/// Shortest, then lexicographically least, cycle among those of `out`
/// passing through one of `through`.
fn best_cycle(g: &WindowGraph, out: &[Vec<usize>], through: &[usize]) -> Option<(Vec<usize>, Vec<u32>)> {
    let n = g.node_count();
    let succ = node_succ(g, out);
    let mut rev = vec![Vec::new(); n];
    for (v, ws) in succ.iter().enumerate() {
        for &w in ws {
            rev[w].push(v);
        }
    }
    // shortest cycle through each candidate edge
    let mut best_len = usize::MAX;
    let mut starts: BTreeSet<usize> = BTreeSet::new();
    let tos: BTreeSet<usize> = through.iter().map(|&e| g.edges()[e].to).collect();
    for &t in &tos {
        let d = bfs(n, &succ, t);
        let dr_cache: Vec<usize> = through
            .iter()
            .copied()
            .filter(|&e| g.edges()[e].to == t)
            .collect();
        for e in dr_cache {
            let from = g.edges()[e].from;
            if d[from] == usize::MAX {
                continue;
            }
            let len = d[from] + 1;
            if len > best_len {
                continue;
            }
            // nodes on some shortest cycle through e
            let back = bfs(n, &rev, from);
            let on: Vec<usize> = (0..n)
                .filter(|&x| d[x] != usize::MAX && back[x] != usize::MAX && d[x] + back[x] == len - 1)
                .collect();
            if len < best_len {
                best_len = len;
                starts.clear();
            }
            starts.extend(on);
        }
    }
    if best_len == usize::MAX {
        return None;
    }
    starts
        .into_iter()
        .filter_map(|s| least_walk(g, out, &rev, s, best_len))
        .map(|walk| {
            let word = walk_word(g, &walk);
            (walk, word)
        })
        .min_by(|a, b| a.1.cmp(&b.1))
}

/// Shortest cycle through each of `through` (edge followed by a BFS path
/// back), choosing the shortest and then the least canonical word.
fn shortest_through(
    g: &WindowGraph,
    out: &[Vec<usize>],
    through: &[usize],
) -> Option<(Vec<usize>, Vec<u32>)> {
    let n = g.node_count();
    let mut best: Option<(usize, Vec<u32>, Vec<usize>)> = None;
    for &e in through {
        let (start, goal) = (g.edges()[e].to, g.edges()[e].from);
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut q = VecDeque::from([start]);
        while let Some(v) = q.pop_front() {
            if v == goal {
                break;
            }
            for &x in &out[v] {
                let w = g.edges()[x].to;
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = x;
                    q.push_back(w);
                }
            }
        }
        if !seen[goal] {
            continue;
        }
        let mut path = Vec::new();
        let mut v = goal;
        while v != start {
            let x = parent[v];
            path.push(x);
            v = g.edges()[x].from;
        }
        path.reverse();
        let mut walk = vec![e];
        walk.extend(path);
        let word = walk_word(g, &walk);
        let r = crate::symbolic::least_rotation(&word);
        let canon: Vec<u32> = word[r..].iter().chain(&word[..r]).copied().collect();
        let better = best
            .as_ref()
            .map_or(true, |(l, w, _)| (walk.len(), &canon) < (*l, w));
        if better {
            best = Some((walk.len(), canon, walk));
        }
    }
    best.map(|(_, w, walk)| (walk, w))
}

/// Minimum over cycles of the maximum edge weight, with the shortest and
/// then lexicographically least minimizing cycle.
pub(crate) fn min_bottleneck(g: &WindowGraph, weights: &[f64]) -> Option<Bottleneck> {
    let cands = distinct_sorted(weights);
    let t = first_true(&cands, |t| has_cycle(g, weights, t))?;
    let out = internal(g, &sub_out(g, weights, t));
    // every cycle below the threshold uses an edge at the threshold
    let critical: Vec<usize> = out
        .iter()
        .flatten()
        .copied()
        .filter(|&e| weights[e] == t)
        .collect();
    let (edges, word) = best_cycle(g, &out, &critical)?;
    Some(Bottleneck {
        value: t,
        edges,
        word,
    })
}

/// Least `t ≥ from` such that the edges of weight ≤ t carry a cycle other
/// than the one made of `cycle` edges, with such a cycle.
pub(crate) fn second_bottleneck(
    g: &WindowGraph,
    weights: &[f64],
    cycle: &HashSet<usize>,
    from: f64,
) -> Option<Bottleneck> {
    let cands: Vec<f64> = distinct_sorted(weights)
        .into_iter()
        .filter(|&w| w >= from)
        .collect();
    let other = |t: f64| -> Vec<usize> {
        internal(g, &sub_out(g, weights, t))
            .iter()
            .flatten()
            .copied()
            .filter(|e| !cycle.contains(e))
            .collect()
    };
    let t = first_true(&cands, |t| !other(t).is_empty())?;
    let out = internal(g, &sub_out(g, weights, t));
    let mut through = other(t);
    through.sort_by(|&a, &b| {
        weights[b]
            .total_cmp(&weights[a])
            .then_with(|| g.edges()[a].word.cmp(&g.edges()[b].word))
    });
    through.truncate(64);
    let (edges, word) = shortest_through(g, &out, &through)?;
    Some(Bottleneck {
        value: t,
        edges,
        word,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;

    fn graph(list: &[(&[u32], f64)]) -> WindowGraph {
        WindowGraph::from_edges(
            2,
            0,
            list.iter()
                .map(|(w, v)| (w.to_vec(), Interval::point(*v)))
                .collect(),
        )
    }

    #[test]
    fn picks_least_bottleneck_cycle() {
        // cycles: 1→1 (5), 2→2 (3), 1→2→1 (max 4)
        let g = graph(&[(&[1, 1], 5.0), (&[2, 2], 3.0), (&[1, 2], 1.0), (&[2, 1], 4.0)]);
        let w: Vec<f64> = g.edges().iter().map(|e| e.weight.lo()).collect();
        let b = min_bottleneck(&g, &w).unwrap();
        assert_eq!((b.value, b.word.clone()), (3.0, vec![2]));
        let set: HashSet<usize> = b.edges.iter().copied().collect();
        let s = second_bottleneck(&g, &w, &set, b.value).unwrap();
        assert_eq!((s.value, s.word), (4.0, vec![1, 2]));
    }

    #[test]
    fn ties_prefer_short_then_lexicographic() {
        let g = graph(&[(&[1, 1], 1.0), (&[2, 2], 1.0), (&[1, 2], 1.0), (&[2, 1], 1.0)]);
        let w: Vec<f64> = g.edges().iter().map(|e| e.weight.lo()).collect();
        let b = min_bottleneck(&g, &w).unwrap();
        assert_eq!(b.word, vec![1]);
        let set: HashSet<usize> = b.edges.iter().copied().collect();
        let s = second_bottleneck(&g, &w, &set, b.value).unwrap();
        assert_eq!(s.value, 1.0);
    }

    #[test]
    fn dangling_edges_make_no_phantom_second() {
        let g = graph(&[(&[1, 1], 1.0), (&[1, 2], 0.5), (&[2, 3], 9.0)]).core();
        let w: Vec<f64> = g.edges().iter().map(|e| e.weight.lo()).collect();
        let b = min_bottleneck(&g, &w).unwrap();
        let set: HashSet<usize> = b.edges.iter().copied().collect();
        assert!(second_bottleneck(&g, &w, &set, b.value).is_none());
    }
}
