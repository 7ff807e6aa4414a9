use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::structure::bfs_distances;
use super::{Graph, GraphError};

pub fn is_connected(g: &Graph) -> bool {
    bfs_distances(g, &[0], &|_| true)
        .iter()
        .all(|&d| d != usize::MAX)
}

/// Maximum number of internally vertex-disjoint `s`-`t` paths, capped at `cap`.
///
/// Unit-capacity max-flow on the split graph (`v_in -> v_out` of capacity 1
/// for every vertex other than `s` and `t`). Adjacent `s`, `t` count the
/// direct edge as one path.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, cap: usize) -> usize {
    assert!(s != t);
    let n = g.order();
    let mut net = FlowNet::new(2 * n);
    let inf = n as i32;
    for v in 0..n {
        let c = if v == s || v == t { inf } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, c);
    }
    for (u, v) in g.edges() {
        net.add_arc(2 * u + 1, 2 * v, 1);
        net.add_arc(2 * v + 1, 2 * u, 1);
    }
    net.max_flow(2 * s + 1, 2 * t, cap)
}

/// Size of a minimum vertex cut; `order - 1` for complete graphs and `0` for
/// disconnected ones.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.order();
    if g.is_complete() {
        return n - 1;
    }
    if !is_connected(g) {
        return 0;
    }
    let mut best = g.degrees().into_iter().min().unwrap();
    // Some vertex among the first best+1 lies outside any minimum cut.
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                best = best.min(local_connectivity(g, i, j, best));
            }
        }
        i += 1;
    }
    best
}

struct FlowNet {
    head: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<i32>,
    next: Vec<usize>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            head: vec![usize::MAX; nodes],
            to: Vec::new(),
            cap: Vec::new(),
            next: Vec::new(),
        }
    }

    fn add_arc(&mut self, u: usize, v: usize, c: i32) {
        for (a, b, cc) in [(u, v, c), (v, u, 0)] {
            self.to.push(b);
            self.cap.push(cc);
            self.next.push(self.head[a]);
            self.head[a] = self.to.len() - 1;
        }
    }

    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit {
            let mut pred = vec![usize::MAX; self.head.len()];
            let mut seen = vec![false; self.head.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                let mut e = self.head[u];
                while e != usize::MAX {
                    let w = self.to[e];
                    if self.cap[e] > 0 && !seen[w] {
                        seen[w] = true;
                        pred[w] = e;
                        queue.push_back(w);
                    }
                    e = self.next[e];
                }
            }
            if !seen[t] {
                break;
            }
            let mut v = t;
            while v != s {
                let e = pred[v];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.to[e ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// All cut edges as `(u, v)` with `u < v`, sorted (iterative Tarjan low-link).
pub fn bridges(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut out = Vec::new();
    let mut timer = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // (vertex, parent, next neighbor index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
            if let Some(&w) = g.neighbors(u).get(*idx) {
                *idx += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, u, 0));
                } else {
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if low[u] > disc[parent] {
                        out.push((parent.min(u), parent.max(u)));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// A path `v1..vk` that is a (k-2)-fold subdivision of a non-trivial cut edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgePath {
    pub vertices: Vec<usize>,
    pub k: usize,
}

/// Finds a non-trivial `k`-bridge: a path on `k` vertices whose internal
/// vertices have degree 2, whose every edge is a cut edge, and whose end
/// vertices have degree at least 2. The first one in (v1, v2) order is returned.
pub fn find_nontrivial_k_bridge(g: &Graph, k: usize) -> Result<Option<BridgePath>, GraphError> {
    if k < 2 {
        return Err(GraphError::InvalidParameter(format!(
            "k-bridge needs k >= 2, got {k}"
        )));
    }
    if !is_connected(g) {
        return Err(GraphError::Disconnected);
    }
    let cut: HashSet<(usize, usize)> = bridges(g).into_iter().collect();
    let is_cut = |a: usize, b: usize| cut.contains(&(a.min(b), a.max(b)));
    for v1 in 0..g.order() {
        if g.degree(v1) < 2 {
            continue;
        }
        'start: for &v2 in g.neighbors(v1) {
            if !is_cut(v1, v2) {
                continue;
            }
            let mut path = vec![v1, v2];
            while path.len() < k {
                let last = path[path.len() - 1];
                let prev = path[path.len() - 2];
                if g.degree(last) != 2 {
                    continue 'start;
                }
                let next = g.neighbors(last).iter().copied().find(|&w| w != prev).unwrap();
                if !is_cut(last, next) {
                    continue 'start;
                }
                path.push(next);
            }
            if g.degree(*path.last().unwrap()) >= 2 {
                return Ok(Some(BridgePath { vertices: path, k }));
            }
        }
    }
    Ok(None)
}
