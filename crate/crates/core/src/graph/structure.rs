use std::collections::VecDeque;

use super::{is_connected, Graph, GraphError};

/// Outcome of a two-coloring attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartiteness {
    /// `side[v]` is `false` for one part and `true` for the other.
    Bipartite { side: Vec<bool> },
    /// A closed walk of odd length, listed without repeating the start vertex.
    OddClosedWalk(Vec<usize>),
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::Bipartite { .. })
    }

    /// Part sizes `(false side, true side)` when bipartite.
    pub fn part_sizes(&self) -> Option<(usize, usize)> {
        match self {
            Bipartiteness::Bipartite { side } => {
                let t = side.iter().filter(|&&s| s).count();
                Some((side.len() - t, t))
            }
            Bipartiteness::OddClosedWalk(_) => None,
        }
    }
}

pub fn is_bipartite(g: &Graph) -> Bipartiteness {
    let n = g.order();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for &w in g.neighbors(u) {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        parent[w] = u;
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => {
                        // root ->..-> u, u-w, w ->..-> root has odd length.
                        let mut walk = path_to_root(&parent, u);
                        walk.reverse();
                        walk.extend(path_to_root(&parent, w));
                        walk.pop();
                        return Bipartiteness::OddClosedWalk(walk);
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Bipartiteness::Bipartite {
        side: color.into_iter().map(|c| c.unwrap()).collect(),
    }
}

fn path_to_root(parent: &[usize], mut v: usize) -> Vec<usize> {
    let mut out = vec![v];
    while parent[v] != usize::MAX {
        v = parent[v];
        out.push(v);
    }
    out
}

/// BFS distances from a set of sources, restricted to `allowed` vertices.
pub(crate) fn bfs_distances(g: &Graph, sources: &[usize], allowed: &dyn Fn(usize) -> bool) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.order()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if allowed(s) && dist[s] == usize::MAX {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX && allowed(w) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Lexicographically smallest among the shortest paths `x1..xp` with
/// `x1 ∈ from`, `xp ∈ to`, every vertex satisfying `allowed`.
pub fn shortest_path_between_sets(
    g: &Graph,
    from: &[usize],
    to: &[usize],
    allowed: &dyn Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let dist = bfs_distances(g, to, allowed);
    let start = from
        .iter()
        .copied()
        .filter(|&v| allowed(v) && dist[v] != usize::MAX)
        .min_by_key(|&v| (dist[v], v))?;
    let mut path = vec![start];
    let mut cur = start;
    while dist[cur] > 0 {
        cur = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| dist[w] == dist[cur] - 1)
            .expect("BFS layers are consistent");
        path.push(cur);
    }
    Some(path)
}

/// A minimum-length odd cycle, as a vertex sequence starting at its smallest
/// vertex. Ties are broken by the lexicographically smallest sequence.
pub fn shortest_odd_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    // Odd girth: the minimum over roots of 2d+1 for an edge inside BFS layer d.
    let mut best = usize::MAX;
    for s in 0..n {
        let dist = bfs_distances(g, &[s], &|_| true);
        for (u, v) in g.edges() {
            if dist[u] != usize::MAX && dist[u] == dist[v] {
                best = best.min(2 * dist[u] + 1);
            }
        }
    }
    if best == usize::MAX {
        return None;
    }
    for s in 0..n {
        let allowed = |v: usize| v >= s;
        let dist = bfs_distances(g, &[s], &allowed);
        let mut path = vec![s];
        let mut on_path = vec![false; n];
        on_path[s] = true;
        if cycle_dfs(g, best, &dist, &allowed, &mut path, &mut on_path) {
            return Some(path);
        }
    }
    unreachable!("odd girth {best} was witnessed by some root")
}

fn cycle_dfs(
    g: &Graph,
    len: usize,
    dist: &[usize],
    allowed: &dyn Fn(usize) -> bool,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
) -> bool {
    let u = *path.last().unwrap();
    if path.len() == len {
        return g.has_edge(u, path[0]);
    }
    for &w in g.neighbors(u) {
        if on_path[w] || !allowed(w) || dist[w] == usize::MAX {
            continue;
        }
        // After stepping to w we still need len - path.len() edges to close.
        if dist[w] > len - path.len() {
            continue;
        }
        path.push(w);
        on_path[w] = true;
        if cycle_dfs(g, len, dist, allowed, path, on_path) {
            return true;
        }
        on_path[w] = false;
        path.pop();
    }
    false
}

/// Shortest cycle containing edge `{u, v}`, listed as `u, .., v` (the closing
/// edge is `v-u`). `Ok(None)` when the edge is a cut edge.
pub fn shortest_cycle_through_edge(
    g: &Graph,
    u: usize,
    v: usize,
) -> Result<Option<Vec<usize>>, GraphError> {
    if !g.has_edge(u, v) {
        return Err(GraphError::MissingEdge(u, v));
    }
    let mut h = g.clone();
    h.remove_edge(u, v)?;
    Ok(shortest_path_between_sets(&h, &[u], &[v], &|_| true))
}

/// True iff `g` is connected and 2-regular.
pub fn is_cycle_graph(g: &Graph) -> bool {
    g.order() >= 3 && g.degrees().iter().all(|&d| d == 2) && is_connected(g)
}
