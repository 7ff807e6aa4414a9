//! Implicit `FS(X, Y)` over all `n!` bijections: neighbor generation,
//! exhaustive component census, connectivity, and shortest swap paths.

mod perm;
mod visited;

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use perm::{factorial, Bijection, PermRank, MAX_RANK_ORDER};

use crate::graph::Graph;
use crate::sequence::SwapSequence;
use perm::{rank_bytes, unrank_into};
use visited::AtomicBitSet;

/// Default cap on the order of enumerated instances.
pub const DEFAULT_MAX_N: usize = 10;
/// Hard ceiling; `12!` bits is about 60 MB of visited set.
pub const HARD_MAX_N: usize = 12;

const PARALLEL_FRONTIER: usize = 2048;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FsError {
    #[error("X has {x} vertices but Y has {y}")]
    OrderMismatch { x: usize, y: usize },
    #[error("instance of order {n} exceeds the enumeration cap {max_n}")]
    InstanceTooLarge { n: usize, max_n: usize },
    #[error("invalid bijection: {0}")]
    InvalidBijection(String),
    #[error("rank {rank} out of range for n = {n}")]
    RankOutOfRange { rank: u64, n: usize },
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
}

/// Enumeration limits and parallelism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest order accepted; at most [`HARD_MAX_N`].
    pub max_n: usize,
    /// Worker threads; `1` runs inline, `0` uses the rayon default.
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_n: DEFAULT_MAX_N,
            threads: 1,
        }
    }
}

impl SearchConfig {
    pub fn with_threads(threads: usize) -> Self {
        SearchConfig {
            threads,
            ..Self::default()
        }
    }

    fn check(&self, n: usize) -> Result<(), FsError> {
        if self.max_n > HARD_MAX_N {
            return Err(FsError::InvalidConfig(format!(
                "max_n {} exceeds the hard ceiling {HARD_MAX_N}",
                self.max_n
            )));
        }
        if n > self.max_n {
            return Err(FsError::InstanceTooLarge {
                n,
                max_n: self.max_n,
            });
        }
        Ok(())
    }

    /// Runs `f` inside a pool with the configured number of workers.
    pub fn run<R: Send>(&self, f: impl FnOnce() -> R + Send) -> Result<R, FsError> {
        if self.threads == 1 {
            return Ok(f());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| FsError::InvalidConfig(e.to_string()))?;
        Ok(pool.install(f))
    }
}

/// Component census of `FS(X, Y)`.
///
/// Components are listed in increasing order of their representative, which
/// is the minimum rank in the component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub n: usize,
    pub component_count: usize,
    pub sizes: Vec<u64>,
    pub representatives: Vec<PermRank>,
}

impl ComponentReport {
    pub fn is_connected(&self) -> bool {
        self.component_count == 1
    }

    /// Component sizes in non-decreasing order.
    pub fn sorted_sizes(&self) -> Vec<u64> {
        let mut s = self.sizes.clone();
        s.sort_unstable();
        s
    }
}

/// Precomputed `FS(X, Y)` instance: the edge list of `X` and the adjacency
/// masks of `Y`. Legality of a swap on `ab` depends only on the two tokens.
pub(crate) struct FsInstance {
    n: usize,
    x_edges: Vec<(u8, u8)>,
    y_adj: Vec<u32>,
}

impl FsInstance {
    pub(crate) fn new(x: &Graph, y: &Graph) -> Result<Self, FsError> {
        if x.order() != y.order() {
            return Err(FsError::OrderMismatch {
                x: x.order(),
                y: y.order(),
            });
        }
        let n = x.order();
        if n > MAX_RANK_ORDER {
            return Err(FsError::InstanceTooLarge {
                n,
                max_n: MAX_RANK_ORDER,
            });
        }
        let y_adj = (0..n)
            .map(|t| y.neighbors(t).iter().fold(0u32, |m, &s| m | 1 << s))
            .collect();
        Ok(FsInstance {
            n,
            x_edges: x.edges().map(|(a, b)| (a as u8, b as u8)).collect(),
            y_adj,
        })
    }

    #[inline]
    fn legal(&self, perm: &[u8], a: u8, b: u8) -> bool {
        self.y_adj[perm[a as usize] as usize] >> perm[b as usize] & 1 == 1
    }

    /// Calls `f(edge index, neighbor rank)` for every legal swap from `perm`.
    #[inline]
    fn for_each_neighbor(&self, perm: &mut [u8], mut f: impl FnMut(usize, u64)) {
        for (i, &(a, b)) in self.x_edges.iter().enumerate() {
            if self.legal(perm, a, b) {
                perm.swap(a as usize, b as usize);
                f(i, rank_bytes(perm));
                perm.swap(a as usize, b as usize);
            }
        }
    }

    fn expand(&self, ranks: &[u64], visited: &AtomicBitSet) -> Vec<u64> {
        let mut buf = vec![0u8; self.n];
        let mut out = Vec::new();
        for &r in ranks {
            unrank_into(r, &mut buf);
            self.for_each_neighbor(&mut buf, |_, nr| {
                if visited.insert(nr) {
                    out.push(nr);
                }
            });
        }
        out
    }

    /// Size of the component containing `seed`, marking it in `visited`.
    fn flood(&self, seed: u64, visited: &AtomicBitSet, parallel: bool) -> u64 {
        visited.insert(seed);
        let mut frontier = vec![seed];
        let mut size = 1u64;
        while !frontier.is_empty() {
            frontier = if parallel && frontier.len() >= PARALLEL_FRONTIER {
                frontier
                    .par_chunks(PARALLEL_FRONTIER / 4)
                    .map(|chunk| self.expand(chunk, visited))
                    .reduce(Vec::new, |mut a, mut b| {
                        a.append(&mut b);
                        a
                    })
            } else {
                self.expand(&frontier, visited)
            };
            size += frontier.len() as u64;
        }
        size
    }
}

/// Every bijection adjacent to `sigma` in `FS(x, y)`, in `X`-edge order.
pub fn fs_neighbors(x: &Graph, y: &Graph, sigma: &Bijection) -> Result<Vec<Bijection>, FsError> {
    let inst = FsInstance::new(x, y)?;
    if sigma.order() != inst.n {
        return Err(FsError::OrderMismatch {
            x: inst.n,
            y: sigma.order(),
        });
    }
    let perm = sigma.bytes();
    Ok(inst
        .x_edges
        .iter()
        .filter(|&&(a, b)| inst.legal(perm, a, b))
        .map(|&(a, b)| sigma.swap_positions(a as usize, b as usize))
        .collect())
}

/// Exact component census by BFS over ranks with a bit-packed visited set.
pub fn fs_components(x: &Graph, y: &Graph, cfg: &SearchConfig) -> Result<ComponentReport, FsError> {
    let inst = FsInstance::new(x, y)?;
    cfg.check(inst.n)?;
    let total = factorial(inst.n);
    let parallel = cfg.threads != 1;
    cfg.run(|| {
        let visited = AtomicBitSet::new(total);
        let mut sizes = Vec::new();
        let mut representatives = Vec::new();
        let mut cursor = 0;
        // Every rank below `cursor` is already visited, so the next unvisited
        // rank is the minimum of its component.
        while let Some(seed) = visited.next_unset(cursor) {
            sizes.push(inst.flood(seed, &visited, parallel));
            representatives.push(PermRank(seed));
            cursor = seed + 1;
        }
        ComponentReport {
            n: inst.n,
            component_count: sizes.len(),
            sizes,
            representatives,
        }
    })
}

pub fn fs_is_connected(x: &Graph, y: &Graph, cfg: &SearchConfig) -> Result<bool, FsError> {
    let inst = FsInstance::new(x, y)?;
    cfg.check(inst.n)?;
    let total = factorial(inst.n);
    let parallel = cfg.threads != 1;
    cfg.run(|| {
        let visited = AtomicBitSet::new(total);
        inst.flood(0, &visited, parallel) == total
    })
}

/// A shortest swap sequence from `sigma` to `tau`, or `None` when they lie in
/// different components.
pub fn fs_path(
    x: &Graph,
    y: &Graph,
    sigma: &Bijection,
    tau: &Bijection,
    cfg: &SearchConfig,
) -> Result<Option<SwapSequence>, FsError> {
    let inst = FsInstance::new(x, y)?;
    cfg.check(inst.n)?;
    for b in [sigma, tau] {
        if b.order() != inst.n {
            return Err(FsError::OrderMismatch {
                x: inst.n,
                y: b.order(),
            });
        }
    }
    let start = sigma.rank().0;
    let goal = tau.rank().0;
    let mut parents = Parents::new(inst.n);
    parents.set(start, start, u8::MAX);
    let mut queue = VecDeque::from([start]);
    let mut buf = vec![0u8; inst.n];
    let mut found = start == goal;
    while let Some(r) = queue.pop_front() {
        if found {
            break;
        }
        unrank_into(r, &mut buf);
        inst.for_each_neighbor(&mut buf, |edge, nr| {
            if !found && parents.get(nr).is_none() {
                parents.set(nr, r, edge as u8);
                if nr == goal {
                    found = true;
                }
                queue.push_back(nr);
            }
        });
    }
    if !found {
        return Ok(None);
    }
    let mut moves = Vec::new();
    let mut cur = goal;
    while cur != start {
        let (prev, edge) = parents.get(cur).unwrap();
        let (a, b) = inst.x_edges[edge as usize];
        moves.push((a as usize, b as usize));
        cur = prev;
    }
    moves.reverse();
    Ok(Some(SwapSequence::from_moves(moves)))
}

enum Parents {
    Dense(Vec<u32>, Vec<u8>),
    Sparse(HashMap<u64, (u64, u8)>),
}

impl Parents {
    fn new(n: usize) -> Self {
        if n <= DEFAULT_MAX_N {
            let total = factorial(n) as usize;
            Parents::Dense(vec![u32::MAX; total], vec![0; total])
        } else {
            Parents::Sparse(HashMap::new())
        }
    }

    fn get(&self, r: u64) -> Option<(u64, u8)> {
        match self {
            Parents::Dense(p, e) => {
                (p[r as usize] != u32::MAX).then(|| (p[r as usize] as u64, e[r as usize]))
            }
            Parents::Sparse(m) => m.get(&r).copied(),
        }
    }

    fn set(&mut self, r: u64, parent: u64, edge: u8) {
        match self {
            Parents::Dense(p, e) => {
                p[r as usize] = parent as u32;
                e[r as usize] = edge;
            }
            Parents::Sparse(m) => {
                m.insert(r, (parent, edge));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_named, NamedGraphSpec as N};

    fn named(s: N) -> Graph {
        build_named(s).unwrap()
    }

    #[test]
    fn k2_has_one_neighbor() {
        let k2 = named(N::Complete(2));
        let nb = fs_neighbors(&k2, &k2, &Bijection::identity(2)).unwrap();
        assert_eq!(nb, vec![Bijection::new(vec![1, 0]).unwrap()]);
    }

    #[test]
    fn star_center_with_isolated_token_is_stuck() {
        let s4 = named(N::Star(4));
        // Token 3 is isolated in y and sits on the center.
        let y = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        let sigma = Bijection::new(vec![3, 0, 1, 2]).unwrap();
        assert!(fs_neighbors(&s4, &y, &sigma).unwrap().is_empty());
    }

    #[test]
    fn c4_with_alternating_tokens_has_four_neighbors() {
        let c4 = named(N::Cycle(4));
        let k22 = named(N::CompleteBipartite(2, 2));
        // Small tokens 0, 1 on opposite positions 0 and 2.
        let sigma = Bijection::new(vec![0, 2, 1, 3]).unwrap();
        let nb = fs_neighbors(&c4, &k22, &sigma).unwrap();
        assert_eq!(nb.len(), 4);
        for t in &nb {
            let diff: Vec<usize> = (0..4).filter(|&i| t.token_at(i) != sigma.token_at(i)).collect();
            assert_eq!(diff.len(), 2);
            assert!(c4.has_edge(diff[0], diff[1]));
        }
    }

    #[test]
    fn order_mismatch_is_an_error() {
        assert!(matches!(
            fs_components(&named(N::Cycle(4)), &named(N::Cycle(5)), &SearchConfig::default()),
            Err(FsError::OrderMismatch { x: 4, y: 5 })
        ));
    }

    #[test]
    fn size_cap_enforced() {
        let cfg = SearchConfig {
            max_n: 5,
            threads: 1,
        };
        let k6 = named(N::Complete(6));
        assert_eq!(
            fs_components(&k6, &k6, &cfg),
            Err(FsError::InstanceTooLarge { n: 6, max_n: 5 })
        );
        let bad = SearchConfig {
            max_n: 13,
            threads: 1,
        };
        assert!(matches!(fs_is_connected(&k6, &k6, &bad), Err(FsError::InvalidConfig(_))));
    }

    #[test]
    fn c6_vs_k24_has_twelve_components() {
        let r = fs_components(&named(N::Cycle(6)), &named(N::CompleteBipartite(2, 4)), &SearchConfig::default())
            .unwrap();
        assert_eq!(r.component_count, 12);
        assert_eq!(r.sizes.iter().sum::<u64>(), 720);
        assert_eq!(r.representatives[0], PermRank(0));
    }

    #[test]
    fn path_with_complete_is_connected() {
        let cfg = SearchConfig::default();
        assert!(fs_is_connected(&named(N::Path(5)), &named(N::Complete(5)), &cfg).unwrap());
        assert!(!fs_is_connected(&named(N::CompleteBipartite(3, 3)), &named(N::Cycle(6)), &cfg).unwrap());
    }

    #[test]
    fn paths_are_shortest_and_legal() {
        let k2 = named(N::Complete(2));
        let id = Bijection::identity(2);
        let sw = id.swap_positions(0, 1);
        let cfg = SearchConfig::default();
        assert_eq!(fs_path(&k2, &k2, &id, &id, &cfg).unwrap(), Some(SwapSequence::new()));
        assert_eq!(
            fs_path(&k2, &k2, &id, &sw, &cfg).unwrap(),
            Some(SwapSequence::from_moves(vec![(0, 1)]))
        );
    }

    #[test]
    fn cyclic_ordering_invariant_blocks_paths() {
        let c6 = named(N::Cycle(6));
        let k24 = named(N::CompleteBipartite(2, 4));
        // Big tokens in cyclic order 2,3,4,5 versus 2,4,3,5.
        let sigma = Bijection::new(vec![0, 2, 3, 1, 4, 5]).unwrap();
        let tau = Bijection::new(vec![0, 2, 4, 1, 3, 5]).unwrap();
        assert_eq!(fs_path(&c6, &k24, &sigma, &tau, &SearchConfig::default()).unwrap(), None);
    }

    #[test]
    fn parallel_census_matches_sequential() {
        let x = named(N::Theta);
        let y = named(N::Star(7));
        let seq = fs_components(&x, &y, &SearchConfig::with_threads(1)).unwrap();
        let par = fs_components(&x, &y, &SearchConfig::with_threads(4)).unwrap();
        assert_eq!(seq, par);
    }
}
