//! Exchanges of two small-side tokens in `FS(X, K_{k,n-k})` for `k >= 3`.

use super::cycle::{navigate, odd_cycle_core};
use super::{check_order, gap, walk, Board, CertError};
use crate::fs::Bijection;
use crate::graph::{is_cycle_graph, shortest_odd_cycle, shortest_path_between_sets, vertex_connectivity, Graph};
use crate::sequence::SwapSequence;

struct Kk<'a> {
    board: Board<'a>,
    odd: Vec<usize>,
    on_odd: Vec<bool>,
    max_depth: usize,
}

impl Kk<'_> {
    fn x(&self) -> &Graph {
        self.board.x
    }

    fn small_at(&self, s: &Bijection, p: usize) -> bool {
        self.board.is_small(s.token_at(p))
    }

    fn along(&self, p: usize, q: usize) -> bool {
        let r = self.odd.len();
        match (
            self.odd.iter().position(|&c| c == p),
            self.odd.iter().position(|&c| c == q),
        ) {
            (Some(i), Some(j)) => (i + 1) % r == j || (j + 1) % r == i,
            _ => false,
        }
    }

    fn nav(&self, s: &Bijection, step: &str, goal: &dyn Fn(&Bijection) -> bool) -> Result<SwapSequence, CertError> {
        let k = self.board.k;
        navigate(self.x(), &|a, b| (a < k) != (b < k), &self.odd, s, goal)
            .map_err(|e| gap(step, format!("{e} (start {s})")))
    }

    /// A vertex off the cycle holding a big token, adjacent to a cycle vertex
    /// that satisfies `pick`. Returns `(outside, cycle_vertex)`.
    fn outside_big_next_to(&self, s: &Bijection, pick: &dyn Fn(usize) -> bool) -> Option<(usize, usize)> {
        self.odd.iter().copied().filter(|&c| pick(c)).find_map(|c| {
            self.x()
                .neighbors(c)
                .iter()
                .copied()
                .find(|&w| !self.on_odd[w] && !self.small_at(s, w))
                .map(|w| (w, c))
        })
    }

    fn exchange(&self, s: &Bijection, a: usize, b: usize, depth: usize) -> Result<SwapSequence, CertError> {
        if depth > self.max_depth {
            return Err(gap("small-side exchange", format!("recursion too deep from {s}")));
        }
        let x = self.x();
        let (pa, pb) = (s.position_of(a), s.position_of(b));
        let bigs_on_cycle = self.odd.iter().any(|&c| !self.small_at(s, c));
        match (self.on_odd[pa], self.on_odd[pb]) {
            (true, true) => {
                let l = self.odd.iter().filter(|&&c| self.small_at(s, c)).count();
                if l == 2 {
                    return odd_cycle_core(&self.board, &self.odd, s, a, b);
                }
                // Evict a third small token from the cycle.
                let evictable = |t: &Bijection| -> Option<(usize, usize)> {
                    let (qa, qb) = (t.position_of(a), t.position_of(b));
                    if !self.along(qa, qb) {
                        return None;
                    }
                    self.outside_big_next_to(t, &|c| c != qa && c != qb && self.small_at(t, c))
                };
                let mut pre = self.nav(s, "case 1 eviction", &|t| evictable(t).is_some())?;
                let t = self.board.play(s, &pre)?;
                let (c0, cstar) = evictable(&t).expect("goal holds");
                pre.push(cstar, c0);
                self.board.conjugated(s, pre, |t| self.exchange(t, a, b, depth + 1))
            }
            (true, false) | (false, true) => {
                let (s_on, p_off) = if self.on_odd[pa] { (a, pb) } else { (b, pa) };
                if bigs_on_cycle {
                    let ready = |t: &Bijection| -> Option<usize> {
                        let q = t.position_of(s_on);
                        self.odd
                            .iter()
                            .copied()
                            .find(|&w| !self.small_at(t, w) && x.has_edge(w, p_off) && self.along(q, w))
                    };
                    let mut pre = self.nav(s, "case 2.1", &|t| ready(t).is_some())?;
                    let t = self.board.play(s, &pre)?;
                    let w = ready(&t).expect("goal holds");
                    pre.push(p_off, w);
                    self.board.conjugated(s, pre, |t| self.exchange(t, a, b, depth + 1))
                } else {
                    let p_on = s.position_of(s_on);
                    let (c2, c3) = self
                        .outside_big_next_to(s, &|c| c != p_on)
                        .ok_or_else(|| gap("case 2.2", format!("no big token next to the full cycle at {s}")))?;
                    let pre = SwapSequence::from_moves(vec![(c2, c3)]);
                    self.board.conjugated(s, pre, |t| self.exchange(t, a, b, depth + 1))
                }
            }
            (false, false) => {
                if bigs_on_cycle {
                    let targets: Vec<usize> = self.odd.iter().copied().filter(|&c| !self.small_at(s, c)).collect();
                    let allowed = |p: usize| p == pa || p == pb || !self.small_at(s, p);
                    let path = shortest_path_between_sets(x, &[pa, pb], &targets, &allowed)
                        .ok_or_else(|| gap("case 3.1", format!("no token-free path to the cycle at {s}")))?;
                    let x0 = if path[0] == pa { pb } else { pa };
                    let p = path.len();
                    let mut pre = walk(&path);
                    pre.push(x0, path[0]);
                    pre.extend_from(&walk(&path[..p - 1]));
                    self.board.conjugated(s, pre, |t| self.exchange(t, a, b, depth + 1))
                } else {
                    let (c2, c3) = self
                        .outside_big_next_to(s, &|_| true)
                        .ok_or_else(|| gap("case 3.2", format!("no big token next to the full cycle at {s}")))?;
                    let pre = SwapSequence::from_moves(vec![(c2, c3)]);
                    self.board.conjugated(s, pre, |t| self.exchange(t, a, b, depth + 1))
                }
            }
        }
    }
}

/// Exchanges small-side tokens 0 and `u` (on adjacent positions) in
/// `FS(X, K_{k,n-k})`. `X` must be `(k-1)`-connected, non-bipartite and not a
/// cycle, with `n >= 2k >= 6`.
pub fn exchange_k_general(x: &Graph, k: usize, sigma: &Bijection, u: usize) -> Result<SwapSequence, CertError> {
    check_order(x, sigma)?;
    let n = x.order();
    if k < 3 || n < 2 * k {
        return Err(CertError::Precondition(format!("need n >= 2k >= 6, got n={n}, k={k}")));
    }
    if u == 0 || u >= k {
        return Err(CertError::Precondition(format!("token {u} is not a small-side token other than 0")));
    }
    if is_cycle_graph(x) {
        return Err(CertError::Precondition("X is a cycle".into()));
    }
    let kappa = vertex_connectivity(x);
    if kappa < k - 1 {
        return Err(CertError::Precondition(format!("X is only {kappa}-connected, need {}", k - 1)));
    }
    let odd = shortest_odd_cycle(x).ok_or_else(|| CertError::Precondition("X is bipartite".into()))?;
    if !x.has_edge(sigma.position_of(0), sigma.position_of(u)) {
        return Err(CertError::Precondition(format!("tokens 0 and {u} are not on adjacent positions")));
    }
    let mut on_odd = vec![false; n];
    for &c in &odd {
        on_odd[c] = true;
    }
    let ctx = Kk {
        board: Board { x, k },
        odd,
        on_odd,
        max_depth: 4 * k + 8,
    };
    ctx.exchange(sigma, 0, u, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::validate_sequence;
    use crate::fs::{factorial, PermRank};
    use crate::graph::{build_named, NamedGraphSpec as N};

    fn run_all(x: &Graph, k: usize, stride: u64) -> (usize, usize) {
        let n = x.order();
        let y = build_named(N::CompleteBipartite(k, n - k)).unwrap();
        let (mut ok, mut gaps) = (0, 0);
        for r in (0..factorial(n)).step_by(stride as usize) {
            let s = Bijection::unrank(PermRank(r), n).unwrap();
            for u in 1..k {
                if !x.has_edge(s.position_of(0), s.position_of(u)) {
                    continue;
                }
                match exchange_k_general(x, k, &s, u) {
                    Ok(seq) => {
                        let verdict = validate_sequence(x, &y, &s, &seq, &s.transpose_tokens(0, u));
                        assert!(verdict.is_accepted(), "{verdict:?} for {s}, u={u}");
                        ok += 1;
                    }
                    Err(CertError::ProofGap { .. }) => gaps += 1,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        (ok, gaps)
    }

    #[test]
    fn k33_plus_edge() {
        let mut x = build_named(N::CompleteBipartite(3, 3)).unwrap();
        x.add_edge(0, 1).unwrap();
        let (ok, gaps) = run_all(&x, 3, 1);
        assert!(ok > 0);
        assert_eq!(gaps, 0);
    }

    #[test]
    fn octahedron() {
        let x = Graph::from_edges(
            6,
            (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).filter(|&(a, b)| b != a + 3),
        )
        .unwrap();
        let (ok, gaps) = run_all(&x, 3, 1);
        assert!(ok > 0);
        assert_eq!(gaps, 0);
    }

    #[test]
    fn triangle_full_of_small_tokens_is_a_gap() {
        // The shortest odd cycle is a triangle holding all three small tokens,
        // so no swap along it is legal and the eviction step has no move.
        let x = crate::graph::parse_graph6("E?~w").unwrap();
        let s: Bijection = "1,5,4,0,3,2".parse().unwrap();
        assert!(matches!(exchange_k_general(&x, 3, &s, 2), Err(CertError::ProofGap { .. })));
        let y = build_named(N::CompleteBipartite(3, 3)).unwrap();
        let path = crate::fs::fs_path(&x, &y, &s, &s.transpose_tokens(0, 2), &Default::default()).unwrap();
        assert!(path.is_some());
    }

    #[test]
    fn rejects_low_connectivity() {
        let x = build_named(N::StarPlus(6)).unwrap();
        assert!(matches!(
            exchange_k_general(&x, 3, &Bijection::identity(6), 1),
            Err(CertError::Precondition(_))
        ));
    }
}
