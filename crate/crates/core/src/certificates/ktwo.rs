//! Exchanges in `FS(X, K_{2,n-2})`. Tokens 0 and 1 are the small side.

use super::cycle::{navigate, odd_cycle_core};
use super::{check_order, gap, transfer_certificate, walk, Board, CertError};
use crate::fs::Bijection;
use crate::graph::{
    find_nontrivial_k_bridge, is_connected, is_cycle_graph, shortest_cycle_through_edge,
    shortest_odd_cycle, shortest_path_between_sets, Graph,
};
use crate::sequence::SwapSequence;

const MAX_DEPTH: usize = 16;

struct K2<'a> {
    board: Board<'a>,
    odd: Vec<usize>,
    on_odd: Vec<bool>,
}

impl<'a> K2<'a> {
    fn new(x: &'a Graph) -> Result<Self, CertError> {
        if x.order() < 5 {
            return Err(CertError::Precondition(format!("need n >= 5, got {}", x.order())));
        }
        if !is_connected(x) {
            return Err(CertError::Precondition("X is disconnected".into()));
        }
        let odd = shortest_odd_cycle(x).ok_or_else(|| CertError::Precondition("X is bipartite".into()))?;
        let mut on_odd = vec![false; x.order()];
        for &c in &odd {
            on_odd[c] = true;
        }
        Ok(K2 {
            board: Board { x, k: 2 },
            odd,
            on_odd,
        })
    }

    fn x(&self) -> &Graph {
        self.board.x
    }

    /// Neighbors of `c` along the shortest odd cycle, smaller one first.
    fn odd_neighbors(&self, c: usize) -> [usize; 2] {
        let r = self.odd.len();
        let i = self.odd.iter().position(|&v| v == c).expect("vertex on cycle");
        let (a, b) = (self.odd[(i + 1) % r], self.odd[(i + r - 1) % r]);
        [a.min(b), a.max(b)]
    }

    fn small(&self, s: &Bijection, depth: usize) -> Result<SwapSequence, CertError> {
        if depth > MAX_DEPTH {
            return Err(gap("small-side exchange", format!("recursion too deep from {s}")));
        }
        let (p0, p1) = (s.position_of(0), s.position_of(1));
        match (self.on_odd[p0], self.on_odd[p1]) {
            (true, true) => odd_cycle_core(&self.board, &self.odd, s, 0, 1),
            (true, false) | (false, true) => {
                let (p_on, p_off) = if self.on_odd[p0] { (p0, p1) } else { (p1, p0) };
                let c = self.odd_neighbors(p_on)[0];
                let pre = SwapSequence::from_moves(vec![(p_on, c), (p_off, p_on)]);
                self.board
                    .conjugated(s, pre, |t| odd_cycle_core(&self.board, &self.odd, t, 0, 1))
            }
            (false, false) => {
                let path = shortest_path_between_sets(self.x(), &[p0, p1], &self.odd, &|_| true)
                    .ok_or_else(|| gap("small-side exchange", "no path to the odd cycle"))?;
                let x0 = if path[0] == p0 { p1 } else { p0 };
                let p = path.len();
                let mut pre = walk(&path);
                pre.push(x0, path[0]);
                pre.extend_from(&walk(&path[..p - 1]));
                self.board.conjugated(s, pre, |t| self.small(t, depth + 1))
            }
        }
    }

    /// Moves the small tokens, never touching `u` or `v`, until `X` restricted
    /// to the positions of `u`, `v`, 0, 1 is connected.
    fn gather(&self, s: &Bijection, u: usize, v: usize) -> Result<SwapSequence, CertError> {
        let x = self.x();
        let (pu, pv) = (s.position_of(u), s.position_of(v));
        let mut prep = SwapSequence::new();
        let mut cur = s.clone();
        let near_uv = |p: usize| x.has_edge(p, pu) || x.has_edge(p, pv);
        if !near_uv(cur.position_of(0)) && !near_uv(cur.position_of(1)) {
            let path = shortest_path_between_sets(
                x,
                &[cur.position_of(0), cur.position_of(1)],
                &[pu, pv],
                &|_| true,
            )
            .ok_or_else(|| gap("gather", "u, v unreachable from the small tokens"))?;
            let step = walk(&path[..path.len() - 1]);
            cur = self.board.play(&cur, &step)?;
            prep.extend_from(&step);
        }
        for token in [0, 1] {
            let (p, q) = (cur.position_of(token), cur.position_of(1 - token));
            if near_uv(p) || x.has_edge(p, q) {
                continue;
            }
            let path = shortest_path_between_sets(x, &[p], &[pu, pv, q], &|_| true)
                .ok_or_else(|| gap("gather", "small token cannot reach the group"))?;
            let step = walk(&path[..path.len() - 1]);
            cur = self.board.play(&cur, &step)?;
            prep.extend_from(&step);
        }
        Ok(prep)
    }

    fn big(&self, s: &Bijection, u: usize, v: usize, depth: usize) -> Result<SwapSequence, CertError> {
        if depth > MAX_DEPTH {
            return Err(gap("big-side exchange", format!("recursion too deep from {s}")));
        }
        let x = self.x();
        let (pu, pv) = (s.position_of(u), s.position_of(v));
        let (pa, pb) = (s.position_of(0), s.position_of(1));
        let near = |p: usize| (x.has_edge(p, pu), x.has_edge(p, pv));
        let (na, nb) = (near(pa), near(pb));

        if !(na.0 || na.1) || !(nb.0 || nb.1) {
            let (p_hub, n_hub, p_lone) = if na.0 || na.1 { (pa, na, pb) } else { (pb, nb, pa) };
            if !(n_hub.0 || n_hub.1) || !x.has_edge(p_hub, p_lone) {
                return Err(gap("big-side exchange", format!("tokens u, v, 0, 1 not gathered at {s}")));
            }
            let (near_pos, far_pos) = if n_hub.1 { (pv, pu) } else { (pu, pv) };
            let pre = SwapSequence::from_moves(vec![(p_hub, near_pos), (near_pos, far_pos)]);
            return self.board.conjugated(s, pre, |t| self.big(t, u, v, depth + 1));
        }

        // Case 1: a common neighbor among the positions of u and v.
        let common = if na.0 && nb.0 {
            Some((pu, pv))
        } else if na.1 && nb.1 {
            Some((pv, pu))
        } else {
            None
        };
        if let Some((w, w2)) = common {
            let dance = SwapSequence::from_moves(vec![(pa, w), (w, w2), (pb, w)]);
            return self
                .board
                .around(s, dance.clone(), dance, |t| self.small(t, 0));
        }

        // Case 2: token 0 is next to one of pu, pv and token 1 to the other.
        let (up, vp) = if na.0 { (pu, pv) } else { (pv, pu) };
        let cyc = shortest_cycle_through_edge(x, pu.min(pv), pu.max(pv))?
            .ok_or_else(|| gap("big-side exchange", format!("edge {pu}-{pv} is a cut edge")))?;
        if cyc.len() >= x.order() {
            return Err(gap(
                "big-side exchange",
                format!("shortest cycle through {pu}-{pv} is Hamiltonian"),
            ));
        }
        let on = |p: usize| cyc.contains(&p);
        let r = cyc.len();
        match (on(pa), on(pb)) {
            (true, false) | (false, true) => {
                let (p_on, w_on) = if on(pa) { (pa, up) } else { (pb, vp) };
                let w_other = if w_on == up { vp } else { up };
                let i = cyc.iter().position(|&c| c == w_on).unwrap();
                let step = if cyc[(i + 1) % r] == p_on {
                    1
                } else if cyc[(i + r - 1) % r] == p_on {
                    r - 1
                } else {
                    return Err(gap("subcase 2.1", "small token not next to its neighbor on the cycle"));
                };
                let c: Vec<usize> = (0..r).map(|j| cyc[(i + j * step) % r]).collect();
                if c[r - 1] != w_other {
                    return Err(gap("subcase 2.1", "cycle orientation does not close through u, v"));
                }
                let pre: SwapSequence = (1..r - 2).map(|j| (c[j], c[j + 1])).collect();
                self.board.conjugated(s, pre, |t| self.big(t, u, v, depth + 1))
            }
            (false, false) => {
                let i = cyc.iter().position(|&c| c == up).unwrap();
                let (a, b) = (cyc[(i + 1) % r], cyc[(i + r - 1) % r]);
                let w = if a == vp { b } else { a };
                let pre = six_moves(pa, pb, up, vp, w);
                self.board.conjugated(s, pre, |t| self.big(t, u, v, depth + 1))
            }
            (true, true) => {
                let outside = |p: usize| x.neighbors(p).iter().copied().find(|&c| !on(c));
                if let Some(c0) = outside(up) {
                    let pre = six_moves(pa, pb, up, vp, c0);
                    return self.board.conjugated(s, pre, |t| self.big(t, u, v, depth + 1));
                }
                if let Some(c0) = outside(vp) {
                    let pre = six_moves(pb, pa, vp, up, c0);
                    return self.board.conjugated(s, pre, |t| self.big(t, u, v, depth + 1));
                }
                let goal = |t: &Bijection| subcase_23_ready(x, &cyc, t, u, v).is_some();
                let mut pre = navigate(x, &|a, b| (a < 2) != (b < 2), &cyc, s, &goal)
                    .map_err(|e| gap("subcase 2.3", e.to_string()))?;
                let t = self.board.play(s, &pre)?;
                let (pa, pb, up, vp, c0) = subcase_23_ready(x, &cyc, &t, u, v).expect("goal holds");
                pre.extend_from(&six_moves(pa, pb, up, vp, c0));
                self.board.conjugated(s, pre, |t| self.big(t, u, v, depth + 1))
            }
        }
    }
}

/// `pb-V, U-V, U-w, pa-U, U-V, pb-V` with `pa ~ U`, `pb ~ V`, `w ~ U`.
fn six_moves(pa: usize, pb: usize, up: usize, vp: usize, w: usize) -> SwapSequence {
    SwapSequence::from_moves(vec![(pb, vp), (up, vp), (up, w), (pa, up), (up, vp), (pb, vp)])
}

/// `u`, `v` adjacent along `cyc`, one of them (`U`) with a neighbor `c0` off
/// the cycle, a small token next to `U` and the other next to `V` along the
/// cycle. Returns `(pa, pb, U, V, c0)` with `pa ~ U` and `pb ~ V`.
fn subcase_23_ready(
    x: &Graph,
    cyc: &[usize],
    t: &Bijection,
    u: usize,
    v: usize,
) -> Option<(usize, usize, usize, usize, usize)> {
    let r = cyc.len();
    let idx = |p: usize| cyc.iter().position(|&c| c == p);
    let along = |a: usize, b: usize| match (idx(a), idx(b)) {
        (Some(i), Some(j)) => (i + 1) % r == j || (j + 1) % r == i,
        _ => false,
    };
    let (pu, pv, p0, p1) = (t.position_of(u), t.position_of(v), t.position_of(0), t.position_of(1));
    if !along(pu, pv) {
        return None;
    }
    for (up, vp) in [(pu, pv), (pv, pu)] {
        let Some(c0) = x.neighbors(up).iter().copied().find(|&c| idx(c).is_none()) else {
            continue;
        };
        for (pa, pb) in [(p0, p1), (p1, p0)] {
            if along(pa, up) && along(pb, vp) {
                return Some((pa, pb, up, vp, c0));
            }
        }
    }
    None
}

fn check_adjacent(x: &Graph, s: &Bijection, u: usize, v: usize) -> Result<(), CertError> {
    let n = s.order();
    if u >= n || v >= n || u == v {
        return Err(CertError::Precondition(format!("tokens {u}, {v} are not two distinct tokens")));
    }
    if !x.has_edge(s.position_of(u), s.position_of(v)) {
        return Err(CertError::Precondition(format!(
            "tokens {u} and {v} are not on adjacent positions"
        )));
    }
    Ok(())
}

/// Exchanges the two small-side tokens 0 and 1, which must sit on adjacent
/// positions. `X` must be connected and non-bipartite with `n >= 5`.
pub fn exchange_small_side_k2(x: &Graph, sigma: &Bijection) -> Result<SwapSequence, CertError> {
    check_order(x, sigma)?;
    let ctx = K2::new(x)?;
    check_adjacent(x, sigma, 0, 1)?;
    ctx.small(sigma, 0)
}

/// Exchanges two big-side tokens `u`, `v` on adjacent positions. `X` must be
/// connected, non-bipartite, not a cycle, without a non-trivial cut edge,
/// with `n >= 5`.
pub fn exchange_big_side_k2(
    x: &Graph,
    sigma: &Bijection,
    u: usize,
    v: usize,
) -> Result<SwapSequence, CertError> {
    check_order(x, sigma)?;
    let ctx = K2::new(x)?;
    if is_cycle_graph(x) {
        return Err(CertError::Precondition("X is a cycle".into()));
    }
    if let Some(b) = find_nontrivial_k_bridge(x, 2)? {
        return Err(CertError::Precondition(format!(
            "X has a non-trivial cut edge {:?}",
            b.vertices
        )));
    }
    check_adjacent(x, sigma, u, v)?;
    if u < 2 || v < 2 {
        return Err(CertError::Precondition(format!("tokens {u}, {v} must both be big-side")));
    }
    let prep = ctx.gather(sigma, u, v)?;
    let gathered = ctx.board.play(sigma, &prep)?;
    let core = ctx.big(&gathered, u, v, 0)?;
    transfer_certificate(sigma, u, v, &prep, &core)
}

/// Exchanges any two tokens on adjacent positions in `FS(X, K_{2,n-2})`.
pub fn exchange_k2(x: &Graph, sigma: &Bijection, u: usize, v: usize) -> Result<SwapSequence, CertError> {
    check_order(x, sigma)?;
    check_adjacent(x, sigma, u, v)?;
    match ((u < 2), (v < 2)) {
        (true, true) => exchange_small_side_k2(x, sigma),
        (true, false) | (false, true) => Ok(SwapSequence::from_moves(vec![(
            sigma.position_of(u),
            sigma.position_of(v),
        )])),
        (false, false) => exchange_big_side_k2(x, sigma, u, v),
    }
}
