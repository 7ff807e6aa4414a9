use std::collections::HashMap;

use super::{check_order, Board, CertError};
use crate::fs::Bijection;
use crate::graph::{build_named, Graph, NamedGraphSpec};
use crate::sequence::SwapSequence;

/// Upper bound on bijections explored by [`cycle_navigate`].
const NAVIGATION_LIMIT: usize = 2_000_000;

pub(crate) fn check_cycle(x: &Graph, cycle: &[usize]) -> Result<(), CertError> {
    let n = x.order();
    let r = cycle.len();
    if r < 3 {
        return Err(CertError::Precondition(format!("cycle {cycle:?} has fewer than 3 vertices")));
    }
    let mut seen = vec![false; n];
    for &c in cycle {
        if c >= n || seen[c] {
            return Err(CertError::Precondition(format!("cycle {cycle:?} repeats or leaves the graph")));
        }
        seen[c] = true;
    }
    for i in 0..r {
        let (a, b) = (cycle[i], cycle[(i + 1) % r]);
        if !x.has_edge(a, b) {
            return Err(CertError::Precondition(format!("cycle {cycle:?} uses non-edge {a}-{b}")));
        }
    }
    Ok(())
}

/// Breadth-first search over bijections reachable from `sigma` by legal
/// swaps along the edges of `cycle` only, stopping at the first one
/// satisfying `goal`.
pub fn cycle_navigate(
    x: &Graph,
    y: &Graph,
    cycle: &[usize],
    sigma: &Bijection,
    goal: &dyn Fn(&Bijection) -> bool,
) -> Result<SwapSequence, CertError> {
    check_order(x, sigma)?;
    check_order(y, sigma)?;
    navigate(x, &|a, b| y.has_edge(a, b), cycle, sigma, goal)
}

pub(crate) fn navigate(
    x: &Graph,
    friendly: &dyn Fn(usize, usize) -> bool,
    cycle: &[usize],
    sigma: &Bijection,
    goal: &dyn Fn(&Bijection) -> bool,
) -> Result<SwapSequence, CertError> {
    check_cycle(x, cycle)?;
    if goal(sigma) {
        return Ok(SwapSequence::new());
    }
    let r = cycle.len();
    let edges: Vec<(usize, usize)> = (0..r).map(|i| (cycle[i], cycle[(i + 1) % r])).collect();
    let mut states = vec![sigma.clone()];
    let mut parent: Vec<(usize, (usize, usize))> = vec![(usize::MAX, (0, 0))];
    let mut index: HashMap<Bijection, usize> = HashMap::new();
    index.insert(sigma.clone(), 0);
    let mut head = 0;
    while head < states.len() {
        let cur = states[head].clone();
        for &(a, b) in &edges {
            if !friendly(cur.token_at(a), cur.token_at(b)) {
                continue;
            }
            let next = cur.swap_positions(a, b);
            if index.contains_key(&next) {
                continue;
            }
            let id = states.len();
            index.insert(next.clone(), id);
            parent.push((head, (a, b)));
            let done = goal(&next);
            states.push(next);
            if done {
                let mut moves = Vec::new();
                let mut at = id;
                while parent[at].0 != usize::MAX {
                    moves.push(parent[at].1);
                    at = parent[at].0;
                }
                moves.reverse();
                return Ok(SwapSequence::from_moves(moves));
            }
            if states.len() > NAVIGATION_LIMIT {
                return Err(CertError::Unreachable(format!(
                    "explored more than {NAVIGATION_LIMIT} arrangements on cycle {cycle:?}"
                )));
            }
        }
        head += 1;
    }
    Err(CertError::Unreachable(format!(
        "no arrangement on cycle {cycle:?} reachable from {sigma} satisfies the goal"
    )))
}

/// The exchange of two same-side tokens sitting on adjacent vertices of an
/// odd cycle of `X` whose other vertices all hold opposite-side tokens.
///
/// With the cycle oriented as `c1 = pos(s1), c2 = pos(s2), c3, .., ct`, one
/// block is the swaps along `c2c3, .., c(t-1)ct, c1c2, ctc1`; the certificate
/// is `t - 2` blocks.
pub fn odd_cycle_exchange_on(
    x: &Graph,
    k: usize,
    cycle: &[usize],
    sigma: &Bijection,
    s1: usize,
    s2: usize,
) -> Result<SwapSequence, CertError> {
    check_order(x, sigma)?;
    check_cycle(x, cycle)?;
    let board = Board { x, k };
    odd_cycle_core(&board, cycle, sigma, s1, s2)
}

pub(crate) fn odd_cycle_core(
    board: &Board<'_>,
    cycle: &[usize],
    sigma: &Bijection,
    s1: usize,
    s2: usize,
) -> Result<SwapSequence, CertError> {
    let t = cycle.len();
    if t.is_multiple_of(2) {
        return Err(CertError::Precondition(format!("cycle length {t} is even")));
    }
    let (p1, p2) = (sigma.position_of(s1), sigma.position_of(s2));
    let i1 = cycle.iter().position(|&c| c == p1);
    let i2 = cycle.iter().position(|&c| c == p2);
    let (i1, i2) = match (i1, i2) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(CertError::Precondition(format!(
                "tokens {s1},{s2} are not both on the cycle"
            )))
        }
    };
    let step = if (i1 + 1) % t == i2 {
        1
    } else if (i2 + 1) % t == i1 {
        t - 1
    } else {
        return Err(CertError::Precondition(format!(
            "tokens {s1},{s2} are not adjacent along the cycle"
        )));
    };
    let c: Vec<usize> = (0..t).map(|j| cycle[(i1 + j * step) % t]).collect();
    let side = board.is_small(s1);
    if board.is_small(s2) != side || c[2..].iter().any(|&p| board.is_small(sigma.token_at(p)) == side) {
        return Err(CertError::Precondition(
            "the exchanged tokens must share a side and every other cycle vertex must hold the opposite side".into(),
        ));
    }
    let mut block = SwapSequence::new();
    for j in 1..t - 1 {
        block.push(c[j], c[j + 1]);
    }
    block.push(c[0], c[1]);
    block.push(c[t - 1], c[0]);
    let mut out = SwapSequence::new();
    for _ in 0..t - 2 {
        out.extend_from(&block);
    }
    Ok(out)
}

/// Certificate on `C_t` (vertices `0..t` in cyclic order) versus
/// `K_{2,t-2}` exchanging the two small-side tokens 0 and 1.
pub fn odd_cycle_exchange(t: usize, sigma: &Bijection) -> Result<SwapSequence, CertError> {
    if t < 3 || t.is_multiple_of(2) {
        return Err(CertError::Precondition(format!("t must be odd and at least 3, got {t}")));
    }
    let x = build_named(NamedGraphSpec::Cycle(t))?;
    check_order(&x, sigma)?;
    let cycle: Vec<usize> = (0..t).collect();
    odd_cycle_core(&Board { x: &x, k: 2 }, &cycle, sigma, 0, 1)
}
