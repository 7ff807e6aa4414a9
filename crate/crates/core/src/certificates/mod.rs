//! Constructive exchange certificates for `FS(X, K_{k,n-k})`.
//!
//! Tokens `0..k` form the small side of `K_{k,n-k}` and `k..n` the big side,
//! so a swap along an `X`-edge is legal exactly when it moves one small and
//! one big token. Every generator here returns an explicit [`SwapSequence`]
//! that turns `σ` into `(u v) ∘ σ`; none of them falls back to searching
//! `FS(X, Y)` globally. When a structure the construction relies on is
//! missing, the generator fails with [`CertError::ProofGap`] and reports the
//! instance.

mod cycle;
mod kgeneral;
mod ktwo;

pub use cycle::{cycle_navigate, odd_cycle_exchange, odd_cycle_exchange_on};
pub use kgeneral::exchange_k_general;
pub use ktwo::{exchange_big_side_k2, exchange_k2, exchange_small_side_k2};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fs::{Bijection, FsError};
use crate::graph::{Graph, GraphError};
use crate::sequence::SwapSequence;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("construction gap at {step}: {detail}")]
    ProofGap { step: String, detail: String },
    #[error("goal unreachable: {0}")]
    Unreachable(String),
    #[error("preparation move {index} touches exchanged token {token}")]
    TouchesExchangedToken { index: usize, token: usize },
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Fs(#[from] FsError),
}

pub(crate) fn gap(step: &str, detail: impl Into<String>) -> CertError {
    CertError::ProofGap {
        step: step.to_string(),
        detail: detail.into(),
    }
}

/// Why a move was rejected by [`validate_sequence`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum IllegalMove {
    VertexOutOfRange { a: usize, b: usize },
    NotAnEdgeOfX { a: usize, b: usize },
    TokensNotAdjacentInY { a: usize, b: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Accepted,
    Rejected { index: usize, reason: IllegalMove },
    WrongEndpoint { reached: Bijection },
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }
}

/// Replays `seq` from `sigma`, checking every move when it is applied, and
/// compares the final bijection with `expected`.
pub fn validate_sequence(
    x: &Graph,
    y: &Graph,
    sigma: &Bijection,
    seq: &SwapSequence,
    expected: &Bijection,
) -> Verdict {
    let n = sigma.order();
    let mut cur = sigma.clone();
    for (index, &(a, b)) in seq.moves.iter().enumerate() {
        if a >= n || b >= n || x.order() != n || y.order() != n {
            return Verdict::Rejected {
                index,
                reason: IllegalMove::VertexOutOfRange { a, b },
            };
        }
        if !x.has_edge(a, b) {
            return Verdict::Rejected {
                index,
                reason: IllegalMove::NotAnEdgeOfX { a, b },
            };
        }
        if !y.has_edge(cur.token_at(a), cur.token_at(b)) {
            return Verdict::Rejected {
                index,
                reason: IllegalMove::TokensNotAdjacentInY { a, b },
            };
        }
        cur = cur.swap_positions(a, b);
    }
    if &cur == expected {
        Verdict::Accepted
    } else {
        Verdict::WrongEndpoint { reached: cur }
    }
}

/// Conjugates a certificate found after a preparation sequence:
/// `prep · cert_at_end · prep⁻¹`.
///
/// `prep` must never move token `u` or `v` (checked by replaying it from
/// `sigma`). If `cert_at_end` exchanges `u` and `v` from `prep(σ)`, the result
/// exchanges them from `σ`.
pub fn transfer_certificate(
    sigma: &Bijection,
    u: usize,
    v: usize,
    prep: &SwapSequence,
    cert_at_end: &SwapSequence,
) -> Result<SwapSequence, CertError> {
    let mut cur = sigma.clone();
    for (index, &(a, b)) in prep.moves.iter().enumerate() {
        for t in [cur.token_at(a), cur.token_at(b)] {
            if t == u || t == v {
                return Err(CertError::TouchesExchangedToken { index, token: t });
            }
        }
        cur = cur.swap_positions(a, b);
    }
    Ok(prep.conjugate(cert_at_end))
}

/// Certificate exchanging tokens `u` and `v` (on adjacent positions) in
/// `FS(X, K_{k,n-k})`, choosing the generator by the sides of `u` and `v`.
///
/// Two small tokens other than 0 are handled by renaming tokens within the
/// small side, which leaves every swap's legality unchanged.
pub fn certify(x: &Graph, k: usize, sigma: &Bijection, u: usize, v: usize) -> Result<SwapSequence, CertError> {
    check_order(x, sigma)?;
    let n = sigma.order();
    if k == 0 || 2 * k > n {
        return Err(CertError::Precondition(format!("need 1 <= k <= n - k, got n={n}, k={k}")));
    }
    if u >= n || v >= n || u == v {
        return Err(CertError::Precondition(format!("tokens {u}, {v} are not two distinct tokens")));
    }
    let (pu, pv) = (sigma.position_of(u), sigma.position_of(v));
    if !x.has_edge(pu, pv) {
        return Err(CertError::Precondition(format!("tokens {u} and {v} are not on adjacent positions")));
    }
    let (small_u, small_v) = (u < k, v < k);
    if small_u != small_v {
        return Ok(SwapSequence::from_moves(vec![(pu, pv)]));
    }
    match k {
        2 => exchange_k2(x, sigma, u, v),
        k if k >= 3 && small_u => {
            let (a, b) = (u.min(v), u.max(v));
            if a == 0 {
                return exchange_k_general(x, k, sigma, b);
            }
            let renamed = Bijection::new(
                sigma
                    .images()
                    .into_iter()
                    .map(|t| if t == 0 { a } else if t == a { 0 } else { t })
                    .collect(),
            )?;
            exchange_k_general(x, k, &renamed, b)
        }
        _ => Err(CertError::Precondition(format!(
            "no constructive generator exchanges tokens {u}, {v} for k = {k}"
        ))),
    }
}

/// Positions and legality rules for `FS(X, K_{k,n-k})`.
pub(crate) struct Board<'a> {
    pub x: &'a Graph,
    pub k: usize,
}

impl Board<'_> {
    pub fn is_small(&self, token: usize) -> bool {
        token < self.k
    }

    pub fn legal(&self, s: &Bijection, a: usize, b: usize) -> bool {
        self.x.has_edge(a, b) && self.is_small(s.token_at(a)) != self.is_small(s.token_at(b))
    }

    /// Applies `moves`, failing on the first illegal one.
    pub fn play(&self, s: &Bijection, moves: &SwapSequence) -> Result<Bijection, CertError> {
        let mut cur = s.clone();
        for (i, &(a, b)) in moves.moves.iter().enumerate() {
            if !self.legal(&cur, a, b) {
                return Err(CertError::Internal(format!(
                    "generated move {i} ({a},{b}) is illegal from {cur:?}"
                )));
            }
            cur = cur.swap_positions(a, b);
        }
        Ok(cur)
    }

    /// `prefix · inner(prefix(σ)) · suffix`, checking each stage.
    pub fn around(
        &self,
        s: &Bijection,
        prefix: SwapSequence,
        suffix: SwapSequence,
        inner: impl FnOnce(&Bijection) -> Result<SwapSequence, CertError>,
    ) -> Result<SwapSequence, CertError> {
        let mid = self.play(s, &prefix)?;
        let core = inner(&mid)?;
        let mut out = prefix;
        out.extend_from(&core);
        out.extend_from(&suffix);
        Ok(out)
    }

    /// Shorthand for `around` with the reversed prefix as suffix.
    pub fn conjugated(
        &self,
        s: &Bijection,
        prefix: SwapSequence,
        inner: impl FnOnce(&Bijection) -> Result<SwapSequence, CertError>,
    ) -> Result<SwapSequence, CertError> {
        let suffix = prefix.reversed();
        self.around(s, prefix, suffix, inner)
    }
}

/// Moves along a path `x1..xp`: the token on `x1` walks to `xp`.
pub(crate) fn walk(path: &[usize]) -> SwapSequence {
    path.windows(2).map(|w| (w[0], w[1])).collect()
}

pub(crate) fn check_order(x: &Graph, sigma: &Bijection) -> Result<(), CertError> {
    if x.order() != sigma.order() {
        return Err(FsError::OrderMismatch {
            x: x.order(),
            y: sigma.order(),
        }
        .into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_named, NamedGraphSpec as N};

    #[test]
    fn empty_sequence_accepts_start() {
        let x = build_named(N::Cycle(4)).unwrap();
        let s = Bijection::identity(4);
        assert!(validate_sequence(&x, &x, &s, &SwapSequence::new(), &s).is_accepted());
    }

    #[test]
    fn non_edge_rejected_at_index_zero() {
        let x = build_named(N::Cycle(4)).unwrap();
        let s = Bijection::identity(4);
        let seq = SwapSequence::from_moves(vec![(0, 2)]);
        assert_eq!(
            validate_sequence(&x, &x, &s, &seq, &s.swap_positions(0, 2)),
            Verdict::Rejected {
                index: 0,
                reason: IllegalMove::NotAnEdgeOfX { a: 0, b: 2 }
            }
        );
    }

    #[test]
    fn wrong_endpoint_reported() {
        let x = build_named(N::Complete(3)).unwrap();
        let s = Bijection::identity(3);
        let seq = SwapSequence::from_moves(vec![(0, 1)]);
        assert!(matches!(
            validate_sequence(&x, &x, &s, &seq, &s),
            Verdict::WrongEndpoint { .. }
        ));
    }

    #[test]
    fn certify_renames_small_tokens() {
        let x = Graph::from_edges(
            6,
            (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).filter(|&(a, b)| b != a + 3),
        )
        .unwrap();
        let y = build_named(N::CompleteBipartite(3, 3)).unwrap();
        let s: Bijection = "3,1,2,0,4,5".parse().unwrap();
        let seq = certify(&x, 3, &s, 1, 2).unwrap();
        assert!(validate_sequence(&x, &y, &s, &seq, &s.transpose_tokens(1, 2)).is_accepted());
        assert_eq!(certify(&x, 3, &s, 1, 3).unwrap().len(), 1);
        assert!(certify(&x, 3, &s, 4, 5).is_err());
    }

    #[test]
    fn transfer_with_empty_prep_is_identity() {
        let cert = SwapSequence::from_moves(vec![(0, 1), (1, 2)]);
        let s = Bijection::identity(4);
        assert_eq!(
            transfer_certificate(&s, 0, 1, &SwapSequence::new(), &cert).unwrap(),
            cert
        );
    }

    #[test]
    fn transfer_adds_two_moves_per_prep_move() {
        let cert = SwapSequence::from_moves(vec![(0, 1)]);
        let s = Bijection::identity(4);
        let prep = SwapSequence::from_moves(vec![(2, 3)]);
        let out = transfer_certificate(&s, 0, 1, &prep, &cert).unwrap();
        assert_eq!(out.moves, vec![(2, 3), (0, 1), (2, 3)]);
        assert_eq!(
            transfer_certificate(&s, 0, 2, &prep, &cert),
            Err(CertError::TouchesExchangedToken { index: 0, token: 2 })
        );
    }
}
