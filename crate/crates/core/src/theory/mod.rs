//! Connectivity predictions for `FS(K_{k,n-k}, Y)` and `FS(S_n, Y)` derived
//! from structural properties of `Y`, plus the cycle component count.

mod corpus;

pub use corpus::{
    scan_conjectures, verify_corpus, ConjectureFinding, ConjectureReport, CorpusComparison,
    WilsonObservation,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fs::{factorial, fs_is_connected, FsError, SearchConfig};
use crate::graph::{
    build_named, find_nontrivial_k_bridge, is_bipartite, is_connected, is_cycle_graph,
    is_isomorphic, vertex_connectivity, Graph, GraphError, NamedGraphSpec,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoryError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("corpus unavailable: {0}")]
    Corpus(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Fs(#[from] FsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Connected,
    Disconnected,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reason {
    NotConnected,
    NotTwoConnected,
    Bipartite,
    IsCycle,
    ThetaException,
    NonTrivialKBridge(usize),
    KMinus1ConnectedSufficient,
    /// Decided by exhaustive search (`n = 4`, `k = 2`).
    SmallCaseOracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub verdict: Verdict,
    pub reasons: Vec<Reason>,
}

impl Prediction {
    fn connected(reasons: Vec<Reason>) -> Self {
        Prediction {
            verdict: Verdict::Connected,
            reasons,
        }
    }

    fn disconnected(reasons: Vec<Reason>) -> Self {
        debug_assert!(!reasons.is_empty());
        Prediction {
            verdict: Verdict::Disconnected,
            reasons,
        }
    }

    fn unknown() -> Self {
        Prediction {
            verdict: Verdict::Unknown,
            reasons: Vec::new(),
        }
    }

    /// `Some(true)` for Connected, `Some(false)` for Disconnected.
    pub fn as_bool(&self) -> Option<bool> {
        match self.verdict {
            Verdict::Connected => Some(true),
            Verdict::Disconnected => Some(false),
            Verdict::Unknown => None,
        }
    }
}

/// The complete bipartite graph with parts `{0..k}` and `{k..n}`.
pub fn small_side_bipartite(n: usize, k: usize) -> Result<Graph, TheoryError> {
    if k == 0 || 2 * k > n {
        return Err(TheoryError::InvalidParameter(format!(
            "need 1 <= k <= n - k, got n={n}, k={k}"
        )));
    }
    Ok(build_named(NamedGraphSpec::CompleteBipartite(k, n - k))?)
}

fn is_theta(y: &Graph) -> Result<bool, TheoryError> {
    if y.order() != 7 {
        return Ok(false);
    }
    Ok(is_isomorphic(y, &build_named(NamedGraphSpec::Theta)?)?)
}

/// Connectivity of `FS(S_n, Y)`: connected iff `Y` is 2-connected,
/// non-bipartite, not a cycle and not the theta graph.
pub fn predict_star(y: &Graph) -> Result<Prediction, TheoryError> {
    let n = y.order();
    if n < 3 {
        return Err(TheoryError::InvalidParameter(format!("need n >= 3, got {n}")));
    }
    let mut reasons = Vec::new();
    if !is_connected(y) {
        reasons.push(Reason::NotConnected);
    }
    if vertex_connectivity(y) < 2 {
        reasons.push(Reason::NotTwoConnected);
    }
    if is_bipartite(y).is_bipartite() {
        reasons.push(Reason::Bipartite);
    }
    if is_cycle_graph(y) {
        reasons.push(Reason::IsCycle);
    }
    if is_theta(y)? {
        reasons.push(Reason::ThetaException);
    }
    Ok(if reasons.is_empty() {
        Prediction::connected(Vec::new())
    } else {
        Prediction::disconnected(reasons)
    })
}

/// Sufficient conditions for `FS(K_{k,n-k}, Y)` to be disconnected.
pub fn predict_k_disconnect(y: &Graph, k: usize) -> Result<Option<Prediction>, TheoryError> {
    let n = y.order();
    if k < 1 || n < 2 * k {
        return Err(TheoryError::InvalidParameter(format!("need n >= 2k, got n={n}, k={k}")));
    }
    let mut reasons = Vec::new();
    let connected = is_connected(y);
    if !connected {
        reasons.push(Reason::NotConnected);
    }
    if is_bipartite(y).is_bipartite() {
        reasons.push(Reason::Bipartite);
    }
    if connected && k >= 2 && find_nontrivial_k_bridge(y, k)?.is_some() {
        reasons.push(Reason::NonTrivialKBridge(k));
    }
    if is_cycle_graph(y) {
        reasons.push(Reason::IsCycle);
    }
    Ok((!reasons.is_empty()).then(|| Prediction::disconnected(reasons)))
}

/// Exact connectivity of `FS(K_{2,n-2}, Y)`. At `n = 4` the answer comes from
/// exhaustive search over the 24 bijections.
pub fn predict_k2(y: &Graph) -> Result<Prediction, TheoryError> {
    let n = y.order();
    if n < 4 {
        return Err(TheoryError::InvalidParameter(format!("need n >= 4, got {n}")));
    }
    let fires = predict_k_disconnect(y, 2)?;
    if n == 4 {
        let x = small_side_bipartite(4, 2)?;
        return Ok(if fs_is_connected(&x, y, &SearchConfig::default())? {
            Prediction::connected(vec![Reason::SmallCaseOracle])
        } else {
            let mut reasons = fires.map(|p| p.reasons).unwrap_or_default();
            reasons.push(Reason::SmallCaseOracle);
            Prediction::disconnected(reasons)
        });
    }
    Ok(fires.unwrap_or_else(|| Prediction::connected(Vec::new())))
}

/// `FS(K_{k,n-k}, Y)` for `k >= 3`: Connected when `Y` is `(k-1)`-connected,
/// non-bipartite and not a cycle; Disconnected when a sufficient condition
/// fires; Unknown otherwise.
pub fn predict_kk(y: &Graph, k: usize) -> Result<Prediction, TheoryError> {
    if k < 3 {
        return Err(TheoryError::InvalidParameter(format!("need k >= 3, got {k}")));
    }
    if let Some(p) = predict_k_disconnect(y, k)? {
        return Ok(p);
    }
    if vertex_connectivity(y) >= k - 1 {
        return Ok(Prediction::connected(vec![Reason::KMinus1ConnectedSufficient]));
    }
    Ok(Prediction::unknown())
}

/// Dispatches on `k`: `FS(S_n, Y)` for `k = 1`, exact for `k = 2`, and the
/// sufficient conditions for `k >= 3`.
pub fn predict(y: &Graph, k: usize) -> Result<Prediction, TheoryError> {
    match k {
        0 => Err(TheoryError::InvalidParameter("k must be at least 1".into())),
        1 => predict_star(y),
        2 => predict_k2(y),
        _ => {
            let n = y.order();
            if n < 2 * k {
                return Err(TheoryError::InvalidParameter(format!("need n >= 2k, got n={n}, k={k}")));
            }
            predict_kk(y, k)
        }
    }
}

fn check_cycle_params(n: usize, k: usize) -> Result<(), TheoryError> {
    if k < 1 || 2 * k > n {
        return Err(TheoryError::InvalidParameter(format!(
            "need 1 <= k <= n - k, got n={n}, k={k}"
        )));
    }
    if n > 21 {
        return Err(TheoryError::InvalidParameter(format!("n={n} overflows 64-bit factorials")));
    }
    Ok(())
}

/// The closed form `(k-1)! (n-k-1)!` for the number of components of
/// `FS(C_n, K_{k,n-k})`.
pub fn cycle_formula(n: usize, k: usize) -> Result<u64, TheoryError> {
    check_cycle_params(n, k)?;
    Ok(factorial(k - 1) * factorial(n - k - 1))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Number of components of `FS(C_n, K_{k,n-k})` as measured by exhaustive
/// search: `gcd(k, n-k) (k-1)! (n-k-1)!`. It agrees with [`cycle_formula`]
/// exactly when `gcd(k, n-k) = 1`.
pub fn cycle_component_count(n: usize, k: usize) -> Result<u64, TheoryError> {
    check_cycle_params(n, k)?;
    Ok(gcd(k, n - k) as u64 * cycle_formula(n, k)?)
}
