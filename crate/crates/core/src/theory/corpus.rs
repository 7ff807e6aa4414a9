use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{predict, predict_k_disconnect, small_side_bipartite, Prediction, TheoryError, Verdict};
use crate::fs::{fs_components, SearchConfig};
use crate::graph::{
    build_named, connected_graphs, find_nontrivial_k_bridge, is_bipartite, is_cycle_graph,
    to_graph6, vertex_connectivity, Graph, NamedGraphSpec,
};

/// Largest order accepted by [`verify_corpus`].
const MAX_VERIFY_ORDER: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusComparison {
    pub id: usize,
    pub graph6: String,
    pub predicted: Prediction,
    pub oracle_connected: bool,
    pub oracle_components: usize,
    pub mismatch: bool,
}

fn single_threaded(cfg: &SearchConfig) -> SearchConfig {
    SearchConfig {
        threads: 1,
        ..*cfg
    }
}

/// Compares the prediction for `FS(K_{k,n-k}, Y)` with the exhaustive census
/// for every `Y` in the corpus (all connected graphs on `n` vertices unless
/// one is supplied). Results keep corpus order regardless of worker count.
pub fn verify_corpus(
    n: usize,
    k: usize,
    corpus: Option<&[Graph]>,
    cfg: &SearchConfig,
) -> Result<Vec<CorpusComparison>, TheoryError> {
    if n > MAX_VERIFY_ORDER {
        return Err(TheoryError::InvalidParameter(format!(
            "corpus verification supports n <= {MAX_VERIFY_ORDER}, got {n}"
        )));
    }
    let x = small_side_bipartite(n, k)?;
    let generated;
    let graphs: &[Graph] = match corpus {
        Some(g) => {
            if let Some(bad) = g.iter().position(|y| y.order() != n) {
                return Err(TheoryError::Corpus(format!(
                    "graph {bad} has order {}, expected {n}",
                    g[bad].order()
                )));
            }
            g
        }
        None => {
            generated = connected_graphs(n).map_err(|e| TheoryError::Corpus(e.to_string()))?;
            &generated
        }
    };
    let inner = single_threaded(cfg);
    cfg.run(|| {
        graphs
            .par_iter()
            .enumerate()
            .map(|(id, y)| {
                let predicted = predict(y, k)?;
                let census = fs_components(&x, y, &inner)?;
                let oracle_connected = census.is_connected();
                Ok(CorpusComparison {
                    id,
                    graph6: to_graph6(y),
                    mismatch: predicted.as_bool().is_some_and(|p| p != oracle_connected),
                    predicted,
                    oracle_connected,
                    oracle_components: census.component_count,
                })
            })
            .collect()
    })?
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureFinding {
    /// 1: the iff characterization for `k >= 3`; 2: two components for
    /// bipartite `Y` at `k = 2`.
    pub conjecture: u8,
    pub n: usize,
    pub graph6: String,
    pub expected: String,
    pub oracle_components: usize,
    pub holds: bool,
}

/// Component count of `FS(S_n, Y)` for a 2-connected bipartite `Y`, recorded
/// without any claim attached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WilsonObservation {
    pub n: usize,
    pub graph6: String,
    pub components: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub n_max: usize,
    pub k: usize,
    pub findings: Vec<ConjectureFinding>,
    pub wilson: Vec<WilsonObservation>,
}

impl ConjectureReport {
    pub fn checked(&self, conjecture: u8) -> usize {
        self.findings.iter().filter(|f| f.conjecture == conjecture).count()
    }

    pub fn violations(&self) -> Vec<&ConjectureFinding> {
        self.findings.iter().filter(|f| !f.holds).collect()
    }
}

/// Resolves every Unknown `k`-instance with the oracle against the conjectured
/// characterization, and checks the two-component conjecture for bipartite
/// `Y` on `5..=n_max` vertices.
pub fn scan_conjectures(n_max: usize, k: usize, cfg: &SearchConfig) -> Result<ConjectureReport, TheoryError> {
    if k < 2 {
        return Err(TheoryError::InvalidParameter(format!("need k >= 2, got {k}")));
    }
    if n_max > cfg.max_n {
        return Err(crate::fs::FsError::InstanceTooLarge {
            n: n_max,
            max_n: cfg.max_n,
        }
        .into());
    }
    let inner = single_threaded(cfg);
    let mut findings = Vec::new();
    let mut wilson = Vec::new();
    for n in 2 * k..=n_max {
        let x = small_side_bipartite(n, k)?;
        let graphs = connected_graphs(n)?;
        let batch: Vec<Option<ConjectureFinding>> = cfg.run(|| {
            graphs
                .par_iter()
                .map(|y| -> Result<Option<ConjectureFinding>, TheoryError> {
                    if predict(y, k)?.verdict != Verdict::Unknown {
                        return Ok(None);
                    }
                    // Unknown means no sufficient condition for disconnection
                    // fired, so the conjecture expects a connected graph.
                    debug_assert!(predict_k_disconnect(y, k)?.is_none());
                    let census = fs_components(&x, y, &inner)?;
                    Ok(Some(ConjectureFinding {
                        conjecture: 1,
                        n,
                        graph6: to_graph6(y),
                        expected: "connected".into(),
                        oracle_components: census.component_count,
                        holds: census.is_connected(),
                    }))
                })
                .collect::<Result<_, _>>()
        })??;
        findings.extend(batch.into_iter().flatten());
    }
    for n in 5..=n_max {
        let x = small_side_bipartite(n, 2)?;
        let star = build_named(NamedGraphSpec::Star(n))?;
        let graphs: Vec<Graph> = connected_graphs(n)?
            .into_iter()
            .filter(|y| is_bipartite(y).is_bipartite())
            .collect();
        let batch: Vec<(Option<ConjectureFinding>, Option<WilsonObservation>)> = cfg.run(|| {
            graphs
                .par_iter()
                .map(|y| -> Result<_, TheoryError> {
                    let g6 = to_graph6(y);
                    let eligible = !is_cycle_graph(y) && find_nontrivial_k_bridge(y, 2)?.is_none();
                    let finding = if eligible {
                        let census = fs_components(&x, y, &inner)?;
                        Some(ConjectureFinding {
                            conjecture: 2,
                            n,
                            graph6: g6.clone(),
                            expected: "2 components".into(),
                            oracle_components: census.component_count,
                            holds: census.component_count == 2,
                        })
                    } else {
                        None
                    };
                    let observation = if vertex_connectivity(y) >= 2 {
                        Some(WilsonObservation {
                            n,
                            graph6: g6,
                            components: fs_components(&star, y, &inner)?.component_count,
                        })
                    } else {
                        None
                    };
                    Ok((finding, observation))
                })
                .collect::<Result<_, _>>()
        })??;
        for (f, w) in batch {
            findings.extend(f);
            wilson.extend(w);
        }
    }
    Ok(ConjectureReport {
        n_max,
        k,
        findings,
        wilson,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_vertex_k2_corpus_has_no_mismatch() {
        let rows = verify_corpus(5, 2, None, &SearchConfig::default()).unwrap();
        assert_eq!(rows.len(), 21);
        assert!(rows.iter().all(|r| !r.mismatch));
    }

    #[test]
    fn ingested_corpus_must_match_order() {
        let g = build_named(NamedGraphSpec::Cycle(6)).unwrap();
        assert!(matches!(
            verify_corpus(5, 2, Some(&[g]), &SearchConfig::default()),
            Err(TheoryError::Corpus(_))
        ));
        assert!(verify_corpus(8, 2, None, &SearchConfig::default()).is_err());
    }

    #[test]
    fn k23_has_two_components() {
        let report = scan_conjectures(5, 2, &SearchConfig::default()).unwrap();
        let k23 = build_named(NamedGraphSpec::CompleteBipartite(2, 3)).unwrap();
        let f = report
            .findings
            .iter()
            .find(|f| {
                let y = crate::graph::parse_graph6(&f.graph6).unwrap();
                f.conjecture == 2 && crate::graph::is_isomorphic(&y, &k23).unwrap()
            })
            .unwrap();
        assert_eq!(f.oracle_components, 2);
        assert!(report.violations().is_empty());
    }

    #[test]
    fn parallel_verification_is_identical() {
        let a = verify_corpus(6, 3, None, &SearchConfig::default()).unwrap();
        let b = verify_corpus(6, 3, None, &SearchConfig::with_threads(4)).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|r| !r.mismatch));
    }
}
