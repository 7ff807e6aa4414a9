//! Monte-Carlo estimates of `Pr[FS(K_{k,n-k}, G(n,p)) is connected]`.
//!
//! Trial `t` at grid index `i` draws its graph from a ChaCha stream selected
//! by `(i, t)` under the root seed, so results do not depend on the order or
//! the number of workers that run the trials.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fs::{fs_is_connected, SearchConfig};
use crate::graph::Graph;
use crate::theory::{predict, small_side_bipartite, TheoryError, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecisionMode {
    /// Structural prediction; may report Unknown for `k >= 3`.
    Predicate,
    /// Exhaustive search; limited by the search size cap.
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n: usize,
    pub k: usize,
    pub p_grid: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub decision: DecisionMode,
}

impl SweepConfig {
    /// Predicate mode for `k = 2`, Oracle mode otherwise.
    pub fn default_mode(k: usize) -> DecisionMode {
        if k == 2 {
            DecisionMode::Predicate
        } else {
            DecisionMode::Oracle
        }
    }

    pub fn validate(&self, search: &SearchConfig) -> Result<(), TheoryError> {
        let bad = |m: String| Err(TheoryError::InvalidParameter(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.p_grid.is_empty() {
            return bad("p grid is empty".into());
        }
        if self.p_grid.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return bad(format!("probabilities must lie in [0, 1]: {:?}", self.p_grid));
        }
        if self.p_grid.windows(2).any(|w| w[0] > w[1]) {
            return bad(format!("p grid must be sorted ascending: {:?}", self.p_grid));
        }
        small_side_bipartite(self.n, self.k)?;
        if self.decision == DecisionMode::Oracle && self.n > search.max_n {
            return Err(crate::fs::FsError::InstanceTooLarge {
                n: self.n,
                max_n: search.max_n,
            }
            .into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: f64,
    pub trials: usize,
    pub connected: usize,
    pub disconnected: usize,
    pub unknown: usize,
    /// `connected / trials`; Unknown trials count against the estimate.
    pub estimate: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// True when no estimate drops below its predecessor by more than `z`
    /// combined standard errors.
    pub fn monotone_within(&self, z: f64) -> bool {
        self.rows.windows(2).all(|w| {
            let slack = z * (w[0].stderr.powi(2) + w[1].stderr.powi(2)).sqrt();
            w[1].estimate >= w[0].estimate - slack
        })
    }
}

/// Independent stream for trial `trial` at grid index `p_index`.
pub fn trial_rng(seed: u64, p_index: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((p_index as u64) << 32) | trial as u64);
    rng
}

/// `G(n, p)`: every pair `u < v` is an edge independently with probability `p`.
pub fn sample_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let p = p.clamp(0.0, 1.0);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    g
}

/// Per-trial verdicts, indexed `[p_index][trial]`.
pub fn sweep_verdicts(cfg: &SweepConfig, search: &SearchConfig) -> Result<Vec<Vec<Verdict>>, TheoryError> {
    cfg.validate(search)?;
    let x = small_side_bipartite(cfg.n, cfg.k)?;
    let inner = SearchConfig {
        threads: 1,
        ..*search
    };
    let decide = |y: &Graph| -> Result<Verdict, TheoryError> {
        match cfg.decision {
            DecisionMode::Predicate => Ok(predict(y, cfg.k)?.verdict),
            DecisionMode::Oracle => Ok(if fs_is_connected(&x, y, &inner)? {
                Verdict::Connected
            } else {
                Verdict::Disconnected
            }),
        }
    };
    search.run(|| {
        cfg.p_grid
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                (0..cfg.trials)
                    .into_par_iter()
                    .map(|t| decide(&sample_gnp(cfg.n, p, &mut trial_rng(cfg.seed, i, t))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect()
    })?
}

pub fn sweep(cfg: &SweepConfig, search: &SearchConfig) -> Result<SweepResult, TheoryError> {
    let verdicts = sweep_verdicts(cfg, search)?;
    let rows = cfg
        .p_grid
        .iter()
        .zip(verdicts)
        .map(|(&p, vs)| {
            let count = |v: Verdict| vs.iter().filter(|&&w| w == v).count();
            let trials = vs.len();
            let connected = count(Verdict::Connected);
            let estimate = connected as f64 / trials as f64;
            SweepRow {
                p,
                trials,
                connected,
                disconnected: count(Verdict::Disconnected),
                unknown: count(Verdict::Unknown),
                estimate,
                stderr: (estimate * (1.0 - estimate) / trials as f64).sqrt(),
            }
        })
        .collect();
    Ok(SweepResult { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extreme_probabilities() {
        let mut rng = trial_rng(1, 0, 0);
        assert_eq!(sample_gnp(10, 0.0, &mut rng).size(), 0);
        assert!(sample_gnp(10, 1.0, &mut rng).is_complete());
    }

    #[test]
    fn edge_count_is_binomially_concentrated() {
        let n = 1000;
        let pairs = (n * (n - 1) / 2) as f64;
        let g = sample_gnp(n, 0.5, &mut trial_rng(7, 0, 0));
        let sigma = (pairs * 0.25).sqrt();
        assert!((g.size() as f64 - pairs / 2.0).abs() < 5.0 * sigma);
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = sample_gnp(30, 0.3, &mut trial_rng(5, 1, 2));
        let b = sample_gnp(30, 0.3, &mut trial_rng(5, 1, 2));
        let c = sample_gnp(30, 0.3, &mut trial_rng(5, 2, 1));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_bad_configs() {
        let ok = SweepConfig {
            n: 8,
            k: 2,
            p_grid: vec![0.2, 0.5],
            trials: 3,
            seed: 0,
            decision: DecisionMode::Predicate,
        };
        let s = SearchConfig::default();
        assert!(ok.validate(&s).is_ok());
        assert!(SweepConfig { trials: 0, ..ok.clone() }.validate(&s).is_err());
        assert!(SweepConfig { p_grid: vec![0.5, 0.2], ..ok.clone() }.validate(&s).is_err());
        assert!(SweepConfig { p_grid: vec![1.5], ..ok.clone() }.validate(&s).is_err());
        let big = SweepConfig { n: 30, decision: DecisionMode::Oracle, ..ok };
        assert!(big.validate(&s).is_err());
    }

    #[test]
    fn oracle_and_predicate_agree_at_n8() {
        let cfg = SweepConfig {
            n: 8,
            k: 2,
            p_grid: vec![0.3, 0.5, 0.7],
            trials: 20,
            seed: 11,
            decision: DecisionMode::Predicate,
        };
        let s = SearchConfig::with_threads(4);
        let a = sweep_verdicts(&cfg, &s).unwrap();
        let b = sweep_verdicts(&SweepConfig { decision: DecisionMode::Oracle, ..cfg }, &s).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let cfg = SweepConfig {
            n: 40,
            k: 2,
            p_grid: vec![0.05, 0.1, 0.2],
            trials: 30,
            seed: 3,
            decision: DecisionMode::Predicate,
        };
        let a = sweep(&cfg, &SearchConfig::default()).unwrap();
        let b = sweep(&cfg, &SearchConfig::with_threads(8)).unwrap();
        assert_eq!(a, b);
        assert!(a.rows.iter().all(|r| r.connected + r.disconnected + r.unknown == r.trials));
    }
}
