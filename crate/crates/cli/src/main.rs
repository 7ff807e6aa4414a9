mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use fslab::certificates::{certify, validate_sequence, CertError};
use fslab::fs::{fs_components, fs_is_connected, fs_path, FsError, DEFAULT_MAX_N};
use fslab::graph::{build_named, Graph, NamedGraphSpec};
use fslab::random::{sweep, DecisionMode, SweepConfig};
use fslab::theory::{predict, scan_conjectures, verify_corpus, TheoryError};
use fslab::SearchConfig;
use serde::Serialize;
use serde_json::json;

use input::{load_graph, load_graph6_corpus, parse_bijection, parse_grid};
use report::{write_csv, write_report, RunReport};

#[derive(Parser)]
#[command(name = "fs", version, about = "Friends-and-strangers graph toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Largest order accepted by exhaustive search.
    #[arg(long, env = "FS_MAX_N", default_value_t = DEFAULT_MAX_N)]
    max_n: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn search(&self) -> SearchConfig {
        SearchConfig {
            max_n: self.max_n,
            threads: self.threads,
        }
    }
}

#[derive(Args)]
struct Factors {
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
    /// Compute FS(Y, X) instead of FS(X, Y); the two are isomorphic.
    #[arg(long)]
    swap_factors: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Component census of FS(X, Y).
    Components {
        #[command(flatten)]
        factors: Factors,
        #[command(flatten)]
        common: Common,
    },
    /// Whether FS(X, Y) is connected.
    Connected {
        #[command(flatten)]
        factors: Factors,
        #[command(flatten)]
        common: Common,
    },
    /// Shortest swap sequence between two bijections.
    Path {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Start bijection, as a rank or comma-separated images.
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        common: Common,
    },
    /// Structural prediction for FS(K_{k,n-k}, Y).
    Predict {
        #[arg(long)]
        y: String,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Compare predictions with exhaustive search over a graph corpus.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// graph6 file, one graph per line; defaults to all connected graphs.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive evidence for the open conjectures.
    Conjectures {
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Explicit swap sequence exchanging tokens u and v in FS(X, K_{k,n-k}).
    Certify {
        #[arg(long)]
        x: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Monte-Carlo connectivity estimates over G(n, p).
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Ascending probabilities, comma-separated.
        #[arg(long)]
        p_grid: String,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        /// Decide every trial by exhaustive search.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    TooLarge(String),
    Certificate(String),
    Output(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Output(_) => 1,
            Failure::Input(_) => 2,
            Failure::TooLarge(_) => 3,
            Failure::Certificate(_) => 5,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (Failure::Input(m) | Failure::TooLarge(m) | Failure::Certificate(m) | Failure::Output(m)) = self;
        f.write_str(m)
    }
}

impl From<String> for Failure {
    fn from(m: String) -> Self {
        Failure::Input(m)
    }
}

impl From<FsError> for Failure {
    fn from(e: FsError) -> Self {
        match e {
            FsError::InstanceTooLarge { .. } => Failure::TooLarge(format!("{e}; raise --max-n or FS_MAX_N")),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<TheoryError> for Failure {
    fn from(e: TheoryError) -> Self {
        match e {
            TheoryError::Fs(e) => e.into(),
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<CertError> for Failure {
    fn from(e: CertError) -> Self {
        match e {
            CertError::Precondition(_) | CertError::Graph(_) => Failure::Input(e.to_string()),
            CertError::Fs(e) => e.into(),
            e => Failure::Certificate(e.to_string()),
        }
    }
}

/// The invocation minus `--out`, so a report can be replayed verbatim.
fn replay_argv() -> Vec<String> {
    let mut out = Vec::new();
    let mut args = std::env::args().skip(1);
    while let Some(a) = args.next() {
        if a == "--out" {
            args.next();
        } else if !a.starts_with("--out=") {
            out.push(a);
        }
    }
    out
}

fn factors(f: &Factors) -> Result<(Graph, Graph, serde_json::Value), Failure> {
    let (x, xs) = load_graph(&f.x)?;
    let (y, ys) = load_graph(&f.y)?;
    let inputs = json!({ "x": xs, "y": ys, "swap_factors": f.swap_factors });
    Ok(if f.swap_factors { (y, x, inputs) } else { (x, y, inputs) })
}

#[derive(Serialize)]
struct Connectivity {
    n: usize,
    connected: bool,
}

#[derive(Serialize)]
struct PathResult {
    from_rank: u64,
    to_rank: u64,
    found: bool,
    length: Option<usize>,
    moves: Option<Vec<(usize, usize)>>,
}

#[derive(Serialize)]
struct CertificateResult {
    moves: Vec<(usize, usize)>,
    start_rank: u64,
    end_rank: u64,
    validated: bool,
}

#[derive(Serialize)]
struct VerifyResult<T: Serialize> {
    checked: usize,
    mismatches: usize,
    unknown: usize,
    comparisons: T,
}

fn run(cli: Cli, argv: Vec<String>) -> Result<u8, Failure> {
    let start = Instant::now();
    let mut status = 0;
    match cli.command {
        Command::Components { factors: f, common } => {
            let (x, y, inputs) = factors(&f)?;
            let result = fs_components(&x, &y, &common.search())?;
            let report = RunReport::new("components", argv, inputs, None, start, result);
            write_report(&report, common.out.as_deref())?;
        }
        Command::Connected { factors: f, common } => {
            let (x, y, inputs) = factors(&f)?;
            let connected = fs_is_connected(&x, &y, &common.search())?;
            let result = Connectivity { n: x.order(), connected };
            let report = RunReport::new("connected", argv, inputs, None, start, result);
            write_report(&report, common.out.as_deref())?;
        }
        Command::Path { x, y, from, to, common } => {
            let (xg, xs) = load_graph(&x)?;
            let (yg, ys) = load_graph(&y)?;
            let n = xg.order();
            let sigma = parse_bijection(&from, n)?;
            let tau = parse_bijection(&to, n)?;
            let path = fs_path(&xg, &yg, &sigma, &tau, &common.search())?;
            let result = PathResult {
                from_rank: sigma.rank().0,
                to_rank: tau.rank().0,
                found: path.is_some(),
                length: path.as_ref().map(|p| p.len()),
                moves: path.map(|p| p.moves),
            };
            let inputs = json!({ "x": xs, "y": ys, "from": from, "to": to });
            let report = RunReport::new("path", argv, inputs, None, start, result);
            write_report(&report, common.out.as_deref())?;
        }
        Command::Predict { y, k, common } => {
            let (yg, ys) = load_graph(&y)?;
            let result = predict(&yg, k)?;
            let report = RunReport::new("predict", argv, json!({ "y": ys, "k": k }), None, start, result);
            write_report(&report, common.out.as_deref())?;
        }
        Command::Verify { n, k, corpus, common } => {
            let (graphs, digest) = match &corpus {
                Some(p) => {
                    let (g, d) = load_graph6_corpus(p)?;
                    (Some(g), Some(d))
                }
                None => (None, None),
            };
            let rows = verify_corpus(n, k, graphs.as_deref(), &common.search())?;
            let mismatches = rows.iter().filter(|r| r.mismatch).count();
            if mismatches > 0 {
                status = 4;
            }
            let result = VerifyResult {
                checked: rows.len(),
                mismatches,
                unknown: rows.iter().filter(|r| r.predicted.as_bool().is_none()).count(),
                comparisons: rows,
            };
            let inputs = json!({ "n": n, "k": k, "corpus": corpus, "corpus_sha256": digest });
            let report = RunReport::new("verify", argv, inputs, None, start, result);
            write_report(&report, common.out.as_deref())?;
        }
        Command::Conjectures { n_max, k, common } => {
            let result = scan_conjectures(n_max, k, &common.search())?;
            if !result.violations().is_empty() {
                status = 4;
            }
            let inputs = json!({ "n_max": n_max, "k": k });
            let report = RunReport::new("conjectures", argv, inputs, None, start, result);
            write_report(&report, common.out.as_deref())?;
        }
        Command::Certify { x, k, sigma, u, v, common } => {
            let (xg, xs) = load_graph(&x)?;
            let n = xg.order();
            if k == 0 || k > n / 2 {
                return Err(Failure::Input(format!("need 1 <= k <= n/2, got k={k}, n={n}")));
            }
            let s = parse_bijection(&sigma, n)?;
            if u >= n || v >= n || u == v {
                return Err(Failure::Input(format!("tokens must be distinct and below {n}")));
            }
            let seq = certify(&xg, k, &s, u, v)?;
            let y = build_named(NamedGraphSpec::complete_bipartite(k, n - k)).map_err(|e| e.to_string())?;
            let expected = s.transpose_tokens(u, v);
            let validated = validate_sequence(&xg, &y, &s, &seq, &expected).is_accepted();
            let result = CertificateResult {
                start_rank: s.rank().0,
                end_rank: seq.apply_unchecked(&s).rank().0,
                moves: seq.moves,
                validated,
            };
            let inputs = json!({ "x": xs, "k": k, "sigma": sigma, "u": u, "v": v });
            let report = RunReport::new("certify", argv, inputs, None, start, result);
            write_report(&report, common.out.as_deref())?;
            if !validated {
                return Err(Failure::Certificate("certificate failed validation".into()));
            }
        }
        Command::Sweep { n, k, p_grid, trials, seed, oracle, common } => {
            let cfg = SweepConfig {
                n,
                k,
                p_grid: parse_grid(&p_grid)?,
                trials,
                seed,
                decision: if oracle { DecisionMode::Oracle } else { DecisionMode::Predicate },
            };
            let result = sweep(&cfg, &common.search())?;
            match common.out.as_deref() {
                Some(path) => {
                    write_csv(&result.rows, Some(path))?;
                    let inputs = json!({ "n": n, "k": k, "p_grid": cfg.p_grid, "trials": trials, "decision": cfg.decision });
                    let report = RunReport::new("sweep", argv, inputs, Some(seed), start, result);
                    write_report(&report, None)?;
                }
                None => write_csv(&result.rows, None)?,
            }
        }
    }
    Ok(status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli, replay_argv()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("fs: {e}");
            ExitCode::from(e.code())
        }
    }
}
