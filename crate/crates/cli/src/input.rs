use std::fs;
use std::path::Path;

use fslab::graph::{build_named, parse_edge_list, parse_graph6, Graph, NamedGraphSpec};
use fslab::{Bijection, PermRank};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// How a graph argument was resolved, echoed into reports.
#[derive(Debug, Clone, Serialize)]
pub struct GraphSource {
    pub arg: String,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sha256: Option<String>,
    pub order: usize,
    pub size: usize,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn looks_like_spec(arg: &str) -> bool {
    arg == "theta" || (arg.contains(':') && !Path::new(arg).exists())
}

/// Parses a named spec (`cycle:6`, `kbip:2,4`, `theta`, ...) or reads an
/// edge-list or graph6 file.
pub fn load_graph(arg: &str) -> Result<(Graph, GraphSource), String> {
    if looks_like_spec(arg) {
        let spec: NamedGraphSpec = arg.parse().map_err(|e| format!("graph spec '{arg}': {e}"))?;
        let g = build_named(spec).map_err(|e| format!("graph spec '{arg}': {e}"))?;
        let source = GraphSource {
            arg: arg.to_string(),
            kind: "named",
            sha256: None,
            order: g.order(),
            size: g.size(),
        };
        return Ok((g, source));
    }
    let bytes = fs::read(arg).map_err(|e| format!("cannot read graph file '{arg}': {e}"))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| format!("graph file '{arg}' is not UTF-8"))?;
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    let is_edge_list = first.split_whitespace().count() == 2;
    let (g, kind) = if is_edge_list {
        (parse_edge_list(&text).map_err(|e| format!("{arg}: {e}"))?, "edge-list")
    } else {
        (parse_graph6(first).map_err(|e| format!("{arg}: {e}"))?, "graph6")
    };
    let source = GraphSource {
        arg: arg.to_string(),
        kind,
        sha256: Some(sha256_hex(&bytes)),
        order: g.order(),
        size: g.size(),
    };
    Ok((g, source))
}

/// Reads a file with one graph6 string per line.
pub fn load_graph6_corpus(path: &Path) -> Result<(Vec<Graph>, String), String> {
    let bytes = fs::read(path).map_err(|e| format!("cannot read corpus '{}': {e}", path.display()))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| "corpus is not UTF-8".to_string())?;
    let graphs = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_graph6(l.trim()).map_err(|e| format!("{} line {}: {e}", path.display(), i + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((graphs, sha256_hex(&bytes)))
}

/// A bijection given as a rank (`17`) or as images (`2,0,1`).
pub fn parse_bijection(arg: &str, n: usize) -> Result<Bijection, String> {
    let b = if arg.contains(',') {
        arg.parse::<Bijection>().map_err(|e| e.to_string())?
    } else {
        let r: u64 = arg.trim().parse().map_err(|_| format!("'{arg}' is neither a rank nor a permutation"))?;
        Bijection::unrank(PermRank(r), n).map_err(|e| e.to_string())?
    };
    if b.order() != n {
        return Err(format!("bijection '{arg}' has order {}, expected {n}", b.order()));
    }
    Ok(b)
}

pub fn parse_grid(arg: &str) -> Result<Vec<f64>, String> {
    arg.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| format!("bad probability '{p}' in --p-grid")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_and_file_inputs() {
        let (g, src) = load_graph("kbip:3,4").unwrap();
        assert_eq!((g.order(), g.size(), src.kind), (7, 12, "named"));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c5.txt");
        fs::write(&path, "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap();
        let (g, src) = load_graph(path.to_str().unwrap()).unwrap();
        assert!(g.degrees().iter().all(|&d| d == 2));
        assert_eq!(src.kind, "edge-list");
        let g6 = dir.path().join("k4.g6");
        fs::write(&g6, "C~\n").unwrap();
        assert!(load_graph(g6.to_str().unwrap()).unwrap().0.is_complete());
        let bad = dir.path().join("loop.txt");
        fs::write(&bad, "3 1\n0 0\n").unwrap();
        let err = load_graph(bad.to_str().unwrap()).unwrap_err();
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn bijection_forms() {
        assert_eq!(parse_bijection("23", 4).unwrap(), "3,2,1,0".parse().unwrap());
        assert!(parse_bijection("24", 4).is_err());
        assert!(parse_bijection("1,0", 3).is_err());
    }
}
