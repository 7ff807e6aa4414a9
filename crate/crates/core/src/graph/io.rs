//! Edge-list text and graph6 encodings.
//!
//! Edge list: first line `n m`, then `m` lines `u v` with `0 <= u < v < n`.
//! Blank lines and lines starting with `#` are ignored.

use super::{Graph, GraphError};

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing 'n m' header"))?;
    let nums = |line: usize, l: &str| -> Result<Vec<usize>, GraphError> {
        l.split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| parse_err(line, format!("not a non-negative integer: '{t}'")))
            })
            .collect()
    };
    let (n, m) = match nums(hline, header)?.as_slice() {
        [n, m] => (*n, *m),
        _ => return Err(parse_err(hline, "header must be 'n m'")),
    };
    if n == 0 {
        return Err(parse_err(hline, "graph must have at least one vertex"));
    }
    let mut g = Graph::empty(n);
    let mut count = 0;
    for (line, l) in lines {
        let (u, v) = match nums(line, l)?.as_slice() {
            [u, v] => (*u, *v),
            _ => return Err(parse_err(line, "edge line must be 'u v'")),
        };
        if u == v {
            return Err(parse_err(line, format!("self-loop at vertex {u}")));
        }
        if u > v {
            return Err(parse_err(line, format!("edge must satisfy u < v, got {u} {v}")));
        }
        g.add_edge(u, v).map_err(|e| parse_err(line, e.to_string()))?;
        count += 1;
    }
    if count != m {
        return Err(parse_err(
            hline,
            format!("header declares {m} edges, found {count}"),
        ));
    }
    Ok(g)
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Encodes `g` in graph6 (no `>>graph6<<` header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut bytes: Vec<u8> = Vec::new();
    if n <= 62 {
        bytes.push(n as u8 + 63);
    } else if n <= 258_047 {
        bytes.push(126);
        for shift in [12, 6, 0] {
            bytes.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        bytes.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            bytes.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                bytes.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(bytes).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 line. An optional `>>graph6<<` prefix is accepted.
/// Padding bits must be zero and the length must match the order exactly.
pub fn parse_graph6(line: &str) -> Result<Graph, GraphError> {
    let s = line.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let data = s.as_bytes();
    let err = |m: &str| parse_err(1, format!("graph6: {m}"));
    if data.is_empty() {
        return Err(err("empty input"));
    }
    if let Some(&b) = data.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(err(&format!("byte {b} outside 63..=126")));
    }
    let six = |b: u8| (b - 63) as usize;
    let (n, rest) = if data[0] != 126 {
        (six(data[0]), &data[1..])
    } else if data.len() >= 2 && data[1] != 126 {
        if data.len() < 4 {
            return Err(err("truncated order field"));
        }
        let n = (six(data[1]) << 12) | (six(data[2]) << 6) | six(data[3]);
        (n, &data[4..])
    } else {
        if data.len() < 8 {
            return Err(err("truncated order field"));
        }
        let n = data[2..8].iter().fold(0usize, |acc, &b| (acc << 6) | six(b));
        (n, &data[8..])
    };
    if n == 0 {
        return Err(err("graph must have at least one vertex"));
    }
    let bits = n * (n - 1) / 2;
    let expected = bits.div_ceil(6);
    if rest.len() != expected {
        return Err(err(&format!(
            "expected {expected} data bytes for n={n}, found {}",
            rest.len()
        )));
    }
    let bit = |k: usize| (six(rest[k / 6]) >> (5 - k % 6)) & 1 == 1;
    for k in bits..expected * 6 {
        if bit(k) {
            return Err(err("non-zero padding bits"));
        }
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j).expect("graph6 pairs are distinct");
            }
            k += 1;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_named, NamedGraphSpec as N};
    use proptest::prelude::*;

    #[test]
    fn edge_list_of_c5() {
        let g = parse_edge_list("5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap();
        assert_eq!(g.order(), 5);
        assert!(g.degrees().iter().all(|&d| d == 2));
        assert_eq!(parse_edge_list(&format_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        let e = parse_edge_list("3 1\n0 0\n").unwrap_err();
        assert!(matches!(e, GraphError::Parse { line: 2, .. }), "{e}");
        let e = parse_edge_list("3 2\n0 1\n0 1\n").unwrap_err();
        assert!(matches!(e, GraphError::Parse { line: 3, .. }), "{e}");
        let e = parse_edge_list("3 1\n0 3\n").unwrap_err();
        assert!(matches!(e, GraphError::Parse { line: 2, .. }), "{e}");
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n2 1\n").is_err());
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn graph6_known_strings() {
        // Standard encodings: K4 = "C~", C5 = "Dhc", P3 = "Bg".
        assert_eq!(to_graph6(&build_named(N::Complete(4)).unwrap()), "C~");
        assert_eq!(to_graph6(&build_named(N::Cycle(5)).unwrap()), "Dhc");
        assert_eq!(to_graph6(&build_named(N::Path(3)).unwrap()), "Bg");
        assert_eq!(parse_graph6(">>graph6<<C~\n").unwrap(), build_named(N::Complete(4)).unwrap());
    }

    #[test]
    fn graph6_rejects_malformed() {
        assert!(parse_graph6("C~~").is_err());
        assert!(parse_graph6("C").is_err());
        assert!(parse_graph6("Bh").is_err()); // padding bit set
        assert!(parse_graph6("C \n").is_err());
    }

    proptest! {
        #[test]
        fn graph6_round_trip(n in 1usize..70, seed in any::<u64>()) {
            let mut state = seed;
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if state >> 63 == 1 {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            prop_assert_eq!(parse_graph6(&to_graph6(&g)).unwrap(), g);
        }
    }
}
