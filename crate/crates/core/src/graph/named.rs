use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// Named graph families addressable from the command line.
///
/// `CompleteBipartite` is always stored with `s <= t`; construct it through
/// [`NamedGraphSpec::complete_bipartite`] or parsing to get the normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NamedGraphSpec {
    Cycle(usize),
    CompleteBipartite(usize, usize),
    Star(usize),
    StarPlus(usize),
    Complete(usize),
    Path(usize),
    Theta,
}

impl NamedGraphSpec {
    pub fn complete_bipartite(s: usize, t: usize) -> Self {
        NamedGraphSpec::CompleteBipartite(s.min(t), s.max(t))
    }

    pub fn order(&self) -> usize {
        match *self {
            NamedGraphSpec::Cycle(n)
            | NamedGraphSpec::Star(n)
            | NamedGraphSpec::StarPlus(n)
            | NamedGraphSpec::Complete(n)
            | NamedGraphSpec::Path(n) => n,
            NamedGraphSpec::CompleteBipartite(s, t) => s + t,
            NamedGraphSpec::Theta => 7,
        }
    }
}

impl fmt::Display for NamedGraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NamedGraphSpec::Cycle(n) => write!(f, "cycle:{n}"),
            NamedGraphSpec::CompleteBipartite(s, t) => write!(f, "kbip:{s},{t}"),
            NamedGraphSpec::Star(n) => write!(f, "star:{n}"),
            NamedGraphSpec::StarPlus(n) => write!(f, "starplus:{n}"),
            NamedGraphSpec::Complete(n) => write!(f, "complete:{n}"),
            NamedGraphSpec::Path(n) => write!(f, "path:{n}"),
            NamedGraphSpec::Theta => write!(f, "theta"),
        }
    }
}

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameter(msg.into())
}

impl FromStr for NamedGraphSpec {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (kind, args) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (s, None),
        };
        let nums = |a: Option<&str>| -> Result<Vec<usize>, GraphError> {
            let a = a.ok_or_else(|| invalid(format!("'{kind}' needs a size argument")))?;
            a.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|_| invalid(format!("bad number '{p}' in '{s}'")))
                })
                .collect()
        };
        let one = |a: Option<&str>| -> Result<usize, GraphError> {
            match nums(a)?.as_slice() {
                [n] => Ok(*n),
                _ => Err(invalid(format!("'{kind}' takes exactly one argument"))),
            }
        };
        let spec = match kind.to_ascii_lowercase().as_str() {
            "cycle" => NamedGraphSpec::Cycle(one(args)?),
            "star" => NamedGraphSpec::Star(one(args)?),
            "starplus" => NamedGraphSpec::StarPlus(one(args)?),
            "complete" => NamedGraphSpec::Complete(one(args)?),
            "path" => NamedGraphSpec::Path(one(args)?),
            "kbip" => match nums(args)?.as_slice() {
                [a, b] => NamedGraphSpec::complete_bipartite(*a, *b),
                _ => return Err(invalid("'kbip' takes two arguments, e.g. kbip:2,7")),
            },
            "theta" => {
                if args.is_some() {
                    return Err(invalid("'theta' takes no size argument"));
                }
                NamedGraphSpec::Theta
            }
            other => return Err(invalid(format!("unknown graph family '{other}'"))),
        };
        Ok(spec)
    }
}

/// Builds the canonical labeled graph for a named family.
///
/// * `Cycle(n)`: `0-1-..-(n-1)-0`, n >= 3.
/// * `CompleteBipartite(s, t)`: parts `{0..s-1}` and `{s..s+t-1}`, s >= 1.
/// * `Star(n)`: center `0`, n >= 2.
/// * `StarPlus(n)`: `Star(n)` plus the edge `1-2`, n >= 4.
/// * `Theta`: hexagon `0..5` plus vertex `6` joined to the antipodal pair `0, 3`.
pub fn build_named(spec: NamedGraphSpec) -> Result<Graph, GraphError> {
    match spec {
        NamedGraphSpec::Cycle(n) => {
            if n < 3 {
                return Err(invalid(format!("cycle needs n >= 3, got {n}")));
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        NamedGraphSpec::CompleteBipartite(s, t) => {
            let (s, t) = (s.min(t), s.max(t));
            if s == 0 {
                return Err(invalid("complete bipartite graph needs both parts non-empty"));
            }
            Graph::from_edges(
                s + t,
                (0..s).flat_map(|a| (s..s + t).map(move |b| (a, b))),
            )
        }
        NamedGraphSpec::Star(n) => {
            if n < 2 {
                return Err(invalid(format!("star needs n >= 2, got {n}")));
            }
            Graph::from_edges(n, (1..n).map(|v| (0, v)))
        }
        NamedGraphSpec::StarPlus(n) => {
            if n < 4 {
                return Err(invalid(format!("starplus needs n >= 4, got {n}")));
            }
            Graph::from_edges(n, (1..n).map(|v| (0, v)).chain([(1, 2)]))
        }
        NamedGraphSpec::Complete(n) => {
            if n == 0 {
                return Err(GraphError::Empty);
            }
            Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        }
        NamedGraphSpec::Path(n) => {
            if n == 0 {
                return Err(GraphError::Empty);
            }
            Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
        }
        NamedGraphSpec::Theta => Graph::from_edges(
            7,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (3, 6)],
        ),
    }
}
