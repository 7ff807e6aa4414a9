//! Canonical labeling for small graphs and isomorphism-free enumeration.
//!
//! The canonical form is the lexicographically largest upper-triangle bit
//! string (graph6 pair order) over all vertex orderings that respect the
//! stable color-refinement partition. Enumeration grows graphs one vertex at a
//! time and keeps one representative per canonical form.

use std::collections::{BTreeMap, BTreeSet};

use super::{is_connected, Graph, GraphError};

/// Largest order supported by [`canonical_form`] (the code is a `u128`).
pub const MAX_CANONICAL_ORDER: usize = 16;

/// Largest order accepted by [`enumerate_graphs`].
const MAX_ENUMERATION_ORDER: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub order: usize,
    pub code: u128,
}

impl CanonicalForm {
    /// The canonically labeled graph this form encodes.
    pub fn graph(&self) -> Graph {
        let n = self.order;
        let total = n * (n - 1) / 2;
        let mut g = Graph::empty(n);
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if (self.code >> (total - 1 - k)) & 1 == 1 {
                    g.add_edge(i, j).unwrap();
                }
                k += 1;
            }
        }
        g
    }
}

fn refine(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut color: Vec<usize> = g.degrees();
    let mut classes = color.iter().collect::<BTreeSet<_>>().len();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut ns: Vec<usize> = g.neighbors(v).iter().map(|&w| color[w]).collect();
                ns.sort_unstable();
                (color[v], ns)
            })
            .collect();
        let sorted: Vec<&(usize, Vec<usize>)> = sigs.iter().collect::<BTreeSet<_>>().into_iter().collect();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| sorted.binary_search(&s).unwrap())
            .collect();
        let next_classes = sorted.len();
        color = next;
        if next_classes == classes {
            return color;
        }
        classes = next_classes;
    }
}

struct Search<'a> {
    g: &'a Graph,
    slot_class: Vec<usize>,
    members: Vec<Vec<usize>>,
    used: Vec<bool>,
    order: Vec<usize>,
    total: usize,
    best: Option<u128>,
}

impl Search<'_> {
    fn run(&mut self, pos: usize, code: u128, bits: usize, tied: bool) {
        if pos == self.slot_class.len() {
            if self.best.is_none_or(|b| code > b) {
                self.best = Some(code);
            }
            return;
        }
        let class = self.slot_class[pos];
        for idx in 0..self.members[class].len() {
            let v = self.members[class][idx];
            if self.used[v] {
                continue;
            }
            let mut c = code;
            for &u in &self.order {
                c = (c << 1) | self.g.has_edge(u, v) as u128;
            }
            let nb = bits + pos;
            let mut still_tied = tied;
            if tied {
                if let Some(best) = self.best {
                    let prefix = if nb == 0 { 0 } else { best >> (self.total - nb) };
                    if c < prefix {
                        continue;
                    }
                    still_tied = c == prefix;
                } else {
                    still_tied = false;
                }
            }
            self.used[v] = true;
            self.order.push(v);
            self.run(pos + 1, c, nb, still_tied);
            self.order.pop();
            self.used[v] = false;
        }
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, GraphError> {
    let n = g.order();
    if n > MAX_CANONICAL_ORDER {
        return Err(GraphError::InvalidParameter(format!(
            "canonical form supports at most {MAX_CANONICAL_ORDER} vertices, got {n}"
        )));
    }
    let color = refine(g);
    let nclasses = color.iter().max().map_or(0, |&c| c + 1);
    let mut members = vec![Vec::new(); nclasses];
    for (v, &c) in color.iter().enumerate() {
        members[c].push(v);
    }
    let slot_class: Vec<usize> = members
        .iter()
        .enumerate()
        .flat_map(|(c, m)| std::iter::repeat_n(c, m.len()))
        .collect();
    let mut search = Search {
        g,
        slot_class,
        members,
        used: vec![false; n],
        order: Vec::with_capacity(n),
        total: n * (n - 1) / 2,
        best: None,
    };
    search.run(0, 0, 0, true);
    Ok(CanonicalForm {
        order: n,
        code: search.best.unwrap(),
    })
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool, GraphError> {
    if a.order() != b.order() || a.size() != b.size() {
        return Ok(false);
    }
    let (mut da, mut db) = (a.degrees(), b.degrees());
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// All graphs of order `n` up to isomorphism, canonically labeled and sorted
/// by canonical code. Supports `1 <= n <= 9`.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(GraphError::InvalidParameter(format!(
            "graph enumeration supports 1 <= n <= {MAX_ENUMERATION_ORDER}, got {n}"
        )));
    }
    let mut level: BTreeMap<CanonicalForm, ()> = BTreeMap::new();
    level.insert(canonical_form(&Graph::empty(1))?, ());
    for m in 2..=n {
        let mut next = BTreeMap::new();
        for form in level.keys() {
            let base = form.graph();
            for mask in 0u32..(1 << (m - 1)) {
                let mut g = base.disjoint_union(&Graph::empty(1));
                for u in 0..m - 1 {
                    if mask >> u & 1 == 1 {
                        g.add_edge(u, m - 1)?;
                    }
                }
                next.insert(canonical_form(&g)?, ());
            }
        }
        level = next;
    }
    Ok(level.keys().map(CanonicalForm::graph).collect())
}

/// All connected graphs of order `n` up to isomorphism.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    Ok(enumerate_graphs(n)?
        .into_iter()
        .filter(is_connected)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_named, NamedGraphSpec as N};

    #[test]
    fn graph_counts_match_known_sequences() {
        // Graphs and connected graphs on n vertices, up to isomorphism.
        let all = [1, 2, 4, 11, 34, 156, 1044];
        let connected = [1, 1, 2, 6, 21, 112, 853];
        for n in 1..=7 {
            let gs = enumerate_graphs(n).unwrap();
            assert_eq!(gs.len(), all[n - 1], "all graphs, n={n}");
            assert_eq!(gs.iter().filter(|g| is_connected(g)).count(), connected[n - 1]);
        }
    }

    #[test]
    fn relabeling_preserves_canonical_form() {
        let theta = build_named(N::Theta).unwrap();
        let perm = [3, 5, 0, 6, 1, 2, 4];
        let relabeled = theta.relabel(&perm).unwrap();
        assert_eq!(canonical_form(&theta).unwrap(), canonical_form(&relabeled).unwrap());
        assert!(is_isomorphic(&theta, &relabeled).unwrap());
        assert!(!is_isomorphic(&theta, &build_named(N::Cycle(7)).unwrap()).unwrap());
    }

    #[test]
    fn canonical_graph_is_isomorphic_to_input() {
        let g = build_named(N::StarPlus(6)).unwrap();
        let form = canonical_form(&g).unwrap();
        assert_eq!(canonical_form(&form.graph()).unwrap(), form);
    }

    #[test]
    fn c4_and_k22_coincide() {
        assert!(is_isomorphic(
            &build_named(N::Cycle(4)).unwrap(),
            &build_named(N::CompleteBipartite(2, 2)).unwrap()
        )
        .unwrap());
    }
}
