use fslab::certificates::{certify, exchange_big_side_k2, exchange_small_side_k2, transfer_certificate, validate_sequence};
use fslab::fs::{factorial, fs_path, PermRank, SearchConfig};
use fslab::graph::{build_named, parse_graph6, Graph, NamedGraphSpec as N};
use fslab::{Bijection, SwapSequence};
use proptest::prelude::*;

fn octahedron() -> Graph {
    Graph::from_edges(6, (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).filter(|&(a, b)| b != a + 3)).unwrap()
}

fn prism() -> Graph {
    Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap()
}

fn wheel() -> Graph {
    let mut g = build_named(N::Cycle(6)).unwrap().disjoint_union(&Graph::empty(1));
    for v in 0..6 {
        g.add_edge(v, 6).unwrap();
    }
    g
}

fn hosts() -> Vec<Graph> {
    vec![octahedron(), prism(), wheel(), parse_graph6("FCZbg").unwrap()]
}

fn bijection(n: usize, r: u64) -> Bijection {
    Bijection::unrank(PermRank(r % factorial(n)), n).unwrap()
}

/// `sigma` with tokens `u` and `v` moved onto the edge `e`.
fn on_edge(s: Bijection, (a, b): (usize, usize), u: usize, v: usize) -> Bijection {
    let s = s.swap_positions(a, s.position_of(u));
    s.swap_positions(b, s.position_of(v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn small_side_exchange_validates(h in 0usize..4, r in any::<u64>(), e in any::<prop::sample::Index>()) {
        let x = &hosts()[h];
        let n = x.order();
        let edges: Vec<_> = x.edges().collect();
        let s = on_edge(bijection(n, r), edges[e.index(edges.len())], 0, 1);
        let seq = exchange_small_side_k2(x, &s).unwrap();
        let y = build_named(N::CompleteBipartite(2, n - 2)).unwrap();
        prop_assert!(validate_sequence(x, &y, &s, &seq, &s.transpose_tokens(0, 1)).is_accepted());
    }

    #[test]
    fn big_side_exchange_validates(h in 0usize..4, r in any::<u64>(), e in any::<prop::sample::Index>(), uv in (2usize..6, 2usize..6)) {
        prop_assume!(uv.0 != uv.1);
        let x = &hosts()[h];
        let n = x.order();
        let edges: Vec<_> = x.edges().collect();
        let s = on_edge(bijection(n, r), edges[e.index(edges.len())], uv.0, uv.1);
        let seq = exchange_big_side_k2(x, &s, uv.0, uv.1).unwrap();
        let y = build_named(N::CompleteBipartite(2, n - 2)).unwrap();
        prop_assert!(validate_sequence(x, &y, &s, &seq, &s.transpose_tokens(uv.0, uv.1)).is_accepted());
    }

    #[test]
    fn certify_agrees_with_search_on_the_octahedron(r in any::<u64>(), e in any::<prop::sample::Index>(), uv in (0usize..6, 0usize..6)) {
        prop_assume!(uv.0 != uv.1);
        let x = octahedron();
        let edges: Vec<_> = x.edges().collect();
        let s = on_edge(bijection(6, r), edges[e.index(edges.len())], uv.0, uv.1);
        let y = build_named(N::CompleteBipartite(3, 3)).unwrap();
        let target = s.transpose_tokens(uv.0, uv.1);
        let shortest = fs_path(&x, &y, &s, &target, &SearchConfig::default()).unwrap();
        match certify(&x, 3, &s, uv.0, uv.1) {
            Ok(seq) => {
                prop_assert!(validate_sequence(&x, &y, &s, &seq, &target).is_accepted());
                prop_assert!(seq.len() >= shortest.map_or(0, |p| p.len()));
            }
            Err(e) => prop_assert!(uv.0 >= 3 && uv.1 >= 3, "{}", e),
        }
    }

    #[test]
    fn transfer_keeps_validity(r in any::<u64>(), e in any::<prop::sample::Index>()) {
        let x = prism();
        let y = build_named(N::CompleteBipartite(2, 4)).unwrap();
        let edges: Vec<_> = x.edges().collect();
        let s = on_edge(bijection(6, r), edges[e.index(edges.len())], 2, 3);
        let free: Vec<(usize, usize)> = edges
            .iter()
            .copied()
            .filter(|&(a, b)| ![a, b].contains(&s.position_of(2)) && ![a, b].contains(&s.position_of(3)))
            .filter(|&(a, b)| y.has_edge(s.token_at(a), s.token_at(b)))
            .take(1)
            .collect();
        let prep = SwapSequence::from_moves(free);
        let t = prep.apply_unchecked(&s);
        let inner = exchange_big_side_k2(&x, &t, 2, 3).unwrap();
        let whole = transfer_certificate(&s, 2, 3, &prep, &inner).unwrap();
        prop_assert!(validate_sequence(&x, &y, &s, &whole, &s.transpose_tokens(2, 3)).is_accepted());
    }
}
