//! Fixed inputs shared by the benchmarks.

use edgereg::Graph;

/// Named graphs of growing size: cycles, a whiskered triangle and a join.
pub fn fixtures() -> Vec<(&'static str, Graph)> {
    let two_k2 = Graph::path(2).disjoint_union(&Graph::path(2));
    vec![
        ("C5", Graph::cycle(5)),
        ("C6", Graph::cycle(6)),
        (
            "whiskered-K3",
            Graph::from_edge_list(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]).unwrap(),
        ),
        ("C7", Graph::cycle(7)),
        ("2K2-join-K3", two_k2.join(&Graph::complete(3))),
    ]
}
