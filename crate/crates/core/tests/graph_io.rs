// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::{any, prop_assert, prop_assert_eq, proptest};

use bcpar::graph::{build_csr, load_edge_list, validate, write_edge_list, EdgeListGraph, Finding};
use bcpar::{bc_sequential, generate_ba_directed, BaParams, Error};

fn round_trip(g: &EdgeListGraph) -> EdgeListGraph {
    let mut text = Vec::new();
    write_edge_list(g, &mut text).unwrap();
    load_edge_list(text.as_slice()).unwrap()
}

proptest! {
    #[test]
    fn written_graphs_load_back(n in 1usize..50, raw in proptest::collection::vec((any::<u32>(), any::<u32>()), 0..200)) {
        let arcs: Vec<_> = raw.iter().map(|&(u, v)| (u % n as u32, v % n as u32)).collect();
        let g = EdgeListGraph::from_arcs(n, &arcs).unwrap();
        let back = round_trip(&g);
        prop_assert_eq!(back.num_vertices(), n);
        prop_assert_eq!(back.arcs().collect::<Vec<_>>(), arcs);
    }

    #[test]
    fn generated_graphs_are_clean(n in 2usize..400, beta in 1usize..8, seed in any::<u64>()) {
        let beta = beta.min(n - 1);
        let g = generate_ba_directed(BaParams::new(n, beta, seed)).unwrap();
        prop_assert_eq!(g.num_arcs(), 2 * beta * (n - beta));
        let dirty = validate(&g).iter().any(|f| matches!(f, Finding::SelfLoop { .. } | Finding::DuplicateArc { .. }));
        prop_assert!(!dirty);
        prop_assert_eq!(round_trip(&g).sorted_arcs(), g.sorted_arcs());
    }
}

#[test]
fn same_seed_same_file() {
    let write = |seed| {
        let mut out = Vec::new();
        write_edge_list(&generate_ba_directed(BaParams::new(500, 3, seed)).unwrap(), &mut out).unwrap();
        out
    };
    assert_eq!(write(42), write(42));
    assert_ne!(write(42), write(43));
}

#[test]
fn scores_survive_a_file_round_trip() {
    let g = generate_ba_directed(BaParams::new(300, 2, 8)).unwrap();
    let direct = bc_sequential(&build_csr(&g)).unwrap();
    let loaded = bc_sequential(&build_csr(&round_trip(&g))).unwrap();
    assert_eq!(direct, loaded);
}

#[test]
fn comments_and_blank_lines_before_the_header() {
    let g = load_edge_list("# a graph\n\n# more\n3 2\n0 1\n1 2\n".as_bytes()).unwrap();
    assert_eq!(g.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
}

#[test]
fn malformed_files_are_rejected_with_line_numbers() {
    let err = |text: &str| load_edge_list(text.as_bytes()).unwrap_err();
    assert!(matches!(err("3 2\n0 1\n1 5\n"), Error::VertexOutOfRange { line: 3, id: 5, n: 3 }));
    assert!(matches!(err("3 2\n0 1\n"), Error::EdgeCountMismatch { declared: 2, found: 1 }));
    assert!(matches!(err("3 1\n0 1\n1 2\n"), Error::EdgeCountMismatch { declared: 1, .. }));
    assert!(matches!(err("3 1\n0 x\n"), Error::Parse { line: 2, .. }));
    assert!(matches!(err("three 1\n"), Error::Parse { line: 1, .. }));
    assert!(matches!(err(""), Error::Parse { .. }));
}
