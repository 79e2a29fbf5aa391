use std::path::Path;

use proptest::prelude::*;

use modop::canon::{canonical_encoding, is_isomorphic};
use modop::enumerate::{corpus, enumerate_graphs};
use modop::graph::Orientation;
use modop::io;
use modop::{Elementary, End, Graph};

fn fixtures() -> Vec<Graph> {
    let mut gs = vec![
        Graph::edge(),
        Graph::corolla(0),
        Graph::corolla(3),
        Graph::elementary(Elementary::Linear(3)),
        Graph::elementary(Elementary::Loops(2)),
        Graph::elementary(Elementary::Theta),
    ];
    // a leg, a loop and a double edge on three vertices
    gs.push(
        Graph::from_edges(
            3,
            [
                (End::Vertex(0), End::Vertex(1)),
                (End::Vertex(1), End::Vertex(2)),
                (End::Vertex(1), End::Vertex(2)),
                (End::Vertex(2), End::Vertex(2)),
                (End::Vertex(0), End::Inf),
            ],
        )
        .unwrap(),
    );
    gs
}

/// Renumbers vertices and edges and swaps the two arcs of flipped edges.
fn relabel(g: &Graph, vperm: &[usize], eperm: &[usize], flips: &[bool]) -> Graph {
    let vs: Vec<usize> = vperm
        .iter()
        .copied()
        .filter(|&v| v < g.vertex_count())
        .collect();
    let es: Vec<usize> = eperm
        .iter()
        .copied()
        .filter(|&e| e < g.edge_count())
        .collect();
    let mut new_index = vec![0; g.vertex_count()];
    for (new, &old) in vs.iter().enumerate() {
        new_index[old] = new;
    }
    let map = |e: End| match e {
        End::Vertex(v) => End::Vertex(new_index[v]),
        End::Inf => End::Inf,
    };
    let edges = es.iter().enumerate().map(|(i, &old)| {
        let (a, b) = (map(g.end(2 * old)), map(g.end(2 * old + 1)));
        if flips[i] {
            (b, a)
        } else {
            (a, b)
        }
    });
    Graph::from_edges(g.vertex_count(), edges).unwrap()
}

/// Internal edges minus the edges of a spanning forest found by union-find.
fn betti_by_spanning_tree(g: &Graph) -> usize {
    let mut parent: Vec<usize> = g.vertices().collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    let mut internal = 0;
    let mut tree = 0;
    for e in g.edges() {
        if let (End::Vertex(a), End::Vertex(b)) = (g.end(2 * e), g.end(2 * e + 1)) {
            internal += 1;
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                tree += 1;
            }
        }
    }
    internal - tree
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn encoding_survives_relabelling(
        vperm in Just((0..8).collect::<Vec<usize>>()).prop_shuffle(),
        eperm in Just((0..12).collect::<Vec<usize>>()).prop_shuffle(),
        flips in proptest::collection::vec(any::<bool>(), 12),
    ) {
        for g in fixtures() {
            let h = relabel(&g, &vperm, &eperm, &flips);
            prop_assert_eq!(canonical_encoding(&h), canonical_encoding(&g));
            prop_assert!(is_isomorphic(&g, &h));
        }
    }
}

#[test]
fn betti_number_matches_spanning_tree_count() {
    for g in corpus(3, 5) {
        if g.vertex_count() > 0 {
            assert_eq!(g.betti_number(), betti_by_spanning_tree(&g), "{g:?}");
            assert_eq!(g.is_tree(), g.betti_number() == 0);
        }
    }
}

#[test]
fn generated_graphs_are_well_formed() {
    for g in corpus(3, 4) {
        for a in g.arcs() {
            assert_ne!(modop::dagger(a), a);
            assert_eq!(modop::dagger(modop::dagger(a)), a);
        }
        assert!(Graph::new(g.vertex_count(), g.ends().to_vec()).is_ok());
    }
}

#[test]
fn exactly_one_vertexless_class() {
    let vertexless: Vec<Graph> = corpus(3, 4)
        .into_iter()
        .filter(|g| g.vertex_count() == 0)
        .collect();
    assert_eq!(vertexless, vec![Graph::edge()]);
    assert_eq!(enumerate_graphs(0, 3, 0), vec![Graph::edge()]);
}

#[test]
fn small_enumeration_counts() {
    assert_eq!(enumerate_graphs(1, 1, 0).len(), 2);
    assert_eq!(enumerate_graphs(2, 1, 0).len(), 3);
}

#[test]
fn structural_predicates() {
    assert!(Graph::corolla(5).is_tree());
    let l1 = Graph::elementary(Elementary::Loops(1));
    for o in l1.orientations() {
        assert!(!l1.is_directed_acyclic(&o));
    }
    let theta = Graph::elementary(Elementary::Theta);
    assert!(theta.is_directed_acyclic(&Orientation::standard(&theta)));
    assert!(Graph::elementary(Elementary::Linear(4)).is_linear());
    assert!(!Graph::corolla(3).is_linear());
}

#[test]
fn text_format_round_trips_on_corpus() {
    for g in corpus(3, 4) {
        let back = io::parse_graph(&io::serialize_graph(&g), "corpus")
            .unwrap()
            .graph;
        assert_eq!(back, g);
        assert_eq!(canonical_encoding(&back), canonical_encoding(&g));
    }
}

#[test]
fn fixture_files_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let theta = io::load_graph(&dir.join("theta.graph")).unwrap().graph;
    assert!(is_isomorphic(&theta, &Graph::elementary(Elementary::Theta)));
    assert_eq!(
        io::load_graph(&dir.join("edge.graph")).unwrap().graph,
        Graph::edge()
    );
    let err = io::load_graph(&dir.join("bad_vertex.graph")).unwrap_err();
    assert_eq!(err.code(), "PARSE");
    assert!(err.to_string().contains("bad_vertex.graph:3"));
    let m = io::load_map(&dir.join("loop_collapse.map")).unwrap().map;
    assert!(m.classify().active);
}
