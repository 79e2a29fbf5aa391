//! Bounded enumeration of connected graphs up to isomorphism.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::canon::{canonical_encoding, canonical_graph};
use crate::graph::{End, Graph, VertexId};

/// Connected graphs with `legs` legs, at most `max_internal_edges` internal
/// edges and between one and `max_vertices` vertices, one per isomorphism
/// class, sorted by canonical encoding. With `max_vertices == 0` the only
/// class is the edge graph.
pub fn enumerate_graphs(max_vertices: usize, max_internal_edges: usize, legs: usize) -> Vec<Graph> {
    if max_vertices == 0 {
        return if legs == 0 {
            vec![Graph::edge()]
        } else {
            Vec::new()
        };
    }
    let mut classes: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
    for n in 1..=max_vertices {
        for (key, g) in graphs_on(n, max_internal_edges, legs) {
            classes.entry(key).or_insert(g);
        }
    }
    classes.into_values().collect()
}

/// The fixture corpus: every connected graph with at most `max_vertices`
/// vertices and at most `max_edges` edges in total (legs included), the edge
/// graph among them, in canonical-encoding order.
pub fn corpus(max_vertices: usize, max_edges: usize) -> Vec<Graph> {
    let mut classes: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
    let edge = Graph::edge();
    classes.insert(canonical_encoding(&edge), edge);
    for n in 1..=max_vertices {
        for legs in 0..=max_edges {
            for (key, g) in graphs_on(n, max_edges - legs, legs) {
                classes.entry(key).or_insert(g);
            }
        }
    }
    classes.into_values().collect()
}

/// All connected graphs on exactly `n` vertices, keyed by canonical
/// encoding, each given as its canonical representative.
fn graphs_on(n: usize, max_internal: usize, legs: usize) -> Vec<(Vec<u8>, Graph)> {
    if n == 0 || max_internal + 1 < n {
        return Vec::new();
    }
    let pairs: Vec<(VertexId, VertexId)> =
        (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut internal_sets = Vec::new();
    for m in (n - 1)..=max_internal {
        internal_sets.extend(multisets(pairs.len(), m));
    }
    let leg_sets = multisets(n, legs);
    let mut found: Vec<(Vec<u8>, Graph)> = internal_sets
        .par_iter()
        .flat_map_iter(|internal| {
            let pairs = &pairs;
            leg_sets.iter().filter_map(move |leg_set| {
                let mut edges: Vec<(End, End)> = internal
                    .iter()
                    .map(|&p| (End::Vertex(pairs[p].0), End::Vertex(pairs[p].1)))
                    .collect();
                edges.extend(leg_set.iter().map(|&v| (End::Vertex(v), End::Inf)));
                let g = Graph::from_edges(n, edges).ok()?;
                let (rep, _) = canonical_graph(&g, None);
                Some((canonical_encoding(&rep), rep))
            })
        })
        .collect();
    found.sort_by(|a, b| a.0.cmp(&b.0));
    found.dedup_by(|a, b| a.0 == b.0);
    found
}

/// Nondecreasing sequences of length `k` over `0..alphabet`.
pub(crate) fn multisets(alphabet: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    if alphabet == 0 {
        return out;
    }
    let mut cur = vec![0usize; k];
    loop {
        out.push(cur.clone());
        // increment the rightmost position that can grow
        let mut i = k;
        while i > 0 && cur[i - 1] == alphabet - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let v = cur[i - 1] + 1;
        for x in &mut cur[i - 1..] {
            *x = v;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Elementary;

    #[test]
    fn small_counts() {
        let one = enumerate_graphs(1, 1, 0);
        assert_eq!(one.len(), 2);
        assert!(one.contains(&Graph::corolla(0)));
        assert!(one.contains(&Graph::elementary(Elementary::Loops(1))));
        let two = enumerate_graphs(2, 1, 0);
        assert_eq!(two.len(), 3);
        for e in 0..5 {
            assert_eq!(enumerate_graphs(0, e, 0), vec![Graph::edge()]);
        }
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(multisets(6, 4).len(), 126);
        assert_eq!(multisets(0, 0).len(), 1);
        assert_eq!(multisets(0, 1).len(), 0);
    }

    #[test]
    fn output_strictly_increasing() {
        let gs = enumerate_graphs(3, 3, 1);
        let keys: Vec<_> = gs.iter().map(canonical_encoding).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(gs
            .iter()
            .all(|g| g.leg_count() == 1 && g.internal_edge_count() <= 3));
    }
}
