//! Canonical encodings of graphs and vertex-labelled graphs.
//!
//! A graph up to isomorphism is its vertex count together with the multiset
//! of unordered end pairs of its edges, taken up to renaming vertices (arcs
//! inside an edge may always be swapped, and edges permuted). The encoding is
//! the lexicographically least serialization over all vertex orderings that
//! respect an isomorphism-invariant colour refinement.

use std::collections::BTreeMap;

use crate::graph::{End, Graph, VertexId};

const INF_CODE: u16 = u16::MAX;

/// The encoding bytes together with the ordering that realises them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub encoding: Vec<u8>,
    /// `position[v]` is the canonical index of vertex `v`.
    pub position: Vec<usize>,
}

pub fn canonical_encoding(g: &Graph) -> Vec<u8> {
    canonical_form(g, None).encoding
}

pub fn canonical_encoding_labelled(g: &Graph, labels: &[u32]) -> Vec<u8> {
    canonical_form(g, Some(labels)).encoding
}

/// Canonical form, optionally taking per-vertex labels into account.
pub fn canonical_form(g: &Graph, labels: Option<&[u32]>) -> CanonicalForm {
    let n = g.vertex_count();
    if let Some(l) = labels {
        assert_eq!(l.len(), n, "one label per vertex");
    }
    let cells = refined_cells(g, labels);
    let mut position = vec![0usize; n];
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    // order[i] lists the vertices in cell i in their current trial order
    let mut order: Vec<Vec<VertexId>> = cells;
    loop {
        let mut next = 0;
        for cell in &order {
            for &v in cell {
                position[v] = next;
                next += 1;
            }
        }
        let bytes = serialize(g, labels, &position);
        if best.as_ref().is_none_or(|(b, _)| bytes < *b) {
            best = Some((bytes, position.clone()));
        }
        if !advance(&mut order) {
            break;
        }
    }
    let (encoding, position) = best.expect("at least one ordering");
    CanonicalForm { encoding, position }
}

/// The canonical representative: vertices renumbered canonically, edges
/// sorted, arc `2i` on the smaller end of edge `i`. Labels follow the
/// vertices.
pub fn canonical_graph(g: &Graph, labels: Option<&[u32]>) -> (Graph, Option<Vec<u32>>) {
    let form = canonical_form(g, labels);
    let relabel = |e: End| match e {
        End::Vertex(v) => End::Vertex(form.position[v]),
        End::Inf => End::Inf,
    };
    let mut edges: Vec<(End, End)> = g
        .edges()
        .map(|e| {
            let (x, y) = (relabel(g.end(2 * e)), relabel(g.end(2 * e + 1)));
            if x <= y {
                (x, y)
            } else {
                (y, x)
            }
        })
        .collect();
    edges.sort();
    let graph = Graph::from_edges(g.vertex_count(), edges).expect("relabelling keeps validity");
    let labels = labels.map(|l| {
        let mut out = vec![0; l.len()];
        for (v, &x) in l.iter().enumerate() {
            out[form.position[v]] = x;
        }
        out
    });
    (graph, labels)
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.vertex_count() == h.vertex_count()
        && g.edge_count() == h.edge_count()
        && canonical_encoding(g) == canonical_encoding(h)
}

fn serialize(g: &Graph, labels: Option<&[u32]>, position: &[usize]) -> Vec<u8> {
    let code = |e: End| match e {
        End::Vertex(v) => position[v] as u16,
        End::Inf => INF_CODE,
    };
    let mut pairs: Vec<(u16, u16)> = g
        .edges()
        .map(|e| {
            let (x, y) = (code(g.end(2 * e)), code(g.end(2 * e + 1)));
            (x.min(y), x.max(y))
        })
        .collect();
    pairs.sort_unstable();
    let n = g.vertex_count();
    let mut out = Vec::with_capacity(4 + 2 * n + 4 * pairs.len());
    out.extend_from_slice(&(n as u16).to_be_bytes());
    out.extend_from_slice(&(pairs.len() as u16).to_be_bytes());
    if let Some(labels) = labels {
        let mut by_position = vec![0u16; n];
        for (v, &l) in labels.iter().enumerate() {
            by_position[position[v]] = l as u16;
        }
        for l in by_position {
            out.extend_from_slice(&l.to_be_bytes());
        }
    }
    for (x, y) in pairs {
        out.extend_from_slice(&x.to_be_bytes());
        out.extend_from_slice(&y.to_be_bytes());
    }
    out
}

/// Colour refinement: start from (label, valence, loops, legs) and refine by
/// the multiset of neighbour colours until stable. Returns cells ordered by
/// colour, each sorted by vertex index.
fn refined_cells(g: &Graph, labels: Option<&[u32]>) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    let mut colour: Vec<usize> = {
        let keys: Vec<(u32, usize, usize, usize)> = g
            .vertices()
            .map(|v| {
                let arcs = g.arcs_at(v);
                let loops = arcs
                    .iter()
                    .filter(|&&a| g.end(crate::graph::dagger(a)) == End::Vertex(v))
                    .count();
                let legs = arcs
                    .iter()
                    .filter(|&&a| g.end(crate::graph::dagger(a)).is_inf())
                    .count();
                (labels.map_or(0, |l| l[v]), arcs.len(), loops, legs)
            })
            .collect();
        rank(&keys)
    };
    let mut classes = count_distinct(&colour);
    loop {
        let keys: Vec<(usize, Vec<usize>)> = g
            .vertices()
            .map(|v| {
                let mut nbrs: Vec<usize> = g
                    .arcs_at(v)
                    .into_iter()
                    .map(|a| match g.end(crate::graph::dagger(a)) {
                        End::Vertex(w) => colour[w],
                        End::Inf => usize::MAX,
                    })
                    .collect();
                nbrs.sort_unstable();
                (colour[v], nbrs)
            })
            .collect();
        let next = rank(&keys);
        let next_classes = count_distinct(&next);
        colour = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    let mut cells: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for v in 0..n {
        cells.entry(colour[v]).or_default().push(v);
    }
    cells.into_values().collect()
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("present"))
        .collect()
}

fn count_distinct(c: &[usize]) -> usize {
    let mut s = c.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

/// Advances the odometer of per-cell permutations; false once all visited.
fn advance(order: &mut [Vec<VertexId>]) -> bool {
    for cell in order.iter_mut().rev() {
        if next_permutation(cell) {
            return true;
        }
        // next_permutation leaves the cell sorted again on wrap-around
    }
    false
}

/// Lexicographic next permutation; on the last permutation, resets to the
/// first and returns false.
pub(crate) fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}
