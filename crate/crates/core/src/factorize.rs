//! Inert–active factorization `Γ ↣ Σ ⇝ Λ`.
//!
//! The middle graph `Σ` keeps the source vertices not sent to infinity.
//! Every source edge that is not deleted contributes one edge of `Σ` per
//! stretch of its subdivision path between visits to infinity; a collapsed
//! edge contributes itself.

use crate::graph::{dagger, End, Graph, VertexId};
use crate::morphism::GraphMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub inert: GraphMap,
    pub active: GraphMap,
}

impl Factorization {
    pub fn middle(&self) -> &Graph {
        self.inert.target()
    }
}

/// Order in which vertices and edges of the middle graph are numbered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchOrder {
    Forward,
    Reverse,
}

/// Factors `m` as inert followed by active. Maps that already are inert
/// (resp. active) come back paired with an identity.
pub fn factorize(m: &GraphMap) -> Factorization {
    let class = m.classify();
    if class.inert {
        return Factorization {
            inert: m.clone(),
            active: GraphMap::identity(m.target()),
        };
    }
    if class.active {
        return Factorization {
            inert: GraphMap::identity(m.source()),
            active: m.clone(),
        };
    }
    factorize_with(m, SearchOrder::Forward)
}

/// The general construction, numbering the middle graph in `order`.
pub fn factorize_with(m: &GraphMap, order: SearchOrder) -> Factorization {
    let src = m.source();
    let dst = m.target();

    let mut kept: Vec<VertexId> = src
        .vertices()
        .filter(|&v| !m.vertex_map()[v].is_inf())
        .collect();
    let mut edges: Vec<usize> = src.edges().collect();
    if order == SearchOrder::Reverse {
        kept.reverse();
        edges.reverse();
    }
    let mut middle_index = vec![usize::MAX; src.vertex_count()];
    for (i, &v) in kept.iter().enumerate() {
        middle_index[v] = i;
    }
    let middle_end = |e: End| match e {
        End::Vertex(v) if !m.vertex_map()[v].is_inf() => End::Vertex(middle_index[v]),
        _ => End::Inf,
    };

    // per middle edge: (end at t(a†) side, end at t(a) side, source arc a)
    let mut middle_edges: Vec<(End, End, usize)> = Vec::new();
    // target arc -> middle arc
    let mut active_arc = vec![usize::MAX; dst.arc_count()];
    for e in edges {
        let a = 2 * e;
        let path = m.subdivision_path(a);
        let start = middle_end(src.end(dagger(a)));
        let finish = middle_end(src.end(a));
        if path.is_empty() {
            if m.map_end(src.end(a)).is_inf() {
                continue; // deleted
            }
            middle_edges.push((start, finish, a));
            continue;
        }
        let mut chunks: Vec<Vec<usize>> = vec![Vec::new()];
        for (i, &b) in path.iter().enumerate() {
            chunks.last_mut().expect("nonempty").push(b);
            if i + 1 < path.len() && dst.end(b).is_inf() {
                chunks.push(Vec::new());
            }
        }
        let last = chunks.len() - 1;
        for (i, chunk) in chunks.into_iter().enumerate() {
            let k = middle_edges.len();
            let from = if i == 0 { start } else { End::Inf };
            let to = if i == last { finish } else { End::Inf };
            middle_edges.push((from, to, a));
            for b in chunk {
                active_arc[b] = 2 * k;
                active_arc[dagger(b)] = 2 * k + 1;
            }
        }
    }

    // arc 2k sits at the t(a) side and maps to a
    let middle = Graph::from_edges(
        kept.len(),
        middle_edges.iter().map(|&(from, to, _)| (to, from)),
    )
    .expect("middle graph of a valid map is connected");
    let inert_vertices = src.vertices().map(|v| middle_end(End::Vertex(v))).collect();
    let inert_arcs = middle_edges
        .iter()
        .flat_map(|&(_, _, a)| [a, dagger(a)])
        .collect();
    let inert = GraphMap::new(src.clone(), middle.clone(), inert_vertices, inert_arcs)
        .expect("inert part is a valid map");
    let active_vertices = kept.iter().map(|&v| m.vertex_map()[v]).collect();
    let active = GraphMap::new(middle, dst.clone(), active_vertices, active_arc)
        .expect("active part is a valid map");
    Factorization { inert, active }
}
