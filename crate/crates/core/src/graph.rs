//! Connected half-edge graphs.
//!
//! A graph is a finite set of vertices, a finite set of arcs (half-edges)
//! paired into edges by a fixed-point-free involution, and an incidence map
//! sending every arc either to a vertex or to the point at infinity. The
//! involution is never stored: arc `2i` and arc `2i + 1` form edge `i`.

use std::fmt;

use thiserror::Error;

use crate::canon;

/// Index of a vertex in `0..vertex_count`.
pub type VertexId = usize;
/// Index of an arc in `0..arc_count`.
pub type ArcId = usize;
/// Index of an edge; edge `e` consists of arcs `2e` and `2e + 1`.
pub type EdgeId = usize;

/// Where an arc is attached: a vertex or the point at infinity.
///
/// `Vertex` sorts before `Inf`, so orderings of maps and encodings treat
/// infinity as the largest end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    Vertex(VertexId),
    Inf,
}

impl End {
    pub fn vertex(self) -> Option<VertexId> {
        match self {
            End::Vertex(v) => Some(v),
            End::Inf => None,
        }
    }

    pub fn is_inf(self) -> bool {
        matches!(self, End::Inf)
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            End::Vertex(v) => write!(f, "{v}"),
            End::Inf => f.write_str("inf"),
        }
    }
}

/// The involution on arcs.
#[inline]
pub fn dagger(a: ArcId) -> ArcId {
    a ^ 1
}

#[inline]
pub fn edge_of(a: ArcId) -> EdgeId {
    a / 2
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("graph has no vertices and no arcs")]
    Empty,
    #[error("arc {arc} is incident to vertex {vertex}, but the graph has {vertex_count} vertices")]
    BadIndex {
        arc: ArcId,
        vertex: VertexId,
        vertex_count: usize,
    },
    #[error("odd number of arc incidences ({0})")]
    OddArcCount(usize),
}

impl GraphError {
    pub fn code(&self) -> &'static str {
        match self {
            GraphError::Disconnected { .. } => "DISCONNECTED",
            GraphError::Empty => "EMPTY",
            GraphError::BadIndex { .. } | GraphError::OddArcCount(_) => "BAD_INDEX",
        }
    }
}

/// How an edge sits in the graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// Both arcs incident to vertices.
    Internal,
    /// Exactly one arc incident to infinity.
    Leg,
    /// Both arcs incident to infinity; only the edge graph has one.
    Free,
}

/// A validated connected graph. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    ends: Vec<End>,
}

/// The elementary graphs and a few named fixtures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    /// The edge: no vertices, one free edge.
    Edge,
    /// One vertex with `k` legs.
    Corolla(usize),
    /// `n` vertices in a chain with a leg at each end.
    Linear(usize),
    /// One vertex with `j` loops.
    Loops(usize),
    /// Two vertices joined by three parallel edges.
    Theta,
}

impl Graph {
    /// Builds a graph from the incidence of each arc. `ends.len()` must be
    /// even; arcs `2i` and `2i + 1` are daggers of each other.
    pub fn new(vertex_count: usize, ends: Vec<End>) -> Result<Self, GraphError> {
        if !ends.len().is_multiple_of(2) {
            return Err(GraphError::OddArcCount(ends.len()));
        }
        for (arc, end) in ends.iter().enumerate() {
            if let End::Vertex(vertex) = *end {
                if vertex >= vertex_count {
                    return Err(GraphError::BadIndex {
                        arc,
                        vertex,
                        vertex_count,
                    });
                }
            }
        }
        if vertex_count == 0 && ends.is_empty() {
            return Err(GraphError::Empty);
        }
        let components = count_components(vertex_count, &ends);
        if components != 1 {
            return Err(GraphError::Disconnected { components });
        }
        Ok(Graph { vertex_count, ends })
    }

    /// Builds from `(end, end)` pairs, one per edge.
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (End, End)>,
    ) -> Result<Self, GraphError> {
        let ends = edges.into_iter().flat_map(|(x, y)| [x, y]).collect();
        Graph::new(vertex_count, ends)
    }

    pub fn elementary(kind: Elementary) -> Graph {
        use End::{Inf, Vertex};
        let (n, edges): (usize, Vec<(End, End)>) = match kind {
            Elementary::Edge => (0, vec![(Inf, Inf)]),
            Elementary::Corolla(k) => (1, vec![(Vertex(0), Inf); k]),
            Elementary::Linear(n) => {
                // edge i joins v_{i-1} (or infinity) to v_i (or infinity)
                let edges = (0..=n)
                    .map(|i| {
                        let left = if i > 0 { Vertex(i - 1) } else { Inf };
                        let right = if i < n { Vertex(i) } else { Inf };
                        (left, right)
                    })
                    .collect();
                (n, edges)
            }
            Elementary::Loops(j) => (1, vec![(Vertex(0), Vertex(0)); j]),
            Elementary::Theta => (2, vec![(Vertex(0), Vertex(1)); 3]),
        };
        Graph::from_edges(n, edges).expect("elementary graphs are connected")
    }

    pub fn edge() -> Graph {
        Graph::elementary(Elementary::Edge)
    }

    pub fn corolla(k: usize) -> Graph {
        Graph::elementary(Elementary::Corolla(k))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arc_count(&self) -> usize {
        self.ends.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.vertex_count
    }

    pub fn arcs(&self) -> std::ops::Range<ArcId> {
        0..self.ends.len()
    }

    pub fn edges(&self) -> std::ops::Range<EdgeId> {
        0..self.edge_count()
    }

    /// The incidence `t(a)`.
    #[inline]
    pub fn end(&self, a: ArcId) -> End {
        self.ends[a]
    }

    pub fn ends(&self) -> &[End] {
        &self.ends
    }

    /// Arcs incident to `v`, in increasing index order.
    pub fn arcs_at(&self, v: VertexId) -> Vec<ArcId> {
        self.arcs()
            .filter(|&a| self.ends[a] == End::Vertex(v))
            .collect()
    }

    pub fn valence(&self, v: VertexId) -> usize {
        self.ends.iter().filter(|&&e| e == End::Vertex(v)).count()
    }

    pub fn edge_kind(&self, e: EdgeId) -> EdgeKind {
        match (self.ends[2 * e].is_inf(), self.ends[2 * e + 1].is_inf()) {
            (false, false) => EdgeKind::Internal,
            (true, true) => EdgeKind::Free,
            _ => EdgeKind::Leg,
        }
    }

    pub fn internal_edge_count(&self) -> usize {
        self.edges()
            .filter(|&e| self.edge_kind(e) == EdgeKind::Internal)
            .count()
    }

    /// Leg edges in increasing index order.
    pub fn legs(&self) -> Vec<EdgeId> {
        self.edges()
            .filter(|&e| self.edge_kind(e) == EdgeKind::Leg)
            .collect()
    }

    pub fn leg_count(&self) -> usize {
        self.legs().len()
    }

    /// First Betti number: internal edges minus vertices plus one, and zero
    /// for the edge graph.
    pub fn betti_number(&self) -> usize {
        if self.vertex_count == 0 {
            return 0;
        }
        // connectedness guarantees E_int >= V - 1
        self.internal_edge_count() + 1 - self.vertex_count
    }

    pub fn is_tree(&self) -> bool {
        self.betti_number() == 0
    }

    /// Isomorphic to the linear graph on the same number of vertices.
    pub fn is_linear(&self) -> bool {
        let model = Graph::elementary(Elementary::Linear(self.vertex_count));
        self.edge_count() == model.edge_count()
            && canon::canonical_encoding(self) == canon::canonical_encoding(&model)
    }

    /// No directed cycle among internal edges, each directed from the vertex
    /// of its chosen arc to the vertex of the dagger.
    pub fn is_directed_acyclic(&self, orientation: &Orientation) -> bool {
        assert_eq!(orientation.out_arcs.len(), self.edge_count());
        let mut out: Vec<Vec<VertexId>> = vec![Vec::new(); self.vertex_count];
        let mut indegree = vec![0usize; self.vertex_count];
        for &a in &orientation.out_arcs {
            if let (End::Vertex(u), End::Vertex(w)) = (self.end(a), self.end(dagger(a))) {
                out[u].push(w);
                indegree[w] += 1;
            }
        }
        // Kahn's algorithm
        let mut stack: Vec<VertexId> = self.vertices().filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(u) = stack.pop() {
            seen += 1;
            for &w in &out[u] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    stack.push(w);
                }
            }
        }
        seen == self.vertex_count
    }

    pub fn structural_predicates(&self, orientation: Option<&Orientation>) -> StructuralPredicates {
        StructuralPredicates {
            is_tree: self.is_tree(),
            is_linear: self.is_linear(),
            is_directed_acyclic: orientation.map(|o| self.is_directed_acyclic(o)),
        }
    }

    /// All `2^edges` orientations, in binary counting order on the
    /// "dagger chosen" bit of each edge.
    pub fn orientations(&self) -> Vec<Orientation> {
        let m = self.edge_count();
        assert!(m < 32, "too many edges to list orientations");
        (0u32..1 << m)
            .map(|bits| Orientation {
                out_arcs: (0..m).map(|e| 2 * e + ((bits >> e) & 1) as usize).collect(),
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructuralPredicates {
    pub is_tree: bool,
    pub is_linear: bool,
    pub is_directed_acyclic: Option<bool>,
}

/// A choice of one arc in every edge.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orientation {
    out_arcs: Vec<ArcId>,
}

impl Orientation {
    pub fn new(g: &Graph, out_arcs: Vec<ArcId>) -> Option<Self> {
        let ok = out_arcs.len() == g.edge_count()
            && out_arcs.iter().enumerate().all(|(e, &a)| edge_of(a) == e);
        ok.then_some(Orientation { out_arcs })
    }

    /// Every edge oriented by its even arc.
    pub fn standard(g: &Graph) -> Self {
        Orientation {
            out_arcs: g.edges().map(|e| 2 * e).collect(),
        }
    }

    pub fn out_arcs(&self) -> &[ArcId] {
        &self.out_arcs
    }
}

fn count_components(vertex_count: usize, ends: &[End]) -> usize {
    let arcs = ends.len();
    let mut parent: Vec<usize> = (0..arcs + vertex_count).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let union = |x: usize, y: usize, parent: &mut Vec<usize>| {
        let (rx, ry) = (find(parent, x), find(parent, y));
        if rx != ry {
            parent[rx] = ry;
        }
    };
    for a in 0..arcs {
        union(a, dagger(a), &mut parent);
        if let End::Vertex(v) = ends[a] {
            union(a, arcs + v, &mut parent);
        }
    }
    (0..arcs + vertex_count)
        .filter(|&x| find(&mut parent, x) == x)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use End::{Inf, Vertex};

    #[test]
    fn build_edge_graph() {
        let g = Graph::new(0, vec![Inf, Inf]).unwrap();
        assert_eq!(g, Graph::edge());
        assert_eq!(g.edge_kind(0), EdgeKind::Free);
        assert_eq!(g.betti_number(), 0);
    }

    #[test]
    fn build_isolated_vertex() {
        let g = Graph::new(1, vec![]).unwrap();
        assert_eq!(g, Graph::corolla(0));
        assert_eq!(g.vertex_count(), 1);
    }

    #[test]
    fn disjoint_stars_are_disconnected() {
        let err = Graph::new(2, vec![Vertex(0), Inf, Vertex(1), Inf]).unwrap_err();
        assert_eq!(err.code(), "DISCONNECTED");
    }

    #[test]
    fn empty_and_bad_index() {
        assert_eq!(Graph::new(0, vec![]).unwrap_err(), GraphError::Empty);
        assert_eq!(
            Graph::new(1, vec![Vertex(1), Inf]).unwrap_err().code(),
            "BAD_INDEX"
        );
        assert_eq!(
            Graph::new(1, vec![Vertex(0)]).unwrap_err().code(),
            "BAD_INDEX"
        );
        // two free edges: nodeless pieces cannot be glued
        assert_eq!(
            Graph::new(0, vec![Inf; 4]).unwrap_err().code(),
            "DISCONNECTED"
        );
    }

    #[test]
    fn corolla_shape() {
        let c = Graph::corolla(3);
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.leg_count(), 3);
        for i in 0..3 {
            assert_eq!(c.end(2 * i), Vertex(0));
            assert_eq!(c.end(2 * i + 1), Inf);
        }
    }

    #[test]
    fn linear_zero_is_edge() {
        assert_eq!(Graph::elementary(Elementary::Linear(0)), Graph::edge());
        let l3 = Graph::elementary(Elementary::Linear(3));
        assert_eq!(l3.vertex_count(), 3);
        assert_eq!(l3.leg_count(), 2);
        assert_eq!(l3.internal_edge_count(), 2);
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(Graph::elementary(Elementary::Theta).betti_number(), 2);
        assert_eq!(Graph::elementary(Elementary::Loops(2)).betti_number(), 2);
        let l1 = Graph::elementary(Elementary::Loops(1));
        assert_eq!(l1.valence(0), 2);
        assert_eq!(l1.betti_number(), 1);
        for k in 0..5 {
            assert_eq!(Graph::corolla(k).betti_number(), 0);
        }
    }

    #[test]
    fn predicates() {
        assert!(Graph::corolla(5).is_tree());
        let loop1 = Graph::elementary(Elementary::Loops(1));
        for o in loop1.orientations() {
            assert!(!loop1.is_directed_acyclic(&o));
        }
        let theta = Graph::elementary(Elementary::Theta);
        let same = Orientation::standard(&theta);
        assert!(theta.is_directed_acyclic(&same));
        let mixed = Orientation::new(&theta, vec![0, 3, 4]).unwrap();
        assert!(!theta.is_directed_acyclic(&mixed));
        assert!(Graph::elementary(Elementary::Linear(4)).is_linear());
        assert!(Graph::edge().is_linear());
        assert!(!Graph::corolla(3).is_linear());
        assert!(Graph::corolla(2).is_linear());
        assert!(!loop1.is_linear());
    }

    #[test]
    fn orientation_rejects_foreign_arcs() {
        let theta = Graph::elementary(Elementary::Theta);
        assert!(Orientation::new(&theta, vec![0, 2, 2]).is_none());
        assert!(Orientation::new(&theta, vec![0, 2]).is_none());
        assert_eq!(theta.orientations().len(), 8);
    }
}
