//! Graph maps in their combinatorial form.
//!
//! A map `f: Γ → Λ` is a pointed vertex map `V(Γ)₊ → V(Λ)₊` together with a
//! contravariant arc map `A(Λ) → A(Γ)`. Each target arc names the source arc
//! it lies on; the preimage of a source arc `a`, suitably ordered, is a
//! bivalent path in `Λ` running from the image of `t(a†)` to the image of
//! `t(a)`. Two maps are equal iff both components agree.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::graph::{dagger, ArcId, End, Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("malformed map data: {0}")]
    Shape(String),
    #[error("arc map does not commute with dagger at target arc {0}")]
    DaggerViolation(ArcId),
    #[error("preimage of source arc {arc} is not a bivalent path: {reason}")]
    BadPath { arc: ArcId, reason: String },
    #[error("fiber over target vertex {0} is disconnected")]
    FiberDisconnected(VertexId),
    #[error(
        "target vertex {0} is outside the image but not interior to exactly one bivalent path"
    )]
    OrphanTargetVertex(VertexId),
    #[error("maps are not composable: target of the first differs from source of the second")]
    Mismatch,
    #[error("no vertex {0}")]
    BadVertex(VertexId),
    #[error("no arc {0}")]
    BadArc(ArcId),
    #[error("hom-set search too large: {0}")]
    TooLarge(String),
}

impl MapError {
    pub fn code(&self) -> &'static str {
        match self {
            MapError::Shape(_) => "BAD_INDEX",
            MapError::DaggerViolation(_) => "DAGGER_VIOLATION",
            MapError::BadPath { .. } => "BAD_PATH",
            MapError::FiberDisconnected(_) => "FIBER_DISCONNECTED",
            MapError::OrphanTargetVertex(_) => "ORPHAN_TARGET_VERTEX",
            MapError::Mismatch => "MISMATCH",
            MapError::BadVertex(_) => "BAD_VERTEX",
            MapError::BadArc(_) => "BAD_ARC",
            MapError::TooLarge(_) => "TOO_LARGE",
        }
    }
}

/// A validated graph map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphMap {
    source: Graph,
    target: Graph,
    vertex_map: Vec<End>,
    arc_map: Vec<ArcId>,
}

/// Inert / active / quasi-collapse flags of a map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MapClass {
    pub inert: bool,
    pub active: bool,
    pub quasi_collapse: bool,
}

impl MapClass {
    pub fn is_isomorphism(&self) -> bool {
        self.inert && self.active
    }
}

/// Which maps `enumerate_maps` keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MapFilter {
    #[default]
    All,
    Inert,
    Active,
    QuasiCollapse,
    Isomorphism,
}

impl MapFilter {
    pub fn accepts(self, class: MapClass) -> bool {
        match self {
            MapFilter::All => true,
            MapFilter::Inert => class.inert,
            MapFilter::Active => class.active,
            MapFilter::QuasiCollapse => class.quasi_collapse,
            MapFilter::Isomorphism => class.is_isomorphism(),
        }
    }
}

impl GraphMap {
    /// Checks a candidate map against the five conditions and returns it.
    pub fn new(
        source: Graph,
        target: Graph,
        vertex_map: Vec<End>,
        arc_map: Vec<ArcId>,
    ) -> Result<Self, MapError> {
        let m = GraphMap {
            source,
            target,
            vertex_map,
            arc_map,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn identity(g: &Graph) -> Self {
        GraphMap {
            source: g.clone(),
            target: g.clone(),
            vertex_map: g.vertices().map(End::Vertex).collect(),
            arc_map: g.arcs().collect(),
        }
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn vertex_map(&self) -> &[End] {
        &self.vertex_map
    }

    pub fn arc_map(&self) -> &[ArcId] {
        &self.arc_map
    }

    /// Image of a source end; infinity goes to infinity.
    #[inline]
    pub fn map_end(&self, e: End) -> End {
        match e {
            End::Vertex(v) => self.vertex_map[v],
            End::Inf => End::Inf,
        }
    }

    /// Ordering used for deterministic listings: vertex map first, then arc
    /// map, lexicographically.
    pub fn listing_cmp(&self, other: &Self) -> Ordering {
        self.vertex_map
            .cmp(&other.vertex_map)
            .then_with(|| self.arc_map.cmp(&other.arc_map))
    }

    /// Target arcs mapping to each source arc, unordered.
    pub fn preimages(&self) -> Vec<Vec<ArcId>> {
        let mut pre = vec![Vec::new(); self.source.arc_count()];
        for (b, &a) in self.arc_map.iter().enumerate() {
            pre[a].push(b);
        }
        pre
    }

    /// The preimage of source arc `a` ordered as a path from the image of
    /// `t(a†)` to the image of `t(a)`.
    pub fn subdivision_path(&self, a: ArcId) -> Vec<ArcId> {
        let pre = self.preimages();
        let image = self.image_flags();
        order_path(
            &self.target,
            &pre[a],
            self.map_end(self.source.end(dagger(a))),
            self.map_end(self.source.end(a)),
            &image,
        )
        .expect("validated map has ordered paths")
    }

    /// Source vertices over target vertex `w`.
    pub fn fiber(&self, w: VertexId) -> Vec<VertexId> {
        self.source
            .vertices()
            .filter(|&v| self.vertex_map[v] == End::Vertex(w))
            .collect()
    }

    /// Source edges collapsed by the map: empty preimage and not deleted.
    pub fn collapsed_edges(&self) -> Vec<usize> {
        let pre = self.preimages();
        self.source
            .edges()
            .filter(|&e| pre[2 * e].is_empty() && !self.map_end(self.source.end(2 * e)).is_inf())
            .collect()
    }

    /// First Betti number of the fiber graph over `w` (zero when empty).
    pub fn fiber_betti(&self, w: VertexId) -> usize {
        let fiber = self.fiber(w);
        if fiber.is_empty() {
            return 0;
        }
        let collapsed = self
            .collapsed_edges()
            .into_iter()
            .filter(|&e| self.map_end(self.source.end(2 * e)) == End::Vertex(w))
            .count();
        collapsed + 1 - fiber.len()
    }

    fn image_flags(&self) -> Vec<bool> {
        let mut hit = vec![false; self.target.vertex_count()];
        for e in &self.vertex_map {
            if let End::Vertex(w) = *e {
                hit[w] = true;
            }
        }
        hit
    }

    fn validate(&self) -> Result<(), MapError> {
        let (src, dst) = (&self.source, &self.target);
        if self.vertex_map.len() != src.vertex_count() {
            return Err(MapError::Shape(format!(
                "vertex map has {} entries for {} source vertices",
                self.vertex_map.len(),
                src.vertex_count()
            )));
        }
        if let Some(bad) = self
            .vertex_map
            .iter()
            .find(|e| matches!(e, End::Vertex(w) if *w >= dst.vertex_count()))
        {
            return Err(MapError::Shape(format!(
                "vertex map names missing target vertex {bad}"
            )));
        }
        if self.arc_map.len() != dst.arc_count() {
            return Err(MapError::Shape(format!(
                "arc map has {} entries for {} target arcs",
                self.arc_map.len(),
                dst.arc_count()
            )));
        }
        if let Some(&bad) = self.arc_map.iter().find(|&&a| a >= src.arc_count()) {
            return Err(MapError::Shape(format!(
                "arc map names missing source arc {bad}"
            )));
        }
        for b in dst.arcs() {
            if self.arc_map[dagger(b)] != dagger(self.arc_map[b]) {
                return Err(MapError::DaggerViolation(b));
            }
        }

        let pre = self.preimages();
        let image = self.image_flags();
        let mut interior_count = vec![0usize; dst.vertex_count()];
        for e in src.edges() {
            let a = 2 * e;
            let start = self.map_end(src.end(dagger(a)));
            let end = self.map_end(src.end(a));
            let path = order_path(dst, &pre[a], start, end, &image)
                .map_err(|reason| MapError::BadPath { arc: a, reason })?;
            for &b in path.iter().take(path.len().saturating_sub(1)) {
                if let End::Vertex(w) = dst.end(b) {
                    interior_count[w] += 1;
                }
            }
        }

        // fibers over hit vertices are connected through collapsed edges
        let mut parent: Vec<VertexId> = src.vertices().collect();
        for e in src.edges() {
            if !pre[2 * e].is_empty() {
                continue;
            }
            if let (End::Vertex(u), End::Vertex(v)) = (src.end(2 * e), src.end(2 * e + 1)) {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                parent[ru] = rv;
            }
        }
        let mut root_of_fiber: Vec<Option<VertexId>> = vec![None; dst.vertex_count()];
        for v in src.vertices() {
            if let End::Vertex(w) = self.vertex_map[v] {
                let r = find(&mut parent, v);
                match root_of_fiber[w] {
                    None => root_of_fiber[w] = Some(r),
                    Some(r0) if r0 != r => return Err(MapError::FiberDisconnected(w)),
                    _ => {}
                }
            }
        }

        for w in dst.vertices() {
            if !image[w] && (dst.valence(w) != 2 || interior_count[w] != 1) {
                return Err(MapError::OrphanTargetVertex(w));
            }
        }
        Ok(())
    }

    pub fn classify(&self) -> MapClass {
        let (src, dst) = (&self.source, &self.target);
        let mut hits = vec![0usize; dst.vertex_count()];
        let mut deletes_vertex = false;
        for e in &self.vertex_map {
            match *e {
                End::Vertex(w) => hits[w] += 1,
                End::Inf => deletes_vertex = true,
            }
        }
        let pre = self.preimages();
        let collapses_kept = src
            .arcs()
            .any(|a| pre[a].is_empty() && !self.map_end(src.end(a)).is_inf());
        let inert = hits.iter().all(|&h| h == 1) && !collapses_kept;
        let through_inf = src.edges().any(|e| {
            let path = self.subdivision_path(2 * e);
            path.iter()
                .take(path.len().saturating_sub(1))
                .any(|&b| dst.end(b).is_inf())
        });
        let active = !deletes_vertex && !through_inf;
        let quasi_collapse = hits.iter().all(|&h| h > 0);
        MapClass {
            inert,
            active,
            quasi_collapse,
        }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &GraphMap) -> Result<GraphMap, MapError> {
        if first.target != self.source {
            return Err(MapError::Mismatch);
        }
        let vertex_map = first.vertex_map.iter().map(|&e| self.map_end(e)).collect();
        let arc_map = self.arc_map.iter().map(|&b| first.arc_map[b]).collect();
        GraphMap::new(
            first.source.clone(),
            self.target.clone(),
            vertex_map,
            arc_map,
        )
    }

    /// Composite without re-validation; sweeps validate separately.
    pub fn compose_unchecked(&self, first: &GraphMap) -> GraphMap {
        GraphMap {
            source: first.source.clone(),
            target: self.target.clone(),
            vertex_map: first.vertex_map.iter().map(|&e| self.map_end(e)).collect(),
            arc_map: self.arc_map.iter().map(|&b| first.arc_map[b]).collect(),
        }
    }

    /// Runs the validator on an arbitrary candidate.
    pub fn revalidate(&self) -> Result<(), MapError> {
        self.validate()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<GraphMap> {
        if !self.classify().is_isomorphism() {
            return None;
        }
        let mut vertex_map = vec![End::Inf; self.target.vertex_count()];
        for (v, e) in self.vertex_map.iter().enumerate() {
            if let End::Vertex(w) = *e {
                vertex_map[w] = End::Vertex(v);
            }
        }
        let mut arc_map = vec![0; self.source.arc_count()];
        for (b, &a) in self.arc_map.iter().enumerate() {
            arc_map[a] = b;
        }
        GraphMap::new(
            self.target.clone(),
            self.source.clone(),
            vertex_map,
            arc_map,
        )
        .ok()
    }
}

impl fmt::Display for GraphMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertex_map.iter().map(|e| e.to_string()).collect();
        let arcs: Vec<String> = self.arc_map.iter().map(|a| a.to_string()).collect();
        write!(f, "v[{}] a[{}]", vs.join(","), arcs.join(","))
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orders `arcs` into a bivalent path from `start` to `end` in `g`.
/// Interior vertices must be bivalent and outside the image; the path may
/// pass through infinity. Empty paths need `start == end`.
fn order_path(
    g: &Graph,
    arcs: &[ArcId],
    start: End,
    end: End,
    image: &[bool],
) -> Result<Vec<ArcId>, String> {
    if arcs.is_empty() {
        return if start == end {
            Ok(Vec::new())
        } else {
            Err(format!(
                "empty preimage but endpoints {start} and {end} differ"
            ))
        };
    }
    let mut used = vec![false; arcs.len()];
    let mut path = Vec::with_capacity(arcs.len());
    if extend_path(g, arcs, start, end, image, &mut used, &mut path) {
        Ok(path)
    } else {
        Err(format!("no ordering runs from {start} to {end}"))
    }
}

fn extend_path(
    g: &Graph,
    arcs: &[ArcId],
    pos: End,
    end: End,
    image: &[bool],
    used: &mut [bool],
    path: &mut Vec<ArcId>,
) -> bool {
    if path.len() == arcs.len() {
        return pos == end;
    }
    if !path.is_empty() {
        if let End::Vertex(w) = pos {
            if image[w] || g.valence(w) != 2 {
                return false;
            }
        }
    }
    for i in 0..arcs.len() {
        let b = arcs[i];
        if used[i] || g.end(dagger(b)) != pos {
            continue;
        }
        used[i] = true;
        path.push(b);
        if extend_path(g, arcs, g.end(b), end, image, used, path) {
            return true;
        }
        path.pop();
        used[i] = false;
    }
    false
}

/// The inert map `Γ → 𝔠_v` onto the corolla of arcs at `v`. Corolla edge
/// `j` corresponds to the `j`-th incident arc in index order; its arc `2j`
/// sits at the vertex.
pub fn rho_vertex(g: &Graph, v: VertexId) -> Result<GraphMap, MapError> {
    if v >= g.vertex_count() {
        return Err(MapError::BadVertex(v));
    }
    let incident = g.arcs_at(v);
    let target = Graph::corolla(incident.len());
    let vertex_map = g
        .vertices()
        .map(|u| if u == v { End::Vertex(0) } else { End::Inf })
        .collect();
    let arc_map = incident.iter().flat_map(|&a| [a, dagger(a)]).collect();
    GraphMap::new(g.clone(), target, vertex_map, arc_map)
}

/// The inert map `Γ → 𝔢` including `{a, a†}`, with arc 0 of the edge going
/// to `a`.
pub fn rho_arc(g: &Graph, a: ArcId) -> Result<GraphMap, MapError> {
    if a >= g.arc_count() {
        return Err(MapError::BadArc(a));
    }
    GraphMap::new(
        g.clone(),
        Graph::edge(),
        vec![End::Inf; g.vertex_count()],
        vec![a, dagger(a)],
    )
}

/// The nontrivial automorphism of the edge graph.
pub fn edge_swap() -> GraphMap {
    GraphMap::new(Graph::edge(), Graph::edge(), Vec::new(), vec![1, 0]).expect("valid")
}
