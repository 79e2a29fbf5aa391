//! Brute-force hom-sets.
//!
//! Vertex maps are enumerated first, pruned so that every unhit target
//! vertex is bivalent; then each source edge is assigned a bivalent path of
//! unused target edges (or the empty path when its end images coincide).
//! Complete assignments that use every target edge are run through the
//! validator.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::graph::{dagger, ArcId, End, Graph};
use crate::morphism::{GraphMap, MapError, MapFilter};

pub const MAX_HOM_VERTICES: usize = 6;
pub const MAX_HOM_EDGES: usize = 8;

/// Every valid map `src → dst` accepted by `filter`, sorted by vertex map
/// then arc map.
pub fn enumerate_maps(
    src: &Graph,
    dst: &Graph,
    filter: MapFilter,
) -> Result<Vec<GraphMap>, MapError> {
    for (name, g) in [("source", src), ("target", dst)] {
        if g.vertex_count() > MAX_HOM_VERTICES || g.edge_count() > MAX_HOM_EDGES {
            return Err(MapError::TooLarge(format!(
                "{name} has {} vertices and {} edges (limits {MAX_HOM_VERTICES}, {MAX_HOM_EDGES})",
                g.vertex_count(),
                g.edge_count()
            )));
        }
    }
    let vertex_maps = vertex_maps(src, dst);
    let found: Vec<(Vec<End>, Vec<ArcId>)> = vertex_maps
        .into_par_iter()
        .flat_map_iter(|vmap| {
            let mut search = Search::new(src, dst, vmap);
            search.assign(0);
            search.found.into_iter()
        })
        .collect();
    let unique: BTreeSet<(Vec<End>, Vec<ArcId>)> = found.into_iter().collect();
    let mut out = Vec::with_capacity(unique.len());
    for (vmap, amap) in unique {
        let m = GraphMap::new(src.clone(), dst.clone(), vmap, amap)
            .expect("search only yields validated maps");
        if filter.accepts(m.classify()) {
            out.push(m);
        }
    }
    Ok(out)
}

fn vertex_maps(src: &Graph, dst: &Graph) -> Vec<Vec<End>> {
    let n = src.vertex_count();
    let choices: Vec<End> = dst.vertices().map(End::Vertex).chain([End::Inf]).collect();
    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        let vmap: Vec<End> = digits.iter().map(|&d| choices[d]).collect();
        let mut hit = vec![false; dst.vertex_count()];
        for e in &vmap {
            if let End::Vertex(w) = *e {
                hit[w] = true;
            }
        }
        if dst.vertices().all(|w| hit[w] || dst.valence(w) == 2) {
            out.push(vmap);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            digits[i] += 1;
            if digits[i] < choices.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

struct Search<'a> {
    src: &'a Graph,
    dst: &'a Graph,
    vmap: Vec<End>,
    image: Vec<bool>,
    used_edge: Vec<bool>,
    arc_map: Vec<ArcId>,
    found: Vec<(Vec<End>, Vec<ArcId>)>,
}

impl<'a> Search<'a> {
    fn new(src: &'a Graph, dst: &'a Graph, vmap: Vec<End>) -> Self {
        let mut image = vec![false; dst.vertex_count()];
        for e in &vmap {
            if let End::Vertex(w) = *e {
                image[w] = true;
            }
        }
        Search {
            src,
            dst,
            vmap,
            image,
            used_edge: vec![false; dst.edge_count()],
            arc_map: vec![usize::MAX; dst.arc_count()],
            found: Vec::new(),
        }
    }

    fn image_of(&self, e: End) -> End {
        match e {
            End::Vertex(v) => self.vmap[v],
            End::Inf => End::Inf,
        }
    }

    fn assign(&mut self, edge: usize) {
        if edge == self.src.edge_count() {
            if self.used_edge.iter().all(|&u| u) {
                let candidate = GraphMap::new(
                    self.src.clone(),
                    self.dst.clone(),
                    self.vmap.clone(),
                    self.arc_map.clone(),
                );
                if let Ok(m) = candidate {
                    self.found
                        .push((m.vertex_map().to_vec(), m.arc_map().to_vec()));
                }
            }
            return;
        }
        let a = 2 * edge;
        let start = self.image_of(self.src.end(dagger(a)));
        let end = self.image_of(self.src.end(a));
        if start == end {
            self.assign(edge + 1);
        }
        let mut path = Vec::new();
        self.walk(edge, start, end, &mut path);
    }

    /// Extends `path` (arcs of target edges, heading for `end`) from `pos`.
    fn walk(&mut self, edge: usize, pos: End, end: End, path: &mut Vec<ArcId>) {
        if !path.is_empty() {
            if let End::Vertex(w) = pos {
                if self.image[w] || self.dst.valence(w) != 2 {
                    return;
                }
            }
        }
        let a = 2 * edge;
        for b in self.dst.arcs() {
            if self.used_edge[b / 2] || self.dst.end(dagger(b)) != pos {
                continue;
            }
            self.used_edge[b / 2] = true;
            self.arc_map[b] = a;
            self.arc_map[dagger(b)] = dagger(a);
            path.push(b);
            let next = self.dst.end(b);
            if next == end {
                self.assign(edge + 1);
            }
            self.walk(edge, next, end, path);
            path.pop();
            self.arc_map[b] = usize::MAX;
            self.arc_map[dagger(b)] = usize::MAX;
            self.used_edge[b / 2] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Elementary;

    #[test]
    fn automorphisms_of_edge() {
        assert_eq!(
            enumerate_maps(&Graph::edge(), &Graph::edge(), MapFilter::All)
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn corolla_three_isomorphisms() {
        let c3 = Graph::corolla(3);
        let isos = enumerate_maps(&c3, &c3, MapFilter::Isomorphism).unwrap();
        assert_eq!(isos.len(), 6);
    }

    #[test]
    fn no_map_from_edge_to_corolla_one() {
        assert!(
            enumerate_maps(&Graph::edge(), &Graph::corolla(1), MapFilter::All)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn corolla_two_to_edge() {
        let maps = enumerate_maps(&Graph::corolla(2), &Graph::edge(), MapFilter::All).unwrap();
        assert_eq!(maps.len(), 4);
        let r = crate::morphism::rho_arc(&Graph::corolla(2), 0).unwrap();
        assert!(maps.contains(&r));
    }

    #[test]
    fn edge_into_corolla_two_is_the_unit() {
        let maps = enumerate_maps(&Graph::edge(), &Graph::corolla(2), MapFilter::All).unwrap();
        assert_eq!(maps.len(), 2);
        assert!(maps.iter().all(|m| m.classify().active));
    }

    #[test]
    fn sorted_output() {
        let theta = Graph::elementary(Elementary::Theta);
        let maps = enumerate_maps(&theta, &Graph::corolla(0), MapFilter::All).unwrap();
        assert_eq!(maps.len(), 1);
        let maps = enumerate_maps(&theta, &theta, MapFilter::All).unwrap();
        assert!(maps.windows(2).all(|w| w[0].listing_cmp(&w[1]).is_lt()));
    }

    #[test]
    fn too_large_rejected() {
        let big = Graph::elementary(Elementary::Loops(9));
        assert_eq!(
            enumerate_maps(&big, &big, MapFilter::All)
                .unwrap_err()
                .code(),
            "TOO_LARGE"
        );
    }
}
