//! Genus-graded graphs: vertex labels, the pushforward along graph maps,
//! total genus, and stable enumeration.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::canon::{canonical_encoding_labelled, canonical_graph};
use crate::enumerate::enumerate_graphs;
use crate::factorize::factorize;
use crate::graph::{Graph, VertexId};
use crate::laws::HomTable;
use crate::morphism::GraphMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenusError {
    #[error("UNBOUNDED: enumeration without stability needs an edge bound")]
    Unbounded,
    #[error("LABEL_COUNT: {labels} labels for {vertices} vertices")]
    LabelCount { labels: usize, vertices: usize },
    #[error("MISMATCH: labelled graph is not the source of the map")]
    Mismatch,
}

impl GenusError {
    pub fn code(&self) -> &'static str {
        match self {
            GenusError::Unbounded => "UNBOUNDED",
            GenusError::LabelCount { .. } => "LABEL_COUNT",
            GenusError::Mismatch => "MISMATCH",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedGraph {
    graph: Graph,
    labels: Vec<u32>,
}

impl GradedGraph {
    pub fn new(graph: Graph, labels: Vec<u32>) -> Result<Self, GenusError> {
        if labels.len() != graph.vertex_count() {
            return Err(GenusError::LabelCount {
                labels: labels.len(),
                vertices: graph.vertex_count(),
            });
        }
        Ok(GradedGraph { graph, labels })
    }

    /// All labels zero.
    pub fn unlabelled(graph: Graph) -> Self {
        let labels = vec![0; graph.vertex_count()];
        GradedGraph { graph, labels }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> u32 {
        self.labels[v]
    }

    /// Sum of labels plus the first Betti number.
    pub fn total_genus(&self) -> u64 {
        self.labels.iter().map(|&l| l as u64).sum::<u64>() + self.graph.betti_number() as u64
    }

    /// Every label is at most `g`.
    pub fn genus_bound(&self, g: u32) -> bool {
        self.labels.iter().all(|&l| l <= g)
    }

    /// `2 l(v) − 2 + val(v) > 0` per vertex.
    pub fn stability_flags(&self) -> Vec<bool> {
        self.graph
            .vertices()
            .map(|v| 2 * self.labels[v] as i64 - 2 + self.graph.valence(v) as i64 > 0)
            .collect()
    }

    pub fn is_stable(&self) -> bool {
        self.stability_flags().into_iter().all(|f| f)
    }

    pub fn canonical_encoding(&self) -> Vec<u8> {
        canonical_encoding_labelled(&self.graph, &self.labels)
    }

    /// The canonical representative of the isomorphism class.
    pub fn canonical(&self) -> GradedGraph {
        let (graph, labels) = canonical_graph(&self.graph, Some(&self.labels));
        GradedGraph {
            graph,
            labels: labels.expect("labels carried through"),
        }
    }
}

/// Label at each target vertex: Betti number of the fiber plus the labels
/// over it. Unhit vertices get zero.
pub fn pushforward_labels(f: &GraphMap, labels: &[u32]) -> Vec<u64> {
    let src = f.source();
    let dst = f.target();
    let mut sums = vec![0u64; dst.vertex_count()];
    let mut counts = vec![0usize; dst.vertex_count()];
    for v in src.vertices() {
        if let Some(w) = f.vertex_map()[v].vertex() {
            sums[w] += labels[v] as u64;
            counts[w] += 1;
        }
    }
    for e in f.collapsed_edges() {
        let w = f
            .map_end(src.end(2 * e))
            .vertex()
            .expect("collapsed edges land on a vertex");
        sums[w] += 1;
    }
    // fibers are connected trees plus their Betti number of extra edges
    for w in dst.vertices() {
        if counts[w] > 0 {
            sums[w] -= counts[w] as u64 - 1;
        }
    }
    sums
}

pub fn pushforward(f: &GraphMap, gg: &GradedGraph) -> Result<GradedGraph, GenusError> {
    if gg.graph != *f.source() {
        return Err(GenusError::Mismatch);
    }
    let labels = pushforward_labels(f, &gg.labels)
        .into_iter()
        .map(|l| u32::try_from(l).expect("label fits in u32"))
        .collect();
    Ok(GradedGraph {
        graph: f.target().clone(),
        labels,
    })
}

/// Every labelled graph with the given total genus and leg count, one per
/// isomorphism class, in canonical order. Graphs have at least one vertex.
/// `max_edges` bounds internal edges; with `stable_only` the stability
/// inequalities bound the search on their own.
pub fn enumerate_graded_graphs(
    total: u32,
    legs: usize,
    stable_only: bool,
    max_edges: Option<usize>,
) -> Result<Vec<GradedGraph>, GenusError> {
    let (max_vertices, max_internal) = if stable_only {
        // summing 2l(v) − 2 + val(v) ≥ 1 over the vertices
        let v = 2 * total as i64 - 2 + legs as i64;
        let e = 3 * total as i64 - 3 + legs as i64;
        if v < 1 {
            return Ok(Vec::new());
        }
        let e = e.max(0) as usize;
        (v as usize, max_edges.map_or(e, |m| m.min(e)))
    } else {
        let m = max_edges.ok_or(GenusError::Unbounded)?;
        (m + 1, m)
    };
    let graphs: Vec<Graph> = enumerate_graphs(max_vertices, max_internal, legs)
        .into_iter()
        .filter(|g| g.vertex_count() > 0 && g.betti_number() <= total as usize)
        .collect();
    let found: Vec<(Vec<u8>, GradedGraph)> = graphs
        .par_iter()
        .flat_map_iter(|g| {
            let spare = total - g.betti_number() as u32;
            compositions(spare, g.vertex_count())
                .into_iter()
                .map(|labels| GradedGraph {
                    graph: g.clone(),
                    labels,
                })
                .filter(|gg| !stable_only || gg.is_stable())
                .map(|gg| {
                    let c = gg.canonical();
                    (c.canonical_encoding(), c)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let unique: BTreeMap<Vec<u8>, GradedGraph> = found.into_iter().collect();
    Ok(unique.into_values().collect())
}

/// Weak compositions of `n` into `k` parts.
fn compositions(n: u32, k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every labelling of `g` with entries at most `bound`.
pub fn labellings(g: &Graph, bound: u32) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut labels = vec![0u32; n];
    loop {
        out.push(labels.clone());
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            labels[i] += 1;
            if labels[i] <= bound {
                break;
            }
            labels[i] = 0;
            i += 1;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConservationReport {
    pub maps: usize,
    pub labellings: usize,
    pub pairs: usize,
    pub violations: Vec<String>,
}

/// Over every corpus map and labelling with entries at most `label_bound`:
/// the genus ledger `total(Γ) = total(f_*Γ) + deleted labels + Betti lost
/// in the inert part` balances, active maps preserve total genus exactly,
/// active maps hitting every vertex keep stable graphs stable, and the
/// pushforward is functorial on composable pairs.
pub fn conservation_sweep(table: &HomTable, label_bound: u32) -> ConservationReport {
    let n = table.graphs.len();
    let labels: Vec<Vec<Vec<u32>>> = table
        .graphs
        .iter()
        .map(|g| labellings(g, label_bound))
        .collect();
    let reports: Vec<ConservationReport> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut r = ConservationReport::default();
            for j in 0..n {
                for f in &table.homs[i][j] {
                    r.maps += 1;
                    let class = f.classify();
                    let middle_betti = factorize(f).middle().betti_number() as u64;
                    for l in &labels[i] {
                        r.labellings += 1;
                        let gg = GradedGraph::new(f.source().clone(), l.clone()).expect("sized");
                        let pushed = pushforward(f, &gg).expect("source matches");
                        let deleted: u64 = f
                            .source()
                            .vertices()
                            .filter(|&v| f.vertex_map()[v].is_inf())
                            .map(|v| l[v] as u64)
                            .sum();
                        let lost_betti = f.source().betti_number() as u64 - middle_betti;
                        if gg.total_genus() != pushed.total_genus() + deleted + lost_betti {
                            r.violations
                                .push(format!("genus ledger fails for {f} on {l:?}"));
                        }
                        if class.active && gg.total_genus() != pushed.total_genus() {
                            r.violations
                                .push(format!("active map {f} changes total genus on {l:?}"));
                        }
                        if class.active
                            && class.quasi_collapse
                            && gg.is_stable()
                            && !pushed.is_stable()
                        {
                            r.violations
                                .push(format!("contraction {f} destabilizes {l:?}"));
                        }
                        for k in 0..n {
                            for g in &table.homs[j][k] {
                                r.pairs += 1;
                                let direct = pushforward_labels(&g.compose_unchecked(f), l);
                                let stepwise = pushforward(g, &pushed).expect("source matches");
                                let stepwise: Vec<u64> =
                                    stepwise.labels.iter().map(|&x| x as u64).collect();
                                if direct != stepwise {
                                    r.violations.push(format!(
                                        "pushforward not functorial for {f} then {g} on {l:?}"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
            r
        })
        .collect();
    reports
        .into_iter()
        .fold(ConservationReport::default(), |mut acc, r| {
            acc.maps += r.maps;
            acc.labellings += r.labellings;
            acc.pairs += r.pairs;
            acc.violations.extend(r.violations);
            acc
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Elementary, End};
    use crate::hom::enumerate_maps;
    use crate::morphism::{rho_vertex, MapFilter};

    fn collapse(g: &Graph) -> GraphMap {
        GraphMap::new(
            g.clone(),
            Graph::corolla(0),
            vec![End::Vertex(0); g.vertex_count()],
            Vec::new(),
        )
        .unwrap()
    }

    fn dumbbell() -> Graph {
        Graph::from_edges(
            2,
            [
                (End::Vertex(0), End::Vertex(0)),
                (End::Vertex(1), End::Vertex(1)),
                (End::Vertex(0), End::Vertex(1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn loop_collapse_adds_one() {
        let l1 = Graph::elementary(Elementary::Loops(1));
        let gg = GradedGraph::new(l1.clone(), vec![0]).unwrap();
        assert_eq!(pushforward(&collapse(&l1), &gg).unwrap().labels(), &[1]);
    }

    #[test]
    fn theta_collapse_adds_betti() {
        let theta = Graph::elementary(Elementary::Theta);
        let gg = GradedGraph::new(theta.clone(), vec![1, 2]).unwrap();
        assert_eq!(pushforward(&collapse(&theta), &gg).unwrap().labels(), &[5]);
    }

    #[test]
    fn subdivision_inserts_zero() {
        let maps = enumerate_maps(
            &Graph::corolla(2),
            &Graph::elementary(Elementary::Linear(2)),
            MapFilter::Active,
        )
        .unwrap();
        assert!(!maps.is_empty());
        for m in maps {
            let gg = GradedGraph::new(Graph::corolla(2), vec![3]).unwrap();
            let mut labels = pushforward(&m, &gg).unwrap().labels().to_vec();
            labels.sort();
            assert_eq!(labels, vec![0, 3]);
        }
    }

    #[test]
    fn rho_keeps_surviving_label() {
        let theta = Graph::elementary(Elementary::Theta);
        let gg = GradedGraph::new(theta.clone(), vec![4, 7]).unwrap();
        let pushed = pushforward(&rho_vertex(&theta, 1).unwrap(), &gg).unwrap();
        assert_eq!(pushed.labels(), &[7]);
        assert_eq!(pushed.total_genus(), 7);
    }

    #[test]
    fn total_genus_examples() {
        assert_eq!(
            GradedGraph::new(Graph::corolla(4), vec![3])
                .unwrap()
                .total_genus(),
            3
        );
        let theta = Graph::elementary(Elementary::Theta);
        assert_eq!(GradedGraph::unlabelled(theta).total_genus(), 2);
        assert_eq!(
            GradedGraph::new(dumbbell(), vec![1, 0])
                .unwrap()
                .total_genus(),
            3
        );
    }

    #[test]
    fn genus_bound_examples() {
        let theta = Graph::elementary(Elementary::Theta);
        assert!(GradedGraph::unlabelled(theta.clone()).genus_bound(0));
        assert!(!GradedGraph::new(theta, vec![0, 1]).unwrap().genus_bound(0));
    }

    #[test]
    fn stable_counts() {
        assert_eq!(enumerate_graded_graphs(1, 1, true, None).unwrap().len(), 2);
        assert_eq!(enumerate_graded_graphs(2, 0, true, None).unwrap().len(), 7);
        let trees = enumerate_graded_graphs(0, 3, true, None).unwrap();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].graph().vertex_count(), 1);
        assert_eq!(
            enumerate_graded_graphs(1, 0, false, None)
                .unwrap_err()
                .code(),
            "UNBOUNDED"
        );
    }

    #[test]
    fn compositions_count() {
        // C(n + k − 1, k − 1)
        assert_eq!(compositions(3, 3).len(), 10);
        assert_eq!(compositions(0, 0).len(), 1);
        assert_eq!(compositions(2, 0).len(), 0);
    }
}
