//! Evaluation of a 2D TQFT on genus-labelled dual graphs.
//!
//! A vertex of label `l` and valence `k` contributes the form
//! `τ(H^l(a_1 ⋯ a_k))`; each internal edge contracts two slots through the
//! copairing; legs take the inputs in edge order.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::field::Field;
use crate::frobenius::{AlgebraError, FrobeniusAlgebra};
use crate::genus::{enumerate_graded_graphs, GradedGraph};
use crate::graph::{EdgeId, EdgeKind, End, Graph};
use crate::tensor::{Slot, Tensor};

/// Internal edges of `g` in increasing index order.
pub fn internal_edges(g: &Graph) -> Vec<EdgeId> {
    g.edges()
        .filter(|&e| g.edge_kind(e) == EdgeKind::Internal)
        .collect()
}

/// Contracts in edge index order.
pub fn evaluate_graph<F: Field>(
    a: &FrobeniusAlgebra<F>,
    gg: &GradedGraph,
    inputs: &[Vec<F::Elem>],
) -> Result<F::Elem, AlgebraError> {
    evaluate_graph_in_order(a, gg, inputs, &internal_edges(gg.graph()))
}

/// Contracts the internal edges in the given order, which must list each of
/// them once.
pub fn evaluate_graph_in_order<F: Field>(
    a: &FrobeniusAlgebra<F>,
    gg: &GradedGraph,
    inputs: &[Vec<F::Elem>],
    order: &[EdgeId],
) -> Result<F::Elem, AlgebraError> {
    let f = a.field();
    let g = gg.graph();
    if g.vertex_count() == 0 {
        return Err(AlgebraError::ArityMismatch(
            "the edge graph has no vertex to evaluate".into(),
        ));
    }
    let legs = g.legs();
    if inputs.len() != legs.len() {
        return Err(AlgebraError::ArityMismatch(format!(
            "{} inputs for {} legs",
            inputs.len(),
            legs.len()
        )));
    }
    if let Some(bad) = inputs.iter().find(|x| x.len() != a.dim()) {
        return Err(AlgebraError::ArityMismatch(format!(
            "input of length {} for an algebra of dimension {}",
            bad.len(),
            a.dim()
        )));
    }
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    assert_eq!(
        sorted,
        internal_edges(g),
        "order must list every internal edge once"
    );

    // the product of the leg inputs arriving at each vertex
    let mut leg_product: Vec<Vec<F::Elem>> = g.vertices().map(|_| a.unit().to_vec()).collect();
    for (e, x) in legs.iter().zip(inputs) {
        let v = [2 * e, 2 * e + 1]
            .into_iter()
            .find_map(|arc| g.end(arc).vertex())
            .expect("a leg has a vertex end");
        leg_product[v] = a.multiply(&leg_product[v], x);
    }

    // one tensor per connected group of vertices, slots labelled by arcs
    let mut component: Vec<usize> = g.vertices().collect();
    let mut tensors: Vec<Option<Tensor<F::Elem>>> = g
        .vertices()
        .map(|v| {
            let slots = g
                .arcs_at(v)
                .into_iter()
                .filter(|&arc| g.edge_kind(arc / 2) == EdgeKind::Internal)
                .map(|label| Slot {
                    label,
                    dim: a.dim(),
                })
                .collect();
            Some(a.genus_tensor_times(gg.label(v), &leg_product[v], slots))
        })
        .collect();
    for &e in order {
        let (End::Vertex(u), End::Vertex(w)) = (g.end(2 * e), g.end(2 * e + 1)) else {
            unreachable!("internal edge");
        };
        let (cu, cw) = (component[u], component[w]);
        let t = if cu == cw {
            tensors[cu].take().expect("live component")
        } else {
            let tu = tensors[cu].take().expect("live component");
            let tw = tensors[cw].take().expect("live component");
            for c in component.iter_mut() {
                if *c == cw {
                    *c = cu;
                }
            }
            Tensor::outer(f, &tu, &tw)
        };
        tensors[cu] = Some(t.contract(f, 2 * e, 2 * e + 1, a.copairing()));
    }
    let mut live = tensors.into_iter().flatten();
    let result = live.next().expect("one component").into_scalar();
    assert!(
        live.next().is_none(),
        "connected graph leaves one component"
    );
    Ok(result)
}

/// The same evaluation with the contraction order shuffled by `seed`.
pub fn evaluate_graph_shuffled<F: Field>(
    a: &FrobeniusAlgebra<F>,
    gg: &GradedGraph,
    inputs: &[Vec<F::Elem>],
    seed: u64,
) -> Result<F::Elem, AlgebraError> {
    let mut order = internal_edges(gg.graph());
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    evaluate_graph_in_order(a, gg, inputs, &order)
}

/// Every tuple of `k` basis indices below `dim`, lexicographically.
pub fn basis_tuples(dim: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..dim).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub total_genus: u32,
    pub legs: usize,
    pub graphs: usize,
    pub evaluations: usize,
    /// `(inputs, expected value)` per basis tuple
    pub expected: Vec<(Vec<usize>, String)>,
    pub discrepancy: Option<String>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.discrepancy.is_none()
    }
}

/// Evaluates every graded graph of the given total genus and leg count with
/// at most `max_edges` internal edges on every basis input tuple, and
/// compares with `τ(H^total(∏ inputs))`.
pub fn invariance_check<F: Field>(
    a: &FrobeniusAlgebra<F>,
    total_genus: u32,
    legs: usize,
    max_edges: usize,
) -> InvarianceReport {
    let graphs =
        enumerate_graded_graphs(total_genus, legs, false, Some(max_edges)).expect("bounded");
    let tuples = basis_tuples(a.dim(), legs);
    let expected: Vec<F::Elem> = tuples
        .iter()
        .map(|t| a.genus_entry(total_genus, t))
        .collect();
    let failures: Vec<Option<String>> = graphs
        .par_iter()
        .map(|gg| {
            for (t, want) in tuples.iter().zip(&expected) {
                let inputs: Vec<Vec<F::Elem>> = t.iter().map(|&i| a.basis(i)).collect();
                let got = evaluate_graph(a, gg, &inputs).expect("arity matches");
                if got != *want {
                    return Some(format!(
                        "graph {:?} labels {:?} on inputs {t:?}: got {}, expected {}",
                        gg.graph().ends(),
                        gg.labels(),
                        a.field().format(&got),
                        a.field().format(want)
                    ));
                }
            }
            None
        })
        .collect();
    InvarianceReport {
        total_genus,
        legs,
        graphs: graphs.len(),
        evaluations: graphs.len() * tuples.len(),
        expected: tuples
            .into_iter()
            .zip(&expected)
            .map(|(t, x)| (t, a.field().format(x)))
            .collect(),
        discrepancy: failures.into_iter().flatten().next(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::graph::Elementary;

    fn dual() -> FrobeniusAlgebra<Rationals> {
        FrobeniusAlgebra::truncated_polynomial(Rationals, 2).unwrap()
    }

    #[test]
    fn single_vertex_is_genus_tensor() {
        let a = dual();
        let gg = GradedGraph::new(Graph::corolla(3), vec![1]).unwrap();
        for t in basis_tuples(2, 3) {
            let inputs: Vec<_> = t.iter().map(|&i| a.basis(i)).collect();
            assert_eq!(
                evaluate_graph(&a, &gg, &inputs).unwrap(),
                *a.genus_tensor(1, 3).get(&t)
            );
        }
    }

    #[test]
    fn theta_and_loop() {
        let a = dual();
        let theta = GradedGraph::unlabelled(Graph::elementary(Elementary::Theta));
        assert_eq!(
            evaluate_graph(&a, &theta, &[]).unwrap(),
            a.evaluate_closed(2)
        );
        let l1 = GradedGraph::unlabelled(Graph::elementary(Elementary::Loops(1)));
        assert_eq!(evaluate_graph(&a, &l1, &[]).unwrap(), a.evaluate_closed(1));
    }

    #[test]
    fn arity_mismatch() {
        let a = dual();
        let gg = GradedGraph::unlabelled(Graph::corolla(2));
        assert_eq!(
            evaluate_graph(&a, &gg, &[a.basis(0)]).unwrap_err().code(),
            "ARITY_MISMATCH"
        );
    }

    #[test]
    fn loop_adds_a_handle() {
        let a = FrobeniusAlgebra::truncated_polynomial(Rationals, 3).unwrap();
        // a vertex of label l with a loop and one leg vs label l + 1
        let looped = Graph::from_edges(
            1,
            [(End::Vertex(0), End::Vertex(0)), (End::Vertex(0), End::Inf)],
        )
        .unwrap();
        for l in 0..3 {
            let with_loop = GradedGraph::new(looped.clone(), vec![l]).unwrap();
            let bumped = GradedGraph::new(Graph::corolla(1), vec![l + 1]).unwrap();
            for i in 0..3 {
                assert_eq!(
                    evaluate_graph(&a, &with_loop, &[a.basis(i)]).unwrap(),
                    evaluate_graph(&a, &bumped, &[a.basis(i)]).unwrap()
                );
            }
        }
    }

    #[test]
    fn small_invariance() {
        let c2 = FrobeniusAlgebra::cyclic_group_algebra(Rationals, 2).unwrap();
        let r = invariance_check(&c2, 2, 0, 4);
        assert!(r.passed(), "{:?}", r.discrepancy);
        assert_eq!(r.expected, vec![(vec![], "4/1".to_string())]);
        let r = invariance_check(&dual(), 1, 1, 3);
        assert!(r.passed());
        assert_eq!(r.expected[0], (vec![0], "2/1".to_string()));
        let f3 = FrobeniusAlgebra::cyclic_group_algebra(PrimeField::new(3).unwrap(), 2).unwrap();
        assert!(invariance_check(&f3, 0, 3, 2).passed());
    }
}
