//! The linear presheaf: edges coloured by vector spaces with a symmetric
//! nondegenerate form over `F_p`, vertices carrying tensors over their
//! incident arcs.
//!
//! Collapsing an edge contracts the adjacent slots through the form;
//! subdividing inserts the copairing `B⁻¹` at the new vertex; deleted
//! material is forgotten.

use num_bigint::BigUint;

use crate::field::{invert, is_symmetric, rank, Field, Matrix, PrimeField};
use crate::graph::{Graph, Orientation, VertexId};
use crate::morphism::{rho_arc, rho_vertex, GraphMap};
use crate::segal::{brute_force_segal, PresheafError, SegalReport, SetPresheaf};
use crate::tensor::{Slot, Tensor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colour {
    dim: usize,
    form: Matrix<u32>,
    copairing: Matrix<u32>,
}

impl Colour {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn form(&self) -> &Matrix<u32> {
        &self.form
    }

    pub fn copairing(&self) -> &Matrix<u32> {
        &self.copairing
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearElem {
    /// colour index per edge
    pub colouring: Vec<usize>,
    /// per vertex, a dense tensor over its arcs in increasing index order
    pub tensors: Vec<Vec<u32>>,
}

#[derive(Clone, Debug)]
pub struct LinearPresheaf {
    field: PrimeField,
    colours: Vec<Colour>,
}

impl LinearPresheaf {
    /// `colours` lists `(dim, form)`; each form must be symmetric and
    /// invertible mod `p`.
    pub fn new(p: u32, colours: Vec<(usize, Vec<Vec<i64>>)>) -> Result<Self, PresheafError> {
        let field = PrimeField::new(p).map_err(|e| PresheafError::BadForm(e.to_string()))?;
        if colours.is_empty() {
            return Err(PresheafError::BadForm("no colours".into()));
        }
        let colours = colours
            .into_iter()
            .enumerate()
            .map(|(c, (dim, form))| {
                if dim == 0 || form.len() != dim || form.iter().any(|row| row.len() != dim) {
                    return Err(PresheafError::BadForm(format!(
                        "colour {c}: form is not {dim}×{dim}"
                    )));
                }
                let form: Matrix<u32> = form
                    .iter()
                    .map(|row| row.iter().map(|&x| field.from_i64(x)).collect())
                    .collect();
                if !is_symmetric::<PrimeField>(&form) {
                    return Err(PresheafError::BadForm(format!(
                        "colour {c}: form is not symmetric"
                    )));
                }
                let copairing = invert(&field, &form).ok_or_else(|| {
                    PresheafError::BadForm(format!("colour {c}: form is singular mod {p}"))
                })?;
                Ok(Colour {
                    dim,
                    form,
                    copairing,
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(LinearPresheaf { field, colours })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    fn slots(&self, g: &Graph, colouring: &[usize], v: VertexId) -> Vec<Slot> {
        g.arcs_at(v)
            .into_iter()
            .map(|a| Slot {
                label: a,
                dim: self.colours[colouring[a / 2]].dim,
            })
            .collect()
    }

    fn volumes(&self, g: &Graph, colouring: &[usize]) -> Vec<usize> {
        g.vertices()
            .map(|v| self.slots(g, colouring, v).iter().map(|s| s.dim).product())
            .collect()
    }

    fn colourings(&self, g: &Graph) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in g.edges() {
            out = out
                .into_iter()
                .flat_map(|w: Vec<usize>| {
                    (0..self.colours.len()).map(move |c| {
                        let mut w = w.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// `|P(g)| = Σ_colourings p^(total tensor volume)`.
    pub fn cardinality(&self, g: &Graph) -> BigUint {
        self.colourings(g)
            .iter()
            .map(|c| {
                BigUint::from(self.field.modulus())
                    .pow(self.volumes(g, c).iter().sum::<usize>() as u32)
            })
            .sum()
    }

    /// The Segal comparison restricted to one colouring is linear; it is a
    /// bijection exactly when its matrix on the basis tensors has full rank
    /// and it preserves colourings.
    pub fn linear_segal(&self, g: &Graph, orientation: &Orientation) -> SegalReport {
        let f = &self.field;
        let rhos: Vec<GraphMap> = g
            .vertices()
            .map(|v| rho_vertex(g, v).expect("in range"))
            .collect();
        let edge_maps: Vec<GraphMap> = orientation
            .out_arcs()
            .iter()
            .map(|&a| rho_arc(g, a).expect("in range"))
            .collect();
        let size = self.cardinality(g);
        let fail = |witness: String| SegalReport {
            graph: g.clone(),
            lhs_size: size.clone(),
            pullback_size: size.clone(),
            is_bijection: false,
            witness: Some(witness),
        };
        for colouring in self.colourings(g) {
            let volumes = self.volumes(g, &colouring);
            let zero = LinearElem {
                colouring: colouring.clone(),
                tensors: volumes.iter().map(|&n| vec![0; n]).collect(),
            };
            // colours must restrict to the matching pullback component
            for (v, rho) in rhos.iter().enumerate() {
                let image = self.act(rho, &zero).expect("inert acts are total");
                let expected: Vec<usize> = g.arcs_at(v).iter().map(|&a| colouring[a / 2]).collect();
                if image.colouring != expected || image.tensors.iter().flatten().any(|x| *x != 0) {
                    return fail(format!(
                        "colouring {colouring:?} restricts wrongly to vertex {v}"
                    ));
                }
            }
            for (e, m) in edge_maps.iter().enumerate() {
                let image = self.act(m, &zero).expect("inert acts are total");
                if image.colouring != vec![colouring[e]] {
                    return fail(format!(
                        "colouring {colouring:?} restricts wrongly to edge {e}"
                    ));
                }
            }
            let dim: usize = volumes.iter().sum();
            let mut columns: Matrix<u32> = Vec::with_capacity(dim);
            for (v, &n) in volumes.iter().enumerate() {
                for i in 0..n {
                    let mut x = zero.clone();
                    x.tensors[v][i] = 1;
                    let column: Vec<u32> = rhos
                        .iter()
                        .flat_map(|rho| {
                            self.act(rho, &x)
                                .expect("inert acts are total")
                                .tensors
                                .remove(0)
                        })
                        .collect();
                    columns.push(column);
                }
            }
            let r = rank(f, &columns);
            if r != dim || columns.first().is_some_and(|c| c.len() != dim) {
                return fail(format!(
                    "colouring {colouring:?}: comparison has rank {r} on dimension {dim}"
                ));
            }
        }
        SegalReport {
            graph: g.clone(),
            lhs_size: size.clone(),
            pullback_size: size,
            is_bijection: true,
            witness: None,
        }
    }
}

impl SetPresheaf for LinearPresheaf {
    type Elem = LinearElem;

    fn name(&self) -> String {
        format!("linear:F{}:{}", self.field.modulus(), self.colours.len())
    }

    fn elements(&self, g: &Graph, bound: usize) -> Result<Vec<LinearElem>, PresheafError> {
        let size = self.cardinality(g);
        if size > BigUint::from(bound) {
            return Err(PresheafError::BoundExceeded(format!(
                "the linear value has {size} elements, more than {bound}"
            )));
        }
        let p = self.field.modulus();
        let mut out = Vec::new();
        for colouring in self.colourings(g) {
            let volumes = self.volumes(g, &colouring);
            let total: usize = volumes.iter().sum();
            let mut flat = vec![0u32; total];
            loop {
                let mut tensors = Vec::with_capacity(volumes.len());
                let mut offset = 0;
                for &n in &volumes {
                    tensors.push(flat[offset..offset + n].to_vec());
                    offset += n;
                }
                out.push(LinearElem {
                    colouring: colouring.clone(),
                    tensors,
                });
                // odometer, last entry fastest
                let mut i = total;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    flat[i] += 1;
                    if flat[i] < p {
                        break;
                    }
                    flat[i] = 0;
                }
                if flat.iter().all(|&x| x == 0) {
                    break;
                }
            }
        }
        Ok(out)
    }

    fn act(&self, m: &GraphMap, x: &LinearElem) -> Result<LinearElem, PresheafError> {
        let f = &self.field;
        let src = m.source();
        let dst = m.target();
        if x.colouring.len() != src.edge_count() || x.tensors.len() != src.vertex_count() {
            return Err(PresheafError::Mismatch(
                "element does not live on the source".into(),
            ));
        }
        let colouring: Vec<usize> = dst
            .edges()
            .map(|e| x.colouring[m.arc_map()[2 * e] / 2])
            .collect();
        let collapsed = m.collapsed_edges();
        let mut tensors = Vec::with_capacity(dst.vertex_count());
        for w in dst.vertices() {
            let at_w = dst.arcs_at(w);
            let fiber = m.fiber(w);
            let t = if fiber.is_empty() {
                // a new bivalent vertex on a subdivided edge
                let colour = &self.colours[colouring[at_w[0] / 2]];
                let slots = at_w
                    .iter()
                    .map(|&b| Slot {
                        label: b,
                        dim: colour.dim,
                    })
                    .collect();
                Tensor::from_fn(slots, |i| colour.copairing[i[0]][i[1]])
            } else {
                let mut t = Tensor::scalar(f.one());
                for &v in &fiber {
                    let tv = Tensor::new(self.slots(src, &x.colouring, v), x.tensors[v].clone());
                    t = Tensor::outer(f, &t, &tv);
                }
                for &e in &collapsed {
                    if m.map_end(src.end(2 * e)) == crate::graph::End::Vertex(w) {
                        t = t.contract(f, 2 * e, 2 * e + 1, &self.colours[x.colouring[e]].form);
                    }
                }
                let sources: Vec<usize> = at_w.iter().map(|&b| m.arc_map()[b]).collect();
                let t = t.permute(&sources);
                let mut k = 0;
                t.relabel(|_| {
                    k += 1;
                    at_w[k - 1]
                })
            };
            tensors.push(t.data().to_vec());
        }
        Ok(LinearElem { colouring, tensors })
    }

    fn segal_check_oriented(
        &self,
        g: &Graph,
        bound: usize,
        orientation: &Orientation,
    ) -> Result<SegalReport, PresheafError> {
        match brute_force_segal(self, g, bound, orientation) {
            Err(PresheafError::BoundExceeded(_)) => Ok(self.linear_segal(g, orientation)),
            other => other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Elementary, End};
    use crate::hom::enumerate_maps;
    use crate::morphism::MapFilter;
    use crate::segal::segal_check;

    fn single(p: u32, dim: usize) -> LinearPresheaf {
        let form = (0..dim)
            .map(|i| (0..dim).map(|j| (i == j) as i64).collect())
            .collect();
        LinearPresheaf::new(p, vec![(dim, form)]).unwrap()
    }

    #[test]
    fn scalar_corollas() {
        let lin = single(2, 1);
        for k in 0..5 {
            assert_eq!(lin.elements(&Graph::corolla(k), 100).unwrap().len(), 2);
        }
    }

    #[test]
    fn bad_forms() {
        assert_eq!(
            LinearPresheaf::new(2, vec![(1, vec![vec![0]])])
                .unwrap_err()
                .code(),
            "BAD_FORM"
        );
        assert_eq!(
            LinearPresheaf::new(3, vec![(2, vec![vec![1, 1], vec![0, 1]])])
                .unwrap_err()
                .code(),
            "BAD_FORM"
        );
        assert_eq!(
            LinearPresheaf::new(4, vec![(1, vec![vec![1]])])
                .unwrap_err()
                .code(),
            "BAD_FORM"
        );
        // 2 is not invertible mod 2
        assert_eq!(
            LinearPresheaf::new(2, vec![(1, vec![vec![2]])])
                .unwrap_err()
                .code(),
            "BAD_FORM"
        );
    }

    #[test]
    fn theta_segal_by_brute_force() {
        let lin = single(2, 2);
        let theta = Graph::elementary(Elementary::Theta);
        let r = segal_check(&lin, &theta, 1 << 17).unwrap();
        assert!(r.is_bijection);
        assert_eq!(r.lhs_size, BigUint::from(1u32 << 16));
        // the structural check agrees
        assert!(
            lin.linear_segal(&theta, &Orientation::standard(&theta))
                .is_bijection
        );
    }

    #[test]
    fn loop_collapse_is_partial_trace() {
        let form = vec![vec![1, 2], vec![2, 0]];
        let lin = LinearPresheaf::new(5, vec![(2, form.clone())]).unwrap();
        let l1 = Graph::elementary(Elementary::Loops(1));
        let collapse = GraphMap::new(
            l1.clone(),
            Graph::corolla(0),
            vec![End::Vertex(0)],
            Vec::new(),
        )
        .unwrap();
        let x = LinearElem {
            colouring: vec![0],
            tensors: vec![vec![3, 1, 4, 2]],
        };
        let y = lin.act(&collapse, &x).unwrap();
        let expected = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| form[i][j] as u32 * x.tensors[0][2 * i + j])
            .sum::<u32>()
            % 5;
        assert_eq!(y.tensors, vec![vec![expected]]);
    }

    #[test]
    fn subdivide_then_contract_is_identity() {
        let form = vec![vec![0, 1], vec![1, 1]];
        let lin = LinearPresheaf::new(3, vec![(2, form)]).unwrap();
        let g = Graph::elementary(Elementary::Linear(2));
        let h = Graph::elementary(Elementary::Linear(3));
        let subdivide = enumerate_maps(&g, &h, MapFilter::Active).unwrap();
        let contract = enumerate_maps(&h, &g, MapFilter::Active).unwrap();
        let id = GraphMap::identity(&g);
        let xs = lin.elements(&g, 1 << 13).unwrap();
        let mut checked = 0;
        for s in &subdivide {
            for c in &contract {
                if c.compose(s).unwrap() != id {
                    continue;
                }
                for x in xs.iter().step_by(7) {
                    assert_eq!(lin.act(c, &lin.act(s, x).unwrap()).unwrap(), *x);
                }
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}
