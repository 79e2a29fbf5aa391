//! Set-valued presheaves on graphs and a brute-force Segal checker.
//!
//! The Segal map sends `x ∈ P(Γ)` to its restrictions along `ρ_v` for every
//! vertex and along `ρ_a` for one chosen arc `a` of every edge. Its target is
//! the pullback of the corolla values over the edge values: a corolla value
//! at `v` restricts along each of its legs to `P(𝔢)`, and has to agree with
//! the edge value of the matching edge, read through the swap of `𝔢` when
//! the leg corresponds to the unchosen arc.

use std::collections::{HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::genus::pushforward_labels;
use crate::graph::{dagger, Graph, Orientation};
use crate::laws::HomTable;
use crate::morphism::{edge_swap, rho_arc, rho_vertex, GraphMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresheafError {
    #[error("BOUND_EXCEEDED: {0}")]
    BoundExceeded(String),
    #[error("LABEL_OVERFLOW: label {label} exceeds bound {bound}")]
    LabelOverflow { label: u64, bound: u32 },
    #[error("BAD_MONOID: {0}")]
    BadMonoid(String),
    #[error("BAD_FORM: {0}")]
    BadForm(String),
    #[error("NOT_A_TREE: {0}")]
    NotATree(String),
    #[error("MISMATCH: {0}")]
    Mismatch(String),
}

impl PresheafError {
    pub fn code(&self) -> &'static str {
        match self {
            PresheafError::BoundExceeded(_) => "BOUND_EXCEEDED",
            PresheafError::LabelOverflow { .. } => "LABEL_OVERFLOW",
            PresheafError::BadMonoid(_) => "BAD_MONOID",
            PresheafError::BadForm(_) => "BAD_FORM",
            PresheafError::NotATree(_) => "NOT_A_TREE",
            PresheafError::Mismatch(_) => "MISMATCH",
        }
    }
}

/// A functor from graphs to finite sets, presented by its values and its
/// action on maps. Functoriality is checked, not assumed.
pub trait SetPresheaf: Sync {
    type Elem: Clone + Debug + Eq + Hash + Ord + Send + Sync;

    fn name(&self) -> String;

    /// The elements of `P(g)`; fails with `BOUND_EXCEEDED` if there are more
    /// than `bound`.
    fn elements(&self, g: &Graph, bound: usize) -> Result<Vec<Self::Elem>, PresheafError>;

    /// `P(m)` applied to an element over the source of `m`.
    fn act(&self, m: &GraphMap, x: &Self::Elem) -> Result<Self::Elem, PresheafError>;

    /// The Segal comparison at `g`, with `orientation` choosing the arc of
    /// each edge used for the edge component.
    fn segal_check_oriented(
        &self,
        g: &Graph,
        bound: usize,
        orientation: &Orientation,
    ) -> Result<SegalReport, PresheafError> {
        brute_force_segal(self, g, bound, orientation)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegalReport {
    pub graph: Graph,
    pub lhs_size: BigUint,
    pub pullback_size: BigUint,
    pub is_bijection: bool,
    /// Present when the comparison fails: an element that collides, falls
    /// outside the pullback, or is missed.
    pub witness: Option<String>,
}

/// Segal check using the lowest arc of every edge.
pub fn segal_check<P: SetPresheaf + ?Sized>(
    p: &P,
    g: &Graph,
    bound: usize,
) -> Result<SegalReport, PresheafError> {
    p.segal_check_oriented(g, bound, &Orientation::standard(g))
}

fn bounded_power(
    base: usize,
    exp: usize,
    bound: usize,
    what: &str,
) -> Result<usize, PresheafError> {
    let mut n: usize = 1;
    for _ in 0..exp {
        n = n.checked_mul(base).filter(|&n| n <= bound).ok_or_else(|| {
            PresheafError::BoundExceeded(format!("{what} has more than {bound} elements"))
        })?;
    }
    Ok(n)
}

/// Every word of length `len` over `0..radix`, in lexicographic order
/// (first position most significant).
fn words(radix: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..radix).map(move |d| {
                    let mut w = w.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

struct VertexData<E> {
    rho: GraphMap,
    /// arcs of g at the vertex, in corolla leg order
    legs: Vec<usize>,
    elements: Vec<E>,
    index: HashMap<E, usize>,
    profiles: Vec<Vec<Option<usize>>>,
    /// corolla elements grouped by their leg restrictions
    by_profile: HashMap<Vec<Option<usize>>, Vec<usize>>,
}

/// The generic checker: builds the pullback explicitly from the corolla and
/// edge values and compares it with the image of `P(g)`.
pub fn brute_force_segal<P: SetPresheaf + ?Sized>(
    p: &P,
    g: &Graph,
    bound: usize,
    orientation: &Orientation,
) -> Result<SegalReport, PresheafError> {
    let lhs = p.elements(g, bound)?;
    let edge = Graph::edge();
    let edge_elems = p.elements(&edge, bound)?;
    let edge_index: HashMap<&P::Elem, usize> =
        edge_elems.iter().enumerate().map(|(i, y)| (y, i)).collect();
    let swap = edge_swap();
    let swapped: Vec<Option<usize>> = edge_elems
        .iter()
        .map(|y| Ok(edge_index.get(&p.act(&swap, y)?).copied()))
        .collect::<Result<_, PresheafError>>()?;

    let mut vertices = Vec::new();
    for v in g.vertices() {
        let rho = rho_vertex(g, v).expect("vertex in range");
        let corolla = rho.target().clone();
        let leg_maps: Vec<GraphMap> = (0..corolla.edge_count())
            .map(|j| rho_arc(&corolla, 2 * j).expect("arc in range"))
            .collect();
        let elements = p.elements(&corolla, bound)?;
        let profiles: Vec<Vec<Option<usize>>> = elements
            .par_iter()
            .map(|x| {
                leg_maps
                    .iter()
                    .map(|l| Ok(edge_index.get(&p.act(l, x)?).copied()))
                    .collect::<Result<Vec<_>, PresheafError>>()
            })
            .collect::<Result<_, _>>()?;
        let mut by_profile: HashMap<Vec<Option<usize>>, Vec<usize>> = HashMap::new();
        for (i, profile) in profiles.iter().enumerate() {
            by_profile.entry(profile.clone()).or_default().push(i);
        }
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, x)| (x, i))
            .collect();
        vertices.push(VertexData {
            rho,
            legs: g.arcs_at(v),
            elements,
            index,
            profiles,
            by_profile,
        });
    }
    let chosen = orientation.out_arcs();
    let edge_maps: Vec<GraphMap> = chosen
        .iter()
        .map(|&a| rho_arc(g, a).expect("arc in range"))
        .collect();

    // the leg restrictions a pullback tuple with edge values `y` requires at `v`
    let required = |vd: &VertexData<P::Elem>, y: &[usize]| -> Vec<Option<usize>> {
        vd.legs
            .iter()
            .map(|&a| {
                let e = a / 2;
                if a == chosen[e] {
                    Some(y[e])
                } else {
                    debug_assert_eq!(dagger(a), chosen[e]);
                    swapped[y[e]]
                }
            })
            .collect()
    };

    bounded_power(
        edge_elems.len(),
        g.edge_count(),
        bound,
        "the product of edge values",
    )?;
    let assignments = words(edge_elems.len(), g.edge_count());
    let mut pullback_size = BigUint::zero();
    for y in &assignments {
        let mut count = BigUint::one();
        for vd in &vertices {
            count *= vd.by_profile.get(&required(vd, y)).map_or(0, Vec::len);
        }
        pullback_size += count;
    }

    // image of every element: (corolla element indices, edge element indices)
    type Image = (Vec<Option<usize>>, Vec<Option<usize>>);
    let images: Vec<Image> = lhs
        .par_iter()
        .map(|x| {
            let vs = vertices
                .iter()
                .map(|vd| Ok(vd.index.get(&p.act(&vd.rho, x)?).copied()))
                .collect::<Result<Vec<_>, PresheafError>>()?;
            let es = edge_maps
                .iter()
                .map(|m| Ok(edge_index.get(&p.act(m, x)?).copied()))
                .collect::<Result<Vec<_>, PresheafError>>()?;
            Ok((vs, es))
        })
        .collect::<Result<_, PresheafError>>()?;

    let report = |is_bijection: bool, witness: Option<String>| SegalReport {
        graph: g.clone(),
        lhs_size: BigUint::from(lhs.len()),
        pullback_size: pullback_size.clone(),
        is_bijection,
        witness,
    };

    for (x, (vs, es)) in lhs.iter().zip(&images) {
        let in_pullback = es.iter().all(Option::is_some) && vs.iter().all(Option::is_some) && {
            let y: Vec<usize> = es.iter().map(|e| e.expect("checked")).collect();
            vertices
                .iter()
                .zip(vs)
                .all(|(vd, xv)| vd.profiles[xv.expect("checked")] == required(vd, &y))
        };
        if !in_pullback {
            return Ok(report(
                false,
                Some(format!("image of {x:?} is not in the pullback")),
            ));
        }
    }
    let mut seen: HashMap<&Image, usize> = HashMap::new();
    for (i, im) in images.iter().enumerate() {
        if let Some(&j) = seen.get(im) {
            return Ok(report(
                false,
                Some(format!("{:?} and {:?} have the same image", lhs[j], lhs[i])),
            ));
        }
        seen.insert(im, i);
    }
    if BigUint::from(images.len()) == pullback_size {
        return Ok(report(true, None));
    }
    // find a pullback tuple with no preimage
    let hit: HashSet<&Image> = images.iter().collect();
    for y in &assignments {
        let groups: Vec<&Vec<usize>> = match vertices
            .iter()
            .map(|vd| vd.by_profile.get(&required(vd, y)))
            .collect::<Option<Vec<_>>>()
        {
            Some(groups) => groups,
            None => continue,
        };
        let mut choice = vec![0usize; groups.len()];
        'tuples: loop {
            let vs: Vec<Option<usize>> = groups
                .iter()
                .zip(&choice)
                .map(|(grp, &c)| Some(grp[c]))
                .collect();
            let es: Vec<Option<usize>> = y.iter().map(|&e| Some(e)).collect();
            let candidate = (vs, es);
            if !hit.contains(&candidate) {
                let corollas: Vec<&P::Elem> = vertices
                    .iter()
                    .zip(&candidate.0)
                    .map(|(vd, i)| &vd.elements[i.expect("set")])
                    .collect();
                let edges: Vec<&P::Elem> = y.iter().map(|&i| &edge_elems[i]).collect();
                return Ok(report(
                    false,
                    Some(format!(
                        "pullback element {corollas:?} / {edges:?} has no preimage"
                    )),
                ));
            }
            let mut i = 0;
            loop {
                if i == choice.len() {
                    break 'tuples;
                }
                choice[i] += 1;
                if choice[i] < groups[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }
    unreachable!("injective image smaller than the pullback misses some tuple")
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FunctorialityReport {
    pub maps: usize,
    pub pairs: usize,
    /// Acts skipped because an element set exceeded the bound or an act
    /// overflowed.
    pub skipped: usize,
    pub witness: Option<String>,
}

impl FunctorialityReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks `P(id) = id` and `P(g∘f) = P(g)∘P(f)` elementwise over every
/// composable pair of corpus maps. Stops at the first counterexample.
pub fn functoriality_sweep<P: SetPresheaf + ?Sized>(
    p: &P,
    table: &HomTable,
    bound: usize,
) -> FunctorialityReport {
    let n = table.graphs.len();
    let elements: Vec<Option<Vec<P::Elem>>> = table
        .graphs
        .iter()
        .map(|g| p.elements(g, bound).ok())
        .collect();
    let reports: Vec<FunctorialityReport> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut r = FunctorialityReport::default();
            let Some(xs) = &elements[i] else {
                r.skipped += 1;
                return r;
            };
            let id = GraphMap::identity(&table.graphs[i]);
            for x in xs {
                match p.act(&id, x) {
                    Ok(y) if y == *x => {}
                    Ok(y) => {
                        r.witness = Some(format!("identity of graph {i} sends {x:?} to {y:?}"));
                        return r;
                    }
                    Err(_) => r.skipped += 1,
                }
            }
            for j in 0..n {
                for f in &table.homs[i][j] {
                    r.maps += 1;
                    let fx: Vec<Option<P::Elem>> = xs.iter().map(|x| p.act(f, x).ok()).collect();
                    for k in 0..n {
                        for g in &table.homs[j][k] {
                            r.pairs += 1;
                            let gf = g.compose_unchecked(f);
                            for (x, fx) in xs.iter().zip(&fx) {
                                let Some(fx) = fx else {
                                    r.skipped += 1;
                                    continue;
                                };
                                match (p.act(&gf, x), p.act(g, fx)) {
                                    (Ok(a), Ok(b)) if a == b => {}
                                    (Ok(a), Ok(b)) => {
                                        r.witness = Some(format!(
                                            "{x:?} along {f} then {g}: composite gives {a:?}, steps give {b:?}"
                                        ));
                                        return r;
                                    }
                                    _ => r.skipped += 1,
                                }
                            }
                        }
                    }
                }
            }
            r
        })
        .collect();
    let mut total = FunctorialityReport::default();
    for r in reports {
        total.maps += r.maps;
        total.pairs += r.pairs;
        total.skipped += r.skipped;
        if total.witness.is_none() {
            total.witness = r.witness;
        }
    }
    total
}

/// The one-point presheaf.
#[derive(Clone, Copy, Debug, Default)]
pub struct Terminal;

impl SetPresheaf for Terminal {
    type Elem = ();

    fn name(&self) -> String {
        "terminal".into()
    }

    fn elements(&self, _g: &Graph, _bound: usize) -> Result<Vec<()>, PresheafError> {
        Ok(vec![()])
    }

    fn act(&self, _m: &GraphMap, _x: &()) -> Result<(), PresheafError> {
        Ok(())
    }
}

/// Orientations of the edges: `x[e]` is set when the chosen arc of edge `e`
/// is `2e + 1` rather than `2e`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Orientations;

impl Orientations {
    pub fn chosen_arc(x: &[bool], e: usize) -> usize {
        2 * e + x[e] as usize
    }
}

impl SetPresheaf for Orientations {
    type Elem = Vec<bool>;

    fn name(&self) -> String {
        "orientation".into()
    }

    fn elements(&self, g: &Graph, bound: usize) -> Result<Vec<Vec<bool>>, PresheafError> {
        bounded_power(2, g.edge_count(), bound, "the set of orientations")?;
        Ok(words(2, g.edge_count())
            .into_iter()
            .map(|w| w.into_iter().map(|d| d == 1).collect())
            .collect())
    }

    fn act(&self, m: &GraphMap, x: &Vec<bool>) -> Result<Vec<bool>, PresheafError> {
        check_source(m, x.len(), m.source().edge_count())?;
        // a target edge points the way of the source arc its arc 2e' covers
        Ok(m.target()
            .edges()
            .map(|e| {
                let a = m.arc_map()[2 * e];
                a != Orientations::chosen_arc(x, a / 2)
            })
            .collect())
    }
}

fn check_source(_m: &GraphMap, got: usize, want: usize) -> Result<(), PresheafError> {
    if got != want {
        return Err(PresheafError::Mismatch(format!(
            "element has {got} entries, source needs {want}"
        )));
    }
    Ok(())
}

/// Vertex labels in `0..=label_bound`; maps add fiber Betti numbers to the
/// label sums over fibers.
#[derive(Clone, Copy, Debug)]
pub struct Grading {
    pub label_bound: u32,
}

impl SetPresheaf for Grading {
    type Elem = Vec<u32>;

    fn name(&self) -> String {
        format!("grading:{}", self.label_bound)
    }

    fn elements(&self, g: &Graph, bound: usize) -> Result<Vec<Vec<u32>>, PresheafError> {
        bounded_power(
            self.label_bound as usize + 1,
            g.vertex_count(),
            bound,
            "the set of labellings",
        )?;
        Ok(words(self.label_bound as usize + 1, g.vertex_count())
            .into_iter()
            .map(|w| w.into_iter().map(|d| d as u32).collect())
            .collect())
    }

    fn act(&self, m: &GraphMap, x: &Vec<u32>) -> Result<Vec<u32>, PresheafError> {
        check_source(m, x.len(), m.source().vertex_count())?;
        pushforward_labels(m, x)
            .into_iter()
            .map(|l| {
                if l > self.label_bound as u64 {
                    Err(PresheafError::LabelOverflow {
                        label: l,
                        bound: self.label_bound,
                    })
                } else {
                    Ok(l as u32)
                }
            })
            .collect()
    }
}

/// A finite commutative monoid given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monoid {
    table: Vec<Vec<usize>>,
    unit: usize,
}

impl Monoid {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, PresheafError> {
        let n = table.len();
        if n == 0 {
            return Err(PresheafError::BadMonoid("empty table".into()));
        }
        if table
            .iter()
            .any(|row| row.len() != n || row.iter().any(|&x| x >= n))
        {
            return Err(PresheafError::BadMonoid(
                "table is not a closed square".into(),
            ));
        }
        for a in 0..n {
            for b in 0..n {
                if table[a][b] != table[b][a] {
                    return Err(PresheafError::BadMonoid(format!("{a}*{b} != {b}*{a}")));
                }
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(PresheafError::BadMonoid(format!(
                            "({a}*{b})*{c} != {a}*({b}*{c})"
                        )));
                    }
                }
            }
        }
        let unit = (0..n)
            .find(|&u| (0..n).all(|a| table[u][a] == a))
            .ok_or_else(|| PresheafError::BadMonoid("no unit".into()))?;
        Ok(Monoid { table, unit })
    }

    /// `Z/n` under addition.
    pub fn cyclic(n: usize) -> Self {
        Monoid::new(
            (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect(),
        )
        .expect("valid")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// Vertex labels in a commutative monoid, multiplied over fibers.
#[derive(Clone, Debug)]
pub struct MonoidPresheaf {
    pub monoid: Monoid,
}

impl SetPresheaf for MonoidPresheaf {
    type Elem = Vec<usize>;

    fn name(&self) -> String {
        format!("monoid:{}", self.monoid.order())
    }

    fn elements(&self, g: &Graph, bound: usize) -> Result<Vec<Vec<usize>>, PresheafError> {
        bounded_power(
            self.monoid.order(),
            g.vertex_count(),
            bound,
            "the set of labellings",
        )?;
        Ok(words(self.monoid.order(), g.vertex_count()))
    }

    fn act(&self, m: &GraphMap, x: &Vec<usize>) -> Result<Vec<usize>, PresheafError> {
        check_source(m, x.len(), m.source().vertex_count())?;
        let mut out = vec![self.monoid.unit(); m.target().vertex_count()];
        for (v, &l) in x.iter().enumerate() {
            if let Some(w) = m.vertex_map()[v].vertex() {
                out[w] = self.monoid.mul(out[w], l);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Elementary, End};
    use crate::morphism::rho_vertex;

    fn theta() -> Graph {
        Graph::elementary(Elementary::Theta)
    }

    fn collapse(g: &Graph) -> GraphMap {
        GraphMap::new(
            g.clone(),
            Graph::corolla(0),
            vec![End::Vertex(0); g.vertex_count()],
            Vec::new(),
        )
        .unwrap()
    }

    #[test]
    fn orientation_on_theta() {
        let r = segal_check(&Orientations, &theta(), 1 << 20).unwrap();
        assert_eq!(r.lhs_size, BigUint::from(8u32));
        assert_eq!(r.pullback_size, BigUint::from(8u32));
        assert!(r.is_bijection);
    }

    #[test]
    fn orientation_counts() {
        for k in 0..6 {
            assert_eq!(
                Orientations
                    .elements(&Graph::corolla(k), 1 << 10)
                    .unwrap()
                    .len(),
                1 << k
            );
        }
        let l1 = Graph::elementary(Elementary::Loops(1));
        assert_eq!(Orientations.elements(&l1, 10).unwrap().len(), 2);
    }

    #[test]
    fn edge_swap_exchanges_orientations() {
        let e = Graph::edge();
        let values = Orientations.elements(&e, 10).unwrap();
        assert_eq!(values.len(), 2);
        let swap = edge_swap();
        assert_eq!(Orientations.act(&swap, &values[0]).unwrap(), values[1]);
        assert_eq!(Orientations.act(&swap, &values[1]).unwrap(), values[0]);
    }

    #[test]
    fn terminal_is_segal() {
        for g in crate::enumerate::corpus(2, 3) {
            let r = segal_check(&Terminal, &g, 10).unwrap();
            assert!(r.is_bijection);
            assert_eq!(r.lhs_size, BigUint::one());
        }
    }

    #[test]
    fn bound_exceeded() {
        let err = Orientations.elements(&Graph::corolla(5), 16).unwrap_err();
        assert_eq!(err.code(), "BOUND_EXCEEDED");
    }

    #[test]
    fn grading_examples() {
        let grading = Grading { label_bound: 6 };
        let l1 = Graph::elementary(Elementary::Loops(1));
        assert_eq!(grading.act(&collapse(&l1), &vec![0]).unwrap(), vec![1]);
        assert_eq!(
            grading.act(&collapse(&theta()), &vec![0, 0]).unwrap(),
            vec![2]
        );
        let r = rho_vertex(&theta(), 0).unwrap();
        assert_eq!(grading.act(&r, &vec![5, 1]).unwrap(), vec![5]);
        let tight = Grading { label_bound: 1 };
        assert_eq!(
            tight
                .act(&collapse(&theta()), &vec![0, 0])
                .unwrap_err()
                .code(),
            "LABEL_OVERFLOW"
        );
    }

    #[test]
    fn monoid_examples() {
        let max = Monoid::new(vec![vec![0, 1], vec![1, 1]]).unwrap();
        let p = MonoidPresheaf { monoid: max };
        assert_eq!(p.act(&collapse(&theta()), &vec![1, 0]).unwrap(), vec![1]);
        let trivial = MonoidPresheaf {
            monoid: Monoid::cyclic(1),
        };
        assert!(segal_check(&trivial, &theta(), 10).unwrap().is_bijection);
        assert_eq!(
            Monoid::new(vec![vec![0, 2], vec![2, 0]])
                .unwrap_err()
                .code(),
            "BAD_MONOID"
        );
        assert_eq!(
            Monoid::new(vec![vec![1, 0], vec![0, 0]])
                .unwrap_err()
                .code(),
            "BAD_MONOID"
        );
        assert_eq!(
            Monoid::new(vec![vec![0, 1], vec![0, 1]])
                .unwrap_err()
                .code(),
            "BAD_MONOID"
        );
    }

    #[test]
    fn flipping_orientation_keeps_verdict() {
        let g = theta();
        for o in g.orientations() {
            let r = Orientations.segal_check_oriented(&g, 1 << 10, &o).unwrap();
            assert!(r.is_bijection);
        }
    }
}
