//! Cyclic orders, their blow-up along maps with ordered fibers, the
//! total-order/cyclic-order correspondence, and restriction of presheaves to
//! trees.

use crate::canon::next_permutation;
use crate::graph::Graph;
use crate::morphism::GraphMap;
use crate::segal::{PresheafError, SetPresheaf};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CyclicError {
    #[error("EMPTY_RESULT: every fiber is empty")]
    EmptyResult,
    #[error("BAD_ORDER: {0}")]
    BadOrder(String),
    #[error("BAD_MAP: {0}")]
    BadMap(String),
}

impl CyclicError {
    pub fn code(&self) -> &'static str {
        match self {
            CyclicError::EmptyResult => "EMPTY_RESULT",
            CyclicError::BadOrder(_) => "BAD_ORDER",
            CyclicError::BadMap(_) => "BAD_MAP",
        }
    }
}

/// A single cycle through `0..n`, stored as its rotation starting at 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicOrder {
    sequence: Vec<usize>,
}

impl CyclicOrder {
    /// The cycle visiting `sequence` in order and closing up.
    pub fn from_sequence(sequence: &[usize]) -> Result<Self, CyclicError> {
        let n = sequence.len();
        let mut seen = vec![false; n];
        for &x in sequence {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(CyclicError::BadOrder(format!(
                    "{sequence:?} is not a permutation of 0..{n}"
                )));
            }
        }
        let start = sequence.iter().position(|&x| x == 0).unwrap_or(0);
        let mut sequence = sequence.to_vec();
        sequence.rotate_left(start);
        Ok(CyclicOrder { sequence })
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// The canonical form: the rotation starting at the least element.
    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn successor(&self, x: usize) -> usize {
        let i = self
            .sequence
            .iter()
            .position(|&y| y == x)
            .expect("element of the order");
        self.sequence[(i + 1) % self.sequence.len()]
    }
}

/// All `(n−1)!` cyclic orders on `0..n` in canonical-form order; empty for
/// `n = 0`.
pub fn enumerate_cyclic_orders(n: usize) -> Vec<CyclicOrder> {
    if n == 0 {
        return Vec::new();
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut out = Vec::new();
    loop {
        let mut sequence = vec![0];
        sequence.extend_from_slice(&rest);
        out.push(CyclicOrder { sequence });
        if !next_permutation(&mut rest) {
            return out;
        }
    }
}

/// A map `B → A` of finite sets with a total order on every fiber, given by
/// the ordered fibers over `0..|A|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberedOrderMap {
    source_size: usize,
    fibers: Vec<Vec<usize>>,
}

impl FiberedOrderMap {
    /// The fibers must partition `0..|B|`.
    pub fn new(fibers: Vec<Vec<usize>>) -> Result<Self, CyclicError> {
        let source_size = fibers.iter().map(Vec::len).sum();
        let mut seen = vec![false; source_size];
        for &b in fibers.iter().flatten() {
            if b >= source_size || std::mem::replace(&mut seen[b], true) {
                return Err(CyclicError::BadMap(format!(
                    "fibers {fibers:?} do not partition 0..{source_size}"
                )));
            }
        }
        Ok(FiberedOrderMap {
            source_size,
            fibers,
        })
    }

    pub fn identity(n: usize) -> Self {
        FiberedOrderMap {
            source_size: n,
            fibers: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn source_size(&self) -> usize {
        self.source_size
    }

    pub fn target_size(&self) -> usize {
        self.fibers.len()
    }

    pub fn fibers(&self) -> &[Vec<usize>] {
        &self.fibers
    }

    /// `self ∘ first`, where `first: C → B` and `self: B → A`: the fiber over
    /// `a` lists the fibers of `first` over the fiber of `a`, in order.
    pub fn compose(&self, first: &FiberedOrderMap) -> Result<FiberedOrderMap, CyclicError> {
        if first.target_size() != self.source_size {
            return Err(CyclicError::BadMap(format!(
                "cannot compose: {} elements against {}",
                first.target_size(),
                self.source_size
            )));
        }
        Ok(FiberedOrderMap {
            source_size: first.source_size,
            fibers: self
                .fibers
                .iter()
                .map(|fiber| {
                    fiber
                        .iter()
                        .flat_map(|&b| first.fibers[b].iter().copied())
                        .collect()
                })
                .collect(),
        })
    }
}

/// Every fibered order map from a set of size `b` to one of size `a`:
/// orderings of `0..b` cut into `a` consecutive, possibly empty, blocks.
pub fn enumerate_fibered_maps(b: usize, a: usize) -> Vec<FiberedOrderMap> {
    if a == 0 {
        return if b == 0 {
            vec![FiberedOrderMap {
                source_size: 0,
                fibers: Vec::new(),
            }]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..b).collect();
    loop {
        // block sizes: weak compositions of b into a parts
        let mut sizes = vec![0usize; a];
        sizes[a - 1] = b;
        loop {
            let mut fibers = Vec::with_capacity(a);
            let mut offset = 0;
            for &s in &sizes {
                fibers.push(perm[offset..offset + s].to_vec());
                offset += s;
            }
            out.push(FiberedOrderMap {
                source_size: b,
                fibers,
            });
            // next composition: move one unit leftwards, odometer style
            let Some(i) = (1..a).rev().find(|&i| sizes[i] > 0) else {
                break;
            };
            sizes[i - 1] += 1;
            let carry = sizes[i] - 1;
            sizes[i] = 0;
            sizes[a - 1] += carry;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Replaces every point of `A` by its ordered fiber.
pub fn induce_cyclic_order(
    c: &CyclicOrder,
    f: &FiberedOrderMap,
) -> Result<CyclicOrder, CyclicError> {
    if c.len() != f.target_size() {
        return Err(CyclicError::BadMap(format!(
            "cyclic order on {} elements, map into {}",
            c.len(),
            f.target_size()
        )));
    }
    let sequence: Vec<usize> = c
        .sequence()
        .iter()
        .flat_map(|&a| f.fibers[a].iter().copied())
        .collect();
    if sequence.is_empty() {
        return Err(CyclicError::EmptyResult);
    }
    CyclicOrder::from_sequence(&sequence)
}

/// The total order `t` on `0..n` followed by the new point `n`, closed up.
pub fn totalorder_to_cyclic(t: &[usize]) -> Result<CyclicOrder, CyclicError> {
    let mut sequence = t.to_vec();
    sequence.push(t.len());
    CyclicOrder::from_sequence(&sequence)
}

/// A presheaf restricted to trees; values and actions at graphs with cycles
/// are refused.
#[derive(Clone, Debug)]
pub struct TreeRestricted<P> {
    pub inner: P,
}

pub fn restrict_to_trees<P: SetPresheaf>(p: P) -> TreeRestricted<P> {
    TreeRestricted { inner: p }
}

fn require_tree(g: &Graph) -> Result<(), PresheafError> {
    if g.is_tree() {
        Ok(())
    } else {
        Err(PresheafError::NotATree(format!(
            "graph has Betti number {}",
            g.betti_number()
        )))
    }
}

impl<P: SetPresheaf> SetPresheaf for TreeRestricted<P> {
    type Elem = P::Elem;

    fn name(&self) -> String {
        format!("tree:{}", self.inner.name())
    }

    fn elements(&self, g: &Graph, bound: usize) -> Result<Vec<P::Elem>, PresheafError> {
        require_tree(g)?;
        self.inner.elements(g, bound)
    }

    fn act(&self, m: &GraphMap, x: &P::Elem) -> Result<P::Elem, PresheafError> {
        require_tree(m.source())?;
        require_tree(m.target())?;
        self.inner.act(m, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Elementary;
    use crate::segal::{segal_check, Grading, Orientations};

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_cyclic_orders(1).len(), 1);
        assert_eq!(enumerate_cyclic_orders(3).len(), 2);
        assert_eq!(enumerate_cyclic_orders(4).len(), 6);
        for n in 1..=7 {
            assert_eq!(enumerate_cyclic_orders(n).len(), factorial(n - 1));
        }
    }

    #[test]
    fn blow_up_example() {
        let c = enumerate_cyclic_orders(2).remove(0);
        // a = 0, b = 1 over 0 and c = 2 over 1
        let f = FiberedOrderMap::new(vec![vec![0, 1], vec![2]]).unwrap();
        assert_eq!(induce_cyclic_order(&c, &f).unwrap().sequence(), &[0, 1, 2]);
        let id = FiberedOrderMap::identity(2);
        assert_eq!(induce_cyclic_order(&c, &id).unwrap(), c);
        let empty = FiberedOrderMap::new(vec![vec![], vec![]]).unwrap();
        assert_eq!(
            induce_cyclic_order(&c, &empty).unwrap_err().code(),
            "EMPTY_RESULT"
        );
    }

    #[test]
    fn fibered_map_counts() {
        // b! · C(b + a − 1, a − 1)
        assert_eq!(enumerate_fibered_maps(2, 2).len(), 2 * 3);
        assert_eq!(enumerate_fibered_maps(3, 2).len(), 6 * 4);
        assert_eq!(enumerate_fibered_maps(0, 3).len(), 1);
    }

    #[test]
    fn total_orders_small() {
        assert_eq!(totalorder_to_cyclic(&[]).unwrap().sequence(), &[0]);
        let a = totalorder_to_cyclic(&[0, 1]).unwrap();
        let b = totalorder_to_cyclic(&[1, 0]).unwrap();
        assert_ne!(a, b);
        assert!(totalorder_to_cyclic(&[0, 0]).is_err());
    }

    #[test]
    fn successor_map() {
        let c = CyclicOrder::from_sequence(&[2, 0, 1]).unwrap();
        assert_eq!(c.sequence(), &[0, 1, 2]);
        assert_eq!(c.successor(2), 0);
    }

    #[test]
    fn trees_only() {
        let or = restrict_to_trees(Orientations);
        assert_eq!(or.elements(&Graph::corolla(3), 100).unwrap().len(), 8);
        let l1 = Graph::elementary(Elementary::Loops(1));
        assert_eq!(or.elements(&l1, 100).unwrap_err().code(), "NOT_A_TREE");
        let grading = restrict_to_trees(Grading { label_bound: 6 });
        let linear2 = Graph::elementary(Elementary::Linear(2));
        assert!(
            segal_check(&grading, &linear2, 1 << 12)
                .unwrap()
                .is_bijection
        );
    }
}
