//! Dense tensors over an exact field with labelled slots.
//!
//! Entries are stored row-major: the first slot is the most significant
//! index.

use crate::field::{Field, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub label: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tensor<E> {
    slots: Vec<Slot>,
    data: Vec<E>,
}

fn volume(slots: &[Slot]) -> usize {
    slots.iter().map(|s| s.dim).product()
}

/// Decomposes a flat index into per-slot indices.
fn unflatten(mut flat: usize, slots: &[Slot], out: &mut [usize]) {
    for (i, s) in slots.iter().enumerate().rev() {
        out[i] = flat % s.dim;
        flat /= s.dim;
    }
}

fn flatten(idx: &[usize], slots: &[Slot]) -> usize {
    idx.iter()
        .zip(slots)
        .fold(0, |acc, (&i, s)| acc * s.dim + i)
}

impl<E: Clone> Tensor<E> {
    pub fn new(slots: Vec<Slot>, data: Vec<E>) -> Self {
        assert_eq!(
            volume(&slots),
            data.len(),
            "tensor data does not fit its slots"
        );
        Tensor { slots, data }
    }

    pub fn scalar(x: E) -> Self {
        Tensor {
            slots: Vec::new(),
            data: vec![x],
        }
    }

    /// Tensor whose entry at each multi-index is `entry(index)`.
    pub fn from_fn(slots: Vec<Slot>, mut entry: impl FnMut(&[usize]) -> E) -> Self {
        let mut idx = vec![0; slots.len()];
        let data = (0..volume(&slots))
            .map(|flat| {
                unflatten(flat, &slots, &mut idx);
                entry(&idx)
            })
            .collect();
        Tensor { slots, data }
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    pub fn labels(&self) -> Vec<usize> {
        self.slots.iter().map(|s| s.label).collect()
    }

    fn position(&self, label: usize) -> usize {
        self.slots
            .iter()
            .position(|s| s.label == label)
            .unwrap_or_else(|| panic!("no slot labelled {label}"))
    }

    pub fn get(&self, idx: &[usize]) -> &E {
        &self.data[flatten(idx, &self.slots)]
    }

    /// The single entry of a tensor without slots.
    pub fn into_scalar(self) -> E {
        assert!(self.slots.is_empty(), "tensor still has slots");
        self.data.into_iter().next().expect("one entry")
    }

    pub fn relabel(mut self, mut f: impl FnMut(usize) -> usize) -> Self {
        for s in &mut self.slots {
            s.label = f(s.label);
        }
        self
    }

    /// Reorders the slots to follow `labels`.
    pub fn permute(&self, labels: &[usize]) -> Self {
        assert_eq!(labels.len(), self.slots.len());
        let perm: Vec<usize> = labels.iter().map(|&l| self.position(l)).collect();
        let slots: Vec<Slot> = perm.iter().map(|&p| self.slots[p]).collect();
        let mut src = vec![0; slots.len()];
        Tensor::from_fn(slots, |idx| {
            for (k, &p) in perm.iter().enumerate() {
                src[p] = idx[k];
            }
            self.get(&src).clone()
        })
    }

    pub fn outer<F: Field<Elem = E>>(f: &F, a: &Self, b: &Self) -> Self {
        let mut slots = a.slots.clone();
        slots.extend_from_slice(&b.slots);
        let data = a
            .data
            .iter()
            .flat_map(|x| b.data.iter().map(move |y| f.mul(x, y)))
            .collect();
        Tensor { slots, data }
    }

    /// Contracts slots `l1`, `l2` against `m`: the result at the remaining
    /// indices is `Σ_ij m[i][j] T[.. i .. j ..]`.
    pub fn contract<F: Field<Elem = E>>(&self, f: &F, l1: usize, l2: usize, m: &Matrix<E>) -> Self {
        let p1 = self.position(l1);
        let p2 = self.position(l2);
        assert_ne!(p1, p2);
        let (d1, d2) = (self.slots[p1].dim, self.slots[p2].dim);
        let rest: Vec<usize> = (0..self.slots.len())
            .filter(|&i| i != p1 && i != p2)
            .collect();
        let slots: Vec<Slot> = rest.iter().map(|&i| self.slots[i]).collect();
        let mut src = vec![0; self.slots.len()];
        Tensor::from_fn(slots, |idx| {
            for (k, &i) in rest.iter().enumerate() {
                src[i] = idx[k];
            }
            let mut acc = f.zero();
            for i in 0..d1 {
                for j in 0..d2 {
                    if f.is_zero(&m[i][j]) {
                        continue;
                    }
                    src[p1] = i;
                    src[p2] = j;
                    acc = f.add(&acc, &f.mul(&m[i][j], self.get(&src)));
                }
            }
            acc
        })
    }

    /// Contracts slot `label` with the vector `v`.
    pub fn apply<F: Field<Elem = E>>(&self, f: &F, label: usize, v: &[E]) -> Self {
        let p = self.position(label);
        let rest: Vec<usize> = (0..self.slots.len()).filter(|&i| i != p).collect();
        let slots: Vec<Slot> = rest.iter().map(|&i| self.slots[i]).collect();
        let mut src = vec![0; self.slots.len()];
        Tensor::from_fn(slots, |idx| {
            for (k, &i) in rest.iter().enumerate() {
                src[i] = idx[k];
            }
            let mut acc = f.zero();
            for (i, x) in v.iter().enumerate() {
                if f.is_zero(x) {
                    continue;
                }
                src[p] = i;
                acc = f.add(&acc, &f.mul(x, self.get(&src)));
            }
            acc
        })
    }
}
