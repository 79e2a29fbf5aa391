//! Commutative Frobenius algebras over an exact field, given by structure
//! constants, a unit and a trace.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::field::{invert, Field, Matrix};
use crate::tensor::{Slot, Tensor};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("BAD_ALGEBRA: {0}")]
    BadShape(String),
    #[error("NOT_ASSOCIATIVE: (e{0} e{1}) e{2} != e{0} (e{1} e{2})")]
    NotAssociative(usize, usize, usize),
    #[error("NOT_COMMUTATIVE: e{0} e{1} != e{1} e{0}")]
    NotCommutative(usize, usize),
    #[error("NO_UNIT: unit vector fails on e{0}")]
    NoUnit(usize),
    #[error("DEGENERATE_TRACE: the pairing τ(e_i e_j) is singular")]
    DegenerateTrace,
    #[error("FROBENIUS_VIOLATION: relation fails on e{0} ⊗ e{1}")]
    FrobeniusViolation(usize, usize),
    #[error("ARITY_MISMATCH: {0}")]
    ArityMismatch(String),
}

impl AlgebraError {
    pub fn code(&self) -> &'static str {
        match self {
            AlgebraError::BadShape(_) => "BAD_ALGEBRA",
            AlgebraError::NotAssociative(..) => "NOT_ASSOCIATIVE",
            AlgebraError::NotCommutative(..) => "NOT_COMMUTATIVE",
            AlgebraError::NoUnit(_) => "NO_UNIT",
            AlgebraError::DegenerateTrace => "DEGENERATE_TRACE",
            AlgebraError::FrobeniusViolation(..) => "FROBENIUS_VIOLATION",
            AlgebraError::ArityMismatch(_) => "ARITY_MISMATCH",
        }
    }
}

/// `e_i e_j = Σ_k mul[i][j][k] e_k`.
pub type StructureConstants<E> = Vec<Vec<Vec<E>>>;

#[derive(Debug)]
pub struct FrobeniusAlgebra<F: Field> {
    field: F,
    dim: usize,
    mul: StructureConstants<F::Elem>,
    unit: Vec<F::Elem>,
    trace: Vec<F::Elem>,
    pairing: Matrix<F::Elem>,
    copairing: Matrix<F::Elem>,
    /// row `i` is `H(e_i)`
    handle: Matrix<F::Elem>,
    /// `τ(H^g(e_{i1} ⋯ e_{ik}))` keyed by genus and sorted indices
    memo: Mutex<HashMap<(u32, Vec<usize>), F::Elem>>,
}

impl<F: Field> Clone for FrobeniusAlgebra<F> {
    fn clone(&self) -> Self {
        FrobeniusAlgebra {
            field: self.field.clone(),
            dim: self.dim,
            mul: self.mul.clone(),
            unit: self.unit.clone(),
            trace: self.trace.clone(),
            pairing: self.pairing.clone(),
            copairing: self.copairing.clone(),
            handle: self.handle.clone(),
            memo: Mutex::new(HashMap::new()),
        }
    }
}

impl<F: Field> FrobeniusAlgebra<F> {
    /// Validates the data and derives the pairing, copairing and handle
    /// operator.
    pub fn new(
        field: F,
        mul: StructureConstants<F::Elem>,
        unit: Vec<F::Elem>,
        trace: Vec<F::Elem>,
    ) -> Result<Self, AlgebraError> {
        let n = mul.len();
        if n == 0 {
            return Err(AlgebraError::BadShape("dimension must be positive".into()));
        }
        if mul
            .iter()
            .any(|m| m.len() != n || m.iter().any(|v| v.len() != n))
        {
            return Err(AlgebraError::BadShape(format!("mul must be {n}×{n}×{n}")));
        }
        if unit.len() != n || trace.len() != n {
            return Err(AlgebraError::BadShape(format!(
                "unit and trace must have length {n}"
            )));
        }
        let mut a = FrobeniusAlgebra {
            field,
            dim: n,
            mul,
            unit,
            trace,
            pairing: Vec::new(),
            copairing: Vec::new(),
            handle: Vec::new(),
            memo: Mutex::new(HashMap::new()),
        };
        for i in 0..n {
            for j in 0..n {
                if a.mul[i][j] != a.mul[j][i] {
                    return Err(AlgebraError::NotCommutative(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = a.multiply(&a.mul[i][j], &a.basis(k));
                    let right = a.multiply(&a.basis(i), &a.mul[j][k]);
                    if left != right {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        for i in 0..n {
            if a.multiply(&a.unit, &a.basis(i)) != a.basis(i) {
                return Err(AlgebraError::NoUnit(i));
            }
        }
        a.pairing = (0..n)
            .map(|i| (0..n).map(|j| a.trace_of(&a.mul[i][j])).collect())
            .collect();
        a.copairing = invert(&a.field, &a.pairing).ok_or(AlgebraError::DegenerateTrace)?;
        a.check_frobenius()?;
        a.handle = (0..n).map(|i| a.apply_handle(&a.basis(i))).collect();
        Ok(a)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constants(&self) -> &StructureConstants<F::Elem> {
        &self.mul
    }

    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    pub fn trace(&self) -> &[F::Elem] {
        &self.trace
    }

    /// `G[i][j] = τ(e_i e_j)`.
    pub fn pairing(&self) -> &Matrix<F::Elem> {
        &self.pairing
    }

    /// `G⁻¹`.
    pub fn copairing(&self) -> &Matrix<F::Elem> {
        &self.copairing
    }

    pub fn basis(&self, i: usize) -> Vec<F::Elem> {
        (0..self.dim)
            .map(|k| {
                if k == i {
                    self.field.one()
                } else {
                    self.field.zero()
                }
            })
            .collect()
    }

    fn scale_add(&self, acc: &mut [F::Elem], c: &F::Elem, v: &[F::Elem]) {
        if self.field.is_zero(c) {
            return;
        }
        for (x, y) in acc.iter_mut().zip(v) {
            *x = self.field.add(x, &self.field.mul(c, y));
        }
    }

    pub fn multiply(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                self.scale_add(&mut out, &f.mul(x, y), &self.mul[i][j]);
            }
        }
        out
    }

    pub fn trace_of(&self, a: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        a.iter()
            .zip(&self.trace)
            .fold(f.zero(), |acc, (x, t)| f.add(&acc, &f.mul(x, t)))
    }

    /// `Δ(a) = Σ_ij (G⁻¹)_ij (a e_i) ⊗ e_j`, as the matrix of coefficients
    /// of `e_k ⊗ e_l`.
    pub fn comultiply(&self, a: &[F::Elem]) -> Matrix<F::Elem> {
        let f = &self.field;
        let mut out = vec![vec![f.zero(); self.dim]; self.dim];
        for i in 0..self.dim {
            let ae = self.multiply(a, &self.basis(i));
            for j in 0..self.dim {
                let c = &self.copairing[i][j];
                for (k, x) in ae.iter().enumerate() {
                    out[k][j] = f.add(&out[k][j], &f.mul(c, x));
                }
            }
        }
        out
    }

    fn apply_handle(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        let d = self.comultiply(a);
        let mut out = vec![self.field.zero(); self.dim];
        for (k, row) in d.iter().enumerate() {
            for (l, c) in row.iter().enumerate() {
                self.scale_add(&mut out, c, &self.mul[k][l]);
            }
        }
        out
    }

    /// `H = μ∘Δ` applied to `a`.
    pub fn handle(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, c) in a.iter().enumerate() {
            self.scale_add(&mut out, c, &self.handle[i]);
        }
        out
    }

    /// `H^g(a)`.
    pub fn handle_power(&self, g: u32, a: &[F::Elem]) -> Vec<F::Elem> {
        (0..g).fold(a.to_vec(), |x, _| self.handle(&x))
    }

    /// `τ(H^g(1))`, the closed genus-`g` invariant.
    pub fn evaluate_closed(&self, g: u32) -> F::Elem {
        self.trace_of(&self.handle_power(g, &self.unit))
    }

    /// `τ(H^g(e_{i1} ⋯ e_{ik}))`.
    pub fn genus_entry(&self, g: u32, indices: &[usize]) -> F::Elem {
        let mut key = indices.to_vec();
        key.sort_unstable();
        let key = (g, key);
        if let Some(x) = self.memo.lock().expect("memo lock").get(&key) {
            return x.clone();
        }
        let product = key.1.iter().fold(self.unit.clone(), |acc, &i| {
            self.multiply(&acc, &self.basis(i))
        });
        let value = self.trace_of(&self.handle_power(g, &product));
        self.memo
            .lock()
            .expect("memo lock")
            .insert(key, value.clone());
        value
    }

    /// The form `(a_1, …, a_k) ↦ τ(H^g(a_1 ⋯ a_k))` as a tensor with slots
    /// labelled `0..k`.
    pub fn genus_tensor(&self, g: u32, k: usize) -> Tensor<F::Elem> {
        let slots = (0..k)
            .map(|label| Slot {
                label,
                dim: self.dim,
            })
            .collect();
        Tensor::from_fn(slots, |idx| self.genus_entry(g, idx))
    }

    /// `τ(H^g(p · e_{i1} ⋯ e_{ik}))` over the given slots, for a fixed
    /// element `p`.
    pub fn genus_tensor_times(&self, g: u32, p: &[F::Elem], slots: Vec<Slot>) -> Tensor<F::Elem> {
        let f = &self.field;
        let mut cache: HashMap<Vec<usize>, F::Elem> = HashMap::new();
        Tensor::from_fn(slots, |idx| {
            let mut key = idx.to_vec();
            key.sort_unstable();
            cache
                .entry(key)
                .or_insert_with_key(|key| {
                    // expand p in the basis so the memoized entries are reused
                    p.iter().enumerate().fold(f.zero(), |acc, (i, c)| {
                        if f.is_zero(c) {
                            return acc;
                        }
                        let mut ix = key.clone();
                        ix.push(i);
                        f.add(&acc, &f.mul(c, &self.genus_entry(g, &ix)))
                    })
                })
                .clone()
        })
    }

    /// The two Frobenius relations as identities of maps `A⊗A → A⊗A`.
    fn check_frobenius(&self) -> Result<(), AlgebraError> {
        let f = &self.field;
        let n = self.dim;
        let deltas: Vec<Matrix<F::Elem>> =
            (0..n).map(|i| self.comultiply(&self.basis(i))).collect();
        for i in 0..n {
            for j in 0..n {
                let middle = self.comultiply(&self.mul[i][j]);
                let mut left = vec![vec![f.zero(); n]; n];
                let mut right = vec![vec![f.zero(); n]; n];
                for k in 0..n {
                    for l in 0..n {
                        // (μ ⊗ id)(e_i ⊗ Δ(e_j))
                        let c = &deltas[j][k][l];
                        if !f.is_zero(c) {
                            for (m, x) in self.mul[i][k].iter().enumerate() {
                                left[m][l] = f.add(&left[m][l], &f.mul(c, x));
                            }
                        }
                        // (id ⊗ μ)(Δ(e_i) ⊗ e_j)
                        let c = &deltas[i][k][l];
                        if !f.is_zero(c) {
                            for (m, x) in self.mul[l][j].iter().enumerate() {
                                right[k][m] = f.add(&right[k][m], &f.mul(c, x));
                            }
                        }
                    }
                }
                if left != middle || right != middle {
                    return Err(AlgebraError::FrobeniusViolation(i, j));
                }
            }
        }
        Ok(())
    }

    /// `k[x]/x^n` with `τ(Σ a_i x^i) = a_{n−1}`.
    pub fn truncated_polynomial(field: F, n: usize) -> Result<Self, AlgebraError> {
        let mul = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| {
                                if i + j == k {
                                    field.one()
                                } else {
                                    field.zero()
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let unit = (0..n)
            .map(|k| if k == 0 { field.one() } else { field.zero() })
            .collect();
        let trace = (0..n)
            .map(|k| {
                if k + 1 == n {
                    field.one()
                } else {
                    field.zero()
                }
            })
            .collect();
        FrobeniusAlgebra::new(field, mul, unit, trace)
    }

    /// The group algebra of `C_n` with `τ` the coefficient of the unit.
    pub fn cyclic_group_algebra(field: F, n: usize) -> Result<Self, AlgebraError> {
        let mul = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| {
                                if (i + j) % n == k {
                                    field.one()
                                } else {
                                    field.zero()
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let unit: Vec<F::Elem> = (0..n)
            .map(|k| if k == 0 { field.one() } else { field.zero() })
            .collect();
        let trace = unit.clone();
        FrobeniusAlgebra::new(field, mul, unit, trace)
    }
}
