//! Exact scalar fields: arbitrary-precision rationals and prime fields, plus
//! the small amount of dense linear algebra the rest of the crate needs.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("BAD_FIELD: {0}")]
    BadField(String),
    #[error("BAD_SCALAR: {0}")]
    BadScalar(String),
}

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// `p/q` for rationals, the least residue for prime fields.
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, FieldError>;
    /// `Q` or `F:<p>`.
    fn tag(&self) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn format(&self, a: &BigRational) -> String {
        format!("{}/{}", a.numer(), a.denom())
    }
    fn parse(&self, s: &str) -> Result<BigRational, FieldError> {
        let bad = || FieldError::BadScalar(format!("not a rational: {s:?}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(FieldError::BadScalar(format!("zero denominator in {s:?}")));
        }
        Ok(BigRational::new(n, d))
    }
    fn tag(&self) -> String {
        "Q".into()
    }
}

/// `F_p` for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if !(2..1 << 31).contains(&p) || !is_prime(p) {
            return Err(FieldError::BadField(format!(
                "{p} is not a prime below 2^31"
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|d: &u32| (*d as u64) * (*d as u64) <= p as u64)
            .all(|d| !p.is_multiple_of(d))
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // Fermat
        let mut base = *a as u64;
        let mut e = self.p - 2;
        let mut acc = 1u64;
        let p = self.p as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Some(acc as u32)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u32, FieldError> {
        let r = Rationals.parse(s)?;
        let n = self.from_i64(
            i64::try_from(r.numer())
                .map_err(|_| FieldError::BadScalar(format!("scalar {s:?} out of range")))?,
        );
        let d = self.from_i64(
            i64::try_from(r.denom())
                .map_err(|_| FieldError::BadScalar(format!("scalar {s:?} out of range")))?,
        );
        let d = self.inv(&d).ok_or_else(|| {
            FieldError::BadScalar(format!("denominator of {s:?} vanishes mod {}", self.p))
        })?;
        Ok(self.mul(&n, &d))
    }
    fn tag(&self) -> String {
        format!("F:{}", self.p)
    }
}

pub type Matrix<E> = Vec<Vec<E>>;

/// Inverse of a square matrix, `None` if singular.
pub fn invert<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = m.len();
    let mut a: Matrix<F::Elem> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !f.is_zero(&a[r][col]))?;
        a.swap(col, pivot);
        let inv = f.inv(&a[col][col]).expect("nonzero pivot");
        for x in a[col].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for r in 0..n {
            if r != col && !f.is_zero(&a[r][col]) {
                let factor = a[r][col].clone();
                for c in 0..2 * n {
                    let t = f.mul(&factor, &a[col][c]);
                    a[r][c] = f.sub(&a[r][c], &t);
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Rank by Gaussian elimination.
pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !f.is_zero(&a[i][col])) else {
            continue;
        };
        a.swap(r, pivot);
        let inv = f.inv(&a[r][col]).expect("nonzero pivot");
        for i in r + 1..rows {
            if !f.is_zero(&a[i][col]) {
                let factor = f.mul(&a[i][col], &inv);
                for c in col..cols {
                    let t = f.mul(&factor, &a[r][c]);
                    a[i][c] = f.sub(&a[i][c], &t);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&row[k], &b[k][j]))))
                .collect()
        })
        .collect()
}

pub fn is_symmetric<F: Field>(m: &Matrix<F::Elem>) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, row)| row.len() == m.len() && row.iter().enumerate().all(|(j, x)| *x == m[j][i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_and_format() {
        let q = Rationals;
        assert_eq!(q.format(&q.parse("6/-4").unwrap()), "-3/2");
        assert_eq!(q.format(&q.parse("5").unwrap()), "5/1");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("x").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        assert_eq!(f.parse("1/2").unwrap(), 4);
        assert_eq!(f.from_i64(-1), 6);
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn inverse_and_rank() {
        let q = Rationals;
        let m: Matrix<_> = [[0, 1], [1, 0]]
            .iter()
            .map(|r| r.iter().map(|&x| q.from_i64(x)).collect())
            .collect();
        let inv = invert(&q, &m).unwrap();
        assert_eq!(inv, m);
        let singular: Matrix<_> = [[1, 0], [0, 0]]
            .iter()
            .map(|r| r.iter().map(|&x| q.from_i64(x)).collect())
            .collect();
        assert!(invert(&q, &singular).is_none());
        assert_eq!(rank(&q, &singular), 1);
        let f = PrimeField::new(2).unwrap();
        assert_eq!(rank(&f, &vec![vec![1, 1], vec![1, 1]]), 1);
    }
}
