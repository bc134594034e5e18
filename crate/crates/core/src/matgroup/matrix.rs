use std::fmt;
use std::hash::Hash;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::CycloElem;

/// Field elements a matrix can hold.
///
/// Zero and one are produced from an existing element because cyclotomic
/// elements carry their field with them.
pub trait Scalar: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Result<Self>;
    fn to_rational(&self) -> Option<BigRational>;
    fn lift_rational(&self, r: BigRational) -> Self;
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
    fn lift_rational(&self, r: BigRational) -> Self {
        r
    }
}

impl Scalar for CycloElem {
    fn zero_like(&self) -> Self {
        CycloElem::zero(self.field())
    }
    fn one_like(&self) -> Self {
        CycloElem::one(self.field())
    }
    fn is_zero(&self) -> bool {
        CycloElem::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Result<Self> {
        CycloElem::inverse(self)
    }
    fn to_rational(&self) -> Option<BigRational> {
        CycloElem::to_rational(self)
    }
    fn lift_rational(&self, r: BigRational) -> Self {
        CycloElem::from_rational(self.field(), r)
    }
}

/// Square matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    dim: usize,
    entries: Vec<S>,
}

pub type RatMatrix = Matrix<BigRational>;
pub type CycloMatrix = Matrix<CycloElem>;

impl<S: Scalar> Matrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::invalid("matrix must have at least one row"));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != dim) {
            return Err(Error::invalid(format!(
                "row {} has {} entries, expected {dim}",
                bad + 1,
                rows[bad].len()
            )));
        }
        Ok(Self { dim, entries: rows.into_iter().flatten().collect() })
    }

    /// Identity in the field of `proto`.
    pub fn identity(dim: usize, proto: &S) -> Self {
        let zero = proto.zero_like();
        let one = proto.one_like();
        let entries = (0..dim * dim)
            .map(|k| if k / dim == k % dim { one.clone() } else { zero.clone() })
            .collect();
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.entries.chunks(self.dim)
    }

    pub fn map<T, F: Fn(&S) -> T>(&self, f: F) -> Matrix<T> {
        Matrix { dim: self.dim, entries: self.entries.iter().map(f).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let zero = self.entries[0].zero_like();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = zero.clone();
                for k in 0..n {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc.plus(&a.times(b));
                }
                entries.push(acc);
            }
        }
        Self { dim: n, entries }
    }

    pub fn trace(&self) -> S {
        (0..self.dim).fold(self.entries[0].zero_like(), |acc, i| acc.plus(self.get(i, i)))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim, &self.entries[0])
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity(self.dim, &self.entries[0]);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn determinant(&self) -> S {
        let n = self.dim;
        let mut a: Vec<Vec<S>> = self.rows().map(|r| r.to_vec()).collect();
        let mut det = self.entries[0].one_like();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return det.zero_like();
            };
            if pivot != col {
                a.swap(pivot, col);
                det = det.negated();
            }
            let inv = a[col][col].inverse().expect("non-zero pivot");
            det = det.times(&a[col][col]);
            let pivot_row = a[col].clone();
            for row in a.iter_mut().skip(col + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let factor = row[col].times(&inv);
                for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x = x.minus(&factor.times(y));
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let mut a: Vec<Vec<S>> = self.rows().map(|r| r.to_vec()).collect();
        let id = Self::identity(n, &self.entries[0]);
        let mut b: Vec<Vec<S>> = id.rows().map(|r| r.to_vec()).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(pivot, col);
            b.swap(pivot, col);
            let inv = a[col][col].inverse()?;
            for c in 0..n {
                a[col][c] = a[col][c].times(&inv);
                b[col][c] = b[col][c].times(&inv);
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    let sa = factor.times(&a[col][c]);
                    a[r][c] = a[r][c].minus(&sa);
                    let sb = factor.times(&b[col][c]);
                    b[r][c] = b[r][c].minus(&sb);
                }
            }
        }
        Ok(Self { dim: n, entries: b.into_iter().flatten().collect() })
    }

    /// Block-diagonal embedding of `self` at offset `at` inside the `dim`-identity.
    pub fn embed(&self, dim: usize, at: usize) -> Self {
        assert!(at + self.dim <= dim);
        let mut out = Self::identity(dim, &self.entries[0]);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.entries[(at + i) * dim + at + j] = self.get(i, j).clone();
            }
        }
        out
    }
}

impl RatMatrix {
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|x| x.is_integer())
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
