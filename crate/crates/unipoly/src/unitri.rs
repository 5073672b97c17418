//! Upper unitriangular matrices over an arbitrary commutative ring.
//!
//! Only the strict upper triangle is stored; the diagonal is implicitly 1.
//! The inverse is computed from the nilpotent part `T_u` as
//! `I + sum_{p=1}^{n-1} (-T_u)^p`, which terminates because `T_u^n = 0`.

use std::fmt;

use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::scalar::Scalar;

/// Element of a commutative ring, as needed for unitriangular arithmetic.
pub trait RingElem: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    /// True when the two elements live in the same ring (and, for
    /// polynomials, over the same variable layout).
    fn compatible(&self, other: &Self) -> bool;
}

impl RingElem for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero(self.ring())
    }

    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }

    fn ring_add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("checked by compatible()")
    }

    fn ring_neg(&self) -> Self {
        self.neg()
    }

    fn ring_mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("checked by compatible()")
    }

    fn compatible(&self, other: &Self) -> bool {
        self.ring() == other.ring()
    }
}

impl RingElem for MPoly {
    fn zero_like(&self) -> Self {
        MPoly::zero(self.ring(), self.layout().clone())
    }

    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }

    fn ring_add(&self, other: &Self) -> Self {
        self.add(other).expect("checked by compatible()")
    }

    fn ring_neg(&self) -> Self {
        self.neg()
    }

    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other).expect("checked by compatible()")
    }

    fn compatible(&self, other: &Self) -> bool {
        self.ring() == other.ring() && self.layout() == other.layout()
    }
}

/// Group element with multiplicative notation; used to share difference-word
/// evaluation between matrix groups and other concrete groups.
pub trait GroupElem: Clone + PartialEq {
    fn group_mul(&self, other: &Self) -> Self;
    fn group_inv(&self) -> Self;
    fn is_identity(&self) -> bool;
}

/// An n-by-n upper unitriangular matrix; entries above the diagonal are
/// stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniTri<T> {
    n: usize,
    entries: Vec<T>,
}

fn strict_upper_len(n: usize) -> usize {
    n * (n - 1) / 2
}

impl<T: RingElem> UniTri<T> {
    /// The identity matrix; `zero` supplies the ring's zero element.
    pub fn identity(n: usize, zero: T) -> UniTri<T> {
        UniTri { n, entries: vec![zero; strict_upper_len(n)] }
    }

    /// Build from the strict upper triangle in row-major order:
    /// `(1,2), (1,3), ..., (1,n), (2,3), ...`.
    pub fn from_entries(n: usize, entries: Vec<T>) -> Result<UniTri<T>> {
        if entries.len() != strict_upper_len(n) {
            return Err(Error::DimensionMismatch(strict_upper_len(n), entries.len()));
        }
        for w in entries.windows(2) {
            if !w[0].compatible(&w[1]) {
                return Err(Error::RingMismatch(format!("{:?}", w[0]), format!("{:?}", w[1])));
            }
        }
        Ok(UniTri { n, entries })
    }

    /// Entry populated by `f(i, j)` for `1 <= i < j <= n`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> UniTri<T> {
        let mut entries = Vec::with_capacity(strict_upper_len(n));
        for i in 1..=n {
            for j in (i + 1)..=n {
                entries.push(f(i, j));
            }
        }
        UniTri { n, entries }
    }

    /// The elementary matrix `I + a E_{i,j}`.
    pub fn elementary(n: usize, i: usize, j: usize, a: T) -> Result<UniTri<T>> {
        if !(1 <= i && i < j && j <= n) {
            return Err(Error::InvalidArgument(format!("({i},{j}) is not above the diagonal")));
        }
        let zero = a.zero_like();
        let mut m = UniTri::identity(n, zero);
        *m.get_mut(i, j) = a;
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(1 <= i && i < j && j <= self.n);
        (i - 1) * self.n - i * (i - 1) / 2 + (j - i - 1)
    }

    /// Entry at row `i`, column `j` for `1 <= i < j <= n`.
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[self.index(i, j)]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        let idx = self.index(i, j);
        &mut self.entries[idx]
    }

    /// Strict-upper entries with their `(row, col)` positions.
    pub fn indexed_entries(&self) -> impl Iterator<Item = ((usize, usize), &T)> {
        let n = self.n;
        (1..=n)
            .flat_map(move |i| ((i + 1)..=n).map(move |j| (i, j)))
            .zip(self.entries.iter())
    }

    pub fn map<U: RingElem>(&self, mut f: impl FnMut(&T) -> U) -> UniTri<U> {
        UniTri { n: self.n, entries: self.entries.iter().map(|e| f(e)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn check_compatible(&self, other: &UniTri<T>) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        if let (Some(a), Some(b)) = (self.entries.first(), other.entries.first()) {
            if !a.compatible(b) {
                return Err(Error::RingMismatch(format!("{a:?}"), format!("{b:?}")));
            }
        }
        Ok(())
    }

    /// Matrix product. Both factors are unitriangular, so
    /// `(ab)_{i,j} = a_{i,j} + b_{i,j} + sum_{i<k<j} a_{i,k} b_{k,j}`.
    pub fn mul(&self, other: &UniTri<T>) -> Result<UniTri<T>> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for i in 1..=self.n {
            for j in (i + 1)..=self.n {
                let mut acc = self.get(i, j).ring_add(other.get(i, j));
                for k in (i + 1)..j {
                    acc = acc.ring_add(&self.get(i, k).ring_mul(other.get(k, j)));
                }
                *out.get_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    /// Product of the strictly upper parts of two matrices; used by `inv`.
    fn strict_mul(&self, other: &UniTri<T>) -> UniTri<T> {
        let mut out = self.clone();
        for i in 1..=self.n {
            for j in (i + 1)..=self.n {
                let mut acc = self.get(i, j).zero_like();
                for k in (i + 1)..j {
                    acc = acc.ring_add(&self.get(i, k).ring_mul(other.get(k, j)));
                }
                *out.get_mut(i, j) = acc;
            }
        }
        out
    }

    /// Exact inverse via the terminating series over the nilpotent part.
    pub fn inv(&self) -> UniTri<T> {
        if self.n <= 1 {
            return self.clone();
        }
        let zero = self.entries[0].zero_like();
        let mut result = UniTri::identity(self.n, zero);
        // power holds (-T_u)^p, stored in the same strict-upper shape.
        let minus = self.map(|e| e.ring_neg());
        let mut power = minus.clone();
        for _ in 1..self.n {
            for (idx, e) in power.entries.iter().enumerate() {
                result.entries[idx] = result.entries[idx].ring_add(e);
            }
            power = power.strict_mul(&minus);
        }
        result
    }

    /// `a b a^{-1} b^{-1}`.
    pub fn commutator(&self, other: &UniTri<T>) -> Result<UniTri<T>> {
        self.mul(other)?.mul(&self.inv())?.mul(&other.inv())
    }

    /// `g x g^{-1}` (conjugation acting on `self`).
    pub fn conjugate_by(&self, g: &UniTri<T>) -> Result<UniTri<T>> {
        g.mul(self)?.mul(&g.inv())
    }

    /// Read off the k-th diagonal, checking membership in the subgroup of
    /// matrices supported on diagonals `>= k`. On that subgroup this is a
    /// homomorphism onto the additive group of `R^{n-k}`.
    pub fn phi_k(&self, k: usize) -> Result<DiagonalVector<T>> {
        if k == 0 || k > self.n.saturating_sub(1) {
            return Err(Error::DiagonalOutOfRange { k, n: self.n });
        }
        for d in 1..k {
            for i in 1..=(self.n - d) {
                if !self.get(i, i + d).is_zero() {
                    return Err(Error::NotInSubgroup(k));
                }
            }
        }
        let values = (1..=(self.n - k)).map(|i| self.get(i, i + k).clone()).collect();
        Ok(DiagonalVector { k, values })
    }

    /// Zero out every diagonal above `k`, projecting to the quotient group
    /// that keeps diagonals `1..=k`.
    pub fn truncate(&self, k: usize) -> UniTri<T> {
        UniTri::from_fn(self.n, |i, j| {
            if j - i > k {
                self.get(i, j).zero_like()
            } else {
                self.get(i, j).clone()
            }
        })
    }

    /// The largest `k` such that all diagonals below `k` vanish, i.e. the
    /// level of the lower central series the matrix belongs to. Returns `n`
    /// for the identity.
    pub fn lcs_membership(&self) -> usize {
        for d in 1..self.n {
            for i in 1..=(self.n - d) {
                if !self.get(i, i + d).is_zero() {
                    return d;
                }
            }
        }
        self.n
    }
}

impl<T: RingElem> GroupElem for UniTri<T> {
    fn group_mul(&self, other: &Self) -> Self {
        self.mul(other).expect("same group")
    }

    fn group_inv(&self) -> Self {
        self.inv()
    }

    fn is_identity(&self) -> bool {
        UniTri::is_identity(self)
    }
}

/// The image of `phi_k`: the k-th diagonal of a matrix in the level-k
/// subgroup, a vector of length `n - k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalVector<T> {
    k: usize,
    values: Vec<T>,
}

impl<T: RingElem> DiagonalVector<T> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Componentwise sum; both vectors must read the same diagonal.
    pub fn add(&self, other: &DiagonalVector<T>) -> Result<DiagonalVector<T>> {
        if self.k != other.k || self.values.len() != other.values.len() {
            return Err(Error::DimensionMismatch(self.values.len(), other.values.len()));
        }
        let values =
            self.values.iter().zip(&other.values).map(|(a, b)| a.ring_add(b)).collect();
        Ok(DiagonalVector { k: self.k, values })
    }
}

impl<T: RingElem + fmt::Display> fmt::Display for UniTri<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n {
            write!(f, "[")?;
            for j in 1..=self.n {
                if j > 1 {
                    write!(f, ", ")?;
                }
                if i == j {
                    write!(f, "1")?;
                } else if i < j {
                    write!(f, "{}", self.get(i, j))?;
                } else {
                    write!(f, "0")?;
                }
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
