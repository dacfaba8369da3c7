//! Subspaces of K^n with canonical (reduced echelon) bases.

use super::echelon::{kernel, rref};
use super::matrix::Mat;
use crate::arith::Field;
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<E> {
    ambient: usize,
    basis: Vec<Vec<E>>,
}

impl<E: Clone + Eq> Subspace<E> {
    pub fn span<K: Field<Elem = E>>(k: &K, ambient: usize, vectors: Vec<Vec<E>>) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length must match ambient dimension");
        let mut basis = vectors;
        rref(k, &mut basis);
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full<K: Field<Elem = E>>(k: &K, ambient: usize) -> Self {
        Self::span(k, ambient, Mat::identity(k, ambient).to_rows())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn contains<K: Field<Elem = E>>(&self, k: &K, v: &[E]) -> bool {
        let mut rows = self.basis.clone();
        let before = rows.len();
        rows.push(v.to_vec());
        rref(k, &mut rows).len() == before
    }

    pub fn contains_subspace<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(k, v))
    }

    fn check(&self, other: &Self) -> Result<(), Error> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn sum<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Ok(Self::span(k, self.ambient, v))
    }

    pub fn intersect<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Self::zero(self.ambient));
        }
        // Solve sum c_i a_i - sum d_j b_j = 0; the columns are the basis vectors.
        let rows: Vec<Vec<E>> =
            (0..self.ambient).map(|i| self.basis.iter().map(|v| v[i].clone()).chain(other.basis.iter().map(|w| k.neg(&w[i]))).collect()).collect();
        let ker = kernel(k, &rows, a + b);
        let vecs = ker
            .into_iter()
            .map(|c| (0..self.ambient).map(|i| self.basis.iter().zip(&c).fold(k.zero(), |acc, (v, ci)| k.mul_add(&acc, ci, &v[i]))).collect())
            .collect();
        Ok(Self::span(k, self.ambient, vecs))
    }

    /// `g W`.
    pub fn image<K: Field<Elem = E>>(&self, k: &K, g: &Mat<E>) -> Result<Self, Error> {
        if g.n() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: g.n() });
        }
        Ok(Self::span(k, self.ambient, self.basis.iter().map(|v| g.mul_vec(k, v)).collect()))
    }

    pub fn is_invariant<K: Field<Elem = E>>(&self, k: &K, g: &Mat<E>) -> bool {
        self.basis.iter().all(|v| self.contains(k, &g.mul_vec(k, v)))
    }

    /// Standard basis vectors completing this basis to a basis of K^n: the
    /// non-pivot coordinates.
    pub fn complement_indices<K: Field<Elem = E>>(&self, k: &K) -> Vec<usize> {
        let pivots: Vec<usize> = self.basis.iter().map(|r| r.iter().position(|x| !k.is_zero(x)).unwrap()).collect();
        (0..self.ambient).filter(|c| !pivots.contains(c)).collect()
    }

    /// An invertible matrix whose first `dim` columns span this subspace and
    /// whose remaining columns are standard basis vectors.
    pub fn adapted_basis<K: Field<Elem = E>>(&self, k: &K) -> Mat<E> {
        let mut cols = self.basis.clone();
        for c in self.complement_indices(k) {
            let mut e = vec![k.zero(); self.ambient];
            e[c] = k.one();
            cols.push(e);
        }
        Mat::from_cols(&cols)
    }
}

/// `{v : h v = 0 for all h}`.
pub fn common_kernel<K: Field>(k: &K, n: usize, mats: &[Mat<K::Elem>]) -> Result<Subspace<K::Elem>, Error> {
    if let Some(bad) = mats.iter().find(|m| m.n() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: bad.n() });
    }
    let rows: Vec<Vec<K::Elem>> = mats.iter().flat_map(|m| m.to_rows()).collect();
    if rows.is_empty() {
        return Ok(Subspace::full(k, n));
    }
    Ok(Subspace::span(k, n, kernel(k, &rows, n)))
}

/// Common fixed space `{v : g v = v}` of a set of matrices.
pub fn fixed_space<K: Field>(k: &K, n: usize, mats: &[Mat<K::Elem>]) -> Result<Subspace<K::Elem>, Error> {
    let id = Mat::identity(k, n);
    let shifted: Vec<_> = mats.iter().map(|m| m.sub(k, &id)).collect();
    common_kernel(k, n, &shifted)
}
