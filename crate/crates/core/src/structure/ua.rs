//! Unipotent-by-abelian test for normal closures, with an invariant flag as
//! witness.

use serde::Serialize;

use super::algebra::{is_nilpotent_algebra, InvariantAlgebra};
use crate::arith::Field;
use crate::error::Error;
use crate::linalg::echelon::EchelonBasis;
use crate::linalg::{Mat, Subspace};

/// Change of basis `y` such that every `y^-1 g y` is block upper triangular
/// with the given block sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockForm<E> {
    pub basis_change: Mat<E>,
    pub inverse: Mat<E>,
    pub block_sizes: Vec<usize>,
    pub certified_cr: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockSummary {
    pub block_sizes: Vec<usize>,
    pub certified_cr: bool,
}

impl<E: Clone + Eq> BlockForm<E> {
    pub fn trivial<K: Field<Elem = E>>(k: &K, n: usize) -> Self {
        BlockForm {
            basis_change: Mat::identity(k, n),
            inverse: Mat::identity(k, n),
            block_sizes: if n == 0 { Vec::new() } else { vec![n] },
            certified_cr: false,
        }
    }

    pub fn from_basis<K: Field<Elem = E>>(k: &K, y: Mat<E>, block_sizes: Vec<usize>) -> Self {
        let inverse = y.inverse(k).expect("basis change must be invertible");
        BlockForm { basis_change: y, inverse, block_sizes, certified_cr: false }
    }

    pub fn conjugate<K: Field<Elem = E>>(&self, k: &K, g: &Mat<E>) -> Mat<E> {
        g.conjugate_by(k, &self.basis_change, &self.inverse)
    }

    /// Block starting offsets.
    pub fn offsets(&self) -> Vec<usize> {
        self.block_sizes
            .iter()
            .scan(0, |acc, &s| {
                let o = *acc;
                *acc += s;
                Some(o)
            })
            .collect()
    }

    /// Diagonal block `i` of `y^-1 g y`.
    pub fn block<K: Field<Elem = E>>(&self, k: &K, g: &Mat<E>, i: usize) -> Mat<E> {
        self.conjugate(k, g).block(self.offsets()[i], self.block_sizes[i])
    }

    /// Exact check that all generators are block upper triangular.
    pub fn verify<K: Field<Elem = E>>(&self, k: &K, gens: &[Mat<E>]) -> bool {
        self.basis_change.mul(k, &self.inverse).is_identity(k)
            && self.block_sizes.iter().sum::<usize>() == self.basis_change.n()
            && gens.iter().all(|g| self.conjugate(k, g).is_block_upper_triangular(k, &self.block_sizes))
    }

    pub fn summary(&self) -> BlockSummary {
        BlockSummary { block_sizes: self.block_sizes.clone(), certified_cr: self.certified_cr }
    }
}

/// Basis adapted to a decreasing chain of subspaces ending in 0: columns
/// of the smallest nonzero term first.
pub(crate) fn flag_basis<K: Field>(k: &K, n: usize, flag: &[Subspace<K::Elem>]) -> (Mat<K::Elem>, Vec<usize>) {
    let mut span = EchelonBasis::new();
    let mut cols: Vec<Vec<K::Elem>> = Vec::new();
    let mut sizes = Vec::new();
    for w in flag.iter().rev() {
        let before = cols.len();
        for v in w.basis() {
            if span.insert(k, v) {
                cols.push(v.clone());
            }
        }
        if cols.len() > before {
            sizes.push(cols.len() - before);
        }
    }
    debug_assert_eq!(cols.len(), n);
    (Mat::from_cols(&cols), sizes)
}

/// Finds two elements of the normal closure that do not commute on block
/// `i`, exploring the conjugates of `ys` under `gens` until their block
/// images span a commutative space.
fn noncommuting_pair<K: Field>(
    k: &K,
    form: &BlockForm<K::Elem>,
    i: usize,
    ys: &[Mat<K::Elem>],
    gens: &[(Mat<K::Elem>, Mat<K::Elem>)],
) -> Option<(Mat<K::Elem>, Mat<K::Elem>)> {
    let mut span = EchelonBasis::new();
    let mut kept: Vec<(Mat<K::Elem>, Mat<K::Elem>)> = Vec::new();
    let mut queue: Vec<Mat<K::Elem>> = ys.iter().rev().cloned().collect();
    while let Some(e) = queue.pop() {
        let img = form.block(k, &e, i);
        if span.contains(k, img.as_flat()) {
            continue;
        }
        if let Some((other, _)) = kept.iter().find(|(_, oimg)| !oimg.commutes_with(k, &img)) {
            return Some((e, other.clone()));
        }
        span.insert(k, img.as_flat());
        for (g, gi) in gens {
            queue.push(gi.mul(k, &e).mul(k, g));
            queue.push(g.mul(k, &e).mul(k, gi));
        }
        kept.push((e, img));
    }
    None
}

/// Decides whether the normal closure `N` of `ys` in `<gens>` is
/// unipotent-by-abelian (its derived group is unipotent).
///
/// On success the witness flag is invariant under `<gens>`, and `N` acts on
/// each quotient through an abelian group. Commutator seeds are found
/// lazily: each non-commuting pair on some quotient contributes one element
/// of `N'` whose `c - I` enlarges the algebra, so there are at most n^2
/// rounds.
pub fn is_ua_normal_closure<K: Field>(k: &K, n: usize, ys: &[Mat<K::Elem>], gens: &[Mat<K::Elem>]) -> Result<Option<BlockForm<K::Elem>>, Error> {
    if let Some(bad) = ys.iter().chain(gens).find(|m| m.n() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: bad.n() });
    }
    let pairs: Vec<_> = gens.iter().map(|g| g.inverse(k).map(|gi| (g.clone(), gi)).ok_or(Error::Singular)).collect::<Result<_, _>>()?;
    let id = Mat::identity(k, n);
    let mut algebra = InvariantAlgebra::zero(k, n, gens);
    loop {
        let Some(flag) = is_nilpotent_algebra(k, &algebra) else {
            return Ok(None);
        };
        let (y, sizes) = flag_basis(k, n, &flag);
        let form = BlockForm::from_basis(k, y, sizes);
        let mut grown = false;
        for i in 0..form.block_sizes.len() {
            if let Some((a, b)) = noncommuting_pair(k, &form, i, ys, &pairs) {
                let c = a.commutator(k, &b).ok_or(Error::Singular)?;
                grown = algebra.insert(k, c.sub(k, &id));
                debug_assert!(grown, "a commutator acting nontrivially on a quotient lies outside the algebra");
                break;
            }
        }
        if !grown {
            debug_assert!(form.verify(k, gens));
            return Ok(Some(form));
        }
    }
}
