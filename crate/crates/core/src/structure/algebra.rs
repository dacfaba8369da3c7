//! Matrix algebras closed under multiplication and conjugation.

use crate::arith::Field;
use crate::linalg::echelon::EchelonBasis;
use crate::linalg::{Mat, Subspace};

/// A (not necessarily unital) subalgebra of n x n matrices, closed under
/// conjugation by a fixed set of invertible matrices and their inverses.
#[derive(Clone, Debug)]
pub struct InvariantAlgebra<E> {
    n: usize,
    basis: Vec<Mat<E>>,
    span: EchelonBasis<E>,
    conjugators: Vec<(Mat<E>, Mat<E>)>,
}

impl<E: Clone + Eq> InvariantAlgebra<E> {
    pub fn zero<K: Field<Elem = E>>(k: &K, n: usize, conjugators: &[Mat<E>]) -> Self {
        let conjugators = conjugators.iter().map(|g| (g.clone(), g.inverse(k).expect("conjugators must be invertible"))).collect();
        InvariantAlgebra { n, basis: Vec::new(), span: EchelonBasis::new(), conjugators }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mat<E>] {
        &self.basis
    }

    pub fn contains<K: Field<Elem = E>>(&self, k: &K, m: &Mat<E>) -> bool {
        self.span.contains(k, m.as_flat())
    }

    /// Adds `m` and closes again; returns whether the algebra grew.
    pub fn insert<K: Field<Elem = E>>(&mut self, k: &K, m: Mat<E>) -> bool {
        let start = self.basis.len();
        let mut queue = vec![m];
        while let Some(x) = queue.pop() {
            if !self.span.insert(k, x.as_flat()) {
                continue;
            }
            for b in &self.basis {
                queue.push(x.mul(k, b));
                queue.push(b.mul(k, &x));
            }
            queue.push(x.mul(k, &x));
            for (g, gi) in &self.conjugators {
                queue.push(gi.mul(k, &x).mul(k, g));
                queue.push(g.mul(k, &x).mul(k, gi));
            }
            self.basis.push(x);
        }
        self.basis.len() > start
    }

    /// `V, AV, A^2 V, ...` down to the first repeat. The algebra is nilpotent
    /// iff the chain ends in 0; each term is invariant under the conjugators.
    pub fn power_flag<K: Field<Elem = E>>(&self, k: &K) -> Vec<Subspace<E>> {
        let mut flag = vec![Subspace::full(k, self.n)];
        loop {
            let last = flag.last().unwrap();
            if last.dim() == 0 {
                return flag;
            }
            let vecs = self.basis.iter().flat_map(|a| last.basis().iter().map(|v| a.mul_vec(k, v))).collect();
            let next = Subspace::span(k, self.n, vecs);
            if next.dim() == last.dim() {
                return flag;
            }
            flag.push(next);
        }
    }
}

/// The least algebra containing `{s - I}` for the seeds, closed under
/// multiplication and under conjugation by the conjugators and inverses.
pub fn invariant_algebra<K: Field>(k: &K, n: usize, seeds: &[Mat<K::Elem>], conjugators: &[Mat<K::Elem>]) -> InvariantAlgebra<K::Elem> {
    let mut a = InvariantAlgebra::zero(k, n, conjugators);
    let id = Mat::identity(k, n);
    for s in seeds {
        let x = s.sub(k, &id);
        if !x.is_zero(k) {
            a.insert(k, x);
        }
    }
    a
}

/// `Some(flag)` when the algebra is nilpotent, with the flag
/// `V > AV > A^2 V > ... > 0`.
pub fn is_nilpotent_algebra<K: Field>(k: &K, a: &InvariantAlgebra<K::Elem>) -> Option<Vec<Subspace<K::Elem>>> {
    let flag = a.power_flag(k);
    (flag.last().unwrap().dim() == 0).then_some(flag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, Rationals};

    fn e(n: usize, i: usize, j: usize) -> Mat<num_rational::BigRational> {
        Mat::elementary(&Rationals, n, i, j, &int(1)).sub(&Rationals, &id(n))
    }

    fn id(n: usize) -> Mat<num_rational::BigRational> {
        Mat::identity(&Rationals, n)
    }

    #[test]
    fn examples() {
        let k = Rationals;
        let u = id(2).add(&k, &e(2, 0, 1));
        let a = invariant_algebra(&k, 2, std::slice::from_ref(&u), &[]);
        assert_eq!(a.dim(), 1);
        assert!(a.contains(&k, &e(2, 0, 1)));

        let a = invariant_algebra(&k, 2, &[id(2)], std::slice::from_ref(&u));
        assert_eq!(a.dim(), 0);
        assert!(is_nilpotent_algebra(&k, &a).is_some());

        let d = Mat::from_i64(&k, &[&[2, 0], &[0, 1]]);
        let a = invariant_algebra(&k, 2, &[u], &[d]);
        assert_eq!(a.dim(), 1);
        let flag = is_nilpotent_algebra(&k, &a).unwrap();
        assert_eq!(flag.len(), 3);
        assert_eq!(flag[1], Subspace::span(&k, 2, vec![vec![int(1), int(0)]]));
    }

    #[test]
    fn not_nilpotent() {
        let k = Rationals;
        let mut a = InvariantAlgebra::zero(&k, 2, &[]);
        a.insert(&k, e(2, 0, 1));
        a.insert(&k, e(2, 1, 0));
        assert_eq!(a.dim(), 4);
        assert!(is_nilpotent_algebra(&k, &a).is_none());
    }

    #[test]
    fn closure_under_conjugation() {
        let k = Rationals;
        // conjugating E12 by the transposition gives E21
        let w = Mat::from_i64(&k, &[&[0, 1], &[1, 0]]);
        let a = invariant_algebra(&k, 2, &[id(2).add(&k, &e(2, 0, 1))], &[w]);
        assert!(a.contains(&k, &e(2, 1, 0)));
        assert!(is_nilpotent_algebra(&k, &a).is_none());
    }
}
