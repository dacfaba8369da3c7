//! Row reduction of rectangular systems given as lists of row vectors.

use crate::arith::Field;

/// Reduced row echelon form in place. Zero rows are dropped; returns the
/// pivot columns, one per remaining row.
pub fn rref<K: Field>(k: &K, rows: &mut Vec<Vec<K::Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| !k.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = k.inv(&rows[r][c]).unwrap();
        for x in rows[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        let prow = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || k.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow).skip(c) {
                if !k.is_zero(y) {
                    *x = k.sub(x, &k.mul(&f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank<K: Field>(k: &K, rows: &[Vec<K::Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(k, &mut m).len()
}

/// Basis of the right kernel `{v : A v = 0}` of the matrix with the given
/// rows and `ncols` columns.
pub fn kernel<K: Field>(k: &K, rows: &[Vec<K::Elem>], ncols: usize) -> Vec<Vec<K::Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(k, &mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![k.zero(); ncols];
            v[f] = k.one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = k.neg(&row[f]);
            }
            v
        })
        .collect()
}

/// Coefficients `c` with `sum c_i * vectors[i] = target`, if any.
pub fn express<K: Field>(k: &K, vectors: &[Vec<K::Elem>], target: &[K::Elem]) -> Option<Vec<K::Elem>> {
    let len = target.len();
    let nv = vectors.len();
    // Augmented system: columns are the vectors, last column the target.
    let mut rows: Vec<Vec<K::Elem>> = (0..len)
        .map(|i| {
            let mut r: Vec<K::Elem> = vectors.iter().map(|v| v[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let pivots = rref(k, &mut rows);
    if pivots.contains(&nv) {
        return None;
    }
    let mut c = vec![k.zero(); nv];
    for (row, &pc) in rows.iter().zip(&pivots) {
        c[pc] = row[nv].clone();
    }
    Some(c)
}

/// Incrementally maintained echelon basis of a span, with cheap membership
/// tests; used by algebra and Lie closures.
#[derive(Clone, Debug)]
pub struct EchelonBasis<E> {
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + Eq> EchelonBasis<E> {
    pub fn new() -> Self {
        EchelonBasis { rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce<K: Field<Elem = E>>(&self, k: &K, v: &[E]) -> Vec<E> {
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if k.is_zero(&v[pc]) {
                continue;
            }
            let f = v[pc].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !k.is_zero(y) {
                    *x = k.sub(x, &k.mul(&f, y));
                }
            }
        }
        v
    }

    pub fn contains<K: Field<Elem = E>>(&self, k: &K, v: &[E]) -> bool {
        self.reduce(k, v).iter().all(|x| k.is_zero(x))
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert<K: Field<Elem = E>>(&mut self, k: &K, v: &[E]) -> bool {
        let mut r = self.reduce(k, v);
        let Some(pc) = r.iter().position(|x| !k.is_zero(x)) else {
            return false;
        };
        let inv = k.inv(&r[pc]).unwrap();
        for x in r.iter_mut() {
            *x = k.mul(x, &inv);
        }
        // keep fully reduced: clear the new pivot column from older rows
        for row in self.rows.iter_mut() {
            if k.is_zero(&row[pc]) {
                continue;
            }
            let f = row[pc].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !k.is_zero(y) {
                    *x = k.sub(x, &k.mul(&f, y));
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(pc);
        true
    }

    /// Rows sorted by pivot column: the canonical reduced echelon form.
    pub fn canonical(&self) -> Vec<Vec<E>> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        idx.into_iter().map(|i| self.rows[i].clone()).collect()
    }
}

impl<E: Clone + Eq> Default for EchelonBasis<E> {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, Rationals};

    fn v(x: &[i64]) -> Vec<num_rational::BigRational> {
        x.iter().map(|&a| int(a)).collect()
    }

    #[test]
    fn kernel_of_e13() {
        let k = Rationals;
        let rows = vec![v(&[0, 0, 1]), v(&[0, 0, 0]), v(&[0, 0, 0])];
        let ker = kernel(&k, &rows, 3);
        assert_eq!(ker, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
    }

    #[test]
    fn express_solution() {
        let k = Rationals;
        let c = express(&k, &[v(&[1, 1, 0]), v(&[0, 1, 1])], &v(&[2, 5, 3])).unwrap();
        assert_eq!(c, v(&[2, 3]));
        assert!(express(&k, &[v(&[1, 1, 0])], &v(&[1, 0, 0])).is_none());
    }

    #[test]
    fn incremental_basis_is_canonical() {
        let k = Rationals;
        let mut a = EchelonBasis::new();
        a.insert(&k, &v(&[1, 2, 3]));
        a.insert(&k, &v(&[0, 1, 1]));
        let mut b = EchelonBasis::new();
        b.insert(&k, &v(&[1, 3, 4]));
        b.insert(&k, &v(&[2, 5, 7]));
        assert_eq!(a.canonical(), b.canonical());
        assert!(!a.insert(&k, &v(&[1, 1, 2])));
    }
}
