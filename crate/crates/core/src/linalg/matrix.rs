use std::fmt;

use crate::arith::Field;

/// A square matrix over the elements of some [`Field`] context, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat<E> {
    n: usize,
    data: Vec<E>,
}

impl<E: Clone + Eq> Mat<E> {
    pub fn zeros<K: Field<Elem = E>>(k: &K, n: usize) -> Self {
        Mat { n, data: vec![k.zero(); n * n] }
    }

    pub fn identity<K: Field<Elem = E>>(k: &K, n: usize) -> Self {
        let mut m = Self::zeros(k, n);
        for i in 0..n {
            m.data[i * n + i] = k.one();
        }
        m
    }

    pub fn scalar<K: Field<Elem = E>>(k: &K, n: usize, c: &E) -> Self {
        let mut m = Self::zeros(k, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    /// Builds from rows; panics unless the rows form a square array.
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Mat { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: &[Vec<E>]) -> Self {
        let n = cols.len();
        assert!(cols.iter().all(|c| c.len() == n), "matrix must be square");
        let data = (0..n).flat_map(|i| cols.iter().map(move |c| c[i].clone())).collect();
        Mat { n, data }
    }

    pub fn from_flat(n: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), n * n);
        Mat { n, data }
    }

    pub fn from_i64<K: Field<Elem = E>>(k: &K, rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| k.from_int(x)).collect()).collect())
    }

    pub fn diagonal<K: Field<Elem = E>>(k: &K, d: &[E]) -> Self {
        let mut m = Self::zeros(k, d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// `I + c * E_ij` (0-based indices).
    pub fn elementary<K: Field<Elem = E>>(k: &K, n: usize, i: usize, j: usize, c: &E) -> Self {
        let mut m = Self::identity(k, n);
        let v = k.add(m.get(i, j), c);
        m.set(i, j, v);
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[E]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    pub fn col(&self, j: usize) -> Vec<E> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    /// Entries flattened row by row, the vectorization used for spans of
    /// matrices.
    pub fn as_flat(&self) -> &[E] {
        &self.data
    }

    pub fn map<F, K2: Field>(&self, f: F) -> Mat<K2::Elem>
    where
        F: Fn(&E) -> K2::Elem,
    {
        Mat { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<F, T>(&self, f: F) -> Option<Mat<T>>
    where
        F: Fn(&E) -> Option<T>,
    {
        let data = self.data.iter().map(f).collect::<Option<Vec<T>>>()?;
        Some(Mat { n: self.n, data })
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let data = (0..n).flat_map(|i| (0..n).map(move |j| (j, i))).map(|(j, i)| self.get(j, i).clone()).collect();
        Mat { n, data }
    }

    pub fn add<K: Field<Elem = E>>(&self, k: &K, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        Mat { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| k.add(a, b)).collect() }
    }

    pub fn sub<K: Field<Elem = E>>(&self, k: &K, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        Mat { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| k.sub(a, b)).collect() }
    }

    pub fn scale<K: Field<Elem = E>>(&self, k: &K, c: &E) -> Self {
        Mat { n: self.n, data: self.data.iter().map(|a| k.mul(a, c)).collect() }
    }

    pub fn mul<K: Field<Elem = E>>(&self, k: &K, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix product");
        let n = self.n;
        let mut data = vec![k.zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if k.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(l, j);
                    if !k.is_zero(b) {
                        data[i * n + j] = k.mul_add(&data[i * n + j], a, b);
                    }
                }
            }
        }
        Mat { n, data }
    }

    pub fn mul_vec<K: Field<Elem = E>>(&self, k: &K, v: &[E]) -> Vec<E> {
        assert_eq!(self.n, v.len());
        self.rows().map(|r| r.iter().zip(v).fold(k.zero(), |acc, (a, b)| k.mul_add(&acc, a, b))).collect()
    }

    pub fn is_identity<K: Field<Elem = E>>(&self, k: &K) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    k.is_one(x)
                } else {
                    k.is_zero(x)
                }
            })
        })
    }

    pub fn is_zero<K: Field<Elem = E>>(&self, k: &K) -> bool {
        self.data.iter().all(|x| k.is_zero(x))
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse<K: Field<Elem = E>>(&self, k: &K) -> Option<Self> {
        let n = self.n;
        let mut a = self.to_rows();
        let mut inv = Self::identity(k, n).to_rows();
        for c in 0..n {
            let piv = (c..n).find(|&r| !k.is_zero(&a[r][c]))?;
            a.swap(c, piv);
            inv.swap(c, piv);
            let pi = k.inv(&a[c][c]).unwrap();
            for x in a[c].iter_mut() {
                *x = k.mul(x, &pi);
            }
            for x in inv[c].iter_mut() {
                *x = k.mul(x, &pi);
            }
            for r in 0..n {
                if r == c || k.is_zero(&a[r][c]) {
                    continue;
                }
                let f = a[r][c].clone();
                for j in 0..n {
                    let t = k.mul(&f, &a[c][j]);
                    a[r][j] = k.sub(&a[r][j], &t);
                    let t = k.mul(&f, &inv[c][j]);
                    inv[r][j] = k.sub(&inv[r][j], &t);
                }
            }
        }
        Some(Self::from_rows(inv))
    }

    pub fn det<K: Field<Elem = E>>(&self, k: &K) -> E {
        let n = self.n;
        let mut a = self.to_rows();
        let mut det = k.one();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| !k.is_zero(&a[r][c])) else {
                return k.zero();
            };
            if piv != c {
                a.swap(c, piv);
                det = k.neg(&det);
            }
            det = k.mul(&det, &a[c][c]);
            let pi = k.inv(&a[c][c]).unwrap();
            for r in c + 1..n {
                if k.is_zero(&a[r][c]) {
                    continue;
                }
                let f = k.mul(&a[r][c], &pi);
                for j in c..n {
                    let t = k.mul(&f, &a[c][j]);
                    a[r][j] = k.sub(&a[r][j], &t);
                }
            }
        }
        det
    }

    /// Integer power; negative exponents need an invertible matrix.
    pub fn pow<K: Field<Elem = E>>(&self, k: &K, e: i64) -> Option<Self> {
        let mut base = if e < 0 { self.inverse(k)? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut r = Self::identity(k, self.n);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(k, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(k, &base);
            }
        }
        Some(r)
    }

    /// `x^-1 * self * x`.
    pub fn conjugate_by<K: Field<Elem = E>>(&self, k: &K, x: &Self, x_inv: &Self) -> Self {
        x_inv.mul(k, self).mul(k, x)
    }

    /// Group commutator `a^-1 b^-1 a b`.
    pub fn commutator<K: Field<Elem = E>>(&self, k: &K, rhs: &Self) -> Option<Self> {
        let ai = self.inverse(k)?;
        let bi = rhs.inverse(k)?;
        Some(ai.mul(k, &bi).mul(k, self).mul(k, rhs))
    }

    /// Ring commutator `ab - ba`.
    pub fn bracket<K: Field<Elem = E>>(&self, k: &K, rhs: &Self) -> Self {
        self.mul(k, rhs).sub(k, &rhs.mul(k, self))
    }

    pub fn commutes_with<K: Field<Elem = E>>(&self, k: &K, rhs: &Self) -> bool {
        self.mul(k, rhs) == rhs.mul(k, self)
    }

    /// The square block with rows and columns `start..start+size`.
    pub fn block(&self, start: usize, size: usize) -> Self {
        let data = (start..start + size).flat_map(|i| (start..start + size).map(move |j| (i, j))).map(|(i, j)| self.get(i, j).clone()).collect();
        Mat { n: size, data }
    }

    /// Block-diagonal matrix from square blocks.
    pub fn block_diagonal<K: Field<Elem = E>>(k: &K, blocks: &[Self]) -> Self {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = Self::zeros(k, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.n;
        }
        m
    }

    /// True if every entry below the diagonal blocks of the given sizes is zero.
    pub fn is_block_upper_triangular<K: Field<Elem = E>>(&self, k: &K, sizes: &[usize]) -> bool {
        let mut starts = Vec::with_capacity(sizes.len());
        let mut off = 0;
        for &s in sizes {
            starts.push(off);
            off += s;
        }
        if off != self.n {
            return false;
        }
        let block_of = |i: usize| starts.iter().rposition(|&s| s <= i).unwrap();
        (0..self.n).all(|i| (0..self.n).all(|j| block_of(i) <= block_of(j) || k.is_zero(self.get(i, j))))
    }

    /// Keeps only the diagonal blocks of the given sizes.
    pub fn block_diagonal_part<K: Field<Elem = E>>(&self, k: &K, sizes: &[usize]) -> Self {
        let mut off = 0;
        let blocks: Vec<Self> = sizes
            .iter()
            .map(|&s| {
                let b = self.block(off, s);
                off += s;
                b
            })
            .collect();
        Self::block_diagonal(k, &blocks)
    }
}

impl<E: fmt::Display> fmt::Display for Mat<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.n + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
