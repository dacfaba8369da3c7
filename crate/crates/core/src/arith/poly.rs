//! Dense univariate polynomials over a [`Field`] context.

use super::field::Field;

/// Coefficients from the constant term upward; never has trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + Eq> Poly<E> {
    pub fn from_coeffs<K: Field<Elem = E>>(k: &K, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| k.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant<K: Field<Elem = E>>(k: &K, c: E) -> Self {
        Self::from_coeffs(k, vec![c])
    }

    /// The monomial `X`.
    pub fn x<K: Field<Elem = E>>(k: &K) -> Self {
        Poly { coeffs: vec![k.zero(), k.one()] }
    }

    /// `X - c`.
    pub fn linear<K: Field<Elem = E>>(k: &K, c: &E) -> Self {
        Poly { coeffs: vec![k.neg(c), k.one()] }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff<K: Field<Elem = E>>(&self, k: &K, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| k.zero())
    }

    pub fn add<K: Field<Elem = E>>(&self, k: &K, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..len).map(|i| k.add(&self.coeff(k, i), &rhs.coeff(k, i))).collect();
        Self::from_coeffs(k, c)
    }

    pub fn sub<K: Field<Elem = E>>(&self, k: &K, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..len).map(|i| k.sub(&self.coeff(k, i), &rhs.coeff(k, i))).collect();
        Self::from_coeffs(k, c)
    }

    pub fn mul<K: Field<Elem = E>>(&self, k: &K, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut c = vec![k.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] = k.mul_add(&c[i + j], a, b);
            }
        }
        Self::from_coeffs(k, c)
    }

    pub fn scale<K: Field<Elem = E>>(&self, k: &K, s: &E) -> Self {
        Self::from_coeffs(k, self.coeffs.iter().map(|c| k.mul(c, s)).collect())
    }

    pub fn neg<K: Field<Elem = E>>(&self, k: &K) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| k.neg(c)).collect() }
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem<K: Field<Elem = E>>(&self, k: &K, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = k.inv(d.leading().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![k.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = k.mul(&r[i + dd], &lead_inv);
            if k.is_zero(&c) {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[i + j] = k.sub(&r[i + j], &k.mul(&c, dj));
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(k, q), Self::from_coeffs(k, r))
    }

    pub fn rem<K: Field<Elem = E>>(&self, k: &K, d: &Self) -> Self {
        self.div_rem(k, d).1
    }

    /// Scales to leading coefficient one (zero stays zero).
    pub fn monic<K: Field<Elem = E>>(&self, k: &K) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(k, &k.inv(l).unwrap()),
        }
    }

    pub fn derivative<K: Field<Elem = E>>(&self, k: &K) -> Self {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| k.mul(c, &k.from_int(i as i64))).collect();
        Self::from_coeffs(k, c)
    }

    /// Monic greatest common divisor.
    pub fn gcd<K: Field<Elem = E>>(&self, k: &K, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(k, &b);
            a = b;
            b = r;
        }
        a.monic(k)
    }

    /// Returns `(g, s, t)` with `s*self + t*rhs = g`, `g` monic.
    pub fn ext_gcd<K: Field<Elem = E>>(&self, k: &K, rhs: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (Self::constant(k, k.one()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(k, k.one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(k, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(k, &q.mul(k, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(k, &q.mul(k, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = k.inv(&l).unwrap();
                (r0.scale(k, &li), s0.scale(k, &li), t0.scale(k, &li))
            }
        }
    }

    pub fn eval<K: Field<Elem = E>>(&self, k: &K, x: &E) -> E {
        self.coeffs.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    /// Squarefree part in characteristic zero: `f / gcd(f, f')`, monic.
    pub fn squarefree_part<K: Field<Elem = E>>(&self, k: &K) -> Self {
        debug_assert_eq!(k.characteristic(), 0);
        let g = self.gcd(k, &self.derivative(k));
        self.div_rem(k, &g).0.monic(k)
    }

    pub fn is_squarefree<K: Field<Elem = E>>(&self, k: &K) -> bool {
        self.gcd(k, &self.derivative(k)).degree() == Some(0)
    }

    pub fn map<F, K2: Field>(&self, k2: &K2, f: F) -> Poly<K2::Elem>
    where
        F: Fn(&E) -> K2::Elem,
    {
        Poly::from_coeffs(k2, self.coeffs.iter().map(f).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{int, Rationals};

    fn p(c: &[i64]) -> Poly<num_rational::BigRational> {
        Poly::from_coeffs(&Rationals, c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let k = Rationals;
        // (X-1)(X-2) and (X-1)(X+3)
        let a = p(&[2, -3, 1]);
        let b = p(&[-3, 2, 1]);
        assert_eq!(a.gcd(&k, &b), p(&[-1, 1]));
        let (q, r) = a.div_rem(&k, &p(&[-1, 1]));
        assert_eq!(q, p(&[-2, 1]));
        assert!(r.is_zero());
        let (g, s, t) = a.ext_gcd(&k, &b);
        assert_eq!(s.mul(&k, &a).add(&k, &t.mul(&k, &b)), g);
    }

    #[test]
    fn squarefree() {
        let k = Rationals;
        let f = p(&[-1, 1]).mul(&k, &p(&[-1, 1])).mul(&k, &p(&[2, 1]));
        assert_eq!(f.squarefree_part(&k), p(&[-1, 1]).mul(&k, &p(&[2, 1])));
        assert!(!f.is_squarefree(&k));
    }
}
