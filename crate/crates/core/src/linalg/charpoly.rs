//! Characteristic and minimal polynomials, and evaluation of polynomials at
//! matrices.

use super::echelon::express;
use super::matrix::Mat;
use crate::arith::{Field, Poly};

/// Characteristic polynomial `det(X I - h)` via Hessenberg reduction.
pub fn charpoly<K: Field>(k: &K, h: &Mat<K::Elem>) -> Poly<K::Elem> {
    let n = h.n();
    let mut a = h.to_rows();
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| !k.is_zero(&a[i][j])) else {
            continue;
        };
        if i != j + 1 {
            a.swap(i, j + 1);
            for row in a.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let piv_inv = k.inv(&a[j + 1][j]).unwrap();
        for r in j + 2..n {
            if k.is_zero(&a[r][j]) {
                continue;
            }
            let u = k.mul(&a[r][j], &piv_inv);
            for c in 0..n {
                let t = k.mul(&u, &a[j + 1][c]);
                a[r][c] = k.sub(&a[r][c], &t);
            }
            for row in a.iter_mut() {
                let t = k.mul(&u, &row[r]);
                row[j + 1] = k.add(&row[j + 1], &t);
            }
        }
    }
    let mut p: Vec<Poly<K::Elem>> = vec![Poly::constant(k, k.one())];
    for m in 1..=n {
        let mut pm = Poly::linear(k, &a[m - 1][m - 1]).mul(k, &p[m - 1]);
        let mut t = k.one();
        for i in 1..m {
            t = k.mul(&t, &a[m - i][m - i - 1]);
            let c = k.mul(&t, &a[m - i - 1][m - 1]);
            pm = pm.sub(k, &p[m - i - 1].scale(k, &c));
        }
        p.push(pm);
    }
    p.pop().unwrap()
}

/// Minimal polynomial (monic) from the first linear dependency among powers.
pub fn minpoly<K: Field>(k: &K, h: &Mat<K::Elem>) -> Poly<K::Elem> {
    let n = h.n();
    let mut powers: Vec<Vec<K::Elem>> = vec![Mat::identity(k, n).as_flat().to_vec()];
    let mut cur = Mat::identity(k, n);
    loop {
        cur = cur.mul(k, h);
        if let Some(c) = express(k, &powers, cur.as_flat()) {
            let mut coeffs: Vec<K::Elem> = c.iter().map(|x| k.neg(x)).collect();
            coeffs.push(k.one());
            return Poly::from_coeffs(k, coeffs);
        }
        powers.push(cur.as_flat().to_vec());
    }
}

/// `f(h)` by Horner's rule.
pub fn eval_at<K: Field>(k: &K, f: &Poly<K::Elem>, h: &Mat<K::Elem>) -> Mat<K::Elem> {
    let n = h.n();
    let mut acc = Mat::zeros(k, n);
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(k, h).add(k, &Mat::scalar(k, n, c));
    }
    acc
}

/// Semisimple in characteristic zero: squarefree minimal polynomial.
pub fn is_semisimple<K: Field>(k: &K, h: &Mat<K::Elem>) -> bool {
    minpoly(k, h).is_squarefree(k)
}

pub fn is_unipotent<K: Field>(k: &K, h: &Mat<K::Elem>) -> bool {
    let x = h.sub(k, &Mat::identity(k, h.n()));
    is_nilpotent(k, &x)
}

pub fn is_nilpotent<K: Field>(k: &K, x: &Mat<K::Elem>) -> bool {
    // x^n = 0 iff x^(2^ceil(log n)) = 0
    let mut p = x.clone();
    let mut e = 1;
    while e < x.n() {
        p = p.mul(k, &p);
        e *= 2;
    }
    p.is_zero(k)
}
