//! Factoring squarefree polynomials over a number field (Trager's norm
//! method).

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::{Field, Rationals};
use super::numfield::{NfElem, NumberField};
use super::poly::Poly;
use super::zpoly::factor_rational;

/// `f(X + c)`.
fn shift(k: &NumberField, f: &Poly<NfElem>, c: &NfElem) -> Poly<NfElem> {
    let lin = Poly::linear(k, &k.neg(c));
    f.coeffs().iter().rev().fold(Poly::zero(), |acc, a| acc.mul(k, &lin).add(k, &Poly::constant(k, a.clone())))
}

/// `N_{K/Q}(f)` as a polynomial over Q, by evaluation at integer points and
/// interpolation.
pub fn norm_poly(k: &NumberField, f: &Poly<NfElem>) -> Poly<BigRational> {
    let q = Rationals;
    let deg = f.degree().unwrap_or(0) * k.degree();
    let xs: Vec<BigRational> = (0..=deg as i64).map(|t| BigRational::from_integer(BigInt::from(t))).collect();
    let ys: Vec<BigRational> = xs.iter().map(|x| k.norm(&f.eval(k, &k.from_rational(x.clone())))).collect();
    // Newton divided differences
    let mut coef = ys.clone();
    for j in 1..coef.len() {
        for i in (j..coef.len()).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = Poly::zero();
    for i in (0..coef.len()).rev() {
        p = p.mul(&q, &Poly::linear(&q, &xs[i])).add(&q, &Poly::constant(&q, coef[i].clone()));
    }
    p
}

/// Monic irreducible factors over `k` of a squarefree polynomial.
pub fn factor_squarefree(k: &NumberField, f: &Poly<NfElem>) -> Vec<Poly<NfElem>> {
    let q = Rationals;
    let Some(deg) = f.degree() else { return Vec::new() };
    if deg == 0 {
        return Vec::new();
    }
    let f = f.monic(k);
    if deg == 1 {
        return vec![f];
    }
    let alpha = k.generator();
    for s in [0i64, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6, 7, -7, 8, -8] {
        let sa = k.mul(&k.from_int(s), &alpha);
        // g(X) = f(X - s a)
        let g = shift(k, &f, &k.neg(&sa));
        let n = norm_poly(k, &g);
        if !n.is_squarefree(&q) {
            continue;
        }
        let mut out = Vec::new();
        for (h, _) in factor_rational(&n) {
            let hk = h.map(k, |c| k.from_rational(c.clone()));
            let gcd = g.gcd(k, &hk);
            if gcd.degree().unwrap_or(0) > 0 {
                out.push(shift(k, &gcd, &sa).monic(k));
            }
        }
        out.sort_by_key(|p| p.degree());
        return out;
    }
    panic!("no squarefree norm found for the Trager shift");
}

/// Monic irreducible factors over `k` with multiplicities.
pub fn factor(k: &NumberField, f: &Poly<NfElem>) -> Vec<(Poly<NfElem>, usize)> {
    let mut out = Vec::new();
    let mut rest = f.monic(k);
    let sf = rest.squarefree_part(k);
    for g in factor_squarefree(k, &sf) {
        let mut e = 0;
        loop {
            let (quo, rem) = rest.div_rem(k, &g);
            if !rem.is_zero() {
                break;
            }
            rest = quo;
            e += 1;
        }
        out.push((g, e));
    }
    debug_assert!(out.iter().all(|(_, e)| *e > 0));
    out
}
