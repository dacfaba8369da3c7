//! Algebraic number fields Q(a) = Q[X]/(f) given by a monic irreducible
//! integer polynomial `f`. Elements are coordinate vectors in the power
//! basis 1, a, ..., a^(m-1).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{Field, Rationals};
use super::poly::Poly;
use super::zpoly;
use crate::error::Error;
use crate::linalg::Mat;

#[derive(Debug)]
struct Inner {
    minpoly: Vec<BigInt>,
    degree: usize,
    discriminant: BigInt,
}

/// A number field context. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct NumberField {
    inner: Arc<Inner>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.minpoly == other.inner.minpoly
    }
}
impl Eq for NumberField {}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NfElem(pub Vec<BigRational>);

impl NfElem {
    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// The element as a polynomial in the generator.
    pub fn to_poly(&self) -> Poly<BigRational> {
        Poly::from_coeffs(&Rationals, self.0.clone())
    }

    pub fn is_rational(&self) -> bool {
        self.0.iter().skip(1).all(|c| c.is_zero())
    }
}

impl NumberField {
    /// Builds Q[X]/(f) after checking that `f` (coefficients low to high) is
    /// monic of degree >= 1 and irreducible over Q.
    pub fn new(minpoly: Vec<BigInt>) -> Result<Self, Error> {
        let f = zpoly::trim(minpoly);
        if f.len() < 2 {
            return Err(Error::InvalidField("minimal polynomial must have degree >= 1".into()));
        }
        if !f.last().unwrap().is_one() {
            return Err(Error::InvalidField("minimal polynomial must be monic".into()));
        }
        let fq = Poly::from_coeffs(&Rationals, f.iter().map(|c| BigRational::from_integer(c.clone())).collect());
        if !zpoly::is_irreducible_rational(&fq) {
            return Err(Error::InvalidField(format!("minimal polynomial {} is reducible over Q", format_zpoly(&f))));
        }
        Ok(Self::new_unchecked(f))
    }

    /// Skips the irreducibility check; for polynomials already known to be
    /// irreducible (factors produced by the factorizer).
    pub(crate) fn new_unchecked(f: Vec<BigInt>) -> Self {
        let degree = f.len() - 1;
        let discriminant = zpoly::discriminant(&f);
        NumberField { inner: Arc::new(Inner { minpoly: f, degree, discriminant }) }
    }

    /// Q itself, encoded by `f = X`.
    pub fn rationals() -> Self {
        Self::new_unchecked(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn from_i64_coeffs(c: &[i64]) -> Result<Self, Error> {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.inner.minpoly
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.inner.discriminant
    }

    pub fn is_rational_field(&self) -> bool {
        self.inner.degree == 1
    }

    pub fn minpoly_q(&self) -> Poly<BigRational> {
        Poly::from_coeffs(&Rationals, self.inner.minpoly.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn elem(&self, coords: Vec<BigRational>) -> NfElem {
        assert_eq!(coords.len(), self.degree(), "coordinate vector has wrong length");
        NfElem(coords)
    }

    pub fn from_rational(&self, q: BigRational) -> NfElem {
        let mut c = vec![BigRational::zero(); self.degree()];
        c[0] = q;
        NfElem(c)
    }

    /// The generator `a` (for degree one this is the rational root of `f`).
    pub fn generator(&self) -> NfElem {
        if self.degree() == 1 {
            return self.from_rational(-BigRational::from_integer(self.inner.minpoly[0].clone()));
        }
        let mut c = vec![BigRational::zero(); self.degree()];
        c[1] = BigRational::one();
        NfElem(c)
    }

    /// Reduces an arbitrary polynomial in `a` to canonical coordinates.
    pub fn from_poly(&self, p: &Poly<BigRational>) -> NfElem {
        let m = self.degree();
        let mut c: Vec<BigRational> = p.coeffs().to_vec();
        let f = &self.inner.minpoly;
        for i in (m..c.len()).rev() {
            let lead = std::mem::take(&mut c[i]);
            if lead.is_zero() {
                continue;
            }
            for (j, fj) in f.iter().enumerate().take(m) {
                c[i - m + j] -= &lead * BigRational::from_integer(fj.clone());
            }
        }
        c.resize(m, BigRational::zero());
        NfElem(c)
    }

    /// Matrix of multiplication by `a` on the power basis (column j holds the
    /// coordinates of `a * alpha^j`).
    pub fn mult_matrix(&self, a: &NfElem) -> Mat<BigRational> {
        let m = self.degree();
        let mut basis = vec![BigRational::zero(); m];
        let mut mat = Mat::zeros(&Rationals, m);
        for j in 0..m {
            basis.iter_mut().for_each(|b| *b = BigRational::zero());
            basis[j] = BigRational::one();
            let prod = self.mul(a, &NfElem(basis.clone()));
            for i in 0..m {
                mat.set(i, j, prod.0[i].clone());
            }
        }
        mat
    }

    pub fn norm(&self, a: &NfElem) -> BigRational {
        self.mult_matrix(a).det(&Rationals)
    }

    pub fn pow(&self, a: &NfElem, e: i64) -> Option<NfElem> {
        let mut base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Some(r)
    }

    pub fn format_elem(&self, a: &NfElem) -> String {
        let mut terms = Vec::new();
        for (i, c) in a.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = match i {
                0 => format!("{c}"),
                1 if c.is_one() => "a".to_string(),
                1 => format!("{c}*a"),
                _ if c.is_one() => format!("a^{i}"),
                _ => format!("{c}*a^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

pub fn format_zpoly(f: &[BigInt]) -> String {
    let mut terms = Vec::new();
    for (i, c) in f.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        terms.push(match i {
            0 => format!("{c}"),
            1 => format!("{c}*X"),
            _ => format!("{c}*X^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

impl Field for NumberField {
    type Elem = NfElem;

    fn zero(&self) -> NfElem {
        NfElem(vec![BigRational::zero(); self.degree()])
    }

    fn one(&self) -> NfElem {
        self.from_rational(BigRational::one())
    }

    fn from_int(&self, v: i64) -> NfElem {
        self.from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        NfElem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    fn sub(&self, a: &NfElem, b: &NfElem) -> NfElem {
        NfElem(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        let m = self.degree();
        if m == 1 {
            return NfElem(vec![&a.0[0] * &b.0[0]]);
        }
        let mut c = vec![BigRational::zero(); 2 * m - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        self.from_poly(&Poly::from_coeffs(&Rationals, c))
    }

    fn neg(&self, a: &NfElem) -> NfElem {
        NfElem(a.0.iter().map(|x| -x).collect())
    }

    fn inv(&self, a: &NfElem) -> Option<NfElem> {
        if self.is_zero(a) {
            return None;
        }
        if self.degree() == 1 {
            return Some(NfElem(vec![a.0[0].recip()]));
        }
        let (g, s, _) = a.to_poly().ext_gcd(&Rationals, &self.minpoly_q());
        debug_assert_eq!(g.degree(), Some(0));
        Some(self.from_poly(&s))
    }

    fn is_zero(&self, a: &NfElem) -> bool {
        a.0.iter().all(|c| c.is_zero())
    }

    fn characteristic(&self) -> u64 {
        0
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[X]/({})", format_zpoly(self.minpoly()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{int, rat};

    #[test]
    fn gaussian_arithmetic() {
        let k = NumberField::from_i64_coeffs(&[1, 0, 1]).unwrap();
        let i = k.generator();
        assert_eq!(k.mul(&i, &i), k.from_int(-1));
        let z = k.elem(vec![int(3), int(4)]);
        let zi = k.inv(&z).unwrap();
        assert_eq!(k.mul(&z, &zi), k.one());
        assert_eq!(zi, k.elem(vec![rat(3, 25), rat(-4, 25)]));
        assert_eq!(k.norm(&z), int(25));
    }

    #[test]
    fn multiplication_matrix_of_i() {
        let k = NumberField::from_i64_coeffs(&[1, 0, 1]).unwrap();
        let m = k.mult_matrix(&k.generator());
        assert_eq!(m, Mat::from_i64(&Rationals, &[&[0, -1], &[1, 0]]));
    }

    #[test]
    fn rejects_reducible_and_non_monic() {
        assert!(NumberField::from_i64_coeffs(&[-1, 0, 1]).is_err());
        assert!(NumberField::from_i64_coeffs(&[1, 0, 2]).is_err());
        assert!(NumberField::from_i64_coeffs(&[5]).is_err());
        assert!(NumberField::from_i64_coeffs(&[-5, 0, 1]).is_ok());
    }

    #[test]
    fn discriminant_recorded() {
        let k = NumberField::from_i64_coeffs(&[-5, 0, 1]).unwrap();
        assert_eq!(k.discriminant(), &BigInt::from(20));
        assert_eq!(NumberField::rationals().degree(), 1);
    }
}
