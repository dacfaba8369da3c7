//! Finite fields F_p(b) = F_p[X]/(g) for a word-size odd prime `p` and a
//! monic irreducible `g`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::field::Field;
use super::modp::{self, ModPoly};
use super::numfield::NfElem;

#[derive(Debug)]
struct Inner {
    p: u64,
    modulus: ModPoly,
}

#[derive(Clone, Debug)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

/// Canonical coordinates (length `deg g`) in the basis 1, b, ..., b^(d-1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FfElem(pub Vec<u64>);

impl FiniteField {
    /// `modulus` must be monic irreducible mod `p`; this is checked.
    pub fn new(p: u64, modulus: ModPoly) -> Self {
        assert!(modp::is_irreducible(&modulus, p), "modulus must be irreducible");
        assert_eq!(modulus.last(), Some(&1), "modulus must be monic");
        FiniteField { inner: Arc::new(Inner { p, modulus }) }
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn degree(&self) -> usize {
        self.inner.modulus.len() - 1
    }

    pub fn order(&self) -> u128 {
        (self.p() as u128).pow(self.degree() as u32)
    }

    fn canon(&self, mut f: ModPoly) -> FfElem {
        if f.len() >= self.inner.modulus.len() {
            f = modp::rem(&f, &self.inner.modulus, self.p());
        }
        f.resize(self.degree(), 0);
        FfElem(f)
    }

    fn as_poly(&self, a: &FfElem) -> ModPoly {
        modp::trim(a.0.clone())
    }

    /// Image of a rational under reduction mod p, `None` if p divides the
    /// denominator.
    pub fn reduce_rational(&self, q: &BigRational) -> Option<u64> {
        let p = BigInt::from(self.p());
        let d = q.denom().mod_floor(&p).to_u64().unwrap();
        let di = modp::invmod(d, self.p())?;
        let n = q.numer().mod_floor(&p).to_u64().unwrap();
        Some(modp::mulmod(n, di, self.p()))
    }

    /// Image of a number-field element, mapping the field generator to `b`.
    /// `beta_powers[i]` must hold b^i.
    pub fn reduce_nf(&self, a: &NfElem, beta_powers: &[FfElem]) -> Option<FfElem> {
        let mut acc = self.zero();
        for (c, bp) in a.0.iter().zip(beta_powers) {
            let r = self.reduce_rational(c)?;
            if r != 0 {
                acc = self.add(&acc, &self.scalar_mul(bp, r));
            }
        }
        Some(acc)
    }

    pub fn scalar_mul(&self, a: &FfElem, s: u64) -> FfElem {
        FfElem(a.0.iter().map(|&c| modp::mulmod(c, s, self.p())).collect())
    }

    pub fn element(&self, poly: ModPoly) -> FfElem {
        self.canon(poly)
    }

    pub fn pow(&self, a: &FfElem, e: u128) -> FfElem {
        let r = modp::pow_mod(&self.as_poly(a), e, &self.inner.modulus, self.p());
        self.canon(r)
    }
}

impl Field for FiniteField {
    type Elem = FfElem;

    fn zero(&self) -> FfElem {
        FfElem(vec![0; self.degree()])
    }

    fn one(&self) -> FfElem {
        self.from_int(1)
    }

    fn from_int(&self, v: i64) -> FfElem {
        let mut c = vec![0; self.degree()];
        c[0] = v.rem_euclid(self.p() as i64) as u64;
        FfElem(c)
    }

    fn add(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let p = self.p();
        FfElem(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + y) % p).collect())
    }

    fn sub(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let p = self.p();
        FfElem(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + p - y) % p).collect())
    }

    fn mul(&self, a: &FfElem, b: &FfElem) -> FfElem {
        if self.degree() == 1 {
            return FfElem(vec![modp::mulmod(a.0[0], b.0[0], self.p())]);
        }
        self.canon(modp::mul(&self.as_poly(a), &self.as_poly(b), self.p()))
    }

    fn neg(&self, a: &FfElem) -> FfElem {
        let p = self.p();
        FfElem(a.0.iter().map(|&x| (p - x) % p).collect())
    }

    fn inv(&self, a: &FfElem) -> Option<FfElem> {
        if self.is_zero(a) {
            return None;
        }
        if self.degree() == 1 {
            return modp::invmod(a.0[0], self.p()).map(|x| FfElem(vec![x]));
        }
        let (_, s, _) = modp::ext_gcd(&self.as_poly(a), &self.inner.modulus, self.p());
        Some(self.canon(s))
    }

    fn is_zero(&self, a: &FfElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    fn characteristic(&self) -> u64 {
        self.p()
    }
}
