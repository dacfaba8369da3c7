//! Choice of the congruence prime and the reduction map P -> F_p(b).

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::arith::modp::{self, ModPoly};
use crate::arith::primes::{factorize, is_prime_u64};
use crate::arith::{zpoly, FfElem, Field, FiniteField, NfElem, NumberField};
use crate::error::Error;
use crate::linalg::Mat;

/// Smallest prime considered; 3 is skipped so the working characteristic
/// never equals the one of the reference group GL(nm, 3).
pub const PRIME_FLOOR: u64 = 5;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PrimePolicy {
    /// The smallest valid prime.
    #[default]
    Smallest,
    /// The `i`-th valid prime, counting from zero.
    Nth(usize),
    /// A user-supplied prime, validated like the automatic choice.
    Fixed(u64),
}

#[derive(Clone, Debug)]
pub struct CongruenceSite {
    p: u64,
    field: NumberField,
    residue: FiniteField,
    beta_powers: Vec<FfElem>,
    denominator_primes: BTreeSet<BigInt>,
}

/// Order on monic polynomials mod p: degree first, then coefficients from
/// the leading one down, read as symmetric residues in (-p/2, p/2).
fn factor_order(a: &ModPoly, b: &ModPoly, p: u64) -> Ordering {
    let sym = |c: u64| if c > p / 2 { c as i64 - p as i64 } else { c as i64 };
    a.len().cmp(&b.len()).then_with(|| a.iter().rev().map(|&c| sym(c)).cmp(b.iter().rev().map(|&c| sym(c))))
}

/// Primes dividing a denominator of an entry of some generator or inverse.
pub fn denominator_primes(k: &NumberField, gens: &[Mat<NfElem>]) -> Result<BTreeSet<BigInt>, Error> {
    let mut lcm = BigInt::from(1);
    for g in gens {
        let inv = g.inverse(k).ok_or(Error::Singular)?;
        for m in [g, &inv] {
            for e in m.as_flat() {
                lcm = lcm.lcm(&e.denominator());
            }
        }
    }
    Ok(factorize(&lcm).into_keys().collect())
}

fn check_prime(k: &NumberField, dens: &BTreeSet<BigInt>, p: u64) -> Result<(), String> {
    if p < PRIME_FLOOR || !is_prime_u64(p) {
        return Err(format!("must be a prime >= {PRIME_FLOOR}"));
    }
    if (k.discriminant() % BigInt::from(p)) == BigInt::from(0) {
        return Err(format!("divides the discriminant {} of the field polynomial", k.discriminant()));
    }
    if dens.contains(&BigInt::from(p)) {
        return Err("divides a denominator of a generator or its inverse".into());
    }
    Ok(())
}

/// The first `count` valid primes for the generator set, in increasing order.
pub fn valid_primes(k: &NumberField, gens: &[Mat<NfElem>], count: usize) -> Result<Vec<u64>, Error> {
    let dens = denominator_primes(k, gens)?;
    Ok((PRIME_FLOOR..).filter(|&p| check_prime(k, &dens, p).is_ok()).take(count).collect())
}

pub fn select_prime(k: &NumberField, gens: &[Mat<NfElem>], policy: PrimePolicy) -> Result<CongruenceSite, Error> {
    let dens = denominator_primes(k, gens)?;
    let p = match policy {
        PrimePolicy::Smallest => valid_primes(k, gens, 1)?[0],
        PrimePolicy::Nth(i) => valid_primes(k, gens, i + 1)?[i],
        PrimePolicy::Fixed(p) => {
            check_prime(k, &dens, p).map_err(|reason| Error::InvalidPrime { p, reason })?;
            p
        }
    };
    Ok(CongruenceSite::new(k, p, dens))
}

impl CongruenceSite {
    fn new(k: &NumberField, p: u64, denominator_primes: BTreeSet<BigInt>) -> Self {
        let fp = zpoly::to_modp(k.minpoly(), p);
        let mut factors: Vec<ModPoly> = modp::factor(&fp, p).into_iter().map(|(g, _)| g).collect();
        factors.sort_by(|a, b| factor_order(a, b, p));
        let g = factors.swap_remove(0);
        let residue = FiniteField::new(p, g.clone());
        let beta = if g.len() == 2 { residue.element(vec![(p - g[0]) % p]) } else { residue.element(vec![0, 1]) };
        let mut beta_powers = vec![residue.one()];
        for i in 1..k.degree() {
            let next = residue.mul(&beta_powers[i - 1], &beta);
            beta_powers.push(next);
        }
        CongruenceSite { p, field: k.clone(), residue, beta_powers, denominator_primes }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn residue_field(&self) -> &FiniteField {
        &self.residue
    }

    /// The chosen irreducible factor `g` of `f mod p`.
    pub fn factor(&self) -> &[u64] {
        self.residue.modulus()
    }

    /// The image `b` of the field generator.
    pub fn beta(&self) -> FfElem {
        let k = &self.field;
        self.reduce_elem(&k.generator()).expect("generator is integral")
    }

    pub fn denominator_primes(&self) -> &BTreeSet<BigInt> {
        &self.denominator_primes
    }

    pub fn reduce_elem(&self, a: &NfElem) -> Option<FfElem> {
        self.residue.reduce_nf(a, &self.beta_powers)
    }

    pub fn reduce(&self, h: &Mat<NfElem>) -> Result<Mat<FfElem>, Error> {
        h.try_map(|e| self.reduce_elem(e)).ok_or(Error::DenominatorDivisible(self.p))
    }
}
