//! Exact valuation coordinates of elements of a product of number fields.
//!
//! An element `alpha` of `K = Q[Y]/(Q)` is written `A(Y)/c` with `A` integral
//! and `c` a positive integer. At a prime `p` with `Q` squarefree modulo `p`
//! the ring `Z[Y]` is maximal at `p` and the primes above `p` are `(p, h(Y))`
//! for the irreducible factors `h` of `Q mod p`; the valuation at `(p, h)`
//! is read off the `p`-adic valuation of `Res(H, A)` for a Hensel lift `H`
//! of `h`. Where `Q` is not squarefree modulo `p` the field is first
//! re-modelled by a generator `phi` with `Z[phi]` maximal at `p`, found by
//! repeatedly adjoining `g(theta)/p` for `g` a lifted cofactor of a repeated
//! factor (Dedekind's criterion). Failing that only `v_p(N(alpha))` is used.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::etale::{EigenData, EtaleElem};
use crate::arith::lattice::IMat;
use crate::arith::poly::Poly;
use crate::arith::primes::{factorize, rational_valuation, valuation};
use crate::arith::zpoly::{discriminant, hensel_lift, resultant_q, to_modp};
use crate::arith::{modp, Field, NfElem, NumberField, Rationals};
use crate::linalg::{charpoly, Mat};

/// `alpha = A / c`.
pub(crate) fn integral_form(alpha: &NfElem) -> (Vec<BigInt>, BigInt) {
    let c = alpha.coords().iter().fold(BigInt::one(), |d, x| d.lcm(x.denom()));
    let a = alpha.coords().iter().map(|x| (x * BigRational::from_integer(c.clone())).to_integer()).collect();
    (a, c)
}

fn zpoly_q(a: &[BigInt]) -> Poly<BigRational> {
    Poly::from_coeffs(&Rationals, a.iter().map(|x| BigRational::from_integer(x.clone())).collect())
}

/// Primes at which some of the given elements of `K` is not a unit, or has
/// a denominator.
fn relevant_primes(k: &NumberField, elems: &[&NfElem]) -> BTreeSet<BigInt> {
    let mut out = BTreeSet::new();
    for a in elems {
        let (_, c) = integral_form(a);
        let n = k.norm(a);
        for m in [c, n.numer().abs(), n.denom().clone()] {
            if !m.is_zero() {
                out.extend(factorize(&m).into_keys());
            }
        }
    }
    out
}

/// Factorization over `F_2` by trial division, in the order of `modp::factor`.
fn factor_mod2(f: &[u64]) -> Vec<(Vec<u64>, usize)> {
    let mut f = modp::trim(f.to_vec());
    let mut out = Vec::new();
    let mut deg = 1;
    while modp::degree(&f).unwrap_or(0) >= 2 * deg {
        for bits in 0u64..(1 << deg) {
            let mut h: Vec<u64> = (0..deg).map(|i| (bits >> i) & 1).collect();
            h.push(1);
            let mut e = 0;
            loop {
                let (q, r) = modp::div_rem(&f, &h, 2);
                if !r.is_empty() {
                    break;
                }
                f = q;
                e += 1;
            }
            if e > 0 {
                out.push((h, e));
            }
        }
        deg += 1;
    }
    if modp::degree(&f).unwrap_or(0) > 0 {
        match out.iter_mut().find(|(h, _)| *h == f) {
            Some(entry) => entry.1 += 1,
            None => out.push((f, 1)),
        }
    }
    out
}

fn factor_at(f: &[BigInt], p: u64) -> Vec<(Vec<u64>, usize)> {
    let fp = to_modp(f, p);
    if p == 2 {
        factor_mod2(&fp)
    } else {
        modp::factor(&fp, p)
    }
}

/// Characteristic polynomial of `phi` if it is integral, monic, and
/// squarefree (so `phi` generates `k`).
fn integral_charpoly(k: &NumberField, phi: &NfElem) -> Option<Vec<BigInt>> {
    let cp = charpoly(&Rationals, &k.mult_matrix(phi));
    let z: Vec<BigInt> = cp.coeffs().iter().map(|c| c.is_integer().then(|| c.to_integer())).collect::<Option<_>>()?;
    (!discriminant(&z).is_zero()).then_some(z)
}

fn eval_lift(k: &NumberField, g: &[u64], phi: &NfElem) -> NfElem {
    g.iter().rev().fold(k.zero(), |acc, &c| k.add(&k.mul(&acc, phi), &k.from_int(c as i64)))
}

/// A generator of `k` whose minimal polynomial is squarefree modulo `p`,
/// with that polynomial.
fn local_generator(k: &NumberField, p: u64) -> Option<(NfElem, Vec<BigInt>)> {
    let bp = BigInt::from(p);
    let inv_p = k.from_rational(BigRational::new(BigInt::one(), bp.clone()));
    let mut phi = k.generator();
    let mut f = k.minpoly().to_vec();
    for _ in 0..64 {
        let factors = factor_at(&f, p);
        if factors.iter().all(|(_, e)| *e == 1) {
            return Some((phi, f));
        }
        let fp = to_modp(&f, p);
        let vd = valuation(&discriminant(&f), &bp);
        let mut best: Option<(u64, NfElem, Vec<BigInt>)> = None;
        for (h, e) in factors.iter().filter(|(_, e)| *e > 1) {
            let mut cof = fp.clone();
            for _ in 1..*e {
                cof = modp::div_rem(&cof, h, p).0;
                let w = k.mul(&eval_lift(k, &cof, &phi), &inv_p);
                for j in 0..4 {
                    let cand = k.add(&w, &k.mul(&phi, &k.from_int(j)));
                    if let Some(g) = integral_charpoly(k, &cand) {
                        let v = valuation(&discriminant(&g), &bp);
                        if best.as_ref().is_none_or(|b| v < b.0) {
                            best = Some((v, cand, g));
                        }
                    }
                }
            }
        }
        match best {
            Some((v, cand, g)) if v < vd => {
                phi = cand;
                f = g;
            }
            _ => return None,
        }
    }
    None
}

/// `k` re-modelled over a generator maximal at `p`, with the elements
/// rewritten in its power basis.
fn local_model(k: &NumberField, p: u64, elems: &[&NfElem]) -> Option<(NumberField, Vec<NfElem>)> {
    let (phi, f) = local_generator(k, p)?;
    let m = k.degree();
    let mut rows = Vec::with_capacity(m);
    let mut pw = k.one();
    for _ in 0..m {
        rows.push(pw.coords().to_vec());
        pw = k.mul(&pw, &phi);
    }
    let to_local = Mat::from_rows(rows).inverse(&Rationals)?.transpose();
    let local = NumberField::new_unchecked(f);
    let mapped = elems.iter().map(|a| local.elem(to_local.mul_vec(&Rationals, a.coords()))).collect();
    Some((local, mapped))
}

/// Valuation coordinates at `p` of elements of one component `K`.
fn coordinates_at(k: &NumberField, p: &BigInt, elems: &[&NfElem]) -> Vec<Vec<BigInt>> {
    let coarse = || elems.iter().map(|a| vec![BigInt::from(rational_valuation(&k.norm(a), p))]).collect();
    let Some(pu) = p.to_u64() else { return coarse() };
    let factors = factor_at(k.minpoly(), pu);
    if factors.iter().any(|(_, m)| *m > 1) {
        return match local_model(k, pu, elems) {
            Some((local, mapped)) => coordinates_at(&local, p, &mapped.iter().collect::<Vec<_>>()),
            None => coarse(),
        };
    }
    if factors.len() == 1 {
        // p is inert: one prime, of residue degree f
        let f = k.degree() as i64;
        return elems.iter().map(|a| vec![BigInt::from(rational_valuation(&k.norm(a), p) / f)]).collect();
    }
    let forms: Vec<(Vec<BigInt>, BigInt)> = elems.iter().map(|a| integral_form(a)).collect();
    let precision = forms.iter().map(|(a, _)| valuation(&k.norm(&k.from_poly(&zpoly_q(a))).to_integer(), p) + 1).max().unwrap_or(1);
    let monic: Vec<_> = factors.into_iter().map(|(h, _)| h).collect();
    let lifts = hensel_lift(k.minpoly(), &monic, pu, precision as u32);
    forms
        .iter()
        .map(|(a, c)| {
            let vc = valuation(c, p) as i64;
            let aq = zpoly_q(a);
            lifts
                .iter()
                .map(|h| {
                    let r = resultant_q(&zpoly_q(h), &aq);
                    let v = rational_valuation(&r, p);
                    let deg = (h.len() - 1) as i64;
                    debug_assert_eq!(v % deg, 0);
                    BigInt::from(v / deg - vc)
                })
                .collect()
        })
        .collect()
}

/// Integer valuation matrix: one row per element, one column per prime
/// coordinate of each component. Every column is a homomorphism to `Z`
/// and an element of finite order has a zero row.
pub(crate) fn valuation_matrix(ed: &EigenData, elems: &[EtaleElem]) -> IMat {
    let mut rows: IMat = vec![Vec::new(); elems.len()];
    for j in 0..ed.component_count() {
        let k = ed.field(j);
        let comp: Vec<&NfElem> = elems.iter().map(|e| &e[j]).collect();
        for p in relevant_primes(k, &comp) {
            let block = coordinates_at(k, &p, &comp);
            for (row, b) in rows.iter_mut().zip(block) {
                row.extend(b);
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::etale::eigen_data;
    use crate::arith::lattice::ivec;
    use crate::arith::{rat, Field};
    use crate::linalg::Mat;

    #[test]
    fn factoring_mod_two() {
        // X^3 + 1 = (X + 1)(X^2 + X + 1); X^2 + 1 = (X + 1)^2
        assert_eq!(factor_mod2(&[1, 0, 0, 1]), vec![(vec![1, 1], 1), (vec![1, 1, 1], 1)]);
        assert_eq!(factor_mod2(&[1, 0, 1]), vec![(vec![1, 1], 2)]);
        assert_eq!(factor_mod2(&[1, 1, 1]), vec![(vec![1, 1, 1], 1)]);
    }

    #[test]
    fn rational_diagonal() {
        let k = NumberField::rationals();
        let gens = [Mat::from_i64(&k, &[&[2, 0], &[0, 3]]), Mat::diagonal(&k, &[k.from_rational(rat(1, 2)), k.from_rational(rat(9, 1))])];
        let ed = eigen_data(&k, &gens).unwrap();
        let v = valuation_matrix(&ed, ed.images());
        assert_eq!(v.len(), 2);
        // prime 2 in one component, 3 in the other
        assert_eq!(v[0].len(), 2);
        let total: Vec<i64> = v.iter().map(|r| r.iter().map(|x| x.to_i64().unwrap().abs()).sum()).collect();
        assert_eq!(total, vec![2, 3]);
    }

    #[test]
    fn split_prime_separates_conjugates() {
        // Q(i): 2 + i and 2 - i both have norm 5 but different valuations
        let k = NumberField::from_i64_coeffs(&[1, 0, 1]).unwrap();
        let i = k.generator();
        let a = k.elem(vec![rat(2, 1), rat(1, 1)]);
        let b = k.elem(vec![rat(2, 1), rat(-1, 1)]);
        let v = coordinates_at(&k, &BigInt::from(5), &[&a, &b, &i]);
        assert_eq!(v[0].iter().map(|x| x.abs()).sum::<BigInt>(), BigInt::one());
        assert_ne!(v[0], v[1]);
        assert_eq!(v[2], ivec(&[0, 0]));
        // 3 is inert
        let three = k.from_int(3);
        assert_eq!(coordinates_at(&k, &BigInt::from(3), &[&three]), vec![ivec(&[1])]);
        // 2 ramifies: coarse norm valuation
        let one_plus_i = k.elem(vec![rat(1, 1), rat(1, 1)]);
        assert_eq!(coordinates_at(&k, &BigInt::from(2), &[&one_plus_i]), vec![ivec(&[1])]);
    }

    #[test]
    fn non_maximal_model_is_remodelled() {
        // Q(5i): x^2 + 25 is (x)^2 mod 5, yet 5 splits
        let k = NumberField::from_i64_coeffs(&[25, 0, 1]).unwrap();
        let a = k.elem(vec![rat(2, 1), rat(1, 5)]);
        let b = k.elem(vec![rat(2, 1), rat(-1, 5)]);
        let v = coordinates_at(&k, &BigInt::from(5), &[&a, &b]);
        assert_eq!(v[0].len(), 2);
        assert_ne!(v[0], v[1]);
        let (phi, f) = local_generator(&k, 5).unwrap();
        assert_eq!(f, ivec(&[1, 0, 1]));
        assert_eq!(k.mul(&phi, &phi), k.from_int(-1));
        // a genuinely ramified prime stays coarse
        let r = NumberField::from_i64_coeffs(&[-5, 0, 1]).unwrap();
        assert!(local_generator(&r, 5).is_none());
    }
}
