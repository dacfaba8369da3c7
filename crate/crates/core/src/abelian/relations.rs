//! Relation lattices of finitely generated subgroups of `K_1^* x ... x K_r^*`.
//!
//! Stage one intersects the kernels of exact valuation coordinates. Stage
//! two looks for unit relations inside that kernel by lattice reduction on
//! fixed-point logarithmic embeddings; every candidate is checked exactly.
//! Completeness is certified with characters to `F_l`: valuations mod `l`
//! and `l`-th power residue symbols at degree one primes. These vanish on
//! all relations, so once their rank reaches `k - rank(R)` for the found
//! relations `R`, no relation of larger rank exists. The remaining finite
//! index is closed up exactly by enumerating the torsion group spanned by
//! the saturation of `R`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::etale::{EigenData, EtaleElem};
use super::numeric::{eval_int_poly, ln_abs, ln_fixed, roots};
use super::valuation::{integral_form, valuation_matrix};
use crate::arith::lattice::{abelian_invariants, hnf, left_kernel, lll, IMat};
use crate::arith::modp::{self, invmod, powmod};
use crate::arith::primes::is_prime_u64;
use crate::arith::zpoly::to_modp;
use crate::arith::NfElem;
use crate::error::{Error, Unknown};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianOptions {
    /// Bits of precision tried in turn for the logarithmic embeddings.
    pub precisions: Vec<u32>,
    pub degree_cap: usize,
}

impl Default for AbelianOptions {
    fn default() -> Self {
        AbelianOptions { precisions: vec![128, 256, 512], degree_cap: super::etale::DEGREE_CAP }
    }
}

/// `{e : prod g_i^e_i = 1}` in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationLattice {
    pub k: usize,
    pub basis: IMat,
    pub certified: bool,
}

impl RelationLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Torsion-free rank of `Z^k / Lambda`.
    pub fn free_rank(&self) -> usize {
        self.k - self.rank()
    }

    /// Nontrivial elementary divisors `d_1 | d_2 | ...` of `Z^k / Lambda`.
    pub fn torsion_invariants(&self) -> Vec<BigInt> {
        abelian_invariants(&self.basis, self.k).1
    }
}

fn uncertified(msg: String) -> Error {
    Error::Unknown(Unknown::Uncertified(msg))
}

fn max_abs(rows: &[Vec<BigInt>]) -> BigInt {
    rows.iter().flatten().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
}

fn combine(u: &[BigInt], basis: &[Vec<BigInt>], k: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); k];
    for (c, b) in u.iter().zip(basis) {
        if !c.is_zero() {
            for (x, y) in e.iter_mut().zip(b) {
                *x += c * y;
            }
        }
    }
    e
}

/// `ln |sigma(alpha_i)|` for every complex embedding `sigma`, scaled by `2^w`.
fn log_embeddings(ed: &EigenData, elems: &[EtaleElem], w: u32) -> Result<Vec<Vec<BigInt>>, Error> {
    let mut out = vec![Vec::new(); elems.len()];
    for j in 0..ed.component_count() {
        let k = ed.field(j);
        let thetas = roots(k.minpoly(), w)?;
        for (row, e) in out.iter_mut().zip(elems) {
            let (a, c) = integral_form(&e[j]);
            let lc = ln_fixed(&(c << w), w)?;
            for t in &thetas {
                row.push(ln_abs(&eval_int_poly(&a, t, w), w)? - &lc);
            }
        }
    }
    Ok(out)
}

/// Short vectors of `lambda0` whose logarithmic embedding is nearly zero.
fn unit_candidates(ed: &EigenData, elems: &[EtaleElem], lambda0: &[Vec<BigInt>], prec: u32) -> Result<Vec<Vec<BigInt>>, Error> {
    let k = elems.len();
    let m = lambda0.len();
    let guard = 64 + max_abs(lambda0).bits() as u32 + (k as u32).ilog2() + 1;
    let w = prec + guard;
    let logs = log_embeddings(ed, elems, w)?;
    let e = logs.first().map_or(0, |r| r.len());
    let rows: IMat = lambda0
        .iter()
        .enumerate()
        .map(|(t, b)| {
            let mut row: Vec<BigInt> = (0..m).map(|s| BigInt::from((s == t) as i64)).collect();
            for col in 0..e {
                let mut acc = BigInt::zero();
                for (bi, li) in b.iter().zip(&logs) {
                    if !bi.is_zero() {
                        acc += bi * &li[col];
                    }
                }
                row.push(acc >> guard);
            }
            row
        })
        .collect();
    let threshold = BigInt::one() << (prec / 2);
    Ok(lll(&rows)
        .into_iter()
        .filter(|r| r[m..].iter().all(|x| x.abs() <= threshold))
        .map(|r| combine(&r[..m], lambda0, k))
        .filter(|e| e.iter().any(|x| !x.is_zero()))
        .collect())
}

/// Row echelon basis over `F_l` of column vectors of length `k`.
struct ModEchelon {
    l: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModEchelon {
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let l = self.l;
        for (p, r) in &self.rows {
            if v[*p] != 0 {
                let f = v[*p];
                for (x, y) in v.iter_mut().zip(r) {
                    *x = (*x + l - f * y % l) % l;
                }
            }
        }
        let Some(p) = v.iter().position(|&x| x != 0) else { return false };
        let inv = invmod(v[p], l).unwrap();
        v.iter_mut().for_each(|x| *x = *x * inv % l);
        for (_, r) in self.rows.iter_mut() {
            if r[p] != 0 {
                let f = r[p];
                for (x, y) in r.iter_mut().zip(&v) {
                    *x = (*x + l - f * y % l) % l;
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

fn residue(x: &BigRational, q: u64) -> Option<u64> {
    let qb = BigInt::from(q);
    let num = (x.numer() % &qb + &qb) % &qb;
    let den = (x.denom() % &qb).to_u64()?;
    Some(num.to_u64()? * invmod(den, q)? % q)
}

fn eval_mod(a: &NfElem, r: u64, q: u64) -> Option<u64> {
    let mut acc = 0u64;
    let mut pw = 1u64;
    for c in a.coords() {
        acc = (acc + residue(c, q)? * pw) % q;
        pw = pw * r % q;
    }
    Some(acc)
}

const CHARACTER_PRIMES: usize = 400;

/// Whether characters to `F_l` of rank `target` exist on `<elems>` for some
/// prime `l` exceeding every component degree plus one (so no `l`-torsion).
fn characters_reach(ed: &EigenData, elems: &[EtaleElem], vmat: &[Vec<BigInt>], target: usize) -> bool {
    if target == 0 {
        return true;
    }
    let k = elems.len();
    let ls = (ed.max_degree() as u64 + 2..).filter(|&l| is_prime_u64(l)).take(4);
    for l in ls {
        let mut ech = ModEchelon { l, rows: Vec::new() };
        let lb = BigInt::from(l);
        for col in 0..vmat.first().map_or(0, |r| r.len()) {
            let v: Vec<u64> = vmat.iter().map(|r| ((&r[col] % &lb + &lb) % &lb).to_u64().unwrap()).collect();
            ech.insert(v);
        }
        if ech.rows.len() >= target {
            return true;
        }
        let qs = (1..).map(|t| t * 2 * l + 1).filter(|&q| is_prime_u64(q)).take(CHARACTER_PRIMES);
        for q in qs {
            let Some(zeta) = (2..q).map(|g| powmod(g, (q - 1) / l, q)).find(|&z| z != 1) else { continue };
            let table: HashMap<u64, u64> = (0..l).map(|t| (powmod(zeta, t, q), t)).collect();
            for j in 0..ed.component_count() {
                let f = to_modp(ed.field(j).minpoly(), q);
                let roots = modp::factor(&f, q).into_iter().filter(|(h, _)| h.len() == 2).map(|(h, _)| (q - h[0]) % q);
                for r in roots {
                    let vals: Option<Vec<u64>> = elems.iter().map(|e| eval_mod(&e[j], r, q).filter(|&x| x != 0)).collect();
                    let Some(vals) = vals else { continue };
                    let col: Vec<u64> = vals.iter().map(|&x| table[&powmod(x, (q - 1) / l, q)]).collect();
                    debug_assert_eq!(col.len(), k);
                    if ech.insert(col) && ech.rows.len() >= target {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// `{t : t . x = 0 for all x with R x = 0}`: the rational closure of `R`.
fn saturation(r: &[Vec<BigInt>], k: usize) -> IMat {
    let transpose = |m: &[Vec<BigInt>], cols: usize| -> IMat { (0..cols).map(|c| m.iter().map(|row| row[c].clone()).collect()).collect() };
    let null = left_kernel(&transpose(r, k), r.len());
    if null.is_empty() {
        return crate::arith::lattice::identity(k);
    }
    left_kernel(&transpose(&null, k), null.len())
}

/// Relations among the `t_b`-products, for a basis `t` of a lattice on
/// which `<elems>` is finite, found by enumerating that finite group.
fn torsion_closure(ed: &EigenData, elems: &[EtaleElem], t: &[Vec<BigInt>]) -> Result<IMat, Error> {
    let s = t.len();
    let deltas: Vec<EtaleElem> = t.iter().map(|b| ed.product(elems, b)).collect::<Result<_, _>>()?;
    let mut seen: HashMap<EtaleElem, Vec<BigInt>> = HashMap::new();
    let mut queue = vec![ed.one()];
    seen.insert(ed.one(), vec![BigInt::zero(); s]);
    let mut rels = Vec::new();
    let mut head = 0;
    while head < queue.len() {
        let g = queue[head].clone();
        let w = seen[&g].clone();
        head += 1;
        for (b, d) in deltas.iter().enumerate() {
            let h = ed.mul(&g, d);
            let mut w2 = w.clone();
            w2[b] += 1;
            match seen.get(&h) {
                Some(wh) => {
                    let rel: Vec<BigInt> = w2.iter().zip(wh).map(|(x, y)| x - y).collect();
                    if rel.iter().any(|x| !x.is_zero()) {
                        rels.push(rel);
                    }
                }
                None => {
                    seen.insert(h.clone(), w2);
                    queue.push(h);
                }
            }
        }
    }
    Ok(rels.iter().map(|c| combine(c, t, elems.len())).collect())
}

/// Relation lattice of arbitrary elements of the algebra of `ed`.
pub fn relations(ed: &EigenData, elems: &[EtaleElem], opts: &AbelianOptions) -> Result<RelationLattice, Error> {
    let k = elems.len();
    if ed.max_degree() > opts.degree_cap {
        return Err(uncertified(format!("eigenvalue field of degree {} exceeds the cap {}", ed.max_degree(), opts.degree_cap)));
    }
    let vmat = valuation_matrix(ed, elems);
    let ncols = vmat.first().map_or(0, |r| r.len());
    let lambda0 = left_kernel(&vmat, ncols);
    if lambda0.is_empty() {
        return Ok(RelationLattice { k, basis: Vec::new(), certified: true });
    }
    let mut found: IMat = Vec::new();
    let mut certified = false;
    for &prec in &opts.precisions {
        for e in unit_candidates(ed, elems, &lambda0, prec)? {
            let beta = ed.product(elems, &e)?;
            if ed.is_one(&beta) {
                found.push(e);
            } else if let Some(d) = ed.torsion_order(&beta)? {
                found.push(e.iter().map(|x| x * d).collect());
            }
        }
        found = hnf(&found, k);
        if characters_reach(ed, elems, &vmat, k - found.len()) {
            certified = true;
            break;
        }
    }
    if !certified {
        return Err(uncertified(format!(
            "found {} independent relations among {k} elements but could not certify completeness at {} bits",
            found.len(),
            opts.precisions.last().copied().unwrap_or(0)
        )));
    }
    let t = saturation(&found, k);
    let mut all = found;
    if !t.is_empty() && all.len() == t.len() {
        all.extend(torsion_closure(ed, elems, &t)?);
    }
    let basis = hnf(&all, k);
    for row in &basis {
        if !ed.is_one(&ed.product(elems, row)?) {
            return Err(Error::Internal("relation failed exact verification".into()));
        }
    }
    Ok(RelationLattice { k, basis, certified })
}

/// Relation lattice of the generators recorded in `ed`.
pub fn relation_lattice(ed: &EigenData, opts: &AbelianOptions) -> Result<RelationLattice, Error> {
    relations(ed, ed.images(), opts)
}

/// Exponents `e` with `prod elems^e = target`, if `target` lies in `<elems>`.
pub fn express(ed: &EigenData, elems: &[EtaleElem], target: &EtaleElem, opts: &AbelianOptions) -> Result<Option<Vec<BigInt>>, Error> {
    let mut ext = vec![target.clone()];
    ext.extend_from_slice(elems);
    let lat = relations(ed, &ext, opts)?;
    let Some(row) = lat.basis.iter().find(|r| !r[0].is_zero()) else { return Ok(None) };
    if !row[0].is_one() {
        return Ok(None);
    }
    let e: Vec<BigInt> = row[1..].iter().map(|x| -x).collect();
    if &ed.product(elems, &e)? != target {
        return Err(Error::Internal("membership certificate failed exact verification".into()));
    }
    Ok(Some(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::etale::eigen_data;
    use crate::arith::lattice::ivec;
    use crate::arith::{rat, NumberField};
    use crate::linalg::Mat;

    fn lattice(k: &NumberField, gens: &[Mat<NfElem>]) -> RelationLattice {
        let ed = eigen_data(k, gens).unwrap();
        relation_lattice(&ed, &AbelianOptions::default()).unwrap()
    }

    fn diag(k: &NumberField, d: &[(i64, i64)]) -> Mat<NfElem> {
        Mat::diagonal(k, &d.iter().map(|&(a, b)| k.from_rational(rat(a, b))).collect::<Vec<_>>())
    }

    #[test]
    fn rational_examples() {
        let k = NumberField::rationals();
        assert!(lattice(&k, &[diag(&k, &[(2, 1), (3, 1)]), diag(&k, &[(3, 1), (2, 1)])]).basis.is_empty());
        assert_eq!(lattice(&k, &[diag(&k, &[(2, 1), (3, 1)]), diag(&k, &[(4, 1), (9, 1)])]).basis, vec![ivec(&[2, -1])]);
        assert_eq!(lattice(&k, &[diag(&k, &[(-1, 1), (-1, 1)])]).basis, vec![ivec(&[2])]);
        let l = lattice(&k, &[diag(&k, &[(-1, 1), (-1, 1)]), diag(&k, &[(2, 1), (2, 1)])]);
        assert_eq!(l.basis, vec![ivec(&[2, 0])]);
        assert_eq!(l.free_rank(), 1);
        assert_eq!(l.torsion_invariants(), ivec(&[2]));
        assert_eq!(lattice(&k, &[diag(&k, &[(1, 1)])]).basis, vec![ivec(&[1])]);
    }

    #[test]
    fn perfect_powers() {
        let k = NumberField::rationals();
        // 8 = 2^3: needs a character prime other than 3
        let l = lattice(&k, &[diag(&k, &[(8, 1)]), diag(&k, &[(2, 1)])]);
        assert_eq!(l.basis, vec![ivec(&[1, -3])]);
        let l = lattice(&k, &[diag(&k, &[(6, 1)]), diag(&k, &[(-6, 1)])]);
        assert_eq!(l.basis, vec![ivec(&[2, -2])]);
        assert_eq!(l.torsion_invariants(), ivec(&[2]));
    }

    #[test]
    fn units() {
        // 1 + sqrt 2 and its square, and -1
        let k = NumberField::rationals();
        let u = Mat::from_i64(&k, &[&[1, 2], &[1, 1]]);
        let u2 = u.mul(&k, &u);
        let minus = Mat::from_i64(&k, &[&[-1, 0], &[0, -1]]);
        let l = lattice(&k, &[u.clone(), u2, minus]);
        assert_eq!(l.rank(), 2);
        assert_eq!(l.free_rank(), 1);
        assert_eq!(l.torsion_invariants(), ivec(&[2]));
        // rotation by 90 degrees over Q(i) style, via a rational matrix
        let r = Mat::from_i64(&k, &[&[0, -1], &[1, 0]]);
        assert_eq!(lattice(&k, &[r]).basis, vec![ivec(&[4])]);
    }

    #[test]
    fn gaussian_integers() {
        // 2 + i and 2 - i are independent; (1 + i)^4 = -4
        let k = NumberField::from_i64_coeffs(&[1, 0, 1]).unwrap();
        let s = |a: i64, b: i64| Mat::from_rows(vec![vec![k.elem(vec![rat(a, 1), rat(b, 1)])]]);
        let l = lattice(&k, &[s(2, 1), s(2, -1)]);
        assert!(l.basis.is_empty());
        let l = lattice(&k, &[s(1, 1), s(-4, 0)]);
        assert_eq!(l.basis, vec![ivec(&[4, -1])]);
        assert!(l.torsion_invariants().is_empty());
    }

    #[test]
    fn membership() {
        let k = NumberField::rationals();
        let gens = [diag(&k, &[(2, 1), (3, 1)]), diag(&k, &[(3, 1), (2, 1)])];
        let ed = eigen_data(&k, &gens).unwrap();
        let target = ed.image_of(&k, &diag(&k, &[(4, 3), (9, 2)])).unwrap();
        let e = express(&ed, ed.images(), &target, &AbelianOptions::default()).unwrap().unwrap();
        assert_eq!(e, ivec(&[2, -1]));
        let half = ed.image_of(&k, &diag(&k, &[(2, 1), (1, 1)])).unwrap();
        assert_eq!(express(&ed, ed.images(), &half, &AbelianOptions::default()).unwrap(), None);
    }
}
