//! Hirsch numbers and presentations of completely reducible groups through
//! their congruence kernel, which is free abelian.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::etale::{eigen_data_capped, EigenData, EtaleElem};
use super::relations::{express, relations, AbelianOptions};
use crate::arith::lattice::smith;
use crate::arith::{NfElem, NumberField};
use crate::congruence::image::tree_lifts;
use crate::congruence::{enumerate_image, select_prime, FiniteImage, PrimePolicy, Word, DEFAULT_BUDGET};
use crate::error::Error;
use crate::linalg::Mat;

type NfMat = Mat<NfElem>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrOptions {
    pub prime: PrimePolicy,
    pub budget: usize,
    pub abelian: AbelianOptions,
}

impl Default for CrOptions {
    fn default() -> Self {
        CrOptions { prime: PrimePolicy::Smallest, budget: DEFAULT_BUDGET, abelian: AbelianOptions::default() }
    }
}

/// Presentation of `G` on its generators `x_0, ..., x_(s-1)` followed by a
/// basis `a_0, ..., a_(r-1)` of the congruence kernel.
#[derive(Clone, Debug)]
pub struct CrPresentation {
    pub prime: u64,
    pub image_order: usize,
    pub generators: usize,
    /// Values of the `a_j`.
    pub kernel: Vec<NfMat>,
    /// Each `a_j` as a word in the `x_i`.
    pub definitions: Vec<Word>,
    pub relators: Vec<Word>,
    /// The `a_j` evaluated at the lift generators, when given.
    pub lifts: Vec<NfMat>,
}

impl CrPresentation {
    /// Hirsch number of the group: the rank of its congruence kernel.
    pub fn rank(&self) -> usize {
        self.kernel.len()
    }

    pub fn letters(&self) -> usize {
        self.generators + self.kernel.len()
    }
}

#[derive(Clone, Debug)]
struct Element {
    value: NfMat,
    lift: Option<NfMat>,
    eigen: EtaleElem,
    word: Word,
}

fn combine(k: &NumberField, ed: &EigenData, parts: &[&Element], e: &[BigInt]) -> Result<Element, Error> {
    let n = parts[0].value.n();
    let mut value = Mat::identity(k, n);
    let mut lift = parts[0].lift.as_ref().map(|l| Mat::identity(k, l.n()));
    let mut word = Word::identity();
    let mut eigens = Vec::new();
    for (p, c) in parts.iter().zip(e) {
        if c.is_zero() {
            continue;
        }
        let c64 = c.to_i64().ok_or_else(|| Error::Internal(format!("kernel exponent {c} out of range")))?;
        value = value.mul(k, &p.value.pow(k, c64).ok_or(Error::Singular)?);
        if let (Some(l), Some(pl)) = (lift.as_mut(), p.lift.as_ref()) {
            *l = l.mul(k, &pl.pow(k, c64).ok_or(Error::Singular)?);
        }
        word = word.mul(&p.word.pow(c64));
        eigens.push((p.eigen.clone(), c.clone()));
    }
    let (es, cs): (Vec<_>, Vec<_>) = eigens.into_iter().unzip();
    Ok(Element { value, lift, eigen: ed.product(&es, &cs)?, word })
}

/// A basis of the congruence kernel with every Schreier generator
/// expressed in it.
struct KernelBasis {
    img: FiniteImage,
    prime: u64,
    ed: Option<EigenData>,
    basis: Vec<Element>,
    /// Per non-tree edge: the edge and the exponents of its value.
    edges: Vec<((usize, usize), Vec<BigInt>)>,
}

fn internal(msg: &str) -> Error {
    Error::Internal(msg.into())
}

fn kernel_basis(k: &NumberField, gens: &[NfMat], lift_gens: Option<&[NfMat]>, opts: &CrOptions) -> Result<KernelBasis, Error> {
    let site = select_prime(k, gens, opts.prime)?;
    let images: Vec<_> = gens.iter().map(|g| site.reduce(g)).collect::<Result<_, _>>()?;
    let img = enumerate_image(site.residue_field(), &images, opts.budget)?;
    let lifts = tree_lifts(k, &img, gens)?;
    let lifts_y = lift_gens.map(|ly| tree_lifts(k, &img, ly)).transpose()?;

    // distinct nontrivial Schreier values, and which edge gives which
    let mut index: HashMap<NfMat, usize> = HashMap::new();
    let mut raw: Vec<Element> = Vec::new();
    let mut edge_raw = Vec::new();
    let edges: Vec<(usize, usize)> = img.non_tree_edges().collect();
    for &(u, g) in &edges {
        let v = img.edge(u, g);
        let value = lifts[u].0.mul(k, &gens[g]).mul(k, &lifts[v].1);
        if value.is_identity(k) {
            edge_raw.push(None);
            continue;
        }
        let next = raw.len();
        let i = *index.entry(value.clone()).or_insert(next);
        if i == next {
            let lift = lifts_y.as_ref().map(|ly| ly[u].0.mul(k, &lift_gens.unwrap()[g]).mul(k, &ly[v].1));
            raw.push(Element { value, lift, eigen: Vec::new(), word: img.schreier_word(u, g) });
        }
        edge_raw.push(Some(i));
    }
    let mut kb = KernelBasis { img, prime: site.p(), ed: None, basis: Vec::new(), edges: Vec::new() };
    if raw.is_empty() {
        kb.edges = edges.into_iter().map(|e| (e, Vec::new())).collect();
        return Ok(kb);
    }
    let values: Vec<NfMat> = raw.iter().map(|r| r.value.clone()).collect();
    let ed = eigen_data_capped(k, &values, opts.abelian.degree_cap)?;
    for (r, e) in raw.iter_mut().zip(ed.images()) {
        r.eigen = e.clone();
    }

    let mut basis: Vec<Element> = Vec::new();
    let mut expr: Vec<Vec<BigInt>> = Vec::with_capacity(raw.len());
    let mut by_eigen: HashMap<EtaleElem, usize> = HashMap::new();
    for v in &raw {
        if let Some(&i) = by_eigen.get(&v.eigen) {
            let e = expr[i].clone();
            expr.push(e);
            continue;
        }
        let mut ext = vec![v.eigen.clone()];
        ext.extend(basis.iter().map(|b| b.eigen.clone()));
        let lat = relations(&ed, &ext, &opts.abelian)?;
        match lat.basis.as_slice() {
            [] => {
                for e in expr.iter_mut() {
                    e.push(BigInt::zero());
                }
                let mut e = vec![BigInt::zero(); basis.len()];
                e.push(BigInt::one());
                expr.push(e);
                basis.push(v.clone());
            }
            [row] if row[0].is_one() => expr.push(row[1..].iter().map(|x| -x).collect()),
            [row] if row[0] > BigInt::one() => {
                // <basis, v> is free of the same rank; rebase through the
                // Smith form of the single relation
                let r = basis.len();
                let s = smith(std::slice::from_ref(row), r + 1);
                let old: Vec<&Element> = std::iter::once(v).chain(basis.iter()).collect();
                let fresh: Vec<Element> = (1..=r).map(|i| combine(k, &ed, &old, &s.v_inv[i])).collect::<Result<_, _>>()?;
                let rebase =
                    |x: &[BigInt]| -> Vec<BigInt> { (1..=r).map(|c| x.iter().zip(&s.v).fold(BigInt::zero(), |acc, (xi, vrow)| acc + xi * &vrow[c])).collect() };
                for e in expr.iter_mut() {
                    let mut x = vec![BigInt::zero()];
                    x.extend(e.iter().cloned());
                    *e = rebase(&x);
                }
                let mut x = vec![BigInt::zero(); r + 1];
                x[0] = BigInt::one();
                expr.push(rebase(&x));
                basis = fresh;
            }
            _ => return Err(internal("congruence kernel is not free abelian")),
        }
        by_eigen.insert(v.eigen.clone(), expr.len() - 1);
    }
    if basis.iter().any(|b| b.value.is_identity(k)) {
        return Err(internal("trivial kernel basis element"));
    }
    kb.edges = edges.into_iter().zip(edge_raw).map(|(e, r)| (e, r.map_or_else(|| vec![BigInt::zero(); basis.len()], |i| expr[i].clone()))).collect();
    kb.ed = Some(ed);
    kb.basis = basis;
    Ok(kb)
}

/// Hirsch number of a completely reducible group `<gens>`.
pub fn rank_cr(k: &NumberField, gens: &[NfMat], opts: &CrOptions) -> Result<usize, Error> {
    Ok(kernel_basis(k, gens, None, opts)?.basis.len())
}

fn a_word(s: usize, e: &[BigInt]) -> Result<Word, Error> {
    let syl: Vec<(usize, i64)> = e
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| c.to_i64().map(|c| (s + j, c)).ok_or_else(|| internal("relator exponent out of range")))
        .collect::<Result<_, _>>()?;
    Ok(Word::from_syllables(syl))
}

/// Presentation of a completely reducible group `<gens>` as an extension of
/// its congruence image by its free abelian congruence kernel. When
/// `lift_gens` is given (matrices mapping onto `gens`), the kernel basis is
/// also evaluated there.
pub fn presentation_cr(k: &NumberField, gens: &[NfMat], lift_gens: Option<&[NfMat]>, opts: &CrOptions) -> Result<CrPresentation, Error> {
    if let Some(ly) = lift_gens {
        if ly.len() != gens.len() {
            return Err(Error::DimensionMismatch { expected: gens.len(), found: ly.len() });
        }
    }
    let kb = kernel_basis(k, gens, lift_gens, opts)?;
    let s = gens.len();
    let mut seen = BTreeSet::new();
    let mut relators = Vec::new();
    let mut push = |w: Word| {
        if !w.is_identity() && seen.insert(w.cyclic_canonical()) {
            relators.push(w);
        }
    };
    for ((u, g), e) in &kb.edges {
        push(kb.img.schreier_word(*u, *g).mul(&a_word(s, e)?.inverse()));
    }
    let invs: Vec<NfMat> = gens.iter().map(|g| g.inverse(k).ok_or(Error::Singular)).collect::<Result<_, _>>()?;
    if let Some(ed) = &kb.ed {
        let eig: Vec<EtaleElem> = kb.basis.iter().map(|b| b.eigen.clone()).collect();
        for (i, (x, xi)) in gens.iter().zip(&invs).enumerate() {
            for (j, a) in kb.basis.iter().enumerate() {
                let conj = xi.mul(k, &a.value).mul(k, x);
                if conj == a.value {
                    push(Word::commutator(&Word::gen(i), &Word::gen(s + j)));
                    continue;
                }
                let target = ed.image_of(k, &conj).ok_or_else(|| internal("conjugate of a kernel element left the kernel algebra"))?;
                let e = express(ed, &eig, &target, &opts.abelian)?.ok_or_else(|| internal("conjugate of a kernel element not in the kernel"))?;
                push(Word::gen(i).inverse().mul(&Word::gen(s + j)).mul(&Word::gen(i)).mul(&a_word(s, &e)?.inverse()));
            }
        }
        for i in 0..kb.basis.len() {
            for j in i + 1..kb.basis.len() {
                push(Word::commutator(&Word::gen(s + i), &Word::gen(s + j)));
            }
        }
    }
    let kernel: Vec<NfMat> = kb.basis.iter().map(|b| b.value.clone()).collect();
    let mut assignment = gens.to_vec();
    assignment.extend(kernel.iter().cloned());
    for r in &relators {
        if !r.evaluate(k, &assignment)?.is_identity(k) {
            return Err(Error::InvalidPresentation(format!("relator {r} does not hold")));
        }
    }
    for b in &kb.basis {
        if b.word.evaluate(k, gens)? != b.value {
            return Err(internal("kernel definition does not evaluate to its value"));
        }
    }
    Ok(CrPresentation {
        prime: kb.prime,
        image_order: kb.img.order(),
        generators: s,
        lifts: kb.basis.iter().filter_map(|b| b.lift.clone()).collect(),
        definitions: kb.basis.into_iter().map(|b| b.word).collect(),
        kernel,
        relators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Field};

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn m(k: &NumberField, rows: &[&[i64]]) -> NfMat {
        Mat::from_i64(k, rows)
    }

    fn diag(k: &NumberField, d: &[(i64, i64)]) -> NfMat {
        Mat::diagonal(k, &d.iter().map(|&(a, b)| k.from_rational(rat(a, b))).collect::<Vec<_>>())
    }

    #[test]
    fn ranks() {
        let k = q();
        let o = CrOptions::default();
        assert_eq!(rank_cr(&k, &[m(&k, &[&[0, -1], &[1, 0]])], &o).unwrap(), 0);
        assert_eq!(rank_cr(&k, &[diag(&k, &[(2, 1), (1, 2)])], &o).unwrap(), 1);
        assert_eq!(rank_cr(&k, &[m(&k, &[&[1, 0], &[0, 1]])], &o).unwrap(), 0);
        assert_eq!(rank_cr(&k, &[diag(&k, &[(2, 1), (3, 1)]), diag(&k, &[(4, 1), (9, 1)])], &o).unwrap(), 1);
        let mono = [diag(&k, &[(2, 1), (1, 2)]), m(&k, &[&[0, -1], &[1, 0]])];
        assert_eq!(rank_cr(&k, &mono, &o).unwrap(), 1);
    }

    #[test]
    fn rebasing_kernel() {
        // <4, 8> = <2^2, 2^3> = <2>; the kernel mod 5 is <16>
        let k = q();
        let gens = [diag(&k, &[(4, 1)]), diag(&k, &[(8, 1)])];
        let p = presentation_cr(&k, &gens, None, &CrOptions::default()).unwrap();
        assert_eq!(p.rank(), 1);
        let a = &p.kernel[0];
        assert!(*a == diag(&k, &[(16, 1)]) || *a == diag(&k, &[(1, 16)]));
        // 256 enters the basis first and is then replaced by 16
        let gens = [diag(&k, &[(256, 1)]), diag(&k, &[(2, 1)])];
        let p = presentation_cr(&k, &gens, None, &CrOptions::default()).unwrap();
        assert_eq!(p.rank(), 1);
        assert!(p.kernel[0] == diag(&k, &[(16, 1)]) || p.kernel[0] == diag(&k, &[(1, 16)]));
    }

    #[test]
    fn cyclic_presentation() {
        let k = q();
        let x = diag(&k, &[(2, 1), (1, 2)]);
        let p = presentation_cr(&k, &[x], None, &CrOptions::default()).unwrap();
        assert_eq!(p.prime, 5);
        assert_eq!(p.image_order, 4);
        assert_eq!(p.kernel, vec![diag(&k, &[(16, 1), (1, 16)])]);
        let expect: BTreeSet<Word> =
            [Word::power_of(0, 4).mul(&Word::power_of(1, -1)), Word::commutator(&Word::gen(0), &Word::gen(1))].iter().map(|w| w.cyclic_canonical()).collect();
        let got: BTreeSet<Word> = p.relators.iter().map(|w| w.cyclic_canonical()).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn finite_group_presentation() {
        let k = q();
        let p = presentation_cr(&k, &[m(&k, &[&[0, -1], &[1, 0]])], None, &CrOptions::default()).unwrap();
        assert!(p.kernel.is_empty());
        assert_eq!(p.relators, vec![Word::power_of(0, 4)]);
    }

    #[test]
    fn nontrivial_action() {
        let k = q();
        let gens = [diag(&k, &[(2, 1), (3, 1)]), m(&k, &[&[0, 1], &[1, 0]])];
        let p = presentation_cr(&k, &gens, None, &CrOptions::default()).unwrap();
        assert_eq!(p.rank(), 2);
        for d in &p.definitions {
            assert!(!d.is_identity());
        }
    }

    #[test]
    fn lifts_follow_words() {
        let k = q();
        let gens = [diag(&k, &[(2, 1), (1, 2)])];
        let lift = [Mat::from_rows(vec![vec![k.from_int(2), k.from_int(1)], vec![k.zero(), k.from_rational(rat(1, 2))]])];
        let p = presentation_cr(&k, &gens, Some(&lift), &CrOptions::default()).unwrap();
        assert_eq!(p.lifts.len(), 1);
        assert_eq!(p.lifts[0], p.definitions[0].evaluate(&k, &lift).unwrap());
    }
}
