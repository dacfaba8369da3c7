//! Breadth-first enumeration of a finite matrix group over F_p(b), its
//! Cayley graph, spanning tree and Schreier presentation.

use std::collections::BTreeSet;

use indexmap::IndexSet;

use super::word::Word;
use crate::arith::{FfElem, Field, FiniteField};
use crate::error::{Error, Unknown};
use crate::linalg::Mat;

pub const DEFAULT_BUDGET: usize = 200_000;

type Packed = Box<[u32]>;

/// Dense multiplication of packed matrices over F_p[X]/(g).
#[derive(Clone, Debug)]
struct Packer {
    n: usize,
    d: usize,
    p: u64,
    modulus: Vec<u64>,
}

impl Packer {
    fn pack(&self, m: &Mat<FfElem>) -> Packed {
        m.as_flat().iter().flat_map(|e| e.0.iter().map(|&c| c as u32)).collect()
    }

    fn unpack(&self, a: &[u32]) -> Mat<FfElem> {
        let data = a.chunks(self.d).map(|c| FfElem(c.iter().map(|&x| x as u64).collect())).collect();
        Mat::from_flat(self.n, data)
    }

    fn mul(&self, a: &[u32], b: &[u32]) -> Packed {
        let (n, d, p) = (self.n, self.d, self.p);
        let mut out = vec![0u32; n * n * d];
        if d == 1 {
            for i in 0..n {
                for j in 0..n {
                    let mut acc = 0u64;
                    for l in 0..n {
                        acc = (acc + a[i * n + l] as u64 * b[l * n + j] as u64) % p;
                    }
                    out[i * n + j] = acc as u32;
                }
            }
            return out.into();
        }
        let mut acc = vec![0u64; 2 * d - 1];
        for i in 0..n {
            for j in 0..n {
                acc.iter_mut().for_each(|x| *x = 0);
                for l in 0..n {
                    let x = &a[(i * n + l) * d..(i * n + l + 1) * d];
                    let y = &b[(l * n + j) * d..(l * n + j + 1) * d];
                    for (s, &xs) in x.iter().enumerate() {
                        if xs == 0 {
                            continue;
                        }
                        for (t, &yt) in y.iter().enumerate() {
                            acc[s + t] = (acc[s + t] + xs as u64 * yt as u64) % p;
                        }
                    }
                }
                // reduce modulo the monic modulus
                for t in (d..2 * d - 1).rev() {
                    let c = acc[t];
                    if c == 0 {
                        continue;
                    }
                    for (s, &gs) in self.modulus.iter().enumerate().take(d) {
                        acc[t - d + s] = (acc[t - d + s] + (p - gs) * c % p) % p;
                    }
                    acc[t] = 0;
                }
                for s in 0..d {
                    out[(i * n + j) * d + s] = acc[s] as u32;
                }
            }
        }
        out.into()
    }
}

/// The finite group generated by the reduced generators, with its Cayley
/// graph (right multiplication by generators) and BFS spanning tree.
#[derive(Clone, Debug)]
pub struct FiniteImage {
    packer: Packer,
    ngens: usize,
    elements: IndexSet<Packed>,
    cayley: Vec<u32>,
    parent: Vec<(u32, u32)>,
}

const ROOT: u32 = u32::MAX;

/// BFS closure from the identity; elements are numbered in discovery order.
pub fn enumerate_image(ff: &FiniteField, images: &[Mat<FfElem>], budget: usize) -> Result<FiniteImage, Error> {
    let n = images.first().map_or(1, |m| m.n());
    if let Some(bad) = images.iter().find(|m| m.n() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: bad.n() });
    }
    if images.iter().any(|m| m.det(ff) == ff.zero()) {
        return Err(Error::Singular);
    }
    let packer = Packer { n, d: ff.degree(), p: ff.p(), modulus: ff.modulus().to_vec() };
    let gens: Vec<Packed> = images.iter().map(|m| packer.pack(m)).collect();
    let mut elements = IndexSet::new();
    elements.insert(packer.pack(&Mat::identity(ff, n)));
    let mut parent = vec![(ROOT, ROOT)];
    let mut cayley = Vec::new();
    let mut next = 0;
    while next < elements.len() {
        for (gi, g) in gens.iter().enumerate() {
            let prod = packer.mul(&elements[next], g);
            let (idx, fresh) = elements.insert_full(prod);
            if fresh {
                if elements.len() > budget {
                    return Err(Unknown::Budget { budget, reached: elements.len() }.into());
                }
                parent.push((next as u32, gi as u32));
            }
            cayley.push(idx as u32);
        }
        next += 1;
    }
    Ok(FiniteImage { packer, ngens: gens.len(), elements, cayley, parent })
}

impl FiniteImage {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generator_count(&self) -> usize {
        self.ngens
    }

    pub fn element(&self, i: usize) -> Mat<FfElem> {
        self.packer.unpack(&self.elements[i])
    }

    pub fn index_of(&self, m: &Mat<FfElem>) -> Option<usize> {
        self.elements.get_index_of(&self.packer.pack(m))
    }

    /// Index of `element(i) * generator(g)`.
    pub fn edge(&self, i: usize, g: usize) -> usize {
        self.cayley[i * self.ngens + g] as usize
    }

    /// Tree parent and generator of a non-root element.
    pub fn tree_parent(&self, i: usize) -> Option<(usize, usize)> {
        let (p, g) = self.parent[i];
        (p != ROOT).then_some((p as usize, g as usize))
    }

    pub fn is_tree_edge(&self, i: usize, g: usize) -> bool {
        let v = self.edge(i, g);
        self.tree_parent(v) == Some((i, g))
    }

    /// The tree word of element `i`.
    pub fn word(&self, mut i: usize) -> Word {
        let mut letters = Vec::new();
        while let Some((p, g)) = self.tree_parent(i) {
            letters.push((g, 1));
            i = p;
        }
        letters.reverse();
        Word::from_syllables(letters)
    }

    /// All non-tree Cayley edges `(u, g)`, in element then generator order.
    pub fn non_tree_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| (0..self.ngens).map(move |g| (u, g))).filter(|&(u, g)| !self.is_tree_edge(u, g))
    }

    /// Schreier generator `word(u) g word(ug)^-1` of the edge `(u, g)`.
    pub fn schreier_word(&self, u: usize, g: usize) -> Word {
        self.word(u).mul(&Word::gen(g)).mul(&self.word(self.edge(u, g)).inverse())
    }
}

/// Relators of the image on its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

/// One relator per non-tree Cayley edge; relators are deduplicated up to
/// free reduction, cyclic rotation and inversion, and trivial ones dropped.
pub fn presentation(img: &FiniteImage) -> Presentation {
    let mut seen = BTreeSet::new();
    let mut relators = Vec::new();
    for (u, g) in img.non_tree_edges() {
        let w = img.schreier_word(u, g);
        if w.is_identity() {
            continue;
        }
        if seen.insert(w.cyclic_canonical()) {
            relators.push(w);
        }
    }
    Presentation { generators: img.generator_count(), relators }
}

/// Tree lifts `t_v` of the image elements to the matrices `gens` (so that
/// `t_v` maps to element `v`) and their inverses.
pub fn tree_lifts<K: Field>(k: &K, img: &FiniteImage, gens: &[Mat<K::Elem>]) -> Result<Vec<(Mat<K::Elem>, Mat<K::Elem>)>, Error> {
    let n = gens.first().map_or(0, |g| g.n());
    let invs: Vec<Mat<K::Elem>> = gens.iter().map(|g| g.inverse(k).ok_or(Error::Singular)).collect::<Result<_, _>>()?;
    let mut lifts: Vec<(Mat<K::Elem>, Mat<K::Elem>)> = Vec::with_capacity(img.order());
    lifts.push((Mat::identity(k, n), Mat::identity(k, n)));
    for v in 1..img.order() {
        let (p, g) = img.tree_parent(v).unwrap();
        let value = lifts[p].0.mul(k, &gens[g]);
        let inv = invs[g].mul(k, &lifts[p].1);
        lifts.push((value, inv));
    }
    Ok(lifts)
}

/// A Schreier generator: its edge, word and value.
#[derive(Clone, Debug)]
pub struct SchreierGenerator<E> {
    pub edge: (usize, usize),
    pub word: Word,
    pub value: Mat<E>,
}

/// Values of all Schreier generators at `gens` (matrices mapping onto the
/// image generators). They generate the kernel of the reduction as a group.
/// Identity values are dropped and equal values kept once.
pub fn schreier_generators<K: Field>(k: &K, img: &FiniteImage, gens: &[Mat<K::Elem>]) -> Result<Vec<SchreierGenerator<K::Elem>>, Error> {
    if gens.len() != img.generator_count() {
        return Err(Error::DimensionMismatch { expected: img.generator_count(), found: gens.len() });
    }
    let lifts = tree_lifts(k, img, gens)?;
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for (u, g) in img.non_tree_edges() {
        let v = img.edge(u, g);
        let value = lifts[u].0.mul(k, &gens[g]).mul(k, &lifts[v].1);
        if value.is_identity(k) || !seen.insert(value.clone()) {
            continue;
        }
        out.push(SchreierGenerator { edge: (u, g), word: img.schreier_word(u, g), value });
    }
    Ok(out)
}

/// Relators evaluated at `gens`; identities discarded, duplicates removed.
/// The normal closure of the result is the congruence kernel.
pub fn kernel_normal_generators<K: Field>(k: &K, gens: &[Mat<K::Elem>], pres: &Presentation) -> Result<Vec<Mat<K::Elem>>, Error> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for r in &pres.relators {
        let v = r.evaluate(k, gens)?;
        if !v.is_identity(k) && seen.insert(v.clone()) {
            out.push(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, NumberField};
    use crate::congruence::site::{select_prime, PrimePolicy};
    use proptest::prelude::*;

    fn ff(p: u64) -> FiniteField {
        FiniteField::new(p, vec![0, 1])
    }

    #[test]
    fn orders() {
        let f5 = ff(5);
        let w = Mat::from_i64(&f5, &[&[0, -1], &[1, 0]]);
        assert_eq!(enumerate_image(&f5, &[w], 100).unwrap().order(), 4);
        assert_eq!(enumerate_image(&f5, &[Mat::identity(&f5, 2)], 100).unwrap().order(), 1);
        let f3 = ff(3);
        let a = Mat::from_i64(&f3, &[&[1, 1], &[0, 1]]);
        let b = Mat::from_i64(&f3, &[&[1, 0], &[1, 1]]);
        assert_eq!(enumerate_image(&f3, &[a, b], 100).unwrap().order(), 24);
    }

    #[test]
    fn budget_is_reported() {
        let f3 = ff(3);
        let a = Mat::from_i64(&f3, &[&[1, 1], &[0, 1]]);
        let b = Mat::from_i64(&f3, &[&[1, 0], &[1, 1]]);
        let err = enumerate_image(&f3, &[a, b], 10).unwrap_err();
        assert!(err.is_unknown());
    }

    #[test]
    fn extension_field_image() {
        let f25 = FiniteField::new(5, vec![2, 1, 1]);
        let x = Mat::from_rows(vec![vec![f25.element(vec![0, 1])]]);
        let img = enumerate_image(&f25, &[x], 1000).unwrap();
        let beta = f25.element(vec![0, 1]);
        let ord = (1..=24u128).find(|&e| f25.pow(&beta, e) == f25.one()).unwrap();
        assert_eq!(img.order() as u128, ord);
    }

    #[test]
    fn tree_words_evaluate_to_elements() {
        let f3 = ff(3);
        let gens = vec![Mat::from_i64(&f3, &[&[1, 1], &[0, 1]]), Mat::from_i64(&f3, &[&[1, 0], &[1, 1]])];
        let img = enumerate_image(&f3, &gens, 100).unwrap();
        for i in 0..img.order() {
            assert_eq!(img.word(i).evaluate(&f3, &gens).unwrap(), img.element(i));
            for g in 0..2 {
                assert_eq!(img.element(i).mul(&f3, &gens[g]), img.element(img.edge(i, g)));
            }
        }
        let pres = presentation(&img);
        for r in &pres.relators {
            assert!(r.evaluate(&f3, &gens).unwrap().is_identity(&f3));
        }
    }

    #[test]
    fn presentation_examples() {
        let f5 = ff(5);
        let w = Mat::from_i64(&f5, &[&[0, -1], &[1, 0]]);
        let pres = presentation(&enumerate_image(&f5, std::slice::from_ref(&w), 100).unwrap());
        assert_eq!(pres.relators, vec![Word::power_of(0, 4)]);
        let pres = presentation(&enumerate_image(&f5, &[Mat::identity(&f5, 2)], 100).unwrap());
        assert_eq!(pres.relators, vec![Word::gen(0)]);
        let t = Mat::from_i64(&f5, &[&[-1]]);
        let pres = presentation(&enumerate_image(&f5, &[t.clone(), t], 100).unwrap());
        let canon: BTreeSet<Word> = pres.relators.iter().map(|r| r.cyclic_canonical()).collect();
        assert!(canon.contains(&Word::power_of(0, 2).cyclic_canonical()));
        assert!(canon.contains(&Word::from_syllables([(0, 1), (1, -1)]).cyclic_canonical()));
    }

    #[test]
    fn kernel_generator_examples() {
        let q = NumberField::rationals();
        let one = |s: Mat<crate::arith::NfElem>| {
            let site = select_prime(&q, std::slice::from_ref(&s), PrimePolicy::Smallest).unwrap();
            let img = enumerate_image(site.residue_field(), &[site.reduce(&s).unwrap()], 1000).unwrap();
            kernel_normal_generators(&q, &[s], &presentation(&img)).unwrap()
        };
        assert!(one(Mat::from_i64(&q, &[&[0, -1], &[1, 0]])).is_empty());
        let d = Mat::diagonal(&q, &[q.from_int(2), q.from_rational(rat(1, 2))]);
        assert_eq!(one(d), vec![Mat::diagonal(&q, &[q.from_int(16), q.from_rational(rat(1, 16))])]);
        let u = Mat::from_i64(&q, &[&[1, 1], &[0, 1]]);
        assert_eq!(one(u), vec![Mat::from_i64(&q, &[&[1, 5], &[0, 1]])]);
    }

    #[test]
    fn schreier_values_reduce_to_identity() {
        let q = NumberField::rationals();
        let gens = vec![Mat::from_i64(&q, &[&[1, 2], &[0, 1]]), Mat::from_i64(&q, &[&[1, 0], &[2, 1]])];
        let site = select_prime(&q, &gens, PrimePolicy::Smallest).unwrap();
        let imgs: Vec<_> = gens.iter().map(|g| site.reduce(g).unwrap()).collect();
        let img = enumerate_image(site.residue_field(), &imgs, 1000).unwrap();
        assert_eq!(img.order(), 120);
        let sg = schreier_generators(&q, &img, &gens).unwrap();
        assert!(!sg.is_empty());
        for s in &sg {
            assert!(site.reduce(&s.value).unwrap().is_identity(site.residue_field()));
            assert_eq!(s.word.evaluate(&q, &gens).unwrap(), s.value);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn order_independent_of_generator_order(a in 0u64..7, b in 0u64..7, c in 0u64..7, swap in any::<bool>()) {
            let f7 = ff(7);
            let x = Mat::from_rows(vec![vec![FfElem(vec![1]), FfElem(vec![a])], vec![FfElem(vec![0]), FfElem(vec![1 + b % 6])]]);
            let y = Mat::from_rows(vec![vec![FfElem(vec![1 + c % 6]), FfElem(vec![0])], vec![FfElem(vec![c]), FfElem(vec![1])]]);
            let g1 = vec![x.clone(), y.clone()];
            let g2 = if swap { vec![y, x] } else { vec![x.clone(), y.clone(), x] };
            prop_assert_eq!(
                enumerate_image(&f7, &g1, 10_000).unwrap().order(),
                enumerate_image(&f7, &g2, 10_000).unwrap().order()
            );
        }
    }
}
