//! Completely reducible part of a solvable-by-finite group and normal
//! generators of its unipotent radical.

use super::sf::SfVerdict;
use super::ua::BlockForm;
use crate::arith::nffactor::factor_squarefree;
use crate::arith::{Field, NfElem, NumberField};
use crate::congruence::Word;
use crate::error::Error;
use crate::linalg::echelon::EchelonBasis;
use crate::linalg::{charpoly, jordan_decomposition, minpoly, Mat, Subspace};

/// Shrinks `w` by `w := g w ∩ w` until every generator maps it onto itself.
pub fn stable_fixed_space<K: Field>(k: &K, w: &Subspace<K::Elem>, gens: &[Mat<K::Elem>]) -> Result<Subspace<K::Elem>, Error> {
    let mut w = w.clone();
    'outer: loop {
        for g in gens {
            let gw = w.image(k, g)?;
            if gw != w {
                w = gw.intersect(k, &w)?;
                continue 'outer;
            }
        }
        return Ok(w);
    }
}

type NfMat = Mat<NfElem>;

fn blocks_of(ms: &[NfMat], start: usize, size: usize) -> Vec<NfMat> {
    ms.iter().map(|m| m.block(start, size)).collect()
}

/// Basis of the unital commutative algebra generated by `ms`.
fn commutative_algebra(k: &NumberField, d: usize, ms: &[NfMat]) -> Vec<NfMat> {
    let mut span = EchelonBasis::new();
    let mut basis = Vec::new();
    let mut queue = vec![Mat::identity(k, d)];
    while let Some(x) = queue.pop() {
        if !span.insert(k, x.as_flat()) {
            continue;
        }
        for m in ms {
            queue.push(x.mul(k, m));
        }
        basis.push(x);
    }
    basis
}

/// An element generating the algebra spanned by `basis`, if a small
/// integer combination does.
fn primitive_element(k: &NumberField, basis: &[NfMat]) -> Option<NfMat> {
    let d = basis[0].n();
    for s in 1..=8i64 {
        let mut c = Mat::zeros(k, d);
        let mut t = 1i64;
        for b in basis {
            c = c.add(k, &b.scale(k, &k.from_int(t)));
            t = t.checked_mul(s)?.checked_add(1)?;
        }
        if minpoly(k, &c).degree() == Some(basis.len()) {
            return Some(c);
        }
    }
    None
}

/// Splits a block on which the kernel acts semisimply into sums of
/// homogeneous components permuted by the group.
fn homogeneous_split(k: &NumberField, d: usize, gens: &[NfMat], kernel: &[NfMat]) -> (NfMat, Vec<usize>) {
    let whole = (Mat::identity(k, d), vec![d]);
    let alg = commutative_algebra(k, d, kernel);
    if alg.len() <= 1 {
        return whole;
    }
    let Some(c) = primitive_element(k, &alg) else {
        return whole;
    };
    let comps: Vec<Subspace<NfElem>> = factor_squarefree(k, &minpoly(k, &c))
        .iter()
        .map(|q| {
            let qc = crate::linalg::charpoly::eval_at(k, q, &c);
            Subspace::span(k, d, crate::linalg::echelon::kernel(k, &qc.to_rows(), d))
        })
        .collect();
    if comps.len() <= 1 {
        return whole;
    }
    // orbits of the components under the generators
    let mut parent: Vec<usize> = (0..comps.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    for g in gens {
        for i in 0..comps.len() {
            let Ok(img) = comps[i].image(k, g) else { return whole };
            let Some(j) = comps.iter().position(|c| *c == img) else {
                return whole;
            };
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for root in 0..comps.len() {
        if find(&mut parent, root) == root {
            orbits.push((0..comps.len()).filter(|&i| find(&mut parent, i) == root).collect());
        }
    }
    if orbits.len() == 1 {
        return whole;
    }
    // keep triangular inputs triangular: orbits whose span reaches the
    // fewest trailing coordinates come first
    let spans: Vec<Subspace<NfElem>> =
        orbits.iter().map(|o| Subspace::span(k, d, o.iter().flat_map(|&i| comps[i].basis().iter().cloned()).collect())).collect();
    let mut order: Vec<usize> = (0..orbits.len()).collect();
    order.sort_by_key(|&i| bottom_profile(k, &spans[i]));
    let mut cols = Vec::new();
    let mut sizes = Vec::new();
    for i in order {
        cols.extend(spans[i].basis().iter().cloned());
        sizes.push(spans[i].dim());
    }
    (Mat::from_cols(&cols), sizes)
}

/// For each dimension step, the last coordinate reached by the subspace
/// spanned so far when vectors are echelonized from the bottom.
fn bottom_profile(k: &NumberField, w: &Subspace<NfElem>) -> Vec<usize> {
    let mut rows: Vec<Vec<NfElem>> = w.basis().iter().map(|v| v.iter().rev().cloned().collect()).collect();
    let d = w.ambient();
    let mut pivots: Vec<usize> = crate::linalg::echelon::rref(k, &mut rows).into_iter().map(|p| d - 1 - p).collect();
    pivots.sort_unstable();
    pivots
}

/// Refines one diagonal block (with generator images `gens` and kernel
/// images `kernel`) into completely reducible blocks.
fn split(k: &NumberField, d: usize, gens: &[NfMat], kernel: &[NfMat]) -> Result<(NfMat, Vec<usize>), Error> {
    let id = Mat::identity(k, d);
    let mut shifted = Vec::new();
    for m in kernel {
        let (_, u) = jordan_decomposition(k, m)?;
        if !u.is_identity(k) {
            shifted.push(u.sub(k, &id));
        }
    }
    if shifted.is_empty() {
        return Ok(homogeneous_split(k, d, gens, kernel));
    }
    let w = crate::linalg::common_kernel(k, d, &shifted)?;
    let u = stable_fixed_space(k, &w, gens)?;
    if u.dim() == 0 {
        return Err(Error::Internal("unipotent normal subgroup without stable fixed vectors".into()));
    }
    let z = u.adapted_basis(k);
    let zi = z.inverse(k).ok_or(Error::Singular)?;
    let e = u.dim();
    let gz: Vec<NfMat> = gens.iter().map(|g| g.conjugate_by(k, &z, &zi)).collect();
    let mz: Vec<NfMat> = kernel.iter().map(|g| g.conjugate_by(k, &z, &zi)).collect();
    let (xu, mut sizes) = homogeneous_split(k, e, &blocks_of(&gz, 0, e), &blocks_of(&mz, 0, e));
    let (xq, sq) = split(k, d - e, &blocks_of(&gz, e, d - e), &blocks_of(&mz, e, d - e))?;
    sizes.extend(sq);
    Ok((z.mul(k, &Mat::block_diagonal(k, &[xu, xq])), sizes))
}

/// Output of [`completely_reducible_part`].
#[derive(Clone, Debug)]
pub struct CrPart {
    /// Block diagonal parts `mu(g^y)` of the generators.
    pub generators: Vec<NfMat>,
    pub form: BlockForm<NfElem>,
}

/// Conjugates `<gens>` to block upper triangular form with completely
/// reducible diagonal blocks and returns the block diagonal parts.
///
/// `verdict` must be a true verdict for the same generators. Its kernel
/// acts through abelian groups on the witness blocks; on each block the
/// fixed space of the unipotent parts of the kernel is split off
/// repeatedly, and blocks where the kernel is semisimple are decomposed
/// into orbits of homogeneous components.
pub fn completely_reducible_part(k: &NumberField, gens: &[NfMat], verdict: &SfVerdict) -> Result<CrPart, Error> {
    let Some(witness) = verdict.witness.as_ref().filter(|_| verdict.is_true()) else {
        return Err(Error::Internal("completely reducible part needs a solvable-by-finite witness".into()));
    };
    let n = witness.basis_change.n();
    let sx: Vec<NfMat> = gens.iter().map(|g| witness.conjugate(k, g)).collect();
    let mx: Vec<NfMat> = verdict.kernel.iter().map(|g| witness.conjugate(k, g)).collect();
    let mut xs = Vec::new();
    let mut sizes = Vec::new();
    for (&o, &s) in witness.offsets().iter().zip(&witness.block_sizes) {
        let (xi, si) = split(k, s, &blocks_of(&sx, o, s), &blocks_of(&mx, o, s))?;
        xs.push(xi);
        sizes.extend(si);
    }
    let y = if n == 0 { witness.basis_change.clone() } else { witness.basis_change.mul(k, &Mat::block_diagonal(k, &xs)) };
    let mut form = BlockForm::from_basis(k, y, sizes);
    form.certified_cr = true;
    if !form.verify(k, gens) {
        return Err(Error::Internal("completely reducible basis change does not triangularize".into()));
    }
    let generators = gens.iter().map(|g| form.conjugate(k, g).block_diagonal_part(k, &form.block_sizes)).collect();
    Ok(CrPart { generators, form })
}

/// Relators of a presentation of the completely reducible part, evaluated
/// at the conjugated generators `g^y` followed by `extra` (elements of
/// `<g^y>` standing for any further letters of the presentation). The
/// results lie in the kernel of the block diagonal projection and normally
/// generate the unipotent radical.
pub fn unipotent_radical_normal_generators(
    k: &NumberField,
    gens: &[NfMat],
    form: &BlockForm<NfElem>,
    relators: &[Word],
    extra: &[NfMat],
) -> Result<Vec<NfMat>, Error> {
    let mut gy: Vec<NfMat> = gens.iter().map(|g| form.conjugate(k, g)).collect();
    gy.extend(extra.iter().cloned());
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for r in relators {
        let v = r.evaluate(k, &gy)?;
        if !v.block_diagonal_part(k, &form.block_sizes).is_identity(k) {
            return Err(Error::InvalidPresentation(format!("relator {r} is not trivial on the completely reducible part")));
        }
        if !v.is_identity(k) && seen.insert(v.clone()) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Certificate that the diagonal blocks are completely reducible: the
/// kernel elements have commuting semisimple block diagonal parts.
pub fn certify_completely_reducible(k: &NumberField, kernel: &[NfMat], form: &BlockForm<NfElem>) -> bool {
    let parts: Vec<NfMat> = kernel.iter().map(|m| form.conjugate(k, m).block_diagonal_part(k, &form.block_sizes)).collect();
    parts.iter().all(|a| charpoly::is_semisimple(k, a)) && parts.iter().enumerate().all(|(i, a)| parts[i + 1..].iter().all(|b| a.commutes_with(k, b)))
}
