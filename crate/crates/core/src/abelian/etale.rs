//! Simultaneous eigen-decomposition of commuting semisimple matrices as a
//! product of number fields.
//!
//! The rational algebra `A = Q[g_1, ..., g_k]` generated by the regular
//! representations is commutative and semisimple, hence a product of fields
//! `K_1 x ... x K_r`. Each `K_j` is one Galois orbit of simultaneous
//! eigenvalue tuples; the image of `g_i` in `K_j` is its eigenvalue there.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::poly::Poly;
use crate::arith::zpoly::{factor_rational, scale_to_integral_monic};
use crate::arith::{Field, NfElem, NumberField, Rationals};
use crate::error::{Error, Unknown};
use crate::linalg::echelon::{express, EchelonBasis};
use crate::linalg::{is_semisimple, minpoly, regular_representation, Mat, QMat};

/// Largest component degree handled.
pub const DEGREE_CAP: usize = 24;

/// An element of `K_1 x ... x K_r`.
pub type EtaleElem = Vec<NfElem>;

#[derive(Clone, Debug)]
pub struct EigenData {
    rational_dim: usize,
    /// Flattened powers `c^0, ..., c^(D-1)` of the primitive element.
    powers: Vec<Vec<BigRational>>,
    /// Each component `K_j = Q[Y]/(Q_j)` with `Q_j` monic integral, and the
    /// scale `d_j` with `Y = d_j c` in `K_j`.
    components: Vec<(NumberField, BigInt)>,
    /// `images[i][j]`: image of generator `i` in `K_j`.
    images: Vec<EtaleElem>,
}

fn commutative_algebra(n: usize, ms: &[QMat]) -> Vec<QMat> {
    let k = Rationals;
    let mut span = EchelonBasis::new();
    let mut basis = Vec::new();
    let mut queue = vec![Mat::identity(&k, n)];
    while let Some(x) = queue.pop() {
        if !span.insert(&k, x.as_flat()) {
            continue;
        }
        for m in ms {
            queue.push(x.mul(&k, m));
        }
        basis.push(x);
    }
    basis
}

fn primitive_element(basis: &[QMat]) -> Option<(QMat, Poly<BigRational>)> {
    let k = Rationals;
    let n = basis[0].n();
    for s in 1..=40i64 {
        let mut c = Mat::zeros(&k, n);
        let mut t = BigInt::one();
        for b in basis {
            c = c.add(&k, &b.scale(&k, &BigRational::from_integer(t.clone())));
            t = t * s + 1;
        }
        let mp = minpoly(&k, &c);
        if mp.degree() == Some(basis.len()) {
            return Some((c, mp));
        }
    }
    None
}

impl EigenData {
    pub fn generator_count(&self) -> usize {
        self.images.len()
    }

    /// Dimension of the algebra `Q[g_1, ..., g_k]`.
    pub fn algebra_dim(&self) -> usize {
        self.powers.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn field(&self, j: usize) -> &NumberField {
        &self.components[j].0
    }

    pub fn images(&self) -> &[EtaleElem] {
        &self.images
    }

    pub fn max_degree(&self) -> usize {
        self.components.iter().map(|(f, _)| f.degree()).max().unwrap_or(0)
    }

    /// Image of a rational matrix lying in the algebra; `None` otherwise.
    pub fn image_of_rational(&self, m: &QMat) -> Option<EtaleElem> {
        let q = Rationals;
        if m.n() != self.rational_dim {
            return None;
        }
        let coeffs = express(&q, &self.powers, m.as_flat())?;
        Some(
            self.components
                .iter()
                .map(|(kj, d)| {
                    let mut scale = BigRational::one();
                    let dq = BigRational::from_integer(d.clone());
                    let mut ys = Vec::with_capacity(coeffs.len());
                    for c in &coeffs {
                        ys.push(c * &scale);
                        scale /= &dq;
                    }
                    kj.from_poly(&Poly::from_coeffs(&q, ys))
                })
                .collect(),
        )
    }

    /// Image of a matrix over the ground field.
    pub fn image_of(&self, k: &NumberField, m: &Mat<NfElem>) -> Option<EtaleElem> {
        self.image_of_rational(&regular_representation(k, m))
    }

    pub fn one(&self) -> EtaleElem {
        self.components.iter().map(|(f, _)| f.one()).collect()
    }

    pub fn mul(&self, a: &EtaleElem, b: &EtaleElem) -> EtaleElem {
        self.components.iter().zip(a.iter().zip(b)).map(|((f, _), (x, y))| f.mul(x, y)).collect()
    }

    pub fn pow(&self, a: &EtaleElem, e: &BigInt) -> Result<EtaleElem, Error> {
        let e = e.to_i64().ok_or_else(|| Error::Internal(format!("exponent {e} out of range")))?;
        self.components.iter().zip(a).map(|((f, _), x)| f.pow(x, e).ok_or(Error::Singular)).collect()
    }

    /// `prod images[i]^e_i` for generator elements `elems`.
    pub fn product(&self, elems: &[EtaleElem], e: &[BigInt]) -> Result<EtaleElem, Error> {
        let mut acc = self.one();
        for (x, ei) in elems.iter().zip(e) {
            if !ei.is_zero() {
                acc = self.mul(&acc, &self.pow(x, ei)?);
            }
        }
        Ok(acc)
    }

    pub fn is_one(&self, a: &EtaleElem) -> bool {
        self.components.iter().zip(a).all(|((f, _), x)| f.is_one(x))
    }

    /// Order of `a` if it has finite order. A root of unity of order `N` in
    /// a field of degree `f` is an algebraic integer with `phi(N) <= f`, so
    /// after an integrality check only boundedly many powers are tried.
    pub fn torsion_order(&self, a: &EtaleElem) -> Result<Option<u64>, Error> {
        let q = Rationals;
        let mut order = 1u64;
        for ((f, _), x) in self.components.iter().zip(a) {
            if !minpoly(&q, &f.mult_matrix(x)).coeffs().iter().all(|c| c.is_integer()) {
                return Ok(None);
            }
            let bound = max_root_of_unity_order(f.degree());
            let mut p = x.clone();
            let mut n = 1;
            while !f.is_one(&p) {
                n += 1;
                if n > bound {
                    return Ok(None);
                }
                p = f.mul(&p, x);
            }
            order = num_integer::lcm(order, n);
        }
        Ok(Some(order))
    }

    pub fn is_torsion(&self, a: &EtaleElem) -> Result<bool, Error> {
        Ok(self.torsion_order(a)?.is_some())
    }
}

fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Largest `N` with `phi(N) <= f`; all such `N` satisfy `N <= 2 f^2 + 2`.
pub(crate) fn max_root_of_unity_order(f: usize) -> u64 {
    let f = f as u64;
    (1..=2 * f * f + 2).filter(|&n| euler_phi(n) <= f).max().unwrap_or(2).max(2)
}

/// Decomposes `<gens>` (commuting, semisimple) into components.
pub fn eigen_data(k: &NumberField, gens: &[Mat<NfElem>]) -> Result<EigenData, Error> {
    eigen_data_capped(k, gens, DEGREE_CAP)
}

/// As [`eigen_data`], with components of degree above `cap` refused.
pub fn eigen_data_capped(k: &NumberField, gens: &[Mat<NfElem>], cap: usize) -> Result<EigenData, Error> {
    let q = Rationals;
    let n = gens.first().map_or(0, |g| g.n());
    let mut reps = Vec::with_capacity(gens.len());
    for g in gens {
        if g.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.n() });
        }
        let r = regular_representation(k, g);
        if r.inverse(&q).is_none() {
            return Err(Error::Singular);
        }
        if !is_semisimple(&q, &r) {
            return Err(Error::NotSemisimple);
        }
        reps.push(r);
    }
    let rational_dim = n * k.degree();
    if rational_dim == 0 {
        return Ok(EigenData { rational_dim, powers: Vec::new(), components: Vec::new(), images: vec![Vec::new(); gens.len()] });
    }
    let basis = commutative_algebra(rational_dim, &reps);
    for (i, a) in basis.iter().enumerate() {
        if basis[i + 1..].iter().any(|b| !a.commutes_with(&q, b)) {
            return Err(Error::NotCommuting);
        }
    }
    let (c, mp) = primitive_element(&basis).ok_or_else(|| Error::Internal("no primitive element found".into()))?;
    let mut powers = vec![Mat::identity(&q, rational_dim).as_flat().to_vec()];
    let mut cur = Mat::identity(&q, rational_dim);
    for _ in 1..basis.len() {
        cur = cur.mul(&q, &c);
        powers.push(cur.as_flat().to_vec());
    }
    let mut components = Vec::new();
    for (qj, mult) in factor_rational(&mp) {
        debug_assert_eq!(mult, 1, "minimal polynomial of a semisimple element is squarefree");
        if qj.degree().unwrap_or(0) > cap {
            return Err(Error::Unknown(Unknown::Uncertified(format!("eigenvalue field of degree {} exceeds the cap {cap}", qj.degree().unwrap()))));
        }
        let (zq, d) = scale_to_integral_monic(&qj.monic(&q));
        components.push((NumberField::new_unchecked(zq), d));
    }
    let mut ed = EigenData { rational_dim, powers, components, images: Vec::new() };
    ed.images = reps.iter().map(|r| ed.image_of_rational(r).expect("generator lies in its algebra")).collect();
    Ok(ed)
}
