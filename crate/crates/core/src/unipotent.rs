//! Hirsch numbers of unipotent groups and of the unipotent radical.

use num_rational::BigRational;
use serde::Serialize;

use crate::arith::{NfElem, NumberField, Rationals};
use crate::error::Error;
use crate::linalg::echelon::EchelonBasis;
use crate::linalg::{is_nilpotent, is_unipotent, nilpotent_log, regular_representation, Mat, QMat};

/// A rational Lie algebra of nilpotent matrices, closed under brackets.
#[derive(Clone, Debug)]
pub struct LieSpan {
    ambient: usize,
    span: EchelonBasis<BigRational>,
    basis: Vec<QMat>,
}

impl LieSpan {
    pub fn new(ambient: usize) -> Self {
        LieSpan { ambient, span: EchelonBasis::new(), basis: Vec::new() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QMat] {
        &self.basis
    }

    pub fn contains(&self, x: &QMat) -> bool {
        self.span.contains(&Rationals, x.as_flat())
    }

    /// Adds `x` and closes under brackets; returns whether the span grew.
    pub fn insert(&mut self, x: QMat) -> Result<bool, Error> {
        let k = Rationals;
        if x.n() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: x.n() });
        }
        if !is_nilpotent(&k, &x) {
            return Err(Error::NotNilpotent);
        }
        let start = self.basis.len();
        let mut queue = vec![x];
        while let Some(y) = queue.pop() {
            if !self.span.insert(&k, y.as_flat()) {
                continue;
            }
            for b in &self.basis {
                queue.push(b.bracket(&k, &y));
            }
            self.basis.push(y);
        }
        Ok(self.basis.len() > start)
    }
}

/// `log` of the regular representation of a unipotent matrix over `k`.
pub fn rational_log(k: &NumberField, u: &Mat<NfElem>) -> Result<QMat, Error> {
    let r = regular_representation(k, u);
    if !is_unipotent(&Rationals, &r) {
        return Err(Error::NotUnipotent);
    }
    nilpotent_log(&Rationals, &r)
}

/// The Lie algebra spanned by the logs of unipotent generators.
pub fn lie_span(k: &NumberField, n: usize, gens: &[Mat<NfElem>]) -> Result<LieSpan, Error> {
    let mut l = LieSpan::new(n * k.degree());
    for g in gens {
        if g.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.n() });
        }
        l.insert(rational_log(k, g)?)?;
    }
    Ok(l)
}

/// Hirsch number of a finitely generated unipotent group: the dimension of
/// the rational Lie algebra generated by the logs of its generators, after
/// restriction of scalars to Q.
pub fn rank_u(k: &NumberField, n: usize, gens: &[Mat<NfElem>]) -> Result<usize, Error> {
    Ok(lie_span(k, n, gens)?.dim())
}

/// `true` iff `<gens>` has the full Hirsch number `algebra_dim` of the
/// unipotent algebraic group containing it.
pub fn is_arithmetic_unipotent(k: &NumberField, n: usize, gens: &[Mat<NfElem>], algebra_dim: usize) -> Result<bool, Error> {
    Ok(rank_u(k, n, gens)? == algebra_dim)
}

#[derive(Clone, Debug, Serialize)]
pub struct Saturation {
    pub rank: usize,
    /// Ranks after each round; non-decreasing.
    pub history: Vec<usize>,
    #[serde(skip)]
    pub witness: Vec<Mat<NfElem>>,
    #[serde(skip)]
    pub lie: LieSpan,
}

/// Hirsch number of the normal closure of the unipotent elements `xs` in
/// `<gens>`.
///
/// Conjugates `x^g`, `x^(g^-1)` are added while they enlarge the Lie
/// algebra; when no conjugate does, the algebra is invariant under the
/// whole group and equals that of the normal closure. The returned witness
/// is a finite generating set of a subgroup of the same rank.
pub fn rank_of_normal_closure(k: &NumberField, n: usize, xs: &[Mat<NfElem>], gens: &[Mat<NfElem>]) -> Result<Saturation, Error> {
    let pairs: Vec<(Mat<NfElem>, Mat<NfElem>)> =
        gens.iter().map(|g| g.inverse(k).map(|gi| (g.clone(), gi)).ok_or(Error::Singular)).collect::<Result<_, _>>()?;
    let mut lie = LieSpan::new(n * k.degree());
    let mut witness = Vec::new();
    for x in xs {
        if lie.insert(rational_log(k, x)?)? {
            witness.push(x.clone());
        }
    }
    let mut history = vec![lie.dim()];
    let mut done = 0;
    loop {
        let end = witness.len();
        for i in done..end {
            for (g, gi) in &pairs {
                for c in [gi.mul(k, &witness[i]).mul(k, g), g.mul(k, &witness[i]).mul(k, gi)] {
                    if lie.insert(rational_log(k, &c)?)? {
                        witness.push(c);
                    }
                }
            }
        }
        done = end;
        history.push(lie.dim());
        if witness.len() == end {
            break;
        }
    }
    Ok(Saturation { rank: lie.dim(), history, witness, lie })
}

/// Hirsch number of the unipotent radical `U(G)` from its normal
/// generators in the conjugated group `<gens_y>`.
pub fn rank_of_unipotent_radical(k: &NumberField, gens_y: &[Mat<NfElem>], radical_normal_gens: &[Mat<NfElem>]) -> Result<Saturation, Error> {
    let n = gens_y.first().or(radical_normal_gens.first()).map_or(0, |g| g.n());
    rank_of_normal_closure(k, n, radical_normal_gens, gens_y)
}
