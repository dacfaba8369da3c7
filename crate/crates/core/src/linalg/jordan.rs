//! Multiplicative Jordan decomposition and the nilpotent log/exp pair.

use num_rational::BigRational;

use super::charpoly::{charpoly, eval_at, is_nilpotent, is_unipotent};
use super::matrix::Mat;
use crate::arith::Field;
use crate::error::Error;

/// Splits an invertible `h` as `h = h_s h_u` with `h_s` semisimple, `h_u`
/// unipotent, both commuting and polynomial in `h`. Characteristic zero.
///
/// The semisimple part is the limit of the Newton iteration
/// `x <- x - s(x) s'(x)^-1` started at `h`, where `s` is the squarefree part
/// of the characteristic polynomial; it reaches `s(x) = 0` after at most
/// log2(n) + 1 steps.
pub fn jordan_decomposition<K: Field>(k: &K, h: &Mat<K::Elem>) -> Result<(Mat<K::Elem>, Mat<K::Elem>), Error> {
    assert_eq!(k.characteristic(), 0, "Jordan decomposition implemented for characteristic zero");
    if h.inverse(k).is_none() {
        return Err(Error::Singular);
    }
    let s = charpoly(k, h).squarefree_part(k);
    let ds = s.derivative(k);
    let mut x = h.clone();
    loop {
        let sx = eval_at(k, &s, &x);
        if sx.is_zero(k) {
            break;
        }
        let dsx = eval_at(k, &ds, &x).inverse(k).expect("s'(x) is invertible along the iteration");
        x = x.sub(k, &sx.mul(k, &dsx));
    }
    let hu = x.inverse(k).ok_or(Error::Singular)?.mul(k, h);
    Ok((x, hu))
}

fn small_rational<K: Field>(k: &K, num: i64, den: i64) -> K::Elem {
    k.div(&k.from_int(num), &k.from_int(den)).unwrap()
}

/// `log(u) = sum_{i>=1} (-1)^(i+1) (u - I)^i / i`, a finite sum for unipotent `u`.
pub fn nilpotent_log<K: Field>(k: &K, u: &Mat<K::Elem>) -> Result<Mat<K::Elem>, Error> {
    assert_eq!(k.characteristic(), 0);
    if !is_unipotent(k, u) {
        return Err(Error::NotUnipotent);
    }
    let n = u.n();
    let x = u.sub(k, &Mat::identity(k, n));
    let mut acc = Mat::zeros(k, n);
    let mut pow = x.clone();
    for i in 1..n.max(1) as i64 + 1 {
        if pow.is_zero(k) {
            break;
        }
        let c = small_rational(k, if i % 2 == 1 { 1 } else { -1 }, i);
        acc = acc.add(k, &pow.scale(k, &c));
        pow = pow.mul(k, &x);
    }
    Ok(acc)
}

/// `exp(x) = sum x^i / i!` for nilpotent `x`.
pub fn nilpotent_exp<K: Field>(k: &K, x: &Mat<K::Elem>) -> Result<Mat<K::Elem>, Error> {
    assert_eq!(k.characteristic(), 0);
    if !is_nilpotent(k, x) {
        return Err(Error::NotNilpotent);
    }
    let n = x.n();
    let mut acc = Mat::identity(k, n);
    let mut term = Mat::identity(k, n);
    for i in 1..=n as i64 {
        term = term.mul(k, x).scale(k, &small_rational(k, 1, i));
        if term.is_zero(k) {
            break;
        }
        acc = acc.add(k, &term);
    }
    Ok(acc)
}

/// Convenience alias used by the rational Lie-algebra code.
pub type QMat = Mat<BigRational>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, NumberField, Rationals};
    use crate::linalg::charpoly::{is_semisimple, minpoly};
    use proptest::prelude::*;

    fn check(h: &Mat<num_rational::BigRational>) {
        let k = Rationals;
        let (s, u) = jordan_decomposition(&k, h).unwrap();
        assert_eq!(s.mul(&k, &u), *h);
        assert!(s.commutes_with(&k, &u));
        assert!(is_semisimple(&k, &s));
        assert!(is_unipotent(&k, &u));
    }

    #[test]
    fn examples() {
        let k = Rationals;
        let h = Mat::from_i64(&k, &[&[1, 1], &[0, 1]]);
        let (s, u) = jordan_decomposition(&k, &h).unwrap();
        assert!(s.is_identity(&k));
        assert_eq!(u, h);

        let h = Mat::from_i64(&k, &[&[1, 1], &[0, 2]]);
        let (s, u) = jordan_decomposition(&k, &h).unwrap();
        assert_eq!(s, h);
        assert!(u.is_identity(&k));

        let h = Mat::from_i64(&k, &[&[2, 1], &[0, 2]]);
        let (s, u) = jordan_decomposition(&k, &h).unwrap();
        assert_eq!(s, Mat::from_i64(&k, &[&[2, 0], &[0, 2]]));
        assert_eq!(u, Mat::from_rows(vec![vec![int(1), rat(1, 2)], vec![int(0), int(1)]]));
    }

    #[test]
    fn rejects_singular() {
        let k = Rationals;
        assert!(matches!(jordan_decomposition(&k, &Mat::from_i64(&k, &[&[1, 1], &[1, 1]])), Err(Error::Singular)));
    }

    #[test]
    fn mixed_blocks() {
        let k = Rationals;
        check(&Mat::from_i64(&k, &[&[3, 1, 0, 0], &[0, 3, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]));
        check(&Mat::from_i64(&k, &[&[2, 1, 5, 0], &[0, 2, 1, 7], &[0, 0, 2, 1], &[0, 0, 0, 3]]));
    }

    #[test]
    fn over_gaussian_field() {
        let k = NumberField::from_i64_coeffs(&[1, 0, 1]).unwrap();
        let i = k.generator();
        let one = k.one();
        let zero = k.zero();
        // [[i, 1], [0, i]] has semisimple part i*I
        let h = Mat::from_rows(vec![vec![i.clone(), one.clone()], vec![zero.clone(), i.clone()]]);
        let (s, u) = jordan_decomposition(&k, &h).unwrap();
        assert_eq!(s, Mat::scalar(&k, 2, &i));
        assert_eq!(s.mul(&k, &u), h);
        assert!(minpoly(&k, &s).is_squarefree(&k));
    }

    #[test]
    fn log_exp_examples() {
        let k = Rationals;
        let u = Mat::from_i64(&k, &[&[1, 1], &[0, 1]]);
        assert_eq!(nilpotent_log(&k, &u).unwrap(), Mat::from_i64(&k, &[&[0, 1], &[0, 0]]));
        assert!(nilpotent_exp(&k, &Mat::zeros(&k, 3)).unwrap().is_identity(&k));
        let u = Mat::from_i64(&k, &[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let expected = Mat::from_rows(vec![vec![int(0), int(1), rat(-1, 2)], vec![int(0), int(0), int(1)], vec![int(0), int(0), int(0)]]);
        assert_eq!(nilpotent_log(&k, &u).unwrap(), expected);
        assert!(matches!(nilpotent_log(&k, &Mat::from_i64(&k, &[&[2]])), Err(Error::NotUnipotent)));
        assert!(matches!(nilpotent_exp(&k, &Mat::from_i64(&k, &[&[1]])), Err(Error::NotNilpotent)));
    }

    fn unitriangular(n: usize, entries: &[i64]) -> Mat<num_rational::BigRational> {
        let k = Rationals;
        let mut m = Mat::identity(&k, n);
        let mut it = entries.iter();
        for i in 0..n {
            for j in i + 1..n {
                m.set(i, j, int(*it.next().unwrap()));
            }
        }
        m
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn exp_log_roundtrip(n in 1usize..=6, seed in proptest::collection::vec(-4i64..=4, 15)) {
            let k = Rationals;
            let u = unitriangular(n, &seed);
            let l = nilpotent_log(&k, &u).unwrap();
            prop_assert_eq!(nilpotent_exp(&k, &l).unwrap(), u);
            prop_assert_eq!(nilpotent_log(&k, &nilpotent_exp(&k, &l).unwrap()).unwrap(), l);
        }

        #[test]
        fn jordan_properties(d in proptest::collection::vec(1i64..=3, 4), up in proptest::collection::vec(-2i64..=2, 6)) {
            let mut h = unitriangular(4, &up);
            for (i, x) in d.iter().enumerate() {
                h.set(i, i, int(*x));
            }
            check(&h);
        }
    }
}
