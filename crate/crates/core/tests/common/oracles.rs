//! Brute-force reference computations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use finrank::arith::{Field, NumberField};
use finrank::linalg::Mat;

use super::NfMat;

fn log(k: &NumberField, u: &NfMat) -> NfMat {
    let n = u.n();
    let x = u.sub(k, &Mat::identity(k, n));
    let mut acc = Mat::zeros(k, n);
    let mut pw = x.clone();
    for j in 1..n.max(2) {
        let c = BigRational::new(if j % 2 == 1 { BigInt::one() } else { -BigInt::one() }, BigInt::from(j));
        acc = acc.add(k, &pw.scale(k, &k.from_rational(c)));
        pw = pw.mul(k, &x);
    }
    acc
}

fn exp(k: &NumberField, y: &NfMat) -> NfMat {
    let n = y.n();
    let mut acc = Mat::identity(k, n);
    let mut term = Mat::identity(k, n);
    for j in 1..n.max(2) {
        term = term.mul(k, y).scale(k, &k.from_rational(BigRational::new(BigInt::one(), BigInt::from(j))));
        acc = acc.add(k, &term);
    }
    acc
}

/// `u^c` in the radicable hull, for rational `c`.
fn rpow(k: &NumberField, u: &NfMat, c: &BigRational) -> NfMat {
    exp(k, &log(k, u).scale(k, &k.from_rational(c.clone())))
}

/// Rational coordinates of the `d`-th superdiagonal.
fn layer(g: &NfMat, d: usize) -> Vec<BigRational> {
    (0..g.n() - d).flat_map(|i| g.get(i, i + d).coords().to_vec()).collect()
}

fn leading(v: &[BigRational]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

struct Entry {
    h: NfMat,
    w: Vec<BigRational>,
    pivot: usize,
}

/// Hirsch number of a group of upper unitriangular matrices by sifting
/// through the superdiagonal layers, with rational powers so each layer is
/// echelonized over Q. Closed under commutators of sifted elements.
pub fn sifting_hirsch(k: &NumberField, gens: &[NfMat]) -> usize {
    let Some(n) = gens.first().map(|g| g.n()) else { return 0 };
    for g in gens {
        for i in 0..n {
            assert!(g.get(i, i) == &k.one(), "sifting needs unitriangular generators");
            for j in 0..i {
                assert!(k.is_zero(g.get(i, j)), "sifting needs unitriangular generators");
            }
        }
    }
    let mut table: Vec<Vec<Entry>> = (0..n).map(|_| Vec::new()).collect();
    let mut found: Vec<NfMat> = Vec::new();
    let mut queue: Vec<NfMat> = gens.to_vec();
    while let Some(mut g) = queue.pop() {
        let inserted = loop {
            let Some((d, mut v)) = (1..n).find_map(|d| {
                let v = layer(&g, d);
                leading(&v).map(|_| (d, v))
            }) else {
                break None;
            };
            for e in &table[d] {
                if !v[e.pivot].is_zero() {
                    let c = &v[e.pivot] / &e.w[e.pivot];
                    g = g.mul(k, &rpow(k, &e.h, &-c));
                    v = layer(&g, d);
                }
            }
            if let Some(pivot) = leading(&v) {
                let at = table[d].partition_point(|e| e.pivot < pivot);
                table[d].insert(at, Entry { h: g.clone(), w: v, pivot });
                break Some(g);
            }
        };
        if let Some(h) = inserted {
            let hi = h.inverse(k).unwrap();
            for x in &found {
                let xi = x.inverse(k).unwrap();
                queue.push(hi.mul(k, &xi).mul(k, &h).mul(k, x));
            }
            found.push(h);
        }
    }
    found.len()
}

fn factor(mut n: BigInt, pos: usize, sign: i64, out: &mut BTreeMap<(usize, u64), i64>) {
    n = n.abs();
    let mut p = 2u64;
    while n > BigInt::one() {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            let q = n.to_u64().expect("cofactor fits in u64");
            *out.entry((pos, q)).or_default() += sign;
            break;
        }
        while (&n % &bp).is_zero() {
            n /= &bp;
            *out.entry((pos, p)).or_default() += sign;
        }
        p += 1;
    }
}

/// Rank over Q of a rational matrix, by plain Gaussian elimination.
pub fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                for j in c..cols {
                    let t = &rows[r][j] * &f;
                    rows[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Torsion-free rank of a group of rational diagonal matrices: the rank of
/// the matrix of prime exponents of the diagonal entries.
pub fn prime_exponent_rank(gens: &[NfMat]) -> usize {
    let mut vals: Vec<BTreeMap<(usize, u64), i64>> = Vec::new();
    for g in gens {
        let mut m = BTreeMap::new();
        for i in 0..g.n() {
            let c = &g.get(i, i).coords()[0];
            assert!(g.get(i, i).coords()[1..].iter().all(Zero::is_zero), "rational entries only");
            factor(c.numer().clone(), i, 1, &mut m);
            factor(c.denom().clone(), i, -1, &mut m);
        }
        m.retain(|_, e| *e != 0);
        vals.push(m);
    }
    let keys: Vec<(usize, u64)> = vals.iter().flat_map(|m| m.keys().copied()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let rows = vals.iter().map(|m| keys.iter().map(|key| BigRational::from_integer(BigInt::from(*m.get(key).unwrap_or(&0)))).collect()).collect();
    rational_rank(rows)
}
