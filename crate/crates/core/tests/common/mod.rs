#![allow(dead_code)]

pub mod oracles;

use num_rational::BigRational;
use num_traits::One;

use finrank::arith::{Field, NfElem, NumberField};
use finrank::linalg::Mat;

pub type NfMat = Mat<NfElem>;

pub struct Group {
    pub name: &'static str,
    pub field: NumberField,
    pub gens: Vec<NfMat>,
    /// Hirsch number worked out by hand, where the corpus records one.
    pub hirsch: Option<usize>,
}

impl Group {
    pub fn dim(&self) -> usize {
        self.gens[0].n()
    }

    pub fn nm(&self) -> usize {
        self.dim() * self.field.degree()
    }

    pub fn is_unipotent(&self) -> bool {
        self.gens.iter().all(|g| finrank::linalg::is_unipotent(&self.field, g))
    }

    /// Entries in the ring of integers and unit determinants, so the group
    /// lies in `GL(n, O)`. Both corpus fields have `O = Z[theta]`.
    pub fn is_integral(&self) -> bool {
        let k = &self.field;
        self.gens.iter().all(|g| {
            let integral = (0..g.n()).all(|i| (0..g.n()).all(|j| g.get(i, j).coords().iter().all(|c| c.is_integer())));
            let n = k.norm(&g.det(k));
            integral && (n == BigRational::one() || n == -BigRational::one())
        })
    }

    pub fn is_diagonal(&self) -> bool {
        let k = &self.field;
        self.gens.iter().all(|g| (0..g.n()).all(|i| (0..g.n()).all(|j| i == j || k.is_zero(g.get(i, j)))))
    }
}

pub fn q() -> NumberField {
    NumberField::rationals()
}

pub fn gauss() -> NumberField {
    NumberField::from_i64_coeffs(&[1, 0, 1]).unwrap()
}

pub fn m(k: &NumberField, rows: &[&[i64]]) -> NfMat {
    Mat::from_i64(k, rows)
}

pub fn diag(k: &NumberField, d: &[i64]) -> NfMat {
    Mat::diagonal(k, &d.iter().map(|&x| k.from_int(x)).collect::<Vec<_>>())
}

/// `a + b i` in `Q(i)`.
pub fn gi(k: &NumberField, a: i64, b: i64) -> NfElem {
    k.add(&k.from_int(a), &k.mul(&k.from_int(b), &k.generator()))
}

pub fn diag_gi(k: &NumberField, d: &[(i64, i64)]) -> NfMat {
    Mat::diagonal(k, &d.iter().map(|&(a, b)| gi(k, a, b)).collect::<Vec<_>>())
}

/// `I + c E_ij`.
pub fn e(k: &NumberField, n: usize, i: usize, j: usize, c: i64) -> NfMat {
    Mat::elementary(k, n, i, j, &k.from_int(c))
}

pub fn ut(k: &NumberField, n: usize) -> Vec<NfMat> {
    (0..n - 1).map(|i| e(k, n, i, i + 1, 1)).collect()
}

pub fn block(k: &NumberField, blocks: &[NfMat]) -> NfMat {
    Mat::block_diagonal(k, blocks)
}

fn g(name: &'static str, field: NumberField, gens: Vec<NfMat>, hirsch: Option<usize>) -> Group {
    Group { name, field, gens, hirsch }
}

/// Integral groups of finite rank, `n <= 4` and `[K:Q] <= 2`.
pub fn corpus() -> Vec<Group> {
    let k = q();
    let kk = &k;
    let mut c = vec![
        g("trivial", q(), vec![m(kk, &[&[1]])], Some(0)),
        g("<2>", q(), vec![m(kk, &[&[2]])], Some(1)),
        g("<-1>", q(), vec![m(kk, &[&[-1]])], Some(0)),
        g("<2,3>", q(), vec![m(kk, &[&[2]]), m(kk, &[&[3]])], Some(2)),
        g("<6,4,9>", q(), vec![m(kk, &[&[6]]), m(kk, &[&[4]]), m(kk, &[&[9]])], Some(2)),
        g("rotation4", q(), vec![m(kk, &[&[0, -1], &[1, 0]])], Some(0)),
        g("diag(2,3)", q(), vec![diag(kk, &[2, 3])], Some(1)),
        g("diag(2,3),diag(3,2)", q(), vec![diag(kk, &[2, 3]), diag(kk, &[3, 2])], Some(2)),
        g("diag(2,1)", q(), vec![diag(kk, &[2, 1])], Some(1)),
        g("UT2", q(), ut(kk, 2), Some(1)),
        g("UT3", q(), ut(kk, 3), Some(3)),
        g("UT4", q(), ut(kk, 4), Some(6)),
        g("I+E02", q(), vec![e(kk, 3, 0, 2, 1)], Some(1)),
        g("I+E01,I+E23", q(), vec![e(kk, 4, 0, 1, 1), e(kk, 4, 2, 3, 1)], Some(2)),
        g("diag(2,3,5),I+E01,I+E12", q(), vec![diag(kk, &[2, 3, 5]), e(kk, 3, 0, 1, 1), e(kk, 3, 1, 2, 1)], Some(4)),
        g("Z[1/2]xZ", q(), vec![diag(kk, &[2, 1]), e(kk, 2, 0, 1, 1)], Some(2)),
        g("Z[2/3,3/2]xZ", q(), vec![diag(kk, &[2, 3]), e(kk, 2, 0, 1, 1)], Some(2)),
        g("S3", q(), vec![m(kk, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]), m(kk, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])], Some(0)),
        g("signed perms", q(), vec![m(kk, &[&[0, 1], &[1, 0]]), m(kk, &[&[-1, 0], &[0, 1]])], Some(0)),
        g("hyperbolic", q(), vec![m(kk, &[&[2, 1], &[1, 1]])], Some(1)),
        g("hyperbolic and square", q(), vec![m(kk, &[&[2, 1], &[1, 1]]), m(kk, &[&[5, 3], &[3, 2]])], Some(1)),
        g("fibonacci", q(), vec![m(kk, &[&[0, 1], &[1, 1]])], Some(1)),
        g("hyperbolic+diag(3,5)", q(), vec![block(kk, &[m(kk, &[&[2, 1], &[1, 1]]), diag(kk, &[1, 1])]), diag(kk, &[1, 1, 3, 5])], Some(2)),
        g("cyclic non-split", q(), vec![m(kk, &[&[2, 0, 1], &[0, 3, 0], &[0, 0, 1]])], Some(1)),
        g("non-split with radical", q(), vec![m(kk, &[&[2, 0, 1], &[0, 3, 0], &[0, 0, 1]]), e(kk, 3, 1, 2, 1)], None),
        g("-I3", q(), vec![diag(kk, &[-1, -1, -1])], Some(0)),
        g("rotation3", q(), vec![m(kk, &[&[0, -1], &[1, -1]])], Some(0)),
        g("scalar 2", q(), vec![diag(kk, &[2, 2, 2, 2])], Some(1)),
        g("UT4 with diag(1,2,1,1)", q(), [vec![diag(kk, &[1, 2, 1, 1])], ut(kk, 4)].concat(), None),
        g("jordan+rotation", q(), vec![block(kk, &[m(kk, &[&[1, 1], &[0, 1]]), m(kk, &[&[0, -1], &[1, 0]])])], Some(1)),
        g("UT2 and -I", q(), vec![m(kk, &[&[1, 1], &[0, 1]]), diag(kk, &[-1, -1])], Some(1)),
        g("heisenberg 2,3", q(), vec![e(kk, 3, 0, 1, 2), e(kk, 3, 1, 2, 3)], Some(3)),
        g(
            "two hyperbolic blocks",
            q(),
            vec![block(kk, &[m(kk, &[&[2, 1], &[1, 1]]), diag(kk, &[1, 1])]), block(kk, &[diag(kk, &[1, 1]), m(kk, &[&[3, 2], &[1, 1]])])],
            Some(2),
        ),
        g("Z^2 x| hyperbolic", q(), vec![block(kk, &[m(kk, &[&[2, 1], &[1, 1]]), diag(kk, &[1])]), e(kk, 3, 0, 2, 1), e(kk, 3, 1, 2, 1)], Some(3)),
        g("unit 1+sqrt2", q(), vec![m(kk, &[&[1, 2], &[1, 1]])], Some(1)),
        g("cubic units", q(), vec![m(kk, &[&[0, 0, -1], &[1, 0, 3], &[0, 1, 0]]), m(kk, &[&[-1, 0, -1], &[1, -1, 3], &[0, 1, -1]])], Some(2)),
        g("infinite dihedral", q(), vec![diag(kk, &[-1, 1]), e(kk, 2, 0, 1, 1)], Some(1)),
        g("UT3 with signs", q(), [vec![diag(kk, &[-1, 1, 1])], ut(kk, 3)].concat(), Some(3)),
        g("I+E03,I+E12", q(), vec![e(kk, 4, 0, 3, 1), e(kk, 4, 1, 2, 1)], Some(2)),
        g("monomial", q(), vec![m(kk, &[&[0, -1, 0], &[0, 0, 1], &[1, 0, 0]]), diag(kk, &[-1, 1, -1])], Some(0)),
        g("swap+hyperbolic", q(), vec![block(kk, &[m(kk, &[&[0, 1], &[1, 0]]), m(kk, &[&[2, 1], &[1, 1]])])], Some(1)),
    ];
    let k = gauss();
    let kk = &k;
    let i = gi(kk, 0, 1);
    c.extend([
        g("UT2(Z[i])", gauss(), vec![e(kk, 2, 0, 1, 1), Mat::elementary(kk, 2, 0, 1, &i)], Some(2)),
        g("diag(i,1)", gauss(), vec![diag_gi(kk, &[(0, 1), (1, 0)])], Some(0)),
        g("diag(1+i,1)", gauss(), vec![diag_gi(kk, &[(1, 1), (1, 0)])], Some(1)),
        g("diag(1+i,1),diag(1-i,1)", gauss(), vec![diag_gi(kk, &[(1, 1), (1, 0)]), diag_gi(kk, &[(1, -1), (1, 0)])], Some(1)),
        g("diag(2+i,1),diag(2-i,1)", gauss(), vec![diag_gi(kk, &[(2, 1), (1, 0)]), diag_gi(kk, &[(2, -1), (1, 0)])], Some(2)),
        g("Z[i] x| C4", gauss(), vec![diag_gi(kk, &[(0, 1), (1, 0)]), e(kk, 2, 0, 1, 1)], Some(2)),
        g("Z[i][1/(1+i)] x| Z", gauss(), vec![diag_gi(kk, &[(1, 1), (1, 0)]), e(kk, 2, 0, 1, 1)], Some(3)),
        g("I+E01,I+iE12", gauss(), vec![e(kk, 3, 0, 1, 1), Mat::elementary(kk, 3, 1, 2, &i)], Some(3)),
        g("hyperbolic over Q(i)", gauss(), vec![m(kk, &[&[2, 1], &[1, 1]])], Some(1)),
    ]);
    c
}

/// The generators of `<gens>` squared.
pub fn squares(k: &NumberField, gens: &[NfMat]) -> Vec<NfMat> {
    gens.iter().map(|g| g.mul(k, g)).collect()
}

/// `x^-1 g x` for each generator.
pub fn conjugate(k: &NumberField, gens: &[NfMat], x: &NfMat) -> Vec<NfMat> {
    let xi = x.inverse(k).unwrap();
    gens.iter().map(|g| xi.mul(k, g).mul(k, x)).collect()
}

/// A fixed unimodular matrix of size `n`.
pub fn shear(k: &NumberField, n: usize) -> NfMat {
    let mut x = Mat::identity(k, n);
    for i in 0..n {
        for j in i + 1..n {
            x.set(i, j, k.from_int((i + 2 * j) as i64 % 3 - 1));
        }
    }
    if n > 1 {
        x = x.mul(k, &Mat::elementary(k, n, n - 1, 0, &k.one()));
    }
    x
}

/// The G6 analog: a diagonal torus, a scalar-free prime and a unipotent tail.
pub fn g6() -> (NumberField, Vec<NfMat>) {
    let k = q();
    let mut b = Mat::identity(&k, 6);
    for (i, j) in [(0, 1), (0, 2), (2, 3)] {
        b.set(i, j, k.one());
    }
    let gens = vec![diag(&k, &[1, 2, 3, 5, 7, 11]), diag(&k, &[13, 1, 1, 1, 1, 1]), b, e(&k, 6, 3, 4, 1), e(&k, 6, 4, 5, 1)];
    (k, gens)
}
