//! Integer lattices: Hermite and Smith normal forms, integer kernels and LLL.
//!
//! Matrices are lists of integer row vectors; lattices are row spans.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IMat = Vec<Vec<BigInt>>;

pub fn ivec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect()
}

fn axpy(y: &mut [BigInt], a: &BigInt, x: &[BigInt]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// Row-style Hermite normal form `H = U A` with `U` unimodular. Rows of `H`
/// are returned in full (zero rows last), so the trailing rows of `U` span
/// the left kernel of `A`.
pub fn hnf_with_transform(a: &[Vec<BigInt>], ncols: usize) -> (IMat, IMat) {
    let r = a.len();
    let mut h: IMat = a.to_vec();
    let mut u = identity(r);
    let mut prow = 0;
    for c in 0..ncols {
        if prow == r {
            break;
        }
        loop {
            // smallest nonzero entry in column c at or below prow
            let best = (prow..r).filter(|&i| !h[i][c].is_zero()).min_by_key(|&i| h[i][c].abs());
            let Some(b) = best else { break };
            h.swap(prow, b);
            u.swap(prow, b);
            let mut done = true;
            for i in prow + 1..r {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[prow][c]);
                let (hp, up) = (h[prow].clone(), u[prow].clone());
                axpy(&mut h[i], &-&q, &hp);
                axpy(&mut u[i], &-q, &up);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[prow][c].is_zero() {
            continue;
        }
        if h[prow][c].is_negative() {
            h[prow].iter_mut().for_each(|x| *x = -&*x);
            u[prow].iter_mut().for_each(|x| *x = -&*x);
        }
        for i in 0..prow {
            let q = h[i][c].div_floor(&h[prow][c]);
            let (hp, up) = (h[prow].clone(), u[prow].clone());
            axpy(&mut h[i], &-&q, &hp);
            axpy(&mut u[i], &-q, &up);
        }
        prow += 1;
    }
    (h, u)
}

/// Canonical basis of the row lattice (zero rows dropped).
pub fn hnf(a: &[Vec<BigInt>], ncols: usize) -> IMat {
    let (h, _) = hnf_with_transform(a, ncols);
    h.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

pub fn rank(a: &[Vec<BigInt>], ncols: usize) -> usize {
    hnf(a, ncols).len()
}

/// Basis (in Hermite form) of `{e in Z^r : sum_i e_i a_i = 0}` for the rows
/// `a_i` of `a`.
pub fn left_kernel(a: &[Vec<BigInt>], ncols: usize) -> IMat {
    let r = a.len();
    let (h, u) = hnf_with_transform(a, ncols);
    let ker: IMat = h.iter().zip(u).filter(|(hr, _)| hr.iter().all(|x| x.is_zero())).map(|(_, ur)| ur).collect();
    hnf(&ker, r)
}

/// Smith form data: `U A V = diag(d)` with `d_1 | d_2 | ...`, nonzero `d`
/// listed first. `v_inv` is kept so quotient generators can be read off.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub v: IMat,
    pub v_inv: IMat,
}

fn col_axpy(m: &mut IMat, dst: usize, a: &BigInt, src: usize) {
    for row in m.iter_mut() {
        let t = a * &row[src];
        row[dst] += t;
    }
}

fn col_swap(m: &mut IMat, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

pub fn smith(a: &[Vec<BigInt>], ncols: usize) -> Smith {
    let mut m: IMat = a.to_vec();
    let rows = m.len();
    let mut v = identity(ncols);
    let mut v_inv = identity(ncols);
    // column op "col dst += q col src" on m and v pairs with
    // "row src -= q row dst" on v_inv
    let col_op = |m: &mut IMat, v: &mut IMat, v_inv: &mut IMat, dst: usize, q: &BigInt, src: usize| {
        col_axpy(m, dst, q, src);
        col_axpy(v, dst, q, src);
        let rd = v_inv[dst].clone();
        axpy(&mut v_inv[src], &-q, &rd);
    };
    let mut t = 0;
    while t < rows.min(ncols) {
        let pivot = (t..rows).flat_map(|i| (t..ncols).map(move |j| (i, j))).filter(|&(i, j)| !m[i][j].is_zero()).min_by_key(|&(i, j)| m[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        if pj != t {
            col_swap(&mut m, t, pj);
            col_swap(&mut v, t, pj);
            v_inv.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                let rt = m[t].clone();
                axpy(&mut m[i], &-q, &rt);
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..ncols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                col_op(&mut m, &mut v, &mut v_inv, j, &-q, t);
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // divisibility: every remaining entry must be a multiple of the pivot
                let bad = (t + 1..rows).flat_map(|i| (t + 1..ncols).map(move |j| (i, j))).find(|&(i, j)| !m[i][j].is_multiple_of(&m[t][t]));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        let ri = m[i].clone();
                        axpy(&mut m[t], &BigInt::one(), &ri);
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t to the pivot
            let cand =
                (t..rows).map(|i| (i, t)).chain((t..ncols).map(|j| (t, j))).filter(|&(i, j)| !m[i][j].is_zero()).min_by_key(|&(i, j)| m[i][j].abs()).unwrap();
            if cand.0 != t {
                m.swap(t, cand.0);
            } else if cand.1 != t {
                col_swap(&mut m, t, cand.1);
                col_swap(&mut v, t, cand.1);
                v_inv.swap(t, cand.1);
            }
        }
        if m[t][t].is_negative() {
            m[t].iter_mut().for_each(|x| *x = -&*x);
        }
        t += 1;
    }
    let diag = (0..t).map(|i| m[i][i].clone()).collect();
    Smith { diag, v, v_inv }
}

/// Abelian invariants of `Z^ncols / rowspan(a)`: (free rank, nontrivial
/// torsion invariants `d_1 | d_2 | ...`).
pub fn abelian_invariants(a: &[Vec<BigInt>], ncols: usize) -> (usize, Vec<BigInt>) {
    let s = smith(a, ncols);
    let torsion = s.diag.iter().filter(|d| !d.is_one()).cloned().collect();
    (ncols - s.diag.len(), torsion)
}

fn dot_q(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// LLL-reduced basis (delta = 3/4) of the lattice spanned by the linearly
/// independent rows of `basis`, with exact rational Gram-Schmidt.
pub fn lll(basis: &[Vec<BigInt>]) -> IMat {
    let mut b: IMat = basis.to_vec();
    let n = b.len();
    if n == 0 {
        return b;
    }
    let to_q = |v: &[BigInt]| -> Vec<BigRational> { v.iter().map(|x| BigRational::from_integer(x.clone())).collect() };
    let gso = |b: &IMat| -> (Vec<Vec<BigRational>>, Vec<Vec<BigRational>>, Vec<BigRational>) {
        let mut bs: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        let mut norms = Vec::with_capacity(n);
        for i in 0..n {
            let bi = to_q(&b[i]);
            let mut v = bi.clone();
            for j in 0..i {
                mu[i][j] = dot_q(&bi, &bs[j]) / &norms[j];
                for (x, y) in v.iter_mut().zip(&bs[j]) {
                    *x -= &mu[i][j] * y;
                }
            }
            norms.push(dot_q(&v, &v));
            bs.push(v);
        }
        (bs, mu, norms)
    };
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let (_, mut mu, mut norms) = gso(&b);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let q = mu[k][j].round();
            if q.is_zero() {
                continue;
            }
            let qi = q.to_integer();
            let bj = b[j].clone();
            axpy(&mut b[k], &-&qi, &bj);
            for l in 0..=j {
                let t = if l == j { BigRational::one() } else { mu[j][l].clone() };
                mu[k][l] = &mu[k][l] - &q * t;
            }
        }
        let lhs = &norms[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            let g = gso(&b);
            mu = g.1;
            norms = g.2;
            k = (k - 1).max(1);
        }
    }
    b
}
