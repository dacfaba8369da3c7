//! Integer and rational polynomial factorization (Zassenhaus: factor modulo
//! a good prime, Hensel lift, recombine by trial division).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Rationals;
use super::modp::{self, ModPoly};
use super::poly::Poly;
use super::primes::small_primes;

/// Coefficients low to high, no trailing zeros.
pub type ZPoly = Vec<BigInt>;

pub fn trim(mut f: ZPoly) -> ZPoly {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

pub fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(r)
}

/// Exact division in Z[X] by a monic divisor; `None` if it does not divide.
pub fn zdiv_exact_monic(a: &[BigInt], d: &[BigInt]) -> Option<ZPoly> {
    let dd = d.len() - 1;
    debug_assert!(d[dd].is_one());
    let mut r = a.to_vec();
    if r.len() < d.len() {
        return if trim(r).is_empty() { Some(Vec::new()) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in d.iter().enumerate() {
            r[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(trim(q))
    } else {
        None
    }
}

pub fn to_modp(f: &[BigInt], p: u64) -> ModPoly {
    let pb = BigInt::from(p);
    modp::trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn from_modp(f: &[u64]) -> ZPoly {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

fn reduce_mod(f: &[BigInt], m: &BigInt) -> ZPoly {
    trim(f.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric_mod(f: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    trim(
        f.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Lifts `f = g*h (mod p^j)` by one p-adic digit. `g` monic, `s*g + t*h = 1 (mod p)`.
fn hensel_step(f: &[BigInt], g: &mut ZPoly, h: &mut ZPoly, s: &[u64], t: &[u64], p: u64, pj: &BigInt) {
    let gh = zmul(g, h);
    let n = f.len().max(gh.len());
    let e: ZPoly = (0..n)
        .map(|i| {
            let a = f.get(i).cloned().unwrap_or_default();
            let b = gh.get(i).cloned().unwrap_or_default();
            let diff = a - b;
            debug_assert!((&diff % pj).is_zero());
            diff / pj
        })
        .collect();
    let e = to_modp(&e, p);
    if e.is_empty() {
        return;
    }
    let gm = to_modp(g, p);
    let hm = to_modp(h, p);
    let (q, r) = modp::div_rem(&modp::mul(&e, t, p), &gm, p);
    let dh = modp::add(&modp::mul(&e, s, p), &modp::mul(&q, &hm, p), p);
    add_scaled(g, &r, pj);
    add_scaled(h, &dh, pj);
}

fn add_scaled(target: &mut ZPoly, delta: &[u64], scale: &BigInt) {
    if target.len() < delta.len() {
        target.resize(delta.len(), BigInt::zero());
    }
    for (i, &d) in delta.iter().enumerate() {
        target[i] += scale * BigInt::from(d);
    }
    let t = trim(std::mem::take(target));
    *target = t;
}

/// Lifts a factorization `f = lc * prod(factors) (mod p)` into monic
/// pairwise-coprime factors to one valid modulo `p^k`. Returns the lifted
/// monic factors reduced into `[0, p^k)`.
pub fn hensel_lift(f: &[BigInt], factors: &[ModPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let pk = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        // f itself, made monic modulo p^k
        let lc = f.last().unwrap().mod_floor(&pk);
        let inv = mod_inverse(&lc, &pk).expect("leading coefficient must be a unit mod p");
        let g: ZPoly = f.iter().map(|c| (c * &inv).mod_floor(&pk)).collect();
        return vec![trim(g)];
    }
    let mid = factors.len() / 2;
    let left: ModPoly = factors[..mid].iter().fold(vec![1], |acc, g| modp::mul(&acc, g, p));
    let lc_f = f.last().unwrap().mod_floor(&BigInt::from(p)).to_u64().unwrap();
    let right: ModPoly = factors[mid..].iter().fold(vec![lc_f], |acc, g| modp::mul(&acc, g, p));
    let (one, s, t) = modp::ext_gcd(&left, &right, p);
    assert_eq!(one, vec![1], "Hensel lifting requires coprime factors");
    let mut g = from_modp(&left);
    let mut h = from_modp(&right);
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        hensel_step(f, &mut g, &mut h, &s, &t, p, &pj);
        pj *= &pb;
    }
    let g = reduce_mod(&g, &pk);
    let h = reduce_mod(&h, &pk);
    let mut out = hensel_lift(&g, &factors[..mid], p, k);
    out.extend(hensel_lift(&h, &factors[mid..], p, k));
    out
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

fn norm_bound(f: &[BigInt]) -> BigInt {
    // Mignotte: any factor's coefficients are bounded by 2^deg * ||f||_2.
    let sq: BigInt = f.iter().map(|c| c * c).sum();
    let root = sq.sqrt() + 1;
    root << (f.len() - 1)
}

/// Factors a monic squarefree integer polynomial into monic irreducibles.
pub fn factor_monic_squarefree(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    assert!(f[n].is_one(), "expected a monic polynomial");
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // Pick the good prime with the fewest modular factors among a few.
    let mut best: Option<(u64, Vec<ModPoly>)> = None;
    let mut tried = 0;
    for p in small_primes().skip(1) {
        let fp = to_modp(f, p);
        if fp.len() != f.len() || !modp::gcd(&fp, &modp::derivative(&fp, p), p).eq(&vec![1]) {
            continue;
        }
        let fs: Vec<ModPoly> = modp::factor(&fp, p).into_iter().map(|(g, _)| g).collect();
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    let (p, modfs) = best.expect("no good prime found");
    if modfs.len() == 1 {
        return vec![f.to_vec()];
    }
    let bound = norm_bound(f) * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let mut lifted = hensel_lift(f, &modfs, p, k);
    let mut remaining = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for subset in combinations(lifted.len(), size) {
            let cand = subset.iter().fold(vec![BigInt::one()], |acc, &i| reduce_mod(&zmul(&acc, &lifted[i]), &pk));
            let cand = symmetric_mod(&cand, &pk);
            if let Some(q) = zdiv_exact_monic(&remaining, &cand) {
                out.push(cand);
                remaining = q;
                let mut idx = 0;
                lifted.retain(|_| {
                    let keep = !subset.contains(&idx);
                    idx += 1;
                    keep
                });
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    out.push(remaining);
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Factors a nonzero rational polynomial into monic irreducible factors
/// over Q with multiplicities; constant factors are dropped.
pub fn factor_rational(f: &Poly<BigRational>) -> Vec<(Poly<BigRational>, usize)> {
    let k = Rationals;
    let f = f.monic(&k);
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    for (g, e) in squarefree_decomposition_q(&f) {
        let (z, d) = scale_to_integral_monic(&g);
        for h in factor_monic_squarefree(&z) {
            out.push((unscale(&h, &d), e));
        }
    }
    out.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.coeffs().cmp(b.0.coeffs())));
    out
}

pub fn is_irreducible_rational(f: &Poly<BigRational>) -> bool {
    let fs = factor_rational(f);
    fs.len() == 1 && fs[0].1 == 1
}

fn squarefree_decomposition_q(f: &Poly<BigRational>) -> Vec<(Poly<BigRational>, usize)> {
    let k = Rationals;
    let mut out = Vec::new();
    let mut c = f.gcd(&k, &f.derivative(&k));
    let mut w = f.div_rem(&k, &c).0;
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&k, &c);
        let z = w.div_rem(&k, &y).0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z.monic(&k), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&k, &w).0;
    }
    out
}

/// For monic rational `g` of degree n returns `(G, D)` with
/// `G(X) = D^n g(X/D)` monic integral.
pub fn scale_to_integral_monic(g: &Poly<BigRational>) -> (ZPoly, BigInt) {
    let n = g.degree().unwrap();
    let mut d = BigInt::one();
    for c in g.coeffs() {
        d = d.lcm(c.denom());
    }
    // D^(n-i) * c_i must be integral; D = lcm of denominators suffices.
    let mut out = Vec::with_capacity(n + 1);
    for (i, c) in g.coeffs().iter().enumerate() {
        let v = c * BigRational::from_integer(d.pow((n - i) as u32));
        debug_assert!(v.is_integer());
        out.push(v.to_integer());
    }
    (out, d)
}

/// Inverse of [`scale_to_integral_monic`] applied to a factor `H` of `G`:
/// returns the monic `h(X) = D^{-m} H(D X)`.
pub fn unscale(h: &[BigInt], d: &BigInt) -> Poly<BigRational> {
    let m = h.len() - 1;
    let coeffs = h.iter().enumerate().map(|(i, c)| BigRational::new(c * d.pow(i as u32), d.pow(m as u32))).collect();
    Poly::from_coeffs(&Rationals, coeffs)
}

pub fn content(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Discriminant of a monic integer polynomial via the resultant with its
/// derivative, computed as a rational determinant.
pub fn discriminant(f: &[BigInt]) -> BigInt {
    let k = Rationals;
    let fq = Poly::from_coeffs(&k, f.iter().map(|c| BigRational::from_integer(c.clone())).collect());
    let n = fq.degree().unwrap();
    if n == 0 {
        return BigInt::one();
    }
    let df = fq.derivative(&k);
    let res = resultant_q(&fq, &df);
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    let lc = fq.leading().unwrap().clone();
    let d = res / lc * BigRational::from_integer(BigInt::from(sign));
    assert!(d.is_integer());
    d.to_integer()
}

/// Resultant over Q by the Euclidean algorithm.
pub fn resultant_q(a: &Poly<BigRational>, b: &Poly<BigRational>) -> BigRational {
    let k = Rationals;
    if a.is_zero() || b.is_zero() {
        return BigRational::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = BigRational::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        if db == 0 {
            return acc * b.leading().unwrap().pow(da as i32);
        }
        let r = a.rem(&k, &b);
        if r.is_zero() {
            return BigRational::zero();
        }
        let dr = r.degree().unwrap();
        // res(a,b) = (-1)^{da*db} lc(b)^{da-dr} res(b, r)
        let mut f = b.leading().unwrap().pow((da - dr) as i32);
        if (da * db) % 2 == 1 {
            f = -f;
        }
        acc *= f;
        a = b;
        b = r;
    }
}

pub fn is_negative_lead(f: &[BigInt]) -> bool {
    f.last().is_some_and(|c| c.is_negative())
}
