//! Polynomials over the prime field Z/p with word-size p, and their
//! factorization into monic irreducibles.

/// Coefficients low to high, each in `0..p`, no trailing zeros.
pub type ModPoly = Vec<u64>;

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invmod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    // p prime
    Some(powmod(a, p - 2, p))
}

pub fn trim(mut f: ModPoly) -> ModPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn degree(f: &[u64]) -> Option<usize> {
    f.len().checked_sub(1)
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    let r = (0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p).collect();
    trim(r)
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    let r = (0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect();
    trim(r)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(r)
}

pub fn scale(a: &[u64], s: u64, p: u64) -> ModPoly {
    trim(a.iter().map(|&x| mulmod(x, s, p)).collect())
}

pub fn div_rem(a: &[u64], d: &[u64], p: u64) -> (ModPoly, ModPoly) {
    let dd = degree(d).expect("division by zero polynomial");
    let li = invmod(d[dd], p).expect("leading coefficient not invertible");
    let mut r = a.to_vec();
    if r.len() <= dd {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![0u64; r.len() - dd];
    for i in (0..q.len()).rev() {
        let c = mulmod(r[i + dd], li, p);
        if c == 0 {
            continue;
        }
        for (j, &dj) in d.iter().enumerate() {
            r[i + j] = (r[i + j] + p - mulmod(c, dj, p)) % p;
        }
        q[i] = c;
    }
    r.truncate(dd);
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], d: &[u64], p: u64) -> ModPoly {
    div_rem(a, d, p).1
}

pub fn monic(a: &[u64], p: u64) -> ModPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, invmod(l, p).unwrap(), p),
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(g, s, t)` with `s*a + t*b = g` monic.
pub fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (ModPoly, ModPoly, ModPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    let li = invmod(*r0.last().expect("gcd of zero polynomials"), p).unwrap();
    (scale(&r0, li, p), scale(&s0, li, p), scale(&t0, li, p))
}

pub fn derivative(a: &[u64], p: u64) -> ModPoly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect())
}

/// `base^e mod m` in F_p[X].
pub fn pow_mod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> ModPoly {
    let mut r = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = rem(&mul(&r, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    r
}

pub fn eval(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, p) + c) % p)
}

pub fn from_signed(c: &[i64], p: u64) -> ModPoly {
    trim(c.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, e)` with
/// `f = prod g^e`, each `g` squarefree and pairwise coprime.
pub fn squarefree_decomposition(f: &[u64], p: u64) -> Vec<(ModPoly, usize)> {
    let f = monic(f, p);
    if degree(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let d = derivative(&f, p);
    if d.is_empty() {
        // f = g(X^p); over F_p the p-th root just divides exponents.
        let g: ModPoly = f.iter().step_by(p as usize).copied().collect();
        for (h, e) in squarefree_decomposition(&g, p) {
            out.push((h, e * p as usize));
        }
        return out;
    }
    let mut c = gcd(&f, &d, p);
    let mut w = div_rem(&f, &c, p).0;
    let mut i = 1;
    while degree(&w).unwrap_or(0) > 0 {
        let y = gcd(&w, &c, p);
        let z = div_rem(&w, &y, p).0;
        if degree(&z).unwrap_or(0) > 0 {
            out.push((monic(&z, p), i));
        }
        i += 1;
        w = y;
        c = div_rem(&c, &w, p).0;
    }
    if degree(&c).unwrap_or(0) > 0 {
        // remaining factor is a p-th power
        let g: ModPoly = c.iter().step_by(p as usize).copied().collect();
        for (h, e) in squarefree_decomposition(&g, p) {
            out.push((h, e * p as usize));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(f: &[u64], p: u64) -> Vec<(ModPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 0;
    while degree(&f).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = pow_mod(&h, p as u128, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if degree(&g).unwrap_or(0) > 0 {
            out.push((g.clone(), d));
            f = div_rem(&f, &g, p).0;
            h = rem(&h, &f, p);
        }
    }
    if degree(&f).unwrap_or(0) > 0 {
        let df = degree(&f).unwrap();
        out.push((f, df));
    }
    out
}

/// Deterministic sequence of non-constant trial polynomials of degree < n.
fn trial_polys(n: usize, p: u64) -> impl Iterator<Item = ModPoly> {
    let total = (p as u128).saturating_pow(n as u32);
    (p as u128..total).map(move |mut idx| {
        let mut c = Vec::with_capacity(n);
        for _ in 0..n {
            c.push((idx % p as u128) as u64);
            idx /= p as u128;
        }
        trim(c)
    })
}

/// Equal-degree splitting (Cantor-Zassenhaus, odd p).
fn equal_degree(f: &[u64], d: usize, p: u64, out: &mut Vec<ModPoly>) {
    let n = degree(f).unwrap();
    if n == d {
        out.push(f.to_vec());
        return;
    }
    let e = ((p as u128).pow(d as u32) - 1) / 2;
    for a in trial_polys(n, p) {
        let b = sub(&pow_mod(&a, e, f, p), &[1], p);
        let g = gcd(f, &b, p);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = div_rem(f, &g, p).0;
            equal_degree(&g, d, p, out);
            equal_degree(&monic(&h, p), d, p, out);
            return;
        }
    }
    unreachable!("equal-degree splitting exhausted trial polynomials");
}

/// Monic irreducible factors with multiplicities, sorted by degree then
/// coefficients (low to high). Requires an odd prime `p`.
pub fn factor(f: &[u64], p: u64) -> Vec<(ModPoly, usize)> {
    assert!(p % 2 == 1, "factorization needs an odd prime");
    let mut out = Vec::new();
    for (g, e) in squarefree_decomposition(f, p) {
        for (h, d) in distinct_degree(&g, p) {
            let mut parts = Vec::new();
            equal_degree(&h, d, p, &mut parts);
            out.extend(parts.into_iter().map(|q| (q, e)));
        }
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    out
}

pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    match degree(&f) {
        None | Some(0) => false,
        Some(_) => {
            let fs = factor(&f, p);
            fs.len() == 1 && fs[0].1 == 1
        }
    }
}
