//! Rational primes: enumeration, primality and integer factorization.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn is_prime_u64(n: u64) -> bool {
    num_prime::nt_funcs::is_prime64(n)
}

/// All primes in increasing order, starting at 2.
pub fn small_primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime_u64(n))
}

pub fn next_prime_at_least(n: u64) -> u64 {
    (n.max(2)..).find(|&m| is_prime_u64(m)).unwrap()
}

/// Prime factorization of `|n|`; `n` must be nonzero.
pub fn factorize(n: &BigInt) -> BTreeMap<BigInt, usize> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mag = n.abs();
    if mag.is_one() {
        return BTreeMap::new();
    }
    if let Some(small) = mag.to_u64() {
        return num_prime::nt_funcs::factorize64(small).into_iter().map(|(p, e)| (BigInt::from(p), e)).collect();
    }
    let u: BigUint = mag.to_biguint().unwrap();
    num_prime::nt_funcs::factorize(u).into_iter().map(|(p, e)| (BigInt::from_biguint(Sign::Plus, p), e)).collect()
}

/// Exponent of `p` in `n` (`n` nonzero).
pub fn valuation(n: &BigInt, p: &BigInt) -> u64 {
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// Exponent of `p` in a nonzero rational.
pub fn rational_valuation(q: &num_rational::BigRational, p: &BigInt) -> i64 {
    valuation(q.numer(), p) as i64 - valuation(q.denom(), p) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization() {
        let f = factorize(&BigInt::from(-360));
        let expect: BTreeMap<BigInt, usize> = [(2, 3), (3, 2), (5, 1)].iter().map(|&(p, e)| (BigInt::from(p), e)).collect();
        assert_eq!(f, expect);
        let big = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64) * BigInt::from(1_000_000_009u64);
        assert_eq!(factorize(&big).len(), 3);
    }

    #[test]
    fn primes_start() {
        assert_eq!(small_primes().take(5).collect::<Vec<_>>(), vec![2, 3, 5, 7, 11]);
        assert_eq!(next_prime_at_least(24), 29);
    }
}
