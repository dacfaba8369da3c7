mod common;

use common::oracles::{prime_exponent_rank, sifting_hirsch};
use common::{corpus, diag, e, q, NfMat};
use finrank::abelian::{rank_a, AbelianOptions};
use finrank::arith::{Field, NumberField};
use finrank::linalg::Mat;
use finrank::unipotent::rank_u;
use proptest::prelude::*;

fn is_unitriangular(k: &NumberField, gens: &[NfMat]) -> bool {
    gens.iter().all(|g| (0..g.n()).all(|i| g.get(i, i) == &k.one() && (0..i).all(|j| k.is_zero(g.get(i, j)))))
}

#[test]
fn sifting_oracle_sanity() {
    let k = q();
    assert_eq!(sifting_hirsch(&k, &[e(&k, 3, 0, 1, 1), e(&k, 3, 1, 2, 1)]), 3);
    assert_eq!(sifting_hirsch(&k, &[e(&k, 3, 0, 1, 1), e(&k, 3, 0, 1, 5)]), 1);
    assert_eq!(sifting_hirsch(&k, &[e(&k, 4, 0, 1, 1), e(&k, 4, 1, 2, 1), e(&k, 4, 2, 3, 1)]), 6);
}

#[test]
fn prime_exponent_oracle_sanity() {
    let k = q();
    assert_eq!(prime_exponent_rank(&[diag(&k, &[6]), diag(&k, &[4]), diag(&k, &[9])]), 2);
    assert_eq!(prime_exponent_rank(&[diag(&k, &[-1, 1])]), 0);
}

#[test]
fn unipotent_corpus_matches_sifting() {
    let mut seen = 0;
    for g in corpus().into_iter().filter(|g| g.nm() <= 4 && g.is_unipotent()) {
        assert!(is_unitriangular(&g.field, &g.gens), "{}", g.name);
        let r = rank_u(&g.field, g.dim(), &g.gens).unwrap();
        assert_eq!(r, sifting_hirsch(&g.field, &g.gens), "{}", g.name);
        seen += 1;
    }
    assert!(seen >= 5);
}

#[test]
fn diagonal_corpus_matches_prime_exponents() {
    let mut seen = 0;
    for g in corpus().into_iter().filter(|g| g.is_diagonal() && g.field.is_rational_field()) {
        let (r, _) = rank_a(&g.field, &g.gens, &AbelianOptions::default()).unwrap();
        assert_eq!(r, prime_exponent_rank(&g.gens), "{}", g.name);
        seen += 1;
    }
    assert!(seen >= 5);
}

fn unitriangular(k: &NumberField, n: usize, entries: &[i64]) -> NfMat {
    let mut g = Mat::identity(k, n);
    let mut it = entries.iter();
    for i in 0..n {
        for j in i + 1..n {
            g.set(i, j, k.from_int(*it.next().unwrap()));
        }
    }
    g
}

const SMALL: [i64; 10] = [-12, -6, -2, -1, 1, 2, 3, 5, 10, 18];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rank_u_matches_sifting(n in 2usize..=4, raw in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 6), 1..=3)) {
        let k = q();
        let gens: Vec<_> = raw.iter().map(|r| unitriangular(&k, n, r)).collect();
        prop_assert_eq!(rank_u(&k, n, &gens).unwrap(), sifting_hirsch(&k, &gens));
    }

    #[test]
    fn rank_a_matches_prime_exponents(n in 1usize..=3, raw in proptest::collection::vec(proptest::collection::vec(0usize..10, 3), 1..=3)) {
        let k = q();
        let gens: Vec<_> = raw.iter().map(|r| diag(&k, &r[..n].iter().map(|&i| SMALL[i]).collect::<Vec<_>>())).collect();
        let (r, _) = rank_a(&k, &gens, &AbelianOptions::default()).unwrap();
        prop_assert_eq!(r, prime_exponent_rank(&gens));
    }

    #[test]
    fn rank_a_ignores_redundant_generators(raw in proptest::collection::vec(proptest::collection::vec(0usize..10, 2), 1..=3), a in -2i64..=2, b in -2i64..=2) {
        let k = q();
        let mut gens: Vec<_> = raw.iter().map(|r| diag(&k, &[SMALL[r[0]], SMALL[r[1]]])).collect();
        let opts = AbelianOptions::default();
        let before = rank_a(&k, &gens, &opts).unwrap().0;
        let extra = gens[0].pow(&k, a).unwrap().mul(&k, &gens[gens.len() - 1].pow(&k, b).unwrap());
        gens.push(extra);
        prop_assert_eq!(rank_a(&k, &gens, &opts).unwrap().0, before);
    }

    #[test]
    fn rank_a_is_conjugation_invariant(raw in proptest::collection::vec(proptest::collection::vec(0usize..10, 2), 1..=3), s in -3i64..=3) {
        let k = q();
        let gens: Vec<_> = raw.iter().map(|r| diag(&k, &[SMALL[r[0]], SMALL[r[1]]])).collect();
        let x = Mat::from_i64(&k, &[&[1, s], &[1, s + 1]]);
        let conj = common::conjugate(&k, &gens, &x);
        let opts = AbelianOptions::default();
        prop_assert_eq!(rank_a(&k, &conj, &opts).unwrap().0, rank_a(&k, &gens, &opts).unwrap().0);
    }
}
