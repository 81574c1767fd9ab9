#[path = "common/fixtures.rs"]
mod fixtures;

use cliffrep::random::{random_cmatrix, random_multivector};
use cliffrep::universal::{
    build_j, build_k, build_p, diagonal_carrier, verify_matrix_equality, verify_similarity, SimilarityVerifier,
};
use cliffrep::{AlgebraSignature, CliffordMatrix, Multivector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sig(n: usize) -> AlgebraSignature {
    AlgebraSignature::standard(n).unwrap()
}

#[test]
fn closed_forms_match_recursion() {
    let (p1, p1_inv) = fixtures::p1();
    assert_eq!(build_p(1).unwrap(), (p1.clone(), p1_inv.clone()));
    assert_eq!(p1.try_mul(&p1_inv).unwrap(), CliffordMatrix::identity(&sig(1), 2));

    let p2 = fixtures::p2();
    let (b2, b2_inv) = build_p(2).unwrap();
    assert_eq!(b2, p2);
    assert_eq!(b2_inv, p2);
    assert_eq!(p2.try_mul(&p2).unwrap(), CliffordMatrix::identity(&sig(2), 2));

    let (p3, p3_inv) = fixtures::p3();
    let (b3, b3_inv) = build_p(3).unwrap();
    assert!(b3.distance(&p3) <= 1e-12);
    assert!(b3_inv.distance(&p3_inv) <= 1e-12);

    let p4 = fixtures::p4();
    let (b4, b4_inv) = build_p(4).unwrap();
    assert!(b4.distance(&p4) <= 1e-12);
    assert!(b4_inv.distance(&p4) <= 1e-12);
}

#[test]
fn inverse_pairs_up_to_ten() {
    for n in 1..=10 {
        let v = SimilarityVerifier::new(n).unwrap();
        let (p, p_inv) = (v.p().unwrap(), v.p_inv().unwrap());
        assert_eq!((p.clone(), p_inv.clone()), build_p(n).unwrap());
        let id = CliffordMatrix::identity(&sig(n), p.rows());
        assert!(p.try_mul(&p_inv).unwrap().distance(&id) < 1e-12, "n = {n}");
        if n <= 8 {
            assert!(p_inv.try_mul(&p).unwrap().distance(&id) < 1e-12, "n = {n}");
        }
    }
}

#[test]
fn involution_is_tested_not_assumed() {
    // The closed forms state P = P^{-1} for two and four generators; beyond
    // that the recursion decides.
    for n in [2, 4, 6, 8] {
        let (p, p_inv) = build_p(n).unwrap();
        assert_eq!(p, p_inv, "n = {n}");
    }
    let (p, p_inv) = build_p(3).unwrap();
    assert_ne!(p, p_inv);
}

#[test]
fn eq19_generator_images() {
    let s = sig(2);
    assert!(verify_similarity(&Multivector::generator(&s, 1)).unwrap() <= 1e-12);
    assert_eq!(verify_similarity(&Multivector::one(&s)).unwrap(), 0.0);
}

#[test]
fn similarity_batches() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 1..=7 {
        let v = SimilarityVerifier::new(n).unwrap();
        for _ in 0..10 {
            let a = random_multivector(&sig(n), &mut rng);
            assert!(v.residual(&a).unwrap() <= 1e-9 * a.max_abs().max(1.0), "n = {n}");
        }
    }
    let a = random_multivector(&sig(5), &mut rng);
    assert!(verify_similarity(&a).unwrap() <= 1e-9);
}

#[test]
fn wrong_element_is_caught() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let s = sig(4);
    let v = SimilarityVerifier::new(4).unwrap();
    let a = random_multivector(&s, &mut rng);
    let b = random_multivector(&s, &mut rng);
    let lhs = v.conjugate(&a).unwrap();
    let other = cliffrep::universal::embed_rep(&cliffrep::representation::phi(&b).unwrap(), &s);
    assert!(lhs.distance(&other) > 1e-3);
}

#[test]
fn carrier_extents_follow_p() {
    for n in 1..=8 {
        let a = Multivector::one(&sig(n));
        assert_eq!(diagonal_carrier(&a).unwrap().rows(), build_p(n).unwrap().0.rows());
    }
}

#[test]
fn j_and_k_small_cases() {
    let (j2, j2_inv) = build_j(2).unwrap();
    assert_eq!(j2.try_mul(&j2_inv).unwrap(), CliffordMatrix::identity(&sig(1), 4));
    let (k2, k2_inv) = build_k(2).unwrap();
    assert_eq!(k2.try_mul(&k2_inv).unwrap(), CliffordMatrix::identity(&sig(2), 4));
    assert_eq!(build_j(1).unwrap().0, fixtures::p1().0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn matrix_equalities_hold(seed in any::<u64>(), n in 1usize..=2, m in 1usize..=4, p in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_cmatrix(&sig(n), m, p, &mut rng);
        prop_assert!(verify_matrix_equality(&a).unwrap() <= 1e-10);
    }

    #[test]
    fn universality(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = SimilarityVerifier::new(n).unwrap();
        for _ in 0..4 {
            let a = random_multivector(&sig(n), &mut rng);
            prop_assert!(v.residual(&a).unwrap() <= 1e-9);
        }
    }
}
