//! Randomized algebra laws for scalars and multivariate polynomials.

mod common;

use common::{monomials_up_to, rng};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;
use unipoly::{lagrange_fit, Layout, MPoly, RingTag, Scalar};

fn rational_scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| Scalar::rational(n, d).unwrap())
}

fn modular_scalar(m: u64) -> impl Strategy<Value = Scalar> {
    (0i64..m as i64).prop_map(move |v| Scalar::modular(v, m).unwrap())
}

proptest! {
    #[test]
    fn rational_scalars_form_a_commutative_ring(
        a in rational_scalar(),
        b in rational_scalar(),
        c in rational_scalar(),
    ) {
        let ab = a.checked_add(&b).unwrap();
        let ba = b.checked_add(&a).unwrap();
        prop_assert_eq!(&ab, &ba);
        prop_assert_eq!(
            a.checked_mul(&b).unwrap(),
            b.checked_mul(&a).unwrap()
        );
        prop_assert_eq!(
            ab.checked_add(&c).unwrap(),
            a.checked_add(&b.checked_add(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.checked_mul(&b).unwrap().checked_mul(&c).unwrap(),
            a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap()
        );
        let lhs = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
        let rhs = a
            .checked_mul(&b)
            .unwrap()
            .checked_add(&a.checked_mul(&c).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(a.checked_add(&a.clone().neg()).unwrap().is_zero());
        let one = Scalar::one(RingTag::Rational);
        prop_assert_eq!(a.checked_mul(&one).unwrap(), a);
    }

    #[test]
    fn modular_scalars_form_a_commutative_ring(
        a in modular_scalar(7),
        b in modular_scalar(7),
        c in modular_scalar(7),
    ) {
        prop_assert_eq!(
            a.checked_add(&b).unwrap(),
            b.checked_add(&a).unwrap()
        );
        prop_assert_eq!(
            a.checked_mul(&b).unwrap().checked_mul(&c).unwrap(),
            a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap()
        );
        let lhs = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
        let rhs = a
            .checked_mul(&b)
            .unwrap()
            .checked_add(&a.checked_mul(&c).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(a.checked_add(&a.clone().neg()).unwrap().is_zero());
    }

    #[test]
    fn mixed_ring_operations_are_rejected(a in rational_scalar(), b in modular_scalar(5)) {
        prop_assert!(a.checked_add(&b).is_err());
        prop_assert!(a.checked_mul(&b).is_err());
        prop_assert!(Scalar::modular(1, 5).unwrap().checked_add(&Scalar::modular(1, 7).unwrap()).is_err());
    }
}

fn small_poly(seed: u64, arity: usize, max_deg: u32) -> MPoly {
    let layout = Layout::new(vec![("t".to_string(), arity)]).unwrap();
    let mut r = rng(seed);
    common::rand_poly(&mut r, &layout, max_deg, false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomials_form_a_commutative_ring(sa in 0u64..1000, sb in 0u64..1000, sc in 0u64..1000) {
        let a = small_poly(sa, 2, 2);
        let b = small_poly(sb.wrapping_add(7919), 2, 2);
        let c = small_poly(sc.wrapping_add(104729), 2, 2);
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(sa in 0u64..1000, sb in 0u64..1000) {
        let a = small_poly(sa, 2, 3);
        let b = small_poly(sb.wrapping_add(31337), 2, 3);
        let mut r = rng(sa ^ sb);
        let point = vec![common::rand_rat(&mut r), common::rand_rat(&mut r)];
        let ea = a.eval(&point).unwrap();
        let eb = b.eval(&point).unwrap();
        prop_assert_eq!(
            a.add(&b).unwrap().eval(&point).unwrap(),
            ea.checked_add(&eb).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b).unwrap().eval(&point).unwrap(),
            ea.checked_mul(&eb).unwrap()
        );
    }
}

#[test]
fn shift_evaluates_as_translation() {
    // p.shift("s") is the polynomial (t, s) -> p(t + s); evaluating the
    // shifted polynomial at (t0, s0) must match p at t0 + s0, blockwise.
    let mut r = rng(201);
    for arity in [1usize, 2, 3] {
        let layout = Layout::new(vec![("t".to_string(), arity)]).unwrap();
        for _ in 0..20 {
            let p = common::rand_poly(&mut r, &layout, 3, false);
            let shifted = p.shift("s").unwrap();
            let t0: Vec<Scalar> = (0..arity).map(|_| common::rand_rat(&mut r)).collect();
            let s0: Vec<Scalar> = (0..arity).map(|_| common::rand_rat(&mut r)).collect();
            let mut point = t0.clone();
            point.extend(s0.iter().cloned());
            let translated: Vec<Scalar> = t0
                .iter()
                .zip(&s0)
                .map(|(a, b)| a.checked_add(b).unwrap())
                .collect();
            assert_eq!(
                shifted.eval(&point).unwrap(),
                p.eval(&translated).unwrap()
            );

            // Setting the shift block to zero recovers the original values.
            let mut at_zero = t0.clone();
            at_zero.extend((0..arity).map(|_| Scalar::zero(RingTag::Rational)));
            assert_eq!(shifted.eval(&at_zero).unwrap(), p.eval(&t0).unwrap());
        }
    }
}

#[test]
fn variable_permutation_composes_and_inverts() {
    use unipoly::symmetrize::{compose, permutations_lex};
    let mut r = rng(202);
    let layout = Layout::new(vec![("t".to_string(), 3)]).unwrap();
    let perms = permutations_lex(3);
    for _ in 0..10 {
        let p = common::rand_poly(&mut r, &layout, 2, false);
        for sigma in &perms {
            for tau in &perms {
                let two_step = p.permute(tau).unwrap().permute(sigma).unwrap();
                let one_step = p.permute(&compose(sigma, tau)).unwrap();
                assert_eq!(two_step, one_step);
            }
            // Applying sigma then its inverse is the identity.
            let mut inv = vec![0usize; sigma.len()];
            for (i, &s) in sigma.iter().enumerate() {
                inv[s] = i;
            }
            assert_eq!(p.permute(sigma).unwrap().permute(&inv).unwrap(), p);
        }
    }
}

#[test]
fn interpolation_recovers_polynomials_exactly() {
    let mut r = rng(203);
    let layout = Layout::new(vec![("t".to_string(), 1)]).unwrap();
    for d in 0u32..=5 {
        for _ in 0..10 {
            // Build a degree <= d polynomial from random integer coefficients.
            let terms: Vec<(Vec<u32>, Scalar)> = monomials_up_to(1, d)
                .into_iter()
                .map(|e| (e, Scalar::from_int(r.gen_range(-9..=9))))
                .collect();
            let p = MPoly::from_terms(RingTag::Rational, layout.clone(), terms).unwrap();
            let samples: Vec<(i64, Scalar)> = (0..=d as i64)
                .map(|t| {
                    let v = p.eval(&[Scalar::from_int(t)]).unwrap();
                    (t, v)
                })
                .collect();
            let fitted = lagrange_fit(&samples, d as usize).unwrap();
            assert_eq!(fitted, p);
        }
    }
}

#[test]
fn interpolation_uses_surplus_samples_as_checks() {
    // A quadratic sampled at four points fits with bound 3 but must be
    // rejected with bound 1 because the surplus node disagrees.
    let sq = |t: i64| Scalar::from_int(t * t);
    let samples: Vec<(i64, Scalar)> = (0..4).map(|t| (t, sq(t))).collect();
    assert!(lagrange_fit(&samples, 3).is_ok());
    let err = lagrange_fit(&samples, 1).unwrap_err();
    match err {
        unipoly::Error::SurplusSampleMismatch { node, .. } => assert_eq!(node, 2),
        other => panic!("unexpected error {other:?}"),
    }
}

#[test]
fn constant_term_and_degree_queries_agree_with_structure() {
    let layout = Layout::new(vec![("t".to_string(), 2)]).unwrap();
    let t0 = MPoly::var(layout.clone(), RingTag::Rational, 0).unwrap();
    let t1 = MPoly::var(layout.clone(), RingTag::Rational, 1).unwrap();
    let c = MPoly::constant(
        Scalar::rational(3, 2).unwrap(),
        layout.clone(),
    );
    let p = t0.mul(&t1).unwrap().add(&c).unwrap();
    assert_eq!(p.total_degree(), unipoly::Degree::Fin(2));
    assert_eq!(
        p.constant_term(),
        Scalar::rational(3, 2).unwrap()
    );
    let q = p.sub(&p).unwrap();
    assert!(q.is_zero());
    assert_eq!(q.total_degree(), unipoly::Degree::NegInf);
    assert_eq!(
        BigRational::from_integer(0.into()),
        *q.constant_term().as_rational().unwrap()
    );
}
