//! Evaluation maps at roots of unity: ideal vanishing and multiplicativity, including
//! characteristics dividing n where roots repeat.

use grassqh::diagram::GrContext;
use grassqh::exactfield::{Field, FiniteField};
use grassqh::presentation::EvContext;
use grassqh::qh::QhElement;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn multiplicative_on_samples<K: Field>(ev: &EvContext<K>, pairs: usize, seed: u64) {
    let ctx = *ev.ctx();
    let f = ev.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for j in ev.admissible_multisets() {
        assert!(ev.verify_ideal_vanishing(&j).unwrap().passed, "{ctx}, J = {j}");
        let mut e = ev.evaluator(&j).unwrap();
        for _ in 0..pairs {
            let a = QhElement::random_homogeneous(&ctx, f, rng.random_range(0..=ctx.dim() as i64), &mut rng);
            let b = QhElement::random_homogeneous(&ctx, f, rng.random_range(0..=ctx.dim() as i64), &mut rng);
            let lhs = e.eval(&a.product(&b).unwrap()).unwrap();
            let rhs = f.mul(&e.eval(&a).unwrap(), &e.eval(&b).unwrap());
            assert_eq!(lhs, rhs, "{ctx}, J = {j}");
        }
    }
}

#[test]
fn rational_evaluations_are_homomorphisms() {
    for (k, n) in [(1u32, 4u32), (2, 4), (2, 5), (3, 6)] {
        let ev = EvContext::rational(&GrContext::new(k, n).unwrap());
        multiplicative_on_samples(&ev, 3, 7 * n as u64 + k as u64);
    }
}

#[test]
fn repeated_roots_when_p_divides_n() {
    // n = 4 = 2^2 in characteristic 2: only the root 1, with multiplicity up to 4
    let ev = EvContext::finite(&GrContext::new(2, 4).unwrap(), &FiniteField::prime(2).unwrap()).unwrap();
    assert_eq!(ev.roots().len(), 1);
    assert_eq!(ev.multiplicity_bound(), 4);
    assert_eq!(ev.admissible_multisets().len(), 1);
    multiplicative_on_samples(&ev, 20, 1);
    // n = 6 = 3·2 in characteristic 3: square roots of unity, each at most thrice
    let ev = EvContext::finite(&GrContext::new(3, 6).unwrap(), &FiniteField::prime(3).unwrap()).unwrap();
    assert_eq!(ev.roots().len(), 2);
    assert_eq!(ev.multiplicity_bound(), 3);
    multiplicative_on_samples(&ev, 20, 2);
}

#[test]
fn xi_satisfies_its_defining_equation() {
    for (k, n, p) in [(2u32, 5u32, 11u64), (2, 6, 5), (3, 7, 2), (4, 8, 3)] {
        let ev = EvContext::finite(&GrContext::new(k, n).unwrap(), &FiniteField::prime(p).unwrap()).unwrap();
        let f = ev.field();
        let sign = if k % 2 == 0 { f.one() } else { f.neg(&f.one()) };
        assert!(f.is_zero(&f.add(&f.pow(ev.xi(), n as u64), &sign)), "Gr({k},{n}) over GF({p})");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn finite_evaluations_are_homomorphisms(
        (k, n) in (3u32..=7).prop_flat_map(|n| (1..n).prop_map(move |k| (k, n))),
        p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]),
        seed in any::<u64>(),
    ) {
        let ctx = GrContext::new(k, n).unwrap();
        if let Ok(ev) = EvContext::finite(&ctx, &FiniteField::prime(p).unwrap()) {
            multiplicative_on_samples(&ev, 2, seed);
        }
    }
}
