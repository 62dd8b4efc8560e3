use grassqh::diagram::GrContext;
use grassqh::gelfand_cetlin::{
    find_critical_point, gc_map, leading_spectra, potential_eval, potential_log_grad, quaternionic_frame, random_frame,
    GcPoint,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projection_is_a_rank_k_orthogonal_projector(
        (k, n) in (2u32..=7).prop_flat_map(|n| (1..n).prop_map(move |k| (k, n))),
        seed in any::<u64>(),
    ) {
        let frame = random_frame(&GrContext::new(k, n).unwrap(), seed).unwrap();
        let a = frame.projection();
        prop_assert!((&a * &a - &a).norm() < 1e-12);
        prop_assert!((a.adjoint() - &a).norm() < 1e-12);
        prop_assert!((a.trace().re - k as f64).abs() < 1e-12);
    }

    #[test]
    fn gc_values_satisfy_the_inequalities(
        (k, n) in (2u32..=7).prop_flat_map(|n| (1..n).prop_map(move |k| (k, n))),
        seed in any::<u64>(),
    ) {
        let frame = random_frame(&GrContext::new(k, n).unwrap(), seed).unwrap();
        let z = gc_map(&frame).unwrap();
        prop_assert!(z.max_violation() < 1e-9);
        // the full spectrum of A is k ones and n − k zeros
        let full = leading_spectra(&frame).pop().unwrap();
        for (i, l) in full.iter().enumerate() {
            let expected = if i < k as usize { 1.0 } else { 0.0 };
            prop_assert!((l - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn quaternionic_frames_pair_their_values(half_k in 1u32..=2, extra in 1u32..=2, seed in any::<u64>()) {
        let (k, n) = (2 * half_k, 2 * (half_k + extra));
        let z = gc_map(&quaternionic_frame(&GrContext::new(k, n).unwrap(), seed).unwrap()).unwrap();
        prop_assert!((z.get(1, 2) - z.get(2, 1)).abs() < 1e-9);
    }

    #[test]
    fn potential_scaling_law(z in prop::collection::vec(0.2f64..5.0, 6), t in 0.25f64..4.0) {
        // ratio terms are scale invariant; only 1/z_{1,3} and z_{2,1} move
        let ctx = GrContext::new(2, 5).unwrap();
        let w = potential_eval(&GcPoint::new(&ctx, z.clone()).unwrap());
        let (a, b) = (1.0 / z[2], z[3]);
        let scaled = potential_eval(&GcPoint::new(&ctx, z.iter().map(|v| v * t).collect()).unwrap());
        let expected = w - a - b + a / t + t * b;
        prop_assert!((scaled - expected).abs() <= 1e-12 * expected.abs().max(1.0));
    }
}

#[test]
fn critical_point_log_gradient_vanishes() {
    for (k, n) in [(1u32, 3u32), (2, 4), (2, 6), (3, 7)] {
        let report = find_critical_point(&GrContext::new(k, n).unwrap(), 1e-10).unwrap();
        let point = report.point.unwrap();
        let g = potential_log_grad(&point).iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(g < 1e-9, "Gr({k},{n}): log gradient {g:e}");
        assert!(report.hessian_positive_definite);
    }
}

#[test]
fn projective_space_critical_value() {
    // for Gr(1,n) the potential is z_1 + z_2/z_1 + … + 1/z_{n−1}, minimized at z_j = 1 with W = n
    for n in 2u32..=6 {
        let report = find_critical_point(&GrContext::new(1, n).unwrap(), 1e-12).unwrap();
        assert!((report.w - n as f64).abs() < 1e-10, "n = {n}: W = {}", report.w);
    }
}

#[test]
fn nonpositive_points_are_rejected() {
    let ctx = GrContext::new(2, 4).unwrap();
    assert!(GcPoint::new(&ctx, vec![1.0, 0.0, 1.0, 1.0]).is_err());
}

#[test]
fn interlacing_on_seeded_frames() {
    for (k, n) in [(2u32, 4u32), (2, 5), (3, 6)] {
        let ctx = GrContext::new(k, n).unwrap();
        for seed in 0..100 {
            let frame = random_frame(&ctx, seed).unwrap();
            let spectra = leading_spectra(&frame);
            for r in 1..spectra.len() {
                let (small, big) = (&spectra[r - 1], &spectra[r]);
                for i in 0..small.len() {
                    assert!(big[i] >= small[i] - 1e-9 && small[i] >= big[i + 1] - 1e-9, "Gr({k},{n}) seed {seed} r {r}");
                }
            }
            assert!(gc_map(&frame).unwrap().max_violation() < 1e-9);
        }
    }
}
