use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use kahler_contact::contact::{contact_defect, hopf_data, induce_contact_structure, pairing_check};
use kahler_contact::curvature::{curvature, curvature_selftest, random_vector};
use kahler_contact::model_frame::{make_model_frame, rotate_real_structure, AmbientSpec, QuadricSign};
use kahler_contact::report::{emit_json, parse_json_lines, CheckReport, Params};
use kahler_contact::singular::{adapted_decomposition, classify_normal, jn_eigen_defect, SingularType};
use kahler_contact::tube::{
    focal_distances, jacobi_ode_oracle, jacobi_solution, profile_shape_operator, tube_profile_theorem1,
    tube_profile_theorem2, weingarten_residual, DualCase, PrincipalLabel, COMPACT_FOCAL_RADIUS,
};
use kahler_contact::Vector;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn vec_of(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-1.0..1.0f64, dim).prop_map(Vector::from_vec)
}

fn unit_of(dim: usize) -> impl Strategy<Value = Vector> {
    vec_of(dim)
        .prop_filter("nonzero", |v| v.norm() > 1e-3)
        .prop_map(|v| v.normalize())
}

fn sign() -> impl Strategy<Value = QuadricSign> {
    prop_oneof![Just(QuadricSign::Compact), Just(QuadricSign::Noncompact)]
}

/// `R(s/2)` applied to `v`, with `R(θ) = cos θ + sin θ J`.
fn rotate(spec: &AmbientSpec, v: &Vector, theta: f64) -> Vector {
    v * theta.cos() + spec.frame().apply_j(v) * theta.sin()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn model_frame_identities(n in 2usize..=8, s in -3.2..3.2f64) {
        let frame = make_model_frame(n, true).unwrap();
        prop_assert!(frame.residuals().max() < 1e-14);
        let rotated = frame.with_real_structure(rotate_real_structure(&frame, s).unwrap()).unwrap();
        prop_assert!(rotated.residuals().max() < 1e-14);
    }

    #[test]
    fn quadric_curvature_is_independent_of_circle_point(
        n in 3usize..=5,
        eps in sign(),
        s in -3.2..3.2f64,
        seed in any::<u64>(),
    ) {
        let spec = AmbientSpec::quadric(n, eps).unwrap();
        let a_s = rotate_real_structure(spec.frame(), s).unwrap();
        let other = spec.with_real_structure(a_s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = spec.dim();
        for _ in 0..8 {
            let [x, y, z] = std::array::from_fn(|_| random_vector(&mut rng, dim));
            let d = (curvature(&spec, &x, &y, &z) - curvature(&other, &x, &y, &z)).amax();
            prop_assert!(d < 1e-12, "difference {d}");
        }
    }

    #[test]
    fn curvature_identities_hold_for_any_seed(n in 2usize..=5, c in -5.0..5.0f64, eps in sign(), seed in any::<u64>()) {
        for spec in [AmbientSpec::csf(n, c).unwrap(), AmbientSpec::quadric(n, eps).unwrap()] {
            let rep = curvature_selftest(&spec, 20, seed).unwrap();
            prop_assert!(rep.max_residual() < 1e-12, "{rep:?}");
        }
    }

    #[test]
    fn induced_structure_is_almost_contact(normal in (2usize..=5).prop_flat_map(|n| unit_of(2 * n))) {
        let frame = make_model_frame(normal.len() / 2, false).unwrap();
        let cs = induce_contact_structure(&frame, &normal).unwrap();
        prop_assert!(cs.residuals().max() < 1e-12);
        let flipped = cs.flipped();
        prop_assert!((flipped.xi() + cs.xi()).amax() < 1e-15);
        prop_assert!((flipped.phi() - cs.phi()).amax() < 1e-15);
    }

    #[test]
    fn compact_profiles_are_contact(n in 3usize..=6, frac in 0.01..0.99f64) {
        let p = tube_profile_theorem1(n, frac * COMPACT_FOCAL_RADIUS).unwrap();
        prop_assert!((p.alpha * p.rho + 1.0).abs() < 1e-12);
        prop_assert!((p.mu - 2.0 * p.rho).abs() < 1e-12 * p.mu.abs().max(1.0));
        prop_assert_eq!(p.principal_curvature(PrincipalLabel::Lambda), 0.0);
        let (cs, sd) = profile_shape_operator(&p).unwrap();
        let scale = p.alpha.abs().max(p.mu.abs());
        prop_assert!(contact_defect(&cs, &sd) < 1e-13 * scale);
        prop_assert!(pairing_check(&cs, &sd).unwrap() < 1e-13 * scale);
        prop_assert!(hopf_data(&cs, &sd).defect < 1e-13 * scale);
        prop_assert!(weingarten_residual(&p) < 1e-9 * scale);
    }

    #[test]
    fn dual_profiles_are_contact(n in 3usize..=6, case in 1u8..=3, r in 0.05..4.0f64) {
        let p = tube_profile_theorem2(DualCase::try_from(case).unwrap(), n, r).unwrap();
        prop_assert!((p.alpha * p.rho - 1.0).abs() < 1e-12);
        let (cs, sd) = profile_shape_operator(&p).unwrap();
        let scale = p.alpha.abs().max(p.mu.abs());
        prop_assert!(contact_defect(&cs, &sd) < 1e-13 * scale);
        prop_assert!(pairing_check(&cs, &sd).unwrap() < 1e-13 * scale);
        prop_assert!(weingarten_residual(&p) < 1e-9 * scale);
        let class = classify_normal(p.ambient.frame(), cs.normal(), 1e-8).unwrap();
        prop_assert_eq!(class, SingularType::APrincipal);
    }

    #[test]
    fn decomposition_recovers_angle_on_any_circle_point(
        n in 2usize..=5,
        eps in sign(),
        t in 0.0..FRAC_PI_4,
        s in -3.2..3.2f64,
    ) {
        let spec = AmbientSpec::quadric(n, eps).unwrap();
        let frame = spec.frame();
        let x = rotate(&spec, &frame.e(0), s / 2.0);
        let y = rotate(&spec, &frame.e(1), s / 2.0);
        let normal = &x * t.cos() + frame.apply_j(&y) * t.sin();
        let d = adapted_decomposition(frame, &normal).unwrap();
        prop_assert!((d.t - t).abs() < 1e-12, "t {} vs {}", d.t, t);
        prop_assert!((d.reconstruct(frame) - &normal).amax() < 1e-12);
        let defect = jn_eigen_defect(&spec, &normal).unwrap();
        prop_assert!((defect - (4.0 * t).sin().abs()).abs() < 1e-10);
    }

    #[test]
    fn jacobi_closed_form_matches_rk4(kappa in -4.0..4.0f64, f0 in -1.0..1.0f64, f0p in -1.0..1.0f64, r in 0.01..3.0f64) {
        let (f, fp) = jacobi_solution(kappa, f0, f0p, r);
        let (g, gp) = jacobi_ode_oracle(kappa, f0, f0p, r, 1e-3).unwrap();
        prop_assert!((f - g).abs() < 1e-9 && (fp - gp).abs() < 1e-9);
    }

    #[test]
    fn positive_curvature_focuses_at_quarter_period(kappa in 0.5..8.0f64) {
        let zeros = focal_distances(&[(kappa, 0.0)], 10.0).unwrap();
        let expected = FRAC_PI_2 / kappa.sqrt();
        prop_assert!((zeros[0] - expected).abs() < 1e-10);
        prop_assert!(focal_distances(&[(-kappa, 0.0)], 10.0).unwrap().is_empty());
    }

    #[test]
    fn reports_round_trip(
        name in "[a-z_.]{1,20}",
        n in 0usize..100,
        r in -1e6..1e6f64,
        residuals in prop::collection::btree_map("[a-z]{1,8}", -1e3..1e3f64, 0..5),
        tol in 1e-15..1.0f64,
    ) {
        let mut params = Params::new();
        params.insert("n".into(), n.into());
        params.insert("r".into(), r.into());
        let rep = CheckReport::new(name, params, residuals, tol, 3);
        let back = parse_json_lines(&emit_json(std::slice::from_ref(&rep))).unwrap();
        prop_assert_eq!(back, vec![rep]);
    }
}
