use curvature_core::operators::{jacobi, szabo};
use curvature_core::tensors::{random_curv4, random_curv5};
use curvature_core::SignatureSpace;
use nalgebra::DVector;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn signature() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((0, 3)), Just((1, 2)), Just((1, 3)), Just((2, 2)), Just((0, 4))]
}

fn rel(a: f64, scale: f64) -> f64 {
    a / (1.0 + scale)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_is_homogeneous_self_adjoint_and_kills_x(
        (p, q) in signature(),
        seed in any::<u64>(),
        xs in prop::collection::vec(-2.0f64..2.0, 4),
        lambda in -3.0f64..3.0,
    ) {
        let s = SignatureSpace::new(p, q).unwrap();
        let m = s.dim();
        let r = random_curv4(&s, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let x = DVector::from_iterator(m, xs.into_iter().take(m));
        let j = jacobi(&r, &x).unwrap();
        prop_assert!(j.self_adjoint_residual() <= 1e-10);
        let jl = jacobi(&r, &(&x * lambda)).unwrap();
        let diff = (jl.entries() - j.entries() * (lambda * lambda)).amax();
        prop_assert!(rel(diff, jl.max_abs()) <= 1e-10);
        prop_assert!(rel(j.apply(&x).amax(), j.max_abs() * x.amax()) <= 1e-10);
    }

    #[test]
    fn szabo_is_cubic_self_adjoint_and_kills_x(
        (p, q) in signature(),
        seed in any::<u64>(),
        xs in prop::collection::vec(-2.0f64..2.0, 4),
        lambda in -3.0f64..3.0,
    ) {
        let s = SignatureSpace::new(p, q).unwrap();
        let m = s.dim();
        let t = random_curv5(&s, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let x = DVector::from_iterator(m, xs.into_iter().take(m));
        let op = szabo(&t, &x).unwrap();
        prop_assert!(op.self_adjoint_residual() <= 1e-10);
        let ol = szabo(&t, &(&x * lambda)).unwrap();
        let diff = (ol.entries() - op.entries() * lambda.powi(3)).amax();
        prop_assert!(rel(diff, ol.max_abs()) <= 1e-10);
        prop_assert!(rel(op.apply(&x).amax(), op.max_abs() * x.amax()) <= 1e-10);
    }

    #[test]
    fn newton_identities_agree_with_faddeev_leverrier(
        (p, q) in signature(),
        seed in any::<u64>(),
        xs in prop::collection::vec(-2.0f64..2.0, 4),
    ) {
        let s = SignatureSpace::new(p, q).unwrap();
        let m = s.dim();
        let r = random_curv4(&s, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let x = DVector::from_iterator(m, xs.into_iter().take(m));
        prop_assert!(jacobi(&r, &x).unwrap().fingerprint().newton_residual() <= 1e-10);
    }
}
