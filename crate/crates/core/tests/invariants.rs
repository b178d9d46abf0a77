//! Cross-check implications between the sampled predicates.

use curvature_core::checks::{
    check_einstein, check_kstein, check_null_nilpotent, check_null_trace2, check_osserman, check_vanishing_order,
    detect_constant_curvature, CheckOptions, CurvatureRef,
};
use curvature_core::space::{sample_null_complex, sample_null_real};
use curvature_core::tensors::{constant_curvature, from_bilinear, random_curv4};
use curvature_core::{ComplexVector, Curv4, SignatureSpace, SymBilinear};
use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sp(p: usize, q: usize) -> SignatureSpace {
    SignatureSpace::new(p, q).unwrap()
}

/// Constant curvature, Einstein-but-not-constant, and generic tensors.
fn corpus() -> Vec<Curv4> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut out = Vec::new();
    for (p, q) in [(0, 3), (1, 2), (1, 3), (2, 2), (0, 4)] {
        let s = sp(p, q);
        out.push(constant_curvature(&s, -0.8));
        out.push(random_curv4(&s, &mut rng).unwrap());
        let m = s.dim();
        let phi = SymBilinear::diagonal(&(0..m).map(|i| 1.0 + i as f64).collect::<Vec<_>>());
        out.push(from_bilinear(&s, &phi).unwrap());
    }
    out
}

fn opts(seed: u64) -> CheckOptions {
    CheckOptions::new(60, 1e-8, seed)
}

#[test]
fn osserman_implies_null_nilpotent() {
    for (n, r) in corpus().iter().enumerate() {
        let m = r.space().dim();
        for k in 1..m {
            if check_osserman(r, k, &opts(n as u64)).unwrap().passed() {
                let loose = CheckOptions {
                    tol: 1e-7,
                    ..opts(n as u64 + 100)
                };
                assert!(
                    check_null_nilpotent(CurvatureRef::Curv4(r), &loose).unwrap().passed(),
                    "tensor {n}, k={k}"
                );
            }
        }
    }
}

#[test]
fn osserman_duality() {
    for (n, r) in corpus().iter().enumerate() {
        let m = r.space().dim();
        for k in 1..m {
            let a = check_osserman(r, k, &opts(n as u64)).unwrap();
            if a.passed() {
                assert!(check_osserman(r, m - k, &opts(n as u64 + 7)).unwrap().passed());
            }
        }
    }
}

#[test]
fn kstein_implies_null_traces_and_einstein_equivalence() {
    for (n, r) in corpus().iter().enumerate() {
        let einstein = check_einstein(r, &opts(n as u64)).unwrap();
        let null_trace = einstein.residuals.get("null_trace_max").copied().unwrap_or(0.0);
        assert_eq!(
            einstein.passed(),
            null_trace <= 1e-8,
            "tensor {n}: Einstein iff trace J(n) = 0"
        );
        let k1 = check_kstein(r, 1, &opts(n as u64)).unwrap();
        assert_eq!(k1.passed(), einstein.passed(), "tensor {n}: 1-stein is Einstein");
    }
}

#[test]
fn lorentzian_null_trace2_implies_constant_curvature() {
    for (n, r) in corpus().iter().enumerate().filter(|(_, r)| r.space().is_lorentzian()) {
        if check_null_trace2(r, &opts(n as u64)).unwrap().passed() {
            assert!(detect_constant_curvature(r, &CheckOptions { tol: 1e-7, ..opts(0) })
                .unwrap()
                .passed());
        }
    }
}

#[test]
fn constant_curvature_vanishing_order_at_sampled_nulls() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (p, q) in [(1, 3), (2, 2), (0, 4)] {
        let s = sp(p, q);
        let r = constant_curvature(&s, 1.3);
        for trial in 0..10 {
            let x: ComplexVector = if trial % 2 == 0 || p == 0 {
                sample_null_complex(&s, &mut rng).unwrap()
            } else {
                curvature_core::space::complexify(&sample_null_real(&s, &mut rng).unwrap())
            };
            let y = curvature_core::space::complexify(&DVector::from_fn(s.dim(), |_, _| rng.random_range(-1.0..1.0)));
            for k in 1..=3 {
                let rep = check_vanishing_order(CurvatureRef::Curv4(&r), &x, &y, k, None, 1e-8).unwrap();
                assert!(rep.passed(), "({p},{q}) k={k}: {:?}", rep.residuals);
            }
        }
    }
}
