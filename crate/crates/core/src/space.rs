//! Linear algebra on a real vector space with an inner product of signature
//! `(p, q)` and on its complexification.

use nalgebra::{ComplexField, DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{CurvatureError, Result};

/// Field of coordinates: `f64` or [`Complex64`].
///
/// Complex scalars are always paired bilinearly, so `(iu, iv) = -(u, v)`.
pub trait Scalar: ComplexField<RealField = f64> + Copy {
    fn to_complex(self) -> Complex64 {
        Complex64::new(self.real(), self.imaginary())
    }
}

impl Scalar for f64 {}
impl Scalar for Complex64 {}

/// Default relative threshold below which `|(v,v)|` counts as degenerate.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-9;

const MAX_REDRAWS: usize = 100;
const UNIT_SAMPLE_ATTEMPTS: usize = 10_000;
// A draw is kept only if |(v,v)| is at least this fraction of its Euclidean
// norm squared, which bounds the coordinates of the normalised vector.
const CAUSAL_MARGIN: f64 = 1e-2;

/// Vector space of signature `(p, q)` with the orthonormal basis convention
/// `eps[i] = -1` for `i < p` and `+1` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignatureSpace {
    p: usize,
    q: usize,
}

/// Causal character of a unit vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CausalSign {
    Timelike,
    Spacelike,
}

impl CausalSign {
    pub fn value(self) -> f64 {
        match self {
            CausalSign::Timelike => -1.0,
            CausalSign::Spacelike => 1.0,
        }
    }
}

/// Which null-vector recipe to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NullMode {
    /// `t + s` for orthogonal unit timelike `t` and spacelike `s`.
    Real,
    /// `x1 + i x2` for an orthonormal pair of equal causal character.
    Complex,
}

impl SignatureSpace {
    /// Requires `p + q >= 2`.
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q < 2 {
            return Err(CurvatureError::InvalidSignature {
                p,
                q,
                reason: "dimension p+q must be at least 2",
            });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    #[inline]
    pub fn eps(&self, i: usize) -> f64 {
        if i < self.p {
            -1.0
        } else {
            1.0
        }
    }

    pub fn signs(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.eps(i)).collect()
    }

    pub fn is_lorentzian(&self) -> bool {
        self.p == 1
    }

    pub fn is_definite(&self) -> bool {
        self.p == 0 || self.q == 0
    }

    pub fn has_sign(&self, sign: CausalSign) -> bool {
        match sign {
            CausalSign::Timelike => self.p >= 1,
            CausalSign::Spacelike => self.q >= 1,
        }
    }

    /// Gram matrix of the standard basis, `diag(eps)`.
    pub fn metric(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_vec(self.signs()))
    }

    /// Standard basis vector `e_i`.
    pub fn basis_vector<S: Scalar>(&self, i: usize) -> DVector<S> {
        let mut v = DVector::zeros(self.dim());
        v[i] = S::one();
        v
    }

    pub(crate) fn check_dim<S: Scalar>(&self, v: &DVector<S>) -> Result<()> {
        if v.len() != self.dim() {
            return Err(CurvatureError::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }
}

/// `sum_i eps[i] u_i v_i`, bilinear in both arguments.
pub fn inner<S: Scalar>(space: &SignatureSpace, u: &DVector<S>, v: &DVector<S>) -> Result<S> {
    space.check_dim(u)?;
    space.check_dim(v)?;
    Ok(inner_unchecked(space, u, v))
}

#[inline]
pub(crate) fn inner_unchecked<S: Scalar>(space: &SignatureSpace, u: &DVector<S>, v: &DVector<S>) -> S {
    u.iter().zip(v.iter()).enumerate().fold(S::zero(), |acc, (i, (a, b))| {
        acc + (*a * *b) * S::from_real(space.eps(i))
    })
}

/// Promote a real vector to the complexification.
pub fn complexify(v: &DVector<f64>) -> DVector<Complex64> {
    v.map(|x| Complex64::new(x, 0.0))
}

/// `u + i v`.
pub fn complex_combination(u: &DVector<f64>, v: &DVector<f64>) -> DVector<Complex64> {
    u.zip_map(v, Complex64::new)
}

pub(crate) fn gaussian_vector<R: Rng + ?Sized>(m: usize, rng: &mut R) -> DVector<f64> {
    DVector::from_fn(m, |_, _| rng.sample::<f64, _>(StandardNormal))
}

/// Random real unit vector with `(v,v) = sign`.
///
/// Gaussian draws are rejected until they have the requested causal
/// character with a margin, then renormalised.
pub fn sample_unit<R: Rng + ?Sized>(space: &SignatureSpace, sign: CausalSign, rng: &mut R) -> Result<DVector<f64>> {
    if !space.has_sign(sign) {
        return Err(CurvatureError::UnsatisfiableSign {
            sign: sign.value() as i8,
            p: space.p,
            q: space.q,
        });
    }
    let s = sign.value();
    for _ in 0..UNIT_SAMPLE_ATTEMPTS {
        let v = gaussian_vector(space.dim(), rng);
        let n = inner_unchecked(space, &v, &v) * s;
        if n > CAUSAL_MARGIN * v.norm_squared() {
            let u = v / n.sqrt();
            if (inner_unchecked(space, &u, &u) - s).abs() <= 1e-12 {
                return Ok(u);
            }
        }
    }
    Err(CurvatureError::ExhaustedRedraws {
        attempts: UNIT_SAMPLE_ATTEMPTS,
    })
}

/// Unit vector of causal character `sign` orthogonal to the unit vector `x`.
fn sample_unit_orthogonal<R: Rng + ?Sized>(
    space: &SignatureSpace,
    x: &DVector<f64>,
    sign: CausalSign,
    rng: &mut R,
) -> Result<DVector<f64>> {
    let xx = inner_unchecked(space, x, x);
    let s = sign.value();
    for _ in 0..UNIT_SAMPLE_ATTEMPTS {
        let g = gaussian_vector(space.dim(), rng);
        let w = &g - x * (inner_unchecked(space, &g, x) / xx);
        let n = inner_unchecked(space, &w, &w) * s;
        if n > CAUSAL_MARGIN * w.norm_squared() {
            let u = w / n.sqrt();
            // one refinement pass against cancellation
            let u = &u - x * (inner_unchecked(space, &u, x) / xx);
            return Ok(u);
        }
    }
    Err(CurvatureError::ExhaustedRedraws {
        attempts: UNIT_SAMPLE_ATTEMPTS,
    })
}

/// Real null vector `t + s`; requires `p >= 1` and `q >= 1`.
pub fn sample_null_real<R: Rng + ?Sized>(space: &SignatureSpace, rng: &mut R) -> Result<DVector<f64>> {
    if space.p == 0 || space.q == 0 {
        return Err(CurvatureError::NoNullVectors {
            mode: "real",
            p: space.p,
            q: space.q,
        });
    }
    for _ in 0..MAX_REDRAWS {
        let t = sample_unit(space, CausalSign::Timelike, rng)?;
        let s = sample_unit_orthogonal(space, &t, CausalSign::Spacelike, rng)?;
        let v = t + s;
        if inner_unchecked(space, &v, &v).abs() <= 1e-12 {
            return Ok(v);
        }
    }
    Err(CurvatureError::ExhaustedRedraws { attempts: MAX_REDRAWS })
}

/// Complex null vector `x1 + i x2` from an orthonormal pair of equal causal
/// character; requires `p >= 2` or `q >= 2`.
pub fn sample_null_complex<R: Rng + ?Sized>(space: &SignatureSpace, rng: &mut R) -> Result<DVector<Complex64>> {
    let sign = match (space.p >= 2, space.q >= 2) {
        (true, true) => {
            if rng.random::<bool>() {
                CausalSign::Timelike
            } else {
                CausalSign::Spacelike
            }
        }
        (true, false) => CausalSign::Timelike,
        (false, true) => CausalSign::Spacelike,
        (false, false) => {
            return Err(CurvatureError::NoNullVectors {
                mode: "complex",
                p: space.p,
                q: space.q,
            })
        }
    };
    for _ in 0..MAX_REDRAWS {
        let x1 = sample_unit(space, sign, rng)?;
        let x2 = sample_unit_orthogonal(space, &x1, sign, rng)?;
        let v = complex_combination(&x1, &x2);
        if inner_unchecked(space, &v, &v).norm() <= 1e-12 {
            return Ok(v);
        }
    }
    Err(CurvatureError::ExhaustedRedraws { attempts: MAX_REDRAWS })
}

/// Null vector by the requested recipe, returned in the complexification
/// (imaginary parts are zero in [`NullMode::Real`]).
pub fn sample_null<R: Rng + ?Sized>(space: &SignatureSpace, mode: NullMode, rng: &mut R) -> Result<DVector<Complex64>> {
    match mode {
        NullMode::Real => sample_null_real(space, rng).map(|v| complexify(&v)),
        NullMode::Complex => sample_null_complex(space, rng),
    }
}

/// Orthonormal frame of a non-degenerate `k`-dimensional subspace.
///
/// `signs[i] = (frame[i], frame[i])` is exactly `±1`. A zero-dimensional
/// plane (empty frame) is allowed and contributes nothing to sums over
/// the frame.
#[derive(Debug, Clone, PartialEq)]
pub struct KPlane<S: Scalar> {
    frame: Vec<DVector<S>>,
    signs: Vec<f64>,
}

impl<S: Scalar> KPlane<S> {
    pub fn empty() -> Self {
        Self {
            frame: Vec::new(),
            signs: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.frame.len()
    }

    pub fn frame(&self) -> &[DVector<S>] {
        &self.frame
    }

    pub fn signs(&self) -> &[f64] {
        &self.signs
    }

    /// Max deviation of the frame's Gram matrix from `diag(signs)`.
    pub fn gram_residual(&self, space: &SignatureSpace) -> f64 {
        let mut worst = 0.0_f64;
        for (i, a) in self.frame.iter().enumerate() {
            for (j, b) in self.frame.iter().enumerate() {
                let target = if i == j { self.signs[i] } else { 0.0 };
                let g = inner_unchecked(space, a, b) - S::from_real(target);
                worst = worst.max(g.modulus());
            }
        }
        worst
    }

    /// Re-expresses the frame of a real plane in the complexification.
    pub fn to_complex(&self) -> KPlane<Complex64> {
        KPlane {
            frame: self.frame.iter().map(|v| v.map(|x| x.to_complex())).collect(),
            signs: self.signs.clone(),
        }
    }
}

/// Indefinite Gram–Schmidt with [`DEFAULT_DEGENERACY_TOL`].
pub fn gram_schmidt<S: Scalar>(space: &SignatureSpace, vectors: &[DVector<S>]) -> Result<KPlane<S>> {
    gram_schmidt_with_tol(space, vectors, DEFAULT_DEGENERACY_TOL)
}

/// Orthonormalises `vectors` with respect to the indefinite inner product.
///
/// Step `i` fails with [`CurvatureError::DegenerateSubspace`] when the
/// residual `w` after projection has `|(w,w)| < tol * |v_i|^2` (Euclidean
/// norm of the input vector). Complex inputs are normalised by a principal
/// square root, so their frame vectors also satisfy `(e,e) = ±1` exactly.
pub fn gram_schmidt_with_tol<S: Scalar>(space: &SignatureSpace, vectors: &[DVector<S>], tol: f64) -> Result<KPlane<S>> {
    if vectors.len() > space.dim() {
        return Err(CurvatureError::Precondition(format!(
            "cannot orthonormalise {} vectors in dimension {}",
            vectors.len(),
            space.dim()
        )));
    }
    let mut plane = KPlane::<S>::empty();
    for (index, v) in vectors.iter().enumerate() {
        space.check_dim(v)?;
        let mut w = v.clone();
        // two sweeps: classical GS loses orthogonality in indefinite metrics
        for _ in 0..2 {
            for (e, s) in plane.frame.iter().zip(&plane.signs) {
                let coef = inner_unchecked(space, &w, e) * S::from_real(*s);
                w -= e * coef;
            }
        }
        let n = inner_unchecked(space, &w, &w);
        let reference = v.norm_squared();
        if reference == 0.0 || n.modulus() < tol * reference {
            return Err(CurvatureError::DegenerateSubspace {
                index,
                norm: n.modulus(),
            });
        }
        let sign = if n.real() < 0.0 { -1.0 } else { 1.0 };
        let scale = (n * S::from_real(sign)).sqrt();
        plane.frame.push(w.map(|x| x / scale));
        plane.signs.push(sign);
    }
    Ok(plane)
}

/// Random non-degenerate real `k`-plane, `1 <= k <= m-1`.
pub fn sample_kplane<R: Rng + ?Sized>(space: &SignatureSpace, k: usize, rng: &mut R) -> Result<KPlane<f64>> {
    if k == 0 || k >= space.dim() {
        return Err(CurvatureError::Precondition(format!(
            "k-plane dimension must satisfy 1 <= k <= m-1 (k={k}, m={})",
            space.dim()
        )));
    }
    sample_frame(space, k, rng)
}

fn sample_frame<R: Rng + ?Sized>(space: &SignatureSpace, k: usize, rng: &mut R) -> Result<KPlane<f64>> {
    for _ in 0..MAX_REDRAWS {
        let vs: Vec<_> = (0..k).map(|_| gaussian_vector(space.dim(), rng)).collect();
        match gram_schmidt(space, &vs) {
            Ok(plane) => return Ok(plane),
            Err(CurvatureError::DegenerateSubspace { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(CurvatureError::ExhaustedRedraws { attempts: MAX_REDRAWS })
}

/// Random orthonormal basis of the whole space ordered like the standard
/// one: timelike vectors first, so its Gram matrix is `diag(eps)`.
pub fn sample_orthonormal_basis<R: Rng + ?Sized>(space: &SignatureSpace, rng: &mut R) -> Result<Vec<DVector<f64>>> {
    let plane = sample_frame(space, space.dim(), rng)?;
    let (mut timelike, spacelike): (Vec<_>, Vec<_>) =
        plane.frame.into_iter().zip(plane.signs).partition(|(_, s)| *s < 0.0);
    timelike.extend(spacelike);
    Ok(timelike.into_iter().map(|(v, _)| v).collect())
}

/// Hyperbolic boost of the standard Lorentzian basis in the `(e0, e1)` plane.
pub fn boost_basis(space: &SignatureSpace, theta: f64) -> Result<Vec<DVector<f64>>> {
    if !space.is_lorentzian() {
        return Err(CurvatureError::InvalidSignature {
            p: space.p,
            q: space.q,
            reason: "boosts require a Lorentzian signature (p = 1)",
        });
    }
    let (ch, sh) = (theta.cosh(), theta.sinh());
    let mut basis: Vec<DVector<f64>> = (0..space.dim()).map(|i| space.basis_vector(i)).collect();
    basis[0][0] = ch;
    basis[0][1] = sh;
    basis[1][0] = sh;
    basis[1][1] = ch;
    Ok(basis)
}

/// Projects `v` onto the orthogonal complement of `span`, which must be a
/// non-degenerate subspace (`(span_a, span_b)` invertible).
pub fn project_to_complement<S: Scalar>(
    space: &SignatureSpace,
    span: &[DVector<S>],
    v: &DVector<S>,
) -> Result<DVector<S>> {
    space.check_dim(v)?;
    let k = span.len();
    if k == 0 {
        return Ok(v.clone());
    }
    let gram = DMatrix::from_fn(k, k, |a, b| inner_unchecked(space, &span[a], &span[b]));
    let rhs = DVector::from_fn(k, |a, _| inner_unchecked(space, v, &span[a]));
    let coef = gram
        .lu()
        .solve(&rhs)
        .ok_or(CurvatureError::DegenerateSubspace { index: 0, norm: 0.0 })?;
    let mut out = v.clone();
    for (a, s) in span.iter().enumerate() {
        out -= s * coef[a];
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sp(p: usize, q: usize) -> SignatureSpace {
        SignatureSpace::new(p, q).unwrap()
    }

    fn rv(xs: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(xs)
    }

    #[test]
    fn inner_product_examples() {
        let s = sp(1, 2);
        let e0 = rv(&[1.0, 0.0, 0.0]);
        assert_eq!(inner(&s, &e0, &e0).unwrap(), -1.0);
        let n = rv(&[1.0, 1.0, 0.0]);
        assert_eq!(inner(&s, &n, &n).unwrap(), 0.0);

        let s = sp(0, 2);
        let z = complex_combination(&rv(&[1.0, 0.0]), &rv(&[0.0, 1.0]));
        assert_eq!(inner(&s, &z, &z).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn complex_pairing_is_bilinear_not_hermitian() {
        let s = sp(1, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let u = gaussian_vector(4, &mut rng);
            let v = gaussian_vector(4, &mut rng);
            let z = complex_combination(&u, &v);
            let lhs = inner(&s, &z, &z).unwrap();
            let uu = inner(&s, &u, &u).unwrap();
            let vv = inner(&s, &v, &v).unwrap();
            let uv = inner(&s, &u, &v).unwrap();
            let rhs = Complex64::new(uu - vv, 2.0 * uv);
            assert!((lhs - rhs).norm() <= 1e-14 * (1.0 + rhs.norm()));
            let iu = complexify(&u) * Complex64::i();
            let iv = complexify(&v) * Complex64::i();
            let lhs = inner(&s, &iu, &iv).unwrap();
            assert!((lhs + uv).norm() <= 1e-14 * (1.0 + uv.abs()));
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let s = sp(1, 2);
        let err = inner(&s, &rv(&[1.0, 0.0]), &rv(&[1.0, 0.0, 0.0])).unwrap_err();
        assert_eq!(err, CurvatureError::DimensionMismatch { expected: 3, found: 2 });
    }

    #[test]
    fn unit_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = sp(0, 3);
        let v = sample_unit(&s, CausalSign::Spacelike, &mut rng).unwrap();
        assert!((inner(&s, &v, &v).unwrap() - 1.0).abs() <= 1e-12);
        assert!(matches!(
            sample_unit(&s, CausalSign::Timelike, &mut rng),
            Err(CurvatureError::UnsatisfiableSign { .. })
        ));
        let s = sp(1, 2);
        for _ in 0..100 {
            let v = sample_unit(&s, CausalSign::Timelike, &mut rng).unwrap();
            assert!((inner(&s, &v, &v).unwrap() + 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn null_sampling_preconditions() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(matches!(
            sample_null(&sp(0, 3), NullMode::Real, &mut rng),
            Err(CurvatureError::NoNullVectors { mode: "real", .. })
        ));
        assert!(matches!(
            sample_null(&sp(1, 1), NullMode::Complex, &mut rng),
            Err(CurvatureError::NoNullVectors { mode: "complex", .. })
        ));
        assert!(sample_null(&sp(1, 1), NullMode::Real, &mut rng).is_ok());
        assert!(sample_null(&sp(0, 3), NullMode::Complex, &mut rng).is_ok());
    }

    #[test]
    fn null_samples_are_null() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, q) in [(1, 3), (2, 2), (0, 4), (2, 3), (1, 5)] {
            let s = sp(p, q);
            for _ in 0..2_500 {
                let v = sample_null(&s, NullMode::Complex, &mut rng).unwrap();
                assert!(inner(&s, &v, &v).unwrap().norm() <= 1e-12);
                if p >= 1 {
                    let v = sample_null(&s, NullMode::Real, &mut rng).unwrap();
                    assert!(inner(&s, &v, &v).unwrap().norm() <= 1e-12);
                    assert!(v.norm() > 0.0);
                }
            }
        }
    }

    #[test]
    fn gram_schmidt_examples() {
        let s = sp(1, 2);
        let plane = gram_schmidt(&s, &[rv(&[1.0, 0.0, 0.0]), rv(&[1.0, 1.0, 0.0])]).unwrap();
        assert_eq!(plane.signs(), &[-1.0, 1.0]);
        assert!((plane.frame()[0].clone() - rv(&[1.0, 0.0, 0.0])).norm() < 1e-15);
        assert!((plane.frame()[1].clone() - rv(&[0.0, 1.0, 0.0])).norm() < 1e-15);

        let s = sp(1, 1);
        assert!(matches!(
            gram_schmidt(&s, &[rv(&[1.0, 1.0])]),
            Err(CurvatureError::DegenerateSubspace { index: 0, .. })
        ));

        let s = sp(0, 3);
        let plane = gram_schmidt(&s, &[rv(&[0.0, 1.0, 0.0]), rv(&[0.0, 1.0, 2.0])]).unwrap();
        assert_eq!(plane.signs(), &[1.0, 1.0]);
        assert!((plane.frame()[1].clone() - rv(&[0.0, 0.0, 1.0])).norm() < 1e-15);
    }

    #[test]
    fn gram_schmidt_rejects_dependence() {
        let s = sp(0, 3);
        let r = gram_schmidt(&s, &[rv(&[1.0, 2.0, 0.0]), rv(&[2.0, 4.0, 0.0])]);
        assert!(matches!(r, Err(CurvatureError::DegenerateSubspace { index: 1, .. })));
    }

    #[test]
    fn complex_gram_schmidt_normalises_bilinearly() {
        let s = sp(0, 3);
        let v = complex_combination(&rv(&[1.0, 0.5, 0.0]), &rv(&[0.2, 0.0, 1.0]));
        let plane = gram_schmidt(&s, &[v]).unwrap();
        assert!(plane.gram_residual(&s) < 1e-14);
    }

    #[test]
    fn gram_schmidt_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for m in 2..=6 {
            for p in 0..=m {
                let s = sp(p, m - p);
                for _ in 0..1000 {
                    let k = 1 + (rng.random::<u32>() as usize) % m;
                    let vs: Vec<_> = (0..k).map(|_| gaussian_vector(m, &mut rng)).collect();
                    if let Ok(plane) = gram_schmidt(&s, &vs) {
                        assert!(plane.gram_residual(&s) <= 1e-10, "{p},{} k={k}", m - p);
                    }
                }
            }
        }
    }

    #[test]
    fn kplane_preconditions() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let s = sp(0, 4);
        let plane = sample_kplane(&s, 2, &mut rng).unwrap();
        assert_eq!(plane.signs(), &[1.0, 1.0]);
        assert!(sample_kplane(&s, 0, &mut rng).is_err());
        assert!(sample_kplane(&s, 4, &mut rng).is_err());
        let plane = sample_kplane(&sp(1, 2), 1, &mut rng).unwrap();
        assert_eq!(plane.dim(), 1);
    }

    #[test]
    fn orthonormal_basis_has_standard_gram() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = sp(2, 3);
        let basis = sample_orthonormal_basis(&s, &mut rng).unwrap();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let expected = if i == j { s.eps(i) } else { 0.0 };
                assert!((inner(&s, a, b).unwrap() - expected).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn boost_examples() {
        let s = sp(1, 2);
        let b = boost_basis(&s, 0.0).unwrap();
        for (i, v) in b.iter().enumerate() {
            assert_eq!(*v, s.basis_vector::<f64>(i));
        }
        let b = boost_basis(&s, 1.0).unwrap();
        assert!((b[0][0] - 1.5430806348152437).abs() < 1e-15);
        assert!((b[0][1] - 1.1752011936438014).abs() < 1e-15);
        assert_eq!(b[0][2], 0.0);
        for theta in [-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0] {
            let b = boost_basis(&s, theta).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    let expected = if i == j { s.eps(i) } else { 0.0 };
                    assert!((inner(&s, &b[i], &b[j]).unwrap() - expected).abs() <= 1e-10);
                }
            }
        }
        assert!(boost_basis(&sp(0, 3), 0.5).is_err());
    }

    #[test]
    fn complement_projection() {
        let s = sp(1, 3);
        let x1 = rv(&[1.0, 1.0, 0.0, 0.0]);
        let x2 = rv(&[-0.5, 0.5, 0.0, 0.0]);
        let v = rv(&[0.3, -1.2, 2.0, 0.7]);
        let w = project_to_complement(&s, &[x1.clone(), x2.clone()], &v).unwrap();
        assert!(inner(&s, &w, &x1).unwrap().abs() < 1e-14);
        assert!(inner(&s, &w, &x2).unwrap().abs() < 1e-14);
        assert!((w - rv(&[0.0, 0.0, 2.0, 0.7])).norm() < 1e-14);
    }
}
