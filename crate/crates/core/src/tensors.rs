//! Dense algebraic curvature tensors (`Curv4`) and covariant-derivative
//! algebraic curvature tensors (`Curv5`).
//!
//! Components are stored row-major: `comp[((i*m + j)*m + k)*m + l] =
//! R(e_i, e_j, e_k, e_l)`, and for `Curv5` the differentiation slot is the
//! last (fastest) index: `∇R(e_a, e_b, e_c, e_d; e_e)`.
//!
//! Construction never enforces the curvature symmetries; [`Curv4::validate`]
//! and [`Curv5::validate`] measure them.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{CurvatureError, Result};
use crate::space::{Scalar, SignatureSpace};

pub const ANTISYMMETRY: &str = "antisymmetry";
pub const PAIR_SYMMETRY: &str = "pair_symmetry";
pub const FIRST_BIANCHI: &str = "first_bianchi";
pub const SECOND_BIANCHI: &str = "second_bianchi";

/// Default relative tolerance used by `validate`.
pub const DEFAULT_VALIDATION_TOL: f64 = 1e-10;
/// Scale floor below which residuals are effectively judged in absolute terms.
const ZERO_SCALE_FLOOR: f64 = 1e-12;

const CURV5_MAX_ITERATIONS: usize = 500;
const CURV5_STEP_TOL: f64 = 1e-13;

#[inline]
fn idx4(m: usize, i: usize, j: usize, k: usize, l: usize) -> usize {
    ((i * m + j) * m + k) * m + l
}

#[inline]
fn idx5(m: usize, a: usize, b: usize, c: usize, d: usize, e: usize) -> usize {
    idx4(m, a, b, c, d) * m + e
}

fn decode<const N: usize>(m: usize, mut flat: usize) -> [usize; N] {
    let mut out = [0; N];
    for slot in out.iter_mut().rev() {
        *slot = flat % m;
        flat /= m;
    }
    out
}

fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

/// Residual of one symmetry identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityResidual {
    pub identity: String,
    /// Max absolute violation over all index tuples.
    pub residual: f64,
    /// `residual / max(max|component|, 1e-12)`.
    pub relative: f64,
    /// Index tuple attaining the max violation.
    pub worst_index: Vec<usize>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub kind: String,
    pub scale: f64,
    pub tol: f64,
    pub identities: Vec<IdentityResidual>,
    pub passed: bool,
}

type Identity<'a, const N: usize> = (&'a str, &'a dyn Fn([usize; N]) -> f64);

impl ValidationReport {
    fn assemble<const N: usize>(kind: &str, comp: &[f64], m: usize, tol: f64, identities: &[Identity<'_, N>]) -> Self {
        let scale = max_abs(comp);
        let norm = scale.max(ZERO_SCALE_FLOOR);
        let identities: Vec<_> = identities
            .iter()
            .map(|(name, violation)| {
                let (mut residual, mut worst) = (0.0_f64, [0usize; N]);
                for flat in 0..comp.len() {
                    let ix = decode::<N>(m, flat);
                    let r = violation(ix).abs();
                    if r > residual {
                        residual = r;
                        worst = ix;
                    }
                }
                let relative = residual / norm;
                IdentityResidual {
                    identity: name.to_string(),
                    residual,
                    relative,
                    worst_index: worst.to_vec(),
                    passed: relative <= tol,
                }
            })
            .collect();
        let passed = identities.iter().all(|r| r.passed);
        Self {
            kind: kind.to_string(),
            scale,
            tol,
            identities,
            passed,
        }
    }

    pub fn max_relative(&self) -> f64 {
        self.identities.iter().fold(0.0, |acc, r| acc.max(r.relative))
    }

    pub fn failed_identities(&self) -> Vec<&str> {
        self.identities
            .iter()
            .filter(|r| !r.passed)
            .map(|r| r.identity.as_str())
            .collect()
    }

    pub fn residual(&self, identity: &str) -> Option<&IdentityResidual> {
        self.identities.iter().find(|r| r.identity == identity)
    }
}

/// Dense 4-tensor `R(e_i, e_j, e_k, e_l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Curv4 {
    space: SignatureSpace,
    comp: Vec<f64>,
}

impl Curv4 {
    pub fn zeros(space: SignatureSpace) -> Self {
        Self {
            space,
            comp: vec![0.0; space.dim().pow(4)],
        }
    }

    pub fn from_components(space: SignatureSpace, comp: Vec<f64>) -> Result<Self> {
        let expected = space.dim().pow(4);
        if comp.len() != expected {
            return Err(CurvatureError::ArityMismatch {
                expected,
                found: comp.len(),
            });
        }
        Ok(Self { space, comp })
    }

    /// Entry-wise evaluation of `f(i, j, k, l)`.
    pub fn from_fn(space: SignatureSpace, f: impl Fn(usize, usize, usize, usize) -> f64) -> Self {
        let m = space.dim();
        let comp = (0..m.pow(4))
            .map(|flat| {
                let [i, j, k, l] = decode::<4>(m, flat);
                f(i, j, k, l)
            })
            .collect();
        Self { space, comp }
    }

    pub fn space(&self) -> &SignatureSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn components(&self) -> &[f64] {
        &self.comp
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.comp[idx4(self.dim(), i, j, k, l)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, value: f64) {
        let m = self.dim();
        self.comp[idx4(m, i, j, k, l)] = value;
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.comp)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.comp.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            space: self.space,
            comp: self.comp.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn try_add(&self, other: &Curv4) -> Result<Self> {
        if self.space != other.space {
            return Err(CurvatureError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(Self {
            space: self.space,
            comp: self.comp.iter().zip(&other.comp).map(|(a, b)| a + b).collect(),
        })
    }

    /// Multilinear evaluation `R(x, y, z, w)` (real tensor extended
    /// complex-linearly when `S` is complex).
    pub fn eval<S: Scalar>(&self, x: &DVector<S>, y: &DVector<S>, z: &DVector<S>, w: &DVector<S>) -> S {
        let m = self.dim();
        let mut acc = S::zero();
        for i in 0..m {
            for j in 0..m {
                let xy = x[i] * y[j];
                for k in 0..m {
                    let xyz = xy * z[k];
                    let base = idx4(m, i, j, k, 0);
                    for l in 0..m {
                        let c = self.comp[base + l];
                        if c != 0.0 {
                            acc += xyz * w[l] * S::from_real(c);
                        }
                    }
                }
            }
        }
        acc
    }

    /// Components `R(b_i, b_j, b_k, b_l)` with respect to another basis.
    pub fn in_basis(&self, basis: &[DVector<f64>]) -> Result<Self> {
        let m = self.dim();
        if basis.len() != m {
            return Err(CurvatureError::DimensionMismatch {
                expected: m,
                found: basis.len(),
            });
        }
        for b in basis {
            self.space.check_dim(b)?;
        }
        // one slot at a time keeps this O(m^5)
        let mut t = self.comp.clone();
        for slot in 0..4 {
            t = change_slot::<4>(m, &t, slot, basis);
        }
        Ok(Self {
            space: self.space,
            comp: t,
        })
    }

    pub fn validate(&self, tol: f64) -> ValidationReport {
        let m = self.dim();
        let c = &self.comp;
        let g = |i, j, k, l| c[idx4(m, i, j, k, l)];
        ValidationReport::assemble::<4>(
            "curv4",
            c,
            m,
            tol,
            &[
                (ANTISYMMETRY, &|[i, j, k, l]| g(i, j, k, l) + g(j, i, k, l)),
                (PAIR_SYMMETRY, &|[i, j, k, l]| g(i, j, k, l) - g(k, l, i, j)),
                (FIRST_BIANCHI, &|[i, j, k, l]| {
                    g(i, j, k, l) + g(j, k, i, l) + g(k, i, j, l)
                }),
            ],
        )
    }

    /// Maps an arbitrary 4-tensor into the algebraic curvature tensors:
    /// antisymmetrise both pairs, symmetrise under pair exchange, then remove
    /// the cyclic (Bianchi) average. Idempotent on valid input.
    pub fn project(space: SignatureSpace, raw: Vec<f64>) -> Result<Self> {
        let t = Self::from_components(space, raw)?;
        let m = space.dim();
        let g = |t: &Curv4, i, j, k, l| t.comp[idx4(m, i, j, k, l)];
        let a = Curv4::from_fn(space, |i, j, k, l| 0.5 * (g(&t, i, j, k, l) - g(&t, j, i, k, l)));
        let a = Curv4::from_fn(space, |i, j, k, l| 0.5 * (g(&a, i, j, k, l) - g(&a, i, j, l, k)));
        let a = Curv4::from_fn(space, |i, j, k, l| 0.5 * (g(&a, i, j, k, l) + g(&a, k, l, i, j)));
        Ok(Curv4::from_fn(space, |i, j, k, l| {
            let cyclic = g(&a, i, j, k, l) + g(&a, j, k, i, l) + g(&a, k, i, j, l);
            g(&a, i, j, k, l) - cyclic / 3.0
        }))
    }
}

/// Dense 5-tensor `∇R(e_a, e_b, e_c, e_d; e_e)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Curv5 {
    space: SignatureSpace,
    comp: Vec<f64>,
}

impl Curv5 {
    pub fn zeros(space: SignatureSpace) -> Self {
        Self {
            space,
            comp: vec![0.0; space.dim().pow(5)],
        }
    }

    pub fn from_components(space: SignatureSpace, comp: Vec<f64>) -> Result<Self> {
        let expected = space.dim().pow(5);
        if comp.len() != expected {
            return Err(CurvatureError::ArityMismatch {
                expected,
                found: comp.len(),
            });
        }
        Ok(Self { space, comp })
    }

    pub fn from_fn(space: SignatureSpace, f: impl Fn(usize, usize, usize, usize, usize) -> f64) -> Self {
        let m = space.dim();
        let comp = (0..m.pow(5))
            .map(|flat| {
                let [a, b, c, d, e] = decode::<5>(m, flat);
                f(a, b, c, d, e)
            })
            .collect();
        Self { space, comp }
    }

    pub fn space(&self) -> &SignatureSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn components(&self) -> &[f64] {
        &self.comp
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize, e: usize) -> f64 {
        self.comp[idx5(self.dim(), a, b, c, d, e)]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, d: usize, e: usize, value: f64) {
        let m = self.dim();
        self.comp[idx5(m, a, b, c, d, e)] = value;
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.comp)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.comp.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            space: self.space,
            comp: self.comp.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn try_add(&self, other: &Curv5) -> Result<Self> {
        if self.space != other.space {
            return Err(CurvatureError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(Self {
            space: self.space,
            comp: self.comp.iter().zip(&other.comp).map(|(a, b)| a + b).collect(),
        })
    }

    /// Multilinear evaluation `∇R(x, y, z, w; v)`.
    pub fn eval<S: Scalar>(&self, x: &DVector<S>, y: &DVector<S>, z: &DVector<S>, w: &DVector<S>, v: &DVector<S>) -> S {
        let m = self.dim();
        let mut acc = S::zero();
        for a in 0..m {
            for b in 0..m {
                let ab = x[a] * y[b];
                for c in 0..m {
                    let abc = ab * z[c];
                    for d in 0..m {
                        let abcd = abc * w[d];
                        let base = idx5(m, a, b, c, d, 0);
                        for e in 0..m {
                            let t = self.comp[base + e];
                            if t != 0.0 {
                                acc += abcd * v[e] * S::from_real(t);
                            }
                        }
                    }
                }
            }
        }
        acc
    }

    pub fn in_basis(&self, basis: &[DVector<f64>]) -> Result<Self> {
        let m = self.dim();
        if basis.len() != m {
            return Err(CurvatureError::DimensionMismatch {
                expected: m,
                found: basis.len(),
            });
        }
        for b in basis {
            self.space.check_dim(b)?;
        }
        let mut t = self.comp.clone();
        for slot in 0..5 {
            t = change_slot::<5>(m, &t, slot, basis);
        }
        Ok(Self {
            space: self.space,
            comp: t,
        })
    }

    pub fn validate(&self, tol: f64) -> ValidationReport {
        let m = self.dim();
        let c = &self.comp;
        let g = |a, b, cc, d, e| c[idx5(m, a, b, cc, d, e)];
        ValidationReport::assemble::<5>(
            "curv5",
            c,
            m,
            tol,
            &[
                (ANTISYMMETRY, &|[a, b, cc, d, e]| g(a, b, cc, d, e) + g(b, a, cc, d, e)),
                (PAIR_SYMMETRY, &|[a, b, cc, d, e]| g(a, b, cc, d, e) - g(cc, d, a, b, e)),
                (FIRST_BIANCHI, &|[a, b, cc, d, e]| {
                    g(a, b, cc, d, e) + g(a, cc, d, b, e) + g(a, d, b, cc, e)
                }),
                (SECOND_BIANCHI, &|[a, b, cc, d, e]| {
                    g(a, b, cc, d, e) + g(a, b, d, e, cc) + g(a, b, e, cc, d)
                }),
            ],
        )
    }

    /// Maps an arbitrary 5-tensor into the covariant-derivative curvature
    /// tensors by alternating the three orthogonal projections (pair
    /// symmetries, first Bianchi, second Bianchi) until the update stalls.
    pub fn project(space: SignatureSpace, raw: Vec<f64>) -> Result<Self> {
        let mut t = Self::from_components(space, raw)?;
        let m = space.dim();
        let mut step = f64::INFINITY;
        for _ in 0..CURV5_MAX_ITERATIONS {
            let next = project_curv5_once(&t);
            step = next
                .comp
                .iter()
                .zip(&t.comp)
                .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs()));
            let scale = next.max_abs().max(ZERO_SCALE_FLOOR);
            t = next;
            if step < CURV5_STEP_TOL * scale {
                break;
            }
        }
        let report = t.validate(DEFAULT_VALIDATION_TOL);
        if !report.passed {
            return Err(CurvatureError::ProjectionDiverged {
                iterations: CURV5_MAX_ITERATIONS,
                residual: report.max_relative().max(step),
            });
        }
        debug_assert_eq!(t.dim(), m);
        Ok(t)
    }
}

fn project_curv5_once(t: &Curv5) -> Curv5 {
    let s = t.space;
    let g = |t: &Curv5, a, b, c, d, e| t.get(a, b, c, d, e);
    // pair symmetries: antisymmetric in (a,b) and (c,d), symmetric under exchange
    let u = Curv5::from_fn(s, |a, b, c, d, e| 0.5 * (g(t, a, b, c, d, e) - g(t, b, a, c, d, e)));
    let u = Curv5::from_fn(s, |a, b, c, d, e| 0.5 * (g(&u, a, b, c, d, e) - g(&u, a, b, d, c, e)));
    let u = Curv5::from_fn(s, |a, b, c, d, e| 0.5 * (g(&u, a, b, c, d, e) + g(&u, c, d, a, b, e)));
    let u = Curv5::from_fn(s, |a, b, c, d, e| {
        let cyc = g(&u, a, b, c, d, e) + g(&u, a, c, d, b, e) + g(&u, a, d, b, c, e);
        g(&u, a, b, c, d, e) - cyc / 3.0
    });
    Curv5::from_fn(s, |a, b, c, d, e| {
        let cyc = g(&u, a, b, c, d, e) + g(&u, a, b, d, e, c) + g(&u, a, b, e, c, d);
        g(&u, a, b, c, d, e) - cyc / 3.0
    })
}

/// Contracts one slot of a dense `N`-tensor with a new basis:
/// `out[.., a, ..] = sum_i basis[a][i] * t[.., i, ..]`.
fn change_slot<const N: usize>(m: usize, t: &[f64], slot: usize, basis: &[DVector<f64>]) -> Vec<f64> {
    let stride = m.pow((N - 1 - slot) as u32);
    let mut out = vec![0.0; t.len()];
    for (flat, value) in out.iter_mut().enumerate() {
        let a = (flat / stride) % m;
        let base = flat - a * stride;
        *value = (0..m).map(|i| basis[a][i] * t[base + i * stride]).sum();
    }
    out
}

/// Symmetric bilinear form `L(x, y)` stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct SymBilinear {
    m: usize,
    comp: Vec<f64>,
}

impl SymBilinear {
    pub fn zeros(m: usize) -> Self {
        Self {
            m,
            comp: vec![0.0; m * m],
        }
    }

    /// Symmetrised form `(f(i,j) + f(j,i)) / 2`.
    pub fn from_fn(m: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let comp = (0..m * m)
            .map(|flat| {
                let (i, j) = (flat / m, flat % m);
                0.5 * (f(i, j) + f(j, i))
            })
            .collect();
        Self { m, comp }
    }

    /// Requires an exactly symmetric square matrix.
    pub fn from_matrix(mat: &DMatrix<f64>) -> Result<Self> {
        if !mat.is_square() {
            return Err(CurvatureError::DimensionMismatch {
                expected: mat.nrows(),
                found: mat.ncols(),
            });
        }
        let residual = (mat - mat.transpose()).amax();
        if residual != 0.0 {
            return Err(CurvatureError::NotSymmetric { residual });
        }
        Ok(Self::from_fn(mat.nrows(), |i, j| mat[(i, j)]))
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let m = values.len();
        Self::from_fn(m, |i, j| if i == j { values[i] } else { 0.0 })
    }

    /// The inner product itself, `diag(eps)`.
    pub fn metric(space: &SignatureSpace) -> Self {
        Self::diagonal(&space.signs())
    }

    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let raw: Vec<f64> = (0..m * m).map(|_| rng.sample(StandardNormal)).collect();
        Self::from_fn(m, |i, j| raw[i * m + j])
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.comp[i * self.m + j]
    }

    pub fn eval<S: Scalar>(&self, x: &DVector<S>, y: &DVector<S>) -> S {
        let mut acc = S::zero();
        for i in 0..self.m {
            for j in 0..self.m {
                acc += x[i] * y[j] * S::from_real(self.get(i, j));
            }
        }
        acc
    }

    /// Operator `φ` with `L(x, y) = (φ x, y)`.
    pub fn raised(&self, space: &SignatureSpace) -> DMatrix<f64> {
        DMatrix::from_fn(self.m, self.m, |j, i| space.eps(j) * self.get(i, j))
    }
}

/// Completely symmetric trilinear form `L̃(x, y, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTrilinear {
    m: usize,
    comp: Vec<f64>,
}

impl SymTrilinear {
    pub fn zeros(m: usize) -> Self {
        Self {
            m,
            comp: vec![0.0; m * m * m],
        }
    }

    /// Average of `f` over the six permutations of its arguments.
    pub fn from_fn(m: usize, f: impl Fn(usize, usize, usize) -> f64) -> Self {
        let comp = (0..m * m * m)
            .map(|flat| {
                let ix = [flat / (m * m), (flat / m) % m, flat % m];
                ix.iter().permutations(3).map(|p| f(*p[0], *p[1], *p[2])).sum::<f64>() / 6.0
            })
            .collect();
        Self { m, comp }
    }

    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let raw: Vec<f64> = (0..m * m * m).map(|_| rng.sample(StandardNormal)).collect();
        Self::from_fn(m, |i, j, k| raw[(i * m + j) * m + k])
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.comp[(i * self.m + j) * self.m + k]
    }

    pub fn eval<S: Scalar>(&self, x: &DVector<S>, y: &DVector<S>, z: &DVector<S>) -> S {
        let mut acc = S::zero();
        for i in 0..self.m {
            for j in 0..self.m {
                for k in 0..self.m {
                    acc += x[i] * y[j] * z[k] * S::from_real(self.get(i, j, k));
                }
            }
        }
        acc
    }

    /// Operator `φ̃_x` with `L̃(x, y, z) = (φ̃_x y, z)`.
    pub fn raised_at<S: Scalar>(&self, space: &SignatureSpace, x: &DVector<S>) -> DMatrix<S> {
        DMatrix::from_fn(self.m, self.m, |j, i| {
            let s: S = (0..self.m).fold(S::zero(), |acc, a| acc + x[a] * S::from_real(self.get(a, i, j)));
            s * S::from_real(space.eps(j))
        })
    }
}

/// `R(x,y,z,w) = c((x,w)(y,z) - (x,z)(y,w))`; positive `c` gives positive
/// sectional curvature on spacelike planes.
pub fn constant_curvature(space: &SignatureSpace, c: f64) -> Curv4 {
    let g = |i: usize, j: usize| if i == j { space.eps(i) } else { 0.0 };
    Curv4::from_fn(*space, |i, j, k, l| c * (g(i, l) * g(j, k) - g(i, k) * g(j, l)))
}

/// `R(x,y,z,w) = φ(x,w)φ(y,z) - φ(x,z)φ(y,w)`.
pub fn from_bilinear(space: &SignatureSpace, phi: &SymBilinear) -> Result<Curv4> {
    if phi.dim() != space.dim() {
        return Err(CurvatureError::DimensionMismatch {
            expected: space.dim(),
            found: phi.dim(),
        });
    }
    Ok(Curv4::from_fn(*space, |i, j, k, l| {
        phi.get(i, l) * phi.get(j, k) - phi.get(i, k) * phi.get(j, l)
    }))
}

/// `∇R(x,y,z,w;v) = L̃(v,y,z)L(x,w) - L̃(v,x,z)L(y,w) + L̃(v,x,w)L(y,z) - L̃(v,y,w)L(x,z)`.
pub fn nabla_from_forms(space: &SignatureSpace, cubic: &SymTrilinear, quadratic: &SymBilinear) -> Result<Curv5> {
    for found in [cubic.dim(), quadratic.dim()] {
        if found != space.dim() {
            return Err(CurvatureError::DimensionMismatch {
                expected: space.dim(),
                found,
            });
        }
    }
    let (lt, l) = (cubic, quadratic);
    Ok(Curv5::from_fn(*space, |x, y, z, w, v| {
        lt.get(v, y, z) * l.get(x, w) - lt.get(v, x, z) * l.get(y, w) + lt.get(v, x, w) * l.get(y, z)
            - lt.get(v, y, w) * l.get(x, z)
    }))
}

/// 1-based position of basis index `a` inside its causal block.
fn block_position(space: &SignatureSpace, a: usize) -> usize {
    if a < space.p() {
        a + 1
    } else {
        a - space.p() + 1
    }
}

/// The two forms behind [`nilpotent_szabo_example`]: `L(e_i^±, e_j^±) = δ_ij`
/// and `L̃(e_i^±, e_j^±, e_k^±) = δ_ijk` for block positions `i, j, k <= 2`
/// (both causal blocks), zero otherwise.
pub fn nilpotent_szabo_forms(space: &SignatureSpace) -> Result<(SymTrilinear, SymBilinear)> {
    if space.p() < 2 || space.q() < 2 {
        return Err(CurvatureError::InvalidSignature {
            p: space.p(),
            q: space.q(),
            reason: "the nilpotent Szabó construction requires p >= 2 and q >= 2",
        });
    }
    let m = space.dim();
    let pos = |a| block_position(space, a);
    let quadratic = SymBilinear::from_fn(m, |a, b| if pos(a) == pos(b) && pos(a) <= 2 { 1.0 } else { 0.0 });
    let cubic = SymTrilinear::from_fn(m, |a, b, c| {
        if pos(a) == pos(b) && pos(b) == pos(c) && pos(a) <= 2 {
            1.0
        } else {
            0.0
        }
    });
    Ok((cubic, quadratic))
}

/// Covariant-derivative curvature tensor in signature `p, q >= 2` whose
/// Szabó operator squares to zero everywhere without vanishing.
pub fn nilpotent_szabo_example(space: &SignatureSpace) -> Result<Curv5> {
    let (cubic, quadratic) = nilpotent_szabo_forms(space)?;
    nabla_from_forms(space, &cubic, &quadratic)
}

fn check_curvature_dim(space: &SignatureSpace) -> Result<()> {
    if space.dim() < 3 {
        return Err(CurvatureError::InvalidSignature {
            p: space.p(),
            q: space.q(),
            reason: "curvature tensors require dimension m >= 3",
        });
    }
    Ok(())
}

/// Gaussian 4-tensor projected onto the algebraic curvature tensors.
pub fn random_curv4<R: Rng + ?Sized>(space: &SignatureSpace, rng: &mut R) -> Result<Curv4> {
    check_curvature_dim(space)?;
    let raw = (0..space.dim().pow(4)).map(|_| rng.sample(StandardNormal)).collect();
    Curv4::project(*space, raw)
}

/// Gaussian 5-tensor projected onto the covariant-derivative curvature tensors.
pub fn random_curv5<R: Rng + ?Sized>(space: &SignatureSpace, rng: &mut R) -> Result<Curv5> {
    check_curvature_dim(space)?;
    let raw = (0..space.dim().pow(5)).map(|_| rng.sample(StandardNormal)).collect();
    Curv5::project(*space, raw)
}

/// Ricci tensor `ρ(x, y) = sum_i eps_i R(e_i, x, y, e_i)`.
pub fn ricci(r: &Curv4) -> SymBilinear {
    let s = r.space();
    let m = s.dim();
    SymBilinear::from_fn(m, |x, y| (0..m).map(|i| s.eps(i) * r.get(i, x, y, i)).sum())
}

/// `τ = sum_j eps_j ρ(e_j, e_j)`.
pub fn scalar_curvature(r: &Curv4) -> f64 {
    let rho = ricci(r);
    let s = r.space();
    (0..s.dim()).map(|j| s.eps(j) * rho.get(j, j)).sum()
}
