//! Jacobi, higher-order Jacobi and Szabó operators as matrices in the
//! standard orthonormal basis, and their spectral fingerprints.
//!
//! Matrices act on column vectors: column `i` holds the coordinates of the
//! image of `e_i`. Because `(J(x)e_i, e_j) = eps_j J[j][i]`, an operator that
//! is self-adjoint for the metric satisfies `E·M = (E·M)^T` with
//! `E = diag(eps)`, while `M` itself is generally not symmetric.

use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::space::{KPlane, Scalar, SignatureSpace};
use crate::tensors::{Curv4, Curv5};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Jacobi,
    JacobiKplane,
    Szabo,
    Other,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix<S: Scalar> {
    space: SignatureSpace,
    entries: DMatrix<S>,
    provenance: Provenance,
}

impl<S: Scalar> OperatorMatrix<S> {
    pub fn new(space: SignatureSpace, entries: DMatrix<S>, provenance: Provenance) -> Self {
        assert_eq!(entries.shape(), (space.dim(), space.dim()), "operator must be m x m");
        Self {
            space,
            entries,
            provenance,
        }
    }

    pub fn space(&self) -> &SignatureSpace {
        &self.space
    }

    pub fn entries(&self) -> &DMatrix<S> {
        &self.entries
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn apply(&self, v: &DVector<S>) -> DVector<S> {
        &self.entries * v
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0_f64, |acc, z| acc.max(z.modulus()))
    }

    /// `(M y, w)` for basis vectors, i.e. the lowered matrix `E·M`.
    pub fn pairing(&self) -> DMatrix<S> {
        DMatrix::from_fn(self.entries.nrows(), self.entries.ncols(), |w, y| {
            self.entries[(w, y)] * S::from_real(self.space.eps(w))
        })
    }

    /// Asymmetry of `E·M`, relative to the largest entry (0 for the zero matrix).
    pub fn self_adjoint_residual(&self) -> f64 {
        let lowered = self.pairing();
        let mut worst = 0.0_f64;
        for i in 0..lowered.nrows() {
            for j in 0..i {
                worst = worst.max((lowered[(i, j)] - lowered[(j, i)]).modulus());
            }
        }
        let scale = self.max_abs();
        if scale == 0.0 {
            0.0
        } else {
            worst / scale
        }
    }

    /// `trace{M^i}` for `i = 1..=m`.
    pub fn trace_powers(&self) -> Vec<S> {
        let m = self.entries.nrows();
        let mut power = self.entries.clone();
        let mut out = Vec::with_capacity(m);
        for i in 1..=m {
            if i > 1 {
                power = &power * &self.entries;
            }
            out.push(power.trace());
        }
        out
    }

    pub fn fingerprint(&self) -> SpectralFingerprint<S> {
        fingerprint(self)
    }

    pub fn scaled(&self, factor: S) -> Self {
        Self {
            space: self.space,
            entries: &self.entries * factor,
            provenance: self.provenance,
        }
    }
}

/// `J(x)` with `(J(x) y, w) = R(y, x, x, w)`.
pub fn jacobi<S: Scalar>(r: &Curv4, x: &DVector<S>) -> Result<OperatorMatrix<S>> {
    let space = *r.space();
    space.check_dim(x)?;
    let m = space.dim();
    let mut entries = DMatrix::<S>::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let mut acc = S::zero();
            for b in 0..m {
                for c in 0..m {
                    let comp = r.get(i, b, c, j);
                    if comp != 0.0 {
                        acc += x[b] * x[c] * S::from_real(comp);
                    }
                }
            }
            entries[(j, i)] = acc * S::from_real(space.eps(j));
        }
    }
    Ok(OperatorMatrix::new(space, entries, Provenance::Jacobi))
}

/// `J(σ) = sum_i (e_i, e_i) J(e_i)` over an orthonormal frame of `σ`.
pub fn jacobi_kplane<S: Scalar>(r: &Curv4, sigma: &KPlane<S>) -> Result<OperatorMatrix<S>> {
    let space = *r.space();
    let m = space.dim();
    let mut entries = DMatrix::<S>::zeros(m, m);
    for (e, sign) in sigma.frame().iter().zip(sigma.signs()) {
        entries += jacobi(r, e)?.entries * S::from_real(*sign);
    }
    Ok(OperatorMatrix::new(space, entries, Provenance::JacobiKplane))
}

/// `S(x)` with `(S(x) y, w) = ∇R(y, x, x, w; x)`.
pub fn szabo<S: Scalar>(t: &Curv5, x: &DVector<S>) -> Result<OperatorMatrix<S>> {
    let space = *t.space();
    space.check_dim(x)?;
    let m = space.dim();
    let mut cube = vec![S::zero(); m * m * m];
    for b in 0..m {
        for c in 0..m {
            for d in 0..m {
                cube[(b * m + c) * m + d] = x[b] * x[c] * x[d];
            }
        }
    }
    let mut entries = DMatrix::<S>::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let mut acc = S::zero();
            for b in 0..m {
                for c in 0..m {
                    for d in 0..m {
                        // slots: (y=e_i, x, x, w=e_j; x)
                        let comp = t.get(i, b, c, j, d);
                        if comp != 0.0 {
                            acc += cube[(b * m + c) * m + d] * S::from_real(comp);
                        }
                    }
                }
            }
            entries[(j, i)] = acc * S::from_real(space.eps(j));
        }
    }
    Ok(OperatorMatrix::new(space, entries, Provenance::Szabo))
}

/// Basis-independent spectral data of an operator.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFingerprint<S: Scalar> {
    /// `trace{M^i}`, `i = 1..=m`.
    pub trace_powers: Vec<S>,
    /// Coefficients of `det(λI - M)`, leading coefficient first.
    pub charpoly: Vec<S>,
    /// Dense-solver eigenvalues sorted by (real, imaginary); reporting only.
    pub eigenvalues: Vec<Complex64>,
}

impl<S: Scalar> SpectralFingerprint<S> {
    /// Max disagreement between `charpoly` and the coefficients recovered
    /// from `trace_powers` via Newton's identities. Coefficient `j` is
    /// compared relative to `1 + ρ^j`, where `ρ = max_i |trace{M^i}|^{1/i}`
    /// estimates the spectral radius, so the measure is scale invariant.
    pub fn newton_residual(&self) -> f64 {
        let from_traces = charpoly_from_trace_powers(&self.trace_powers);
        let rho = self
            .trace_powers
            .iter()
            .enumerate()
            .fold(0.0_f64, |acc, (i, t)| acc.max(t.modulus().powf(1.0 / (i + 1) as f64)));
        self.charpoly
            .iter()
            .zip(&from_traces)
            .enumerate()
            .fold(0.0_f64, |acc, (j, (a, b))| {
                acc.max((*a - *b).modulus() / (1.0 + rho.powi(j as i32)))
            })
    }
}

/// Trace powers by repeated multiplication, characteristic polynomial by the
/// Faddeev–LeVerrier recurrence, eigenvalues by a complex Schur decomposition.
pub fn fingerprint<S: Scalar>(op: &OperatorMatrix<S>) -> SpectralFingerprint<S> {
    let a = op.entries();
    let n = a.nrows();
    let identity = DMatrix::<S>::identity(n, n);
    let mut charpoly = vec![S::zero(); n + 1];
    charpoly[0] = S::one();
    let mut aux = DMatrix::<S>::zeros(n, n);
    for k in 1..=n {
        aux = a * &aux + &identity * charpoly[k - 1];
        charpoly[k] = -(a * &aux).trace() / S::from_real(k as f64);
    }
    SpectralFingerprint {
        trace_powers: op.trace_powers(),
        charpoly,
        eigenvalues: eigenvalues(a),
    }
}

fn eigenvalues<S: Scalar>(a: &DMatrix<S>) -> Vec<Complex64> {
    let n = a.nrows();
    if n == 0 {
        return Vec::new();
    }
    let complex = a.map(|z| z.to_complex());
    let mut out: Vec<Complex64> = match Schur::try_new(complex, 1e-15, 10_000) {
        Some(schur) => {
            let (_, t) = schur.unpack();
            (0..n).map(|i| t[(i, i)]).collect()
        }
        None => vec![Complex64::new(f64::NAN, f64::NAN); n],
    };
    out.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    out
}

/// Newton's identities: power sums to the coefficients of `det(λI - M)`.
pub fn charpoly_from_trace_powers<S: Scalar>(trace_powers: &[S]) -> Vec<S> {
    let n = trace_powers.len();
    // elementary symmetric polynomials e_0..e_n
    let mut e = vec![S::zero(); n + 1];
    e[0] = S::one();
    for k in 1..=n {
        let mut acc = S::zero();
        for i in 1..=k {
            let term = e[k - i] * trace_powers[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e[k] = acc / S::from_real(k as f64);
    }
    e.iter()
        .enumerate()
        .map(|(k, ek)| if k % 2 == 0 { *ek } else { -*ek })
        .collect()
}

/// `|trace{M^i}| <= tol (1 + ‖M‖^i)` for all `i = 1..=m`, with `‖M‖` the largest
/// entry modulus.
pub fn is_nilpotent<S: Scalar>(op: &OperatorMatrix<S>, tol: f64) -> bool {
    nilpotency_violation(op) <= tol
}

/// Largest normalised trace power `|trace{M^i}| / (1 + ‖M‖^i)`.
pub fn nilpotency_violation<S: Scalar>(op: &OperatorMatrix<S>) -> f64 {
    let norm = op.max_abs();
    op.trace_powers().iter().enumerate().fold(0.0_f64, |acc, (i, t)| {
        acc.max(t.modulus() / (1.0 + norm.powi(i as i32 + 1)))
    })
}
