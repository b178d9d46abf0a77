use curvature_core::operators::OperatorMatrix;
use curvature_core::{Complex64, Scalar};
use nalgebra::DVector;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub operator: String,
    pub seed: Option<u64>,
    pub vectors: Vec<Vec<[f64; 2]>>,
    pub trace_powers: Vec<[f64; 2]>,
    pub charpoly: Vec<[f64; 2]>,
    pub eigenvalues: Vec<[f64; 2]>,
    pub self_adjoint_residual: f64,
    pub newton_residual: f64,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

fn pair<S: Scalar>(z: S) -> [f64; 2] {
    [z.real(), z.imaginary()]
}

impl SpectrumReport {
    pub fn new<S: Scalar>(operator: &str, seed: Option<u64>, vectors: &[DVector<S>], op: &OperatorMatrix<S>) -> Self {
        let fp = op.fingerprint();
        let m = op.entries();
        Self {
            operator: operator.to_string(),
            seed,
            vectors: vectors.iter().map(|v| v.iter().map(|z| pair(*z)).collect()).collect(),
            trace_powers: fp.trace_powers.iter().map(|z| pair(*z)).collect(),
            charpoly: fp.charpoly.iter().map(|z| pair(*z)).collect(),
            eigenvalues: fp.eigenvalues.iter().map(|z: &Complex64| [z.re, z.im]).collect(),
            self_adjoint_residual: op.self_adjoint_residual(),
            newton_residual: fp.newton_residual(),
            matrix: (0..m.nrows())
                .map(|r| (0..m.ncols()).map(|c| pair(m[(r, c)])).collect())
                .collect(),
        }
    }
}
