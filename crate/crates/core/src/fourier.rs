//! Fourier transform of an invariant walk at the geometric representation.
//!
//! For the reflection representation `rho`, `p_hat = sum_j x_j sigma_j` is a
//! symmetric `k x k` matrix, and each of its eigenvalues is an eigenvalue of
//! `P_X` of multiplicity at least `k`.

use serde::Serialize;

use crate::coxeter::{CayleyGraph, ReflectionGroup};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::randwalk::{build_operator, SimplexPoint};

#[derive(Clone, Debug, Serialize)]
pub struct RepSpectrum {
    pub point: SimplexPoint,
    #[serde(skip)]
    pub matrix: Matrix,
    /// Eigenvalues of `p_hat`, descending.
    pub roots: Vec<f64>,
}

impl RepSpectrum {
    pub fn mu1(&self) -> f64 {
        self.roots[0]
    }
}

/// `p_hat = sum_j x_j sigma_j` and its eigenvalues.
pub fn rep_fourier(x: &SimplexPoint, group: &ReflectionGroup) -> Result<RepSpectrum> {
    if x.len() != group.rank() {
        return Err(Error::Dimension(format!(
            "{} weights for a group of rank {}",
            x.len(),
            group.rank()
        )));
    }
    let k = group.rank();
    let mut matrix = Matrix::zeros(k, k);
    for (w, s) in x.weights().iter().zip(group.generators()) {
        matrix = matrix.add(&s.scale(*w));
    }
    let roots = linalg::eigh_symmetric(&matrix)?.eigenvalues;
    Ok(RepSpectrum {
        point: x.clone(),
        matrix,
        roots,
    })
}

/// Coefficients `(c2, c1, c0)` of `det(t I - A) = t^3 + c2 t^2 + c1 t + c0`
/// for a 3x3 matrix.
pub fn characteristic_coefficients(a: &Matrix) -> Result<[f64; 3]> {
    if a.rows() != 3 || a.cols() != 3 {
        return Err(Error::Dimension(format!("expected 3x3, got {}x{}", a.rows(), a.cols())));
    }
    let trace = a[(0, 0)] + a[(1, 1)] + a[(2, 2)];
    let minors = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)] + a[(0, 0)] * a[(2, 2)]
        - a[(0, 2)] * a[(2, 0)]
        + a[(1, 1)] * a[(2, 2)]
        - a[(1, 2)] * a[(2, 1)];
    Ok([-trace, minors, -linalg::det(a)?])
}

/// Closed form of the H3 coefficients:
/// `t^3 - t^2 - q t + q + 2 (2 - phi) x y z` with
/// `q = 1 - 4 x y - 3 x z - (3 - phi) y z`.
pub fn h3_characteristic_closed_form(x: f64, y: f64, z: f64) -> [f64; 3] {
    let phi = crate::GOLDEN_RATIO;
    let q = 1.0 - 4.0 * x * y - 3.0 * x * z - (3.0 - phi) * y * z;
    [-1.0, -q, q + 2.0 * (2.0 - phi) * x * y * z]
}

/// `|mu_1(X) - lambda_1(P_X)|`, with `lambda_1` from the full operator.
pub fn crosscheck_mu1(x: &SimplexPoint, group: &ReflectionGroup, graph: &CayleyGraph) -> Result<f64> {
    if !x.is_interior() {
        return Err(Error::Domain("the cross-check needs an interior point".into()));
    }
    let rep = rep_fourier(x, group)?;
    let op = build_operator(graph, x)?;
    let values = linalg::eigvalsh_symmetric(op.matrix())?;
    Ok((rep.mu1() - values[1]).abs())
}

/// For each root of `p_hat`, the number of eigenvalues of `P_X` within `tol`.
pub fn root_multiplicities(rep: &RepSpectrum, graph: &CayleyGraph, tol: f64) -> Result<Vec<usize>> {
    let op = build_operator(graph, &rep.point)?;
    let values = linalg::eigvalsh_symmetric(op.matrix())?;
    Ok(rep
        .roots
        .iter()
        .map(|mu| values.iter().filter(|v| (*v - mu).abs() <= tol).count())
        .collect())
}
