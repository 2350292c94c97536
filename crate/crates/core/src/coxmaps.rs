//! The fundamental chamber of a reflection group and the maps between its
//! points and the simplex of transition probabilities.
//!
//! A point `p = sum_j alpha_j p_j` of the open chamber (all `alpha_j > 0`)
//! determines weights `x_j > 0` and `lambda` with
//! `lambda p = sum_j x_j sigma_j(p)`. Conversely every interior simplex point
//! arises from exactly one direction `p`, found as the Perron-Frobenius vector
//! of `V diag(1/x) M^{-1}`.

use serde::Serialize;

use crate::coxeter::ReflectionGroup;
use crate::error::{Error, Result};
use crate::linalg::{self, dot, Matrix, PF_DEFAULT_TOL};
use crate::randwalk::SimplexPoint;

/// Tolerance on the defining relation `lambda p = sum_j x_j sigma_j(p)`.
pub const RELATION_TOL: f64 = 1e-10;

/// Geometry of the fundamental chamber of a reflection group.
#[derive(Clone, Debug)]
pub struct FundamentalDomain {
    roots: Vec<Vec<f64>>,
    generators: Vec<Matrix>,
    gram_inverse: Matrix,
    vectors: Vec<Vec<f64>>,
    volume: f64,
}

/// A point `p = sum_j alpha_j p_j` of the chamber, normalised to `||p|| = 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FundamentalPoint {
    alpha: Vec<f64>,
    point: Vec<f64>,
}

impl FundamentalPoint {
    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn point(&self) -> &[f64] {
        &self.point
    }
}

/// Output of [`FundamentalDomain::psi_maps`].
#[derive(Clone, Debug, Serialize)]
pub struct PsiImage {
    pub point: SimplexPoint,
    pub lambda: f64,
    /// Unnormalised weights `x'_j`.
    pub raw_weights: Vec<f64>,
    /// `sum_j x'_j - 2 V`.
    pub raw_lambda: f64,
    /// Residual of `lambda p = sum_j x_j sigma_j(p)`.
    pub relation_residual: f64,
}

/// The vectors `p_j` with `<n_i, p_j> = V delta_ij`, and `V = det(n_1..n_k)`.
pub fn fundamental_vectors(group: &ReflectionGroup) -> Result<(Vec<Vec<f64>>, f64)> {
    let roots = group.simple_roots();
    let k = roots.len();
    let volume = group.root_volume();
    if volume <= 0.0 {
        return Err(Error::Orientation { det: volume });
    }
    let mut vectors = Vec::with_capacity(k);
    for j in 0..k {
        let others: Vec<Vec<f64>> = roots
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, n)| n.clone())
            .collect();
        let mut p = linalg::cross_product_k(&others)?;
        // <n_j, cross(others)> = det(.., n_j) = (-1)^(k-1-j) V (0-based j)
        if (k - 1 - j) % 2 == 1 {
            p.iter_mut().for_each(|x| *x = -*x);
        }
        vectors.push(p);
    }
    Ok((vectors, volume))
}

impl FundamentalDomain {
    pub fn new(group: &ReflectionGroup) -> Result<Self> {
        let (vectors, volume) = fundamental_vectors(group)?;
        Ok(Self {
            roots: group.simple_roots().to_vec(),
            generators: group.generators().to_vec(),
            gram_inverse: group.datum().gram_inverse()?,
            vectors,
            volume,
        })
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    /// `V = det(n_1, ..., n_k)`.
    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// The vectors `p_1, ..., p_k`.
    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn gram_inverse(&self) -> &Matrix {
        &self.gram_inverse
    }

    /// Normalises `sum_j alpha_j p_j` onto the unit sphere.
    pub fn point(&self, alpha: &[f64]) -> Result<FundamentalPoint> {
        if alpha.len() != self.rank() {
            return Err(Error::Dimension(format!(
                "{} coefficients for rank {}",
                alpha.len(),
                self.rank()
            )));
        }
        if let Some(a) = alpha.iter().find(|a| !(**a >= 0.0) || !a.is_finite()) {
            return Err(Error::Domain(format!("chamber coefficient {a} is negative or not finite")));
        }
        let raw = self.combine(alpha);
        let len = linalg::norm(&raw);
        if len == 0.0 {
            return Err(Error::Domain("all chamber coefficients vanish".into()));
        }
        Ok(FundamentalPoint {
            alpha: alpha.iter().map(|a| a / len).collect(),
            point: raw.iter().map(|x| x / len).collect(),
        })
    }

    fn combine(&self, alpha: &[f64]) -> Vec<f64> {
        let mut p = vec![0.0; self.rank()];
        for (a, v) in alpha.iter().zip(&self.vectors) {
            p.iter_mut().zip(v).for_each(|(x, y)| *x += a * y);
        }
        p
    }

    /// The simplex point and eigenvalue attached to a chamber point:
    /// `x' = V diag(alpha)^{-1} M^{-1} alpha`, `lambda' = sum x' - 2V`, both
    /// divided by `sum x'`.
    pub fn psi_maps(&self, p: &FundamentalPoint) -> Result<PsiImage> {
        let alpha = p.alpha();
        if let Some(a) = alpha.iter().find(|a| **a <= 0.0) {
            return Err(Error::Domain(format!("chamber coefficient {a} is not positive")));
        }
        let v = self.volume;
        let m_alpha = self.gram_inverse.mul_vec(alpha);
        let raw_weights: Vec<f64> = m_alpha.iter().zip(alpha).map(|(m, a)| v * m / a).collect();
        let total: f64 = raw_weights.iter().sum();
        let raw_lambda = total - 2.0 * v;
        let weights: Vec<f64> = raw_weights.iter().map(|x| x / total).collect();
        let lambda = raw_lambda / total;

        let mut rhs = vec![0.0; self.rank()];
        for (x, s) in weights.iter().zip(&self.generators) {
            rhs.iter_mut().zip(s.mul_vec(p.point())).for_each(|(r, y)| *r += x * y);
        }
        let relation_residual = rhs
            .iter()
            .zip(p.point())
            .map(|(r, q)| (r - lambda * q).abs())
            .fold(0.0, f64::max);
        if relation_residual > RELATION_TOL {
            return Err(Error::InvarianceFailure(format!(
                "lambda p = sum x_j sigma_j(p) fails by {relation_residual:e}"
            )));
        }
        let k = weights.len();
        Ok(PsiImage {
            point: SimplexPoint::normalized(&weights, &vec![1; k])?,
            lambda,
            raw_weights,
            raw_lambda,
            relation_residual,
        })
    }

    /// The chamber point mapped to an interior simplex point `x`.
    ///
    /// `alpha` is the Perron-Frobenius vector of `A = V diag(1/x) M^{-1}`; the
    /// eigenvalue `Lambda` of `A` gives `lambda = 1 - 2V / Lambda`.
    pub fn psi_delta_inverse(&self, x: &SimplexPoint) -> Result<FundamentalPoint> {
        Ok(self.perron_frobenius_data(x)?.0)
    }

    /// `(chamber point, Lambda_PF(A))` for an interior simplex point.
    pub fn perron_frobenius_data(&self, x: &SimplexPoint) -> Result<(FundamentalPoint, f64)> {
        if x.len() != self.rank() {
            return Err(Error::Dimension(format!("{} weights for rank {}", x.len(), self.rank())));
        }
        if !x.is_interior() {
            return Err(Error::Domain(format!(
                "{:?} lies on the boundary of the simplex",
                x.weights()
            )));
        }
        let k = self.rank();
        let mut a = self.gram_inverse.clone();
        for i in 0..k {
            let s = self.volume / x.weights()[i];
            for j in 0..k {
                a[(i, j)] *= s;
            }
        }
        let (lambda_pf, alpha) = linalg::perron_frobenius(&a, PF_DEFAULT_TOL)?;
        Ok((self.point(&alpha)?, lambda_pf))
    }

    /// `Psi_lambda(Psi_Delta^{-1}(x))`, the eigenvalue attached to `x`.
    pub fn lambda_closed_form(&self, x: &SimplexPoint) -> Result<f64> {
        let (_, lambda_pf) = self.perron_frobenius_data(x)?;
        Ok(1.0 - 2.0 * self.volume / lambda_pf)
    }

    /// `||p - sigma_j(p)|| = 2 alpha_j V` for the unit point `p`.
    pub fn edge_lengths_closed_form(&self, p: &FundamentalPoint) -> Vec<f64> {
        p.alpha().iter().map(|a| 2.0 * a * self.volume).collect()
    }

    /// `<n_i, p_j>` for all `i, j`.
    pub fn duality_matrix(&self) -> Matrix {
        let k = self.rank();
        let mut d = Matrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                d[(i, j)] = dot(&self.roots[i], &self.vectors[j]);
            }
        }
        d
    }
}

/// `sum_g (g p)(g p)^T`, which is a multiple of the identity for an
/// irreducible group.
pub fn moment_matrix(group: &ReflectionGroup, p: &[f64]) -> Matrix {
    let k = group.rank();
    let mut m = Matrix::zeros(k, k);
    for q in group.orbit(p) {
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] += q[i] * q[j];
            }
        }
    }
    m
}

/// Largest entrywise deviation of a moment matrix from `c I`, with `c` the
/// mean diagonal entry; returns `(c, deviation)`.
pub fn moment_deviation(m: &Matrix) -> (f64, f64) {
    let k = m.rows();
    let c = (0..k).map(|i| m[(i, i)]).sum::<f64>() / k as f64;
    let dev = m.max_abs_diff(&Matrix::identity(k).scale(c));
    (c, dev)
}

/// Distinct points of a finite point set, identified within `tol`.
pub fn dedup_points(points: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for p in points {
        if !out.iter().any(|q| linalg::distance(p, q) <= tol) {
            out.push(p.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{generate_group, Builtin};

    #[test]
    fn duality_holds_for_builtins() {
        for b in Builtin::ALL {
            let g = generate_group(&b.datum()).unwrap();
            let d = FundamentalDomain::new(&g).unwrap();
            let dual = d.duality_matrix();
            let expected = Matrix::identity(3).scale(d.volume());
            assert!(dual.max_abs_diff(&expected) < 1e-12, "{b}");
        }
    }

    #[test]
    fn duality_holds_in_rank_four() {
        let datum = crate::coxeter::CoxeterDatum::linear("A4", &[3, 3, 3]).unwrap();
        let g = generate_group(&datum).unwrap();
        assert_eq!(g.order(), 120);
        let d = FundamentalDomain::new(&g).unwrap();
        let expected = Matrix::identity(4).scale(d.volume());
        assert!(d.duality_matrix().max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn psi_round_trip() {
        let g = generate_group(&Builtin::B3.datum()).unwrap();
        let d = FundamentalDomain::new(&g).unwrap();
        let p = d.point(&[0.3, 0.5, 0.9]).unwrap();
        let image = d.psi_maps(&p).unwrap();
        let back = d.psi_delta_inverse(&image.point).unwrap();
        for (a, b) in back.alpha().iter().zip(p.alpha()) {
            assert!((a - b).abs() < 1e-10);
        }
        let lambda = d.lambda_closed_form(&image.point).unwrap();
        assert!((lambda - image.lambda).abs() < 1e-12);
    }

    #[test]
    fn boundary_point_is_rejected() {
        let g = generate_group(&Builtin::A3.datum()).unwrap();
        let d = FundamentalDomain::new(&g).unwrap();
        let x = SimplexPoint::from_weights(vec![0.0, 0.5, 0.5]).unwrap();
        assert!(matches!(d.psi_delta_inverse(&x), Err(Error::Domain(_))));
        assert!(matches!(d.point(&[-1.0, 1.0, 1.0]), Err(Error::Domain(_))));
    }
}
