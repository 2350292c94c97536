//! Invariant transition probabilities and the operators `P_X`.

use rand::Rng;
use serde::Serialize;

use crate::coxeter::CayleyGraph;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Tolerance on `sum_j m_j x_j = 1`.
pub const SIMPLEX_TOL: f64 = 1e-12;

/// One transition probability per edge class, with `sum_j m_j x_j = 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimplexPoint {
    weights: Vec<f64>,
    multiplicities: Vec<usize>,
}

impl SimplexPoint {
    pub fn new(weights: Vec<f64>, multiplicities: Vec<usize>) -> Result<Self> {
        if weights.len() != multiplicities.len() || weights.is_empty() {
            return Err(Error::Dimension(format!(
                "{} weights for {} edge classes",
                weights.len(),
                multiplicities.len()
            )));
        }
        if multiplicities.contains(&0) {
            return Err(Error::Simplex("class multiplicities must be positive".into()));
        }
        if let Some(x) = weights.iter().find(|x| !(**x >= 0.0 && **x <= 1.0)) {
            return Err(Error::Simplex(format!("weight {x} outside [0, 1]")));
        }
        let total: f64 = weights.iter().zip(&multiplicities).map(|(x, &m)| x * m as f64).sum();
        if (total - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::Simplex(format!("sum m_j x_j = {total}, expected 1")));
        }
        Ok(Self {
            weights,
            multiplicities,
        })
    }

    /// All multiplicities 1 (Cayley graphs of Coxeter groups).
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        let n = weights.len();
        Self::new(weights, vec![1; n])
    }

    /// Rescales nonnegative weights onto the simplex.
    pub fn normalized(raw: &[f64], multiplicities: &[usize]) -> Result<Self> {
        let total: f64 = raw.iter().zip(multiplicities).map(|(x, &m)| x * m as f64).sum();
        if !(total > 0.0) || raw.iter().any(|x| *x < 0.0) {
            return Err(Error::Simplex(format!("cannot normalise {raw:?}")));
        }
        Self::new(raw.iter().map(|x| x / total).collect(), multiplicities.to_vec())
    }

    /// The point with all weights equal: the canonical Laplacian.
    pub fn barycenter(multiplicities: &[usize]) -> Self {
        let total: usize = multiplicities.iter().sum();
        Self {
            weights: vec![1.0 / total as f64; multiplicities.len()],
            multiplicities: multiplicities.to_vec(),
        }
    }

    /// Uniform sample from the simplex (all multiplicities 1), rejecting
    /// points with a weight below `min_weight`.
    pub fn random_interior<R: Rng + ?Sized>(rng: &mut R, len: usize, min_weight: f64) -> Self {
        assert!(min_weight * (len as f64) < 1.0, "no point has all weights above {min_weight}");
        loop {
            let raw: Vec<f64> = (0..len).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
            let total: f64 = raw.iter().sum();
            let weights: Vec<f64> = raw.iter().map(|x| x / total).collect();
            if weights.iter().all(|&w| w >= min_weight) {
                return Self {
                    weights,
                    multiplicities: vec![1; len],
                };
            }
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_interior(&self) -> bool {
        self.weights.iter().all(|&x| x > 0.0)
    }

    /// Smallest weight: the distance to the boundary in weight coordinates.
    pub fn min_weight(&self) -> f64 {
        self.weights.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `self + t * direction`, re-validated.
    pub fn offset(&self, direction: &[f64], t: f64) -> Result<Self> {
        let w = self.weights.iter().zip(direction).map(|(x, d)| x + t * d).collect();
        Self::new(w, self.multiplicities.clone())
    }

    /// Convex combination `(1 - s) self + s other`.
    pub fn lerp(&self, other: &SimplexPoint, s: f64) -> Result<Self> {
        let w = self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| (1.0 - s) * a + s * b)
            .collect();
        Self::new(w, self.multiplicities.clone())
    }

    pub fn max_abs_diff(&self, other: &SimplexPoint) -> f64 {
        self.weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// The symmetric stochastic matrix `P_X` on a Cayley graph.
#[derive(Clone, Debug)]
pub struct TransitionOperator<'g> {
    graph: &'g CayleyGraph,
    point: SimplexPoint,
    matrix: Matrix,
}

impl<'g> TransitionOperator<'g> {
    pub fn graph(&self) -> &'g CayleyGraph {
        self.graph
    }

    pub fn point(&self) -> &SimplexPoint {
        &self.point
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// Edges `{i, j}` with `p_ij > 0`.
    pub fn support_edge_count(&self) -> usize {
        self.graph
            .edges()
            .iter()
            .filter(|e| self.matrix[(e.a, e.b)] > 0.0)
            .count()
    }
}

/// `p_ij = x_l` for an edge `{i, j}` of class `l`, zero elsewhere.
pub fn build_operator<'g>(graph: &'g CayleyGraph, point: &SimplexPoint) -> Result<TransitionOperator<'g>> {
    if point.len() != graph.class_count() {
        return Err(Error::Simplex(format!(
            "point has {} weights but the graph has {} edge classes",
            point.len(),
            graph.class_count()
        )));
    }
    if point.multiplicities() != graph.class_multiplicities() {
        return Err(Error::Simplex("class multiplicities do not match the graph".into()));
    }
    let n = graph.vertex_count();
    let mut matrix = Matrix::zeros(n, n);
    for e in graph.edges() {
        let x = point.weights()[e.label];
        matrix[(e.a, e.b)] = x;
        matrix[(e.b, e.a)] = x;
    }
    Ok(TransitionOperator {
        graph,
        point: point.clone(),
        matrix,
    })
}

/// Euclidean projection onto `{x >= 0, sum_j m_j x_j = 1}`.
///
/// The minimiser has the form `x_j = max(0, r_j - tau m_j)`; the breakpoints
/// `r_j / m_j` are sorted and the active set grown until the threshold `tau`
/// is consistent. The KKT conditions are checked on the result.
pub fn project_to_simplex(raw: &[f64], multiplicities: &[usize]) -> Result<SimplexPoint> {
    if raw.len() != multiplicities.len() || raw.is_empty() {
        return Err(Error::Dimension(format!(
            "{} coordinates for {} multiplicities",
            raw.len(),
            multiplicities.len()
        )));
    }
    if multiplicities.contains(&0) {
        return Err(Error::Simplex("class multiplicities must be positive".into()));
    }
    let m: Vec<f64> = multiplicities.iter().map(|&m| m as f64).collect();
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by(|&a, &b| (raw[b] / m[b]).total_cmp(&(raw[a] / m[a])));

    let mut sum_mr = 0.0;
    let mut sum_mm = 0.0;
    let mut tau = 0.0;
    for (count, &j) in order.iter().enumerate() {
        sum_mr += m[j] * raw[j];
        sum_mm += m[j] * m[j];
        let candidate = (sum_mr - 1.0) / sum_mm;
        let next_ok = order
            .get(count + 1)
            .is_none_or(|&next| raw[next] / m[next] <= candidate);
        if raw[j] / m[j] > candidate && next_ok {
            tau = candidate;
            break;
        }
    }
    let mut x: Vec<f64> = raw.iter().zip(&m).map(|(r, mj)| (r - tau * mj).max(0.0)).collect();

    // Remove the rounding residue from the constraint.
    let total: f64 = x.iter().zip(&m).map(|(a, b)| a * b).sum();
    if total > 0.0 {
        x.iter_mut().for_each(|v| *v /= total);
    }
    // KKT: active coordinates sit at tau, inactive ones at or below it.
    for (j, (&xj, &rj)) in x.iter().zip(raw).enumerate() {
        let slack = rj - tau * m[j];
        let ok = if xj > 0.0 { (xj - slack).abs() <= 1e-9 * (1.0 + rj.abs()) } else { slack <= 1e-9 };
        if !ok {
            return Err(Error::InvarianceFailure(format!(
                "simplex projection violates KKT at coordinate {j}"
            )));
        }
    }
    SimplexPoint::new(x.iter().map(|v| v.min(1.0)).collect(), multiplicities.to_vec())
}
