//! Minimising `lambda_1` over the simplex, the critical-point certificate,
//! the deformation curves through the minimum and their boundary limits.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::coxeter::{cayley_graph, generate_group, Builtin, CayleyGraph, CoxeterDatum, ReflectionGroup};
use crate::coxmaps::{dedup_points, FundamentalDomain, FundamentalPoint};
use crate::error::{Error, Result};
use crate::linalg::{self, EigenDecomposition};
use crate::mesh::MeshDocument;
use crate::randwalk::{build_operator, project_to_simplex, SimplexPoint, TransitionOperator};
use crate::spectral::{
    self, clusters_from_decomposition, edge_class_lengths, group_eigenvalues, spectral_representation,
    Embedding, SpectralCluster, CLUSTER_TOL,
};

/// Tolerance for identifying orbit points (on the unit sphere).
pub const ORBIT_TOL: f64 = 1e-6;

/// A group together with its Cayley graph and chamber geometry.
#[derive(Clone, Debug)]
pub struct CayleySystem {
    builtin: Option<Builtin>,
    group: ReflectionGroup,
    graph: CayleyGraph,
    domain: FundamentalDomain,
}

impl CayleySystem {
    pub fn new(datum: &CoxeterDatum) -> Result<Self> {
        let group = generate_group(datum)?;
        let graph = cayley_graph(&group);
        let domain = FundamentalDomain::new(&group)?;
        Ok(Self {
            builtin: None,
            group,
            graph,
            domain,
        })
    }

    pub fn builtin(b: Builtin) -> Result<Self> {
        let mut s = Self::new(&b.datum())?;
        s.builtin = Some(b);
        Ok(s)
    }

    pub fn name(&self) -> &str {
        self.group.datum().name()
    }

    pub fn builtin_kind(&self) -> Option<Builtin> {
        self.builtin
    }

    pub fn group(&self) -> &ReflectionGroup {
        &self.group
    }

    pub fn graph(&self) -> &CayleyGraph {
        &self.graph
    }

    pub fn domain(&self) -> &FundamentalDomain {
        &self.domain
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// The canonical Laplacian `X_hat`.
    pub fn barycenter(&self) -> SimplexPoint {
        SimplexPoint::barycenter(self.graph.class_multiplicities())
    }

    pub fn point(&self, weights: &[f64]) -> Result<SimplexPoint> {
        SimplexPoint::new(weights.to_vec(), self.graph.class_multiplicities().to_vec())
    }

    pub fn operator(&self, x: &SimplexPoint) -> Result<TransitionOperator<'_>> {
        build_operator(&self.graph, x)
    }

    /// All eigenvalues of `P_X`, descending.
    pub fn spectrum(&self, x: &SimplexPoint) -> Result<Vec<f64>> {
        linalg::eigvalsh_symmetric(self.operator(x)?.matrix())
    }

    /// Second-highest eigenvalue counted with multiplicity.
    pub fn lambda1(&self, x: &SimplexPoint) -> Result<f64> {
        Ok(self.spectrum(x)?[1])
    }

    /// `lambda_1` and the size of its cluster, from eigenvalues only.
    pub fn lambda1_with_multiplicity(&self, x: &SimplexPoint) -> Result<(f64, usize)> {
        let values = self.spectrum(x)?;
        let range = group_eigenvalues(&values, CLUSTER_TOL)
            .into_iter()
            .find(|r| r.contains(&1))
            .expect("clusters partition the spectrum");
        Ok((values[1], range.len()))
    }

    pub fn decomposition(&self, x: &SimplexPoint) -> Result<EigenDecomposition> {
        linalg::eigh_symmetric(self.operator(x)?.matrix())
    }

    pub fn clusters(&self, x: &SimplexPoint) -> Result<Vec<SpectralCluster>> {
        Ok(clusters_from_decomposition(&self.decomposition(x)?, CLUSTER_TOL))
    }

    /// The cluster containing the eigenvalue with (descending) index `index`,
    /// and its spectral representation.
    pub fn embedding(&self, x: &SimplexPoint, index: usize) -> Result<(SpectralCluster, Embedding)> {
        let op = self.operator(x)?;
        let clusters = self.clusters(x)?;
        let mut start = 0;
        for c in clusters {
            if index < start + c.multiplicity {
                let emb = spectral_representation(&op, &c)?;
                return Ok((c, emb));
            }
            start += c.multiplicity;
        }
        Err(Error::Dimension(format!("eigenvalue index {index} out of range 0..{start}")))
    }

    /// The `lambda_1` cluster and its spectral representation.
    pub fn second_embedding(&self, x: &SimplexPoint) -> Result<(SpectralCluster, Embedding)> {
        self.embedding(x, 1)
    }

    /// Lengths of the `lambda_1` representation computed from the chamber
    /// point: `2 alpha_j V sqrt(k / |G|)`.
    pub fn closed_form_lengths(&self, p: &FundamentalPoint) -> Vec<f64> {
        let scale = (self.rank() as f64 / self.order() as f64).sqrt();
        self.domain
            .edge_lengths_closed_form(p)
            .into_iter()
            .map(|l| l * scale)
            .collect()
    }
}

/// Closed-form minimiser of `lambda_1` for the Gram pattern with parameter
/// `eta`, with `rho = 3 - eta^2`:
/// `X_0 = (3 + rho + eta, 3 + 3 eta, 6 + 2 eta) / (12 + rho + 6 eta)` and
/// `lambda = (12 + 6 eta - rho) / (12 + 6 eta + rho)`.
pub fn closed_form_minimum(eta: f64) -> ([f64; 3], f64) {
    let rho = 3.0 - eta * eta;
    let d = 12.0 + rho + 6.0 * eta;
    (
        [(3.0 + rho + eta) / d, (3.0 + 3.0 * eta) / d, (6.0 + 2.0 * eta) / d],
        (12.0 + 6.0 * eta - rho) / (12.0 + 6.0 * eta + rho),
    )
}

#[derive(Clone, Copy, Debug)]
pub struct OptimizerOptions {
    /// Central-difference step.
    pub h: f64,
    pub max_iterations: usize,
    /// Armijo sufficient-decrease constant.
    pub armijo: f64,
    /// Stop once the tangent gradient is this small.
    pub gradient_tol: f64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            h: 1e-6,
            max_iterations: 10_000,
            armijo: 1e-4,
            gradient_tol: 1e-8,
        }
    }
}

/// Central-difference derivatives of `lambda_1` at `x`.
#[derive(Clone, Debug, Serialize)]
pub struct FiniteDifferenceGradient {
    /// Gradient in the tangent space `{v : sum m_j v_j = 0}`.
    pub gradient: Vec<f64>,
    pub norm: f64,
}

fn exchange_direction(m: &[usize], a: usize, b: usize) -> Vec<f64> {
    let mut d = vec![0.0; m.len()];
    d[a] = 1.0 / m[a] as f64;
    d[b] = -1.0 / m[b] as f64;
    d
}

/// Central difference of `lambda_1` along `direction` (which must keep the
/// constraint). The step shrinks near the boundary.
pub fn directional_derivative(system: &CayleySystem, x: &SimplexPoint, direction: &[f64], h: f64) -> Result<f64> {
    let reach = direction
        .iter()
        .zip(x.weights())
        .filter(|(d, _)| **d != 0.0)
        .map(|(d, w)| w / d.abs())
        .fold(f64::INFINITY, f64::min);
    let h = h.min(0.5 * reach);
    if !(h > 0.0) {
        return Err(Error::Precondition("finite differences need an interior point".into()));
    }
    let plus = system.lambda1(&x.offset(direction, h)?)?;
    let minus = system.lambda1(&x.offset(direction, -h)?)?;
    Ok((plus - minus) / (2.0 * h))
}

/// Tangent gradient from the derivatives along `e_a / m_a - e_N / m_N`.
pub fn finite_difference_gradient(system: &CayleySystem, x: &SimplexPoint, h: f64) -> Result<FiniteDifferenceGradient> {
    let m = x.multiplicities();
    let last = m.len() - 1;
    let mut g = vec![0.0; m.len()];
    for a in 0..last {
        g[a] = m[a] as f64 * directional_derivative(system, x, &exchange_direction(m, a, last), h)?;
    }
    // g . d_a = D_a holds already; project onto the tangent space.
    let mm: f64 = m.iter().map(|&v| (v * v) as f64).sum();
    let gm: f64 = g.iter().zip(m).map(|(a, &b)| a * b as f64).sum();
    g.iter_mut().zip(m).for_each(|(v, &b)| *v -= gm / mm * b as f64);
    let norm = linalg::norm(&g);
    Ok(FiniteDifferenceGradient { gradient: g, norm })
}

#[derive(Clone, Debug, Serialize)]
pub struct OptimizerResult {
    pub point: SimplexPoint,
    pub value: f64,
    pub iterations: usize,
    pub gradient_norm: f64,
}

/// Projected gradient descent on `lambda_1` with Barzilai-Borwein trial steps
/// and Armijo backtracking.
pub fn projected_gradient_descent(
    system: &CayleySystem,
    start: &SimplexPoint,
    opts: &OptimizerOptions,
) -> Result<OptimizerResult> {
    let m = start.multiplicities().to_vec();
    let mut x = start.clone();
    let mut f = system.lambda1(&x)?;
    let mut g = finite_difference_gradient(system, &x, opts.h)?;
    let mut step = 0.1 / g.norm.max(1e-12);
    for it in 1..=opts.max_iterations {
        if g.norm <= opts.gradient_tol {
            return Ok(OptimizerResult {
                point: x,
                value: f,
                iterations: it - 1,
                gradient_norm: g.norm,
            });
        }
        let mut s = step;
        let mut accepted = None;
        for _ in 0..60 {
            let raw: Vec<f64> = x.weights().iter().zip(&g.gradient).map(|(a, b)| a - s * b).collect();
            let xn = project_to_simplex(&raw, &m)?;
            let d: Vec<f64> = xn.weights().iter().zip(x.weights()).map(|(a, b)| a - b).collect();
            if d.iter().all(|v| v.abs() < 1e-15) {
                break;
            }
            if xn.is_interior() {
                let fnew = system.lambda1(&xn)?;
                // slack for eigenvalue round-off
                let slack = 8.0 * f64::EPSILON;
                if fnew <= f + opts.armijo * linalg::dot(&g.gradient, &d) + slack {
                    accepted = Some((xn, fnew, d));
                    break;
                }
            }
            s *= 0.5;
        }
        let Some((xn, fnew, d)) = accepted else {
            if g.norm <= 1e-6 {
                return Ok(OptimizerResult {
                    point: x,
                    value: f,
                    iterations: it,
                    gradient_norm: g.norm,
                });
            }
            return Err(Error::OptimizerStalled {
                iterations: it,
                best_point: x.weights().to_vec(),
                best_value: f,
            });
        };
        let gn = finite_difference_gradient(system, &xn, opts.h)?;
        let y: Vec<f64> = gn.gradient.iter().zip(&g.gradient).map(|(a, b)| a - b).collect();
        let sy = linalg::dot(&d, &y);
        let ss = linalg::dot(&d, &d);
        step = if sy > 0.0 { ss / sy } else { 2.0 * s };
        let tiny = d.iter().all(|v| v.abs() < 1e-13);
        x = xn;
        f = fnew;
        g = gn;
        if tiny {
            return Ok(OptimizerResult {
                point: x,
                value: f,
                iterations: it,
                gradient_norm: g.norm,
            });
        }
        log::debug!("iteration {it}: lambda_1 = {f:.15}, |grad| = {:e}", g.norm);
    }
    Err(Error::OptimizerStalled {
        iterations: opts.max_iterations,
        best_point: x.weights().to_vec(),
        best_value: f,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct CertificateOptions {
    pub h: f64,
    /// A point counts as critical when the gradient norm is at most this.
    pub gradient_tol: f64,
    /// Equilateral means `max / min` class length at most `1 + tol`.
    pub equilateral_tol: f64,
    /// Required gap between the `lambda_1` cluster and the rest.
    pub min_gap: f64,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        Self {
            h: 1e-6,
            gradient_tol: 1e-6,
            equilateral_tol: 1e-7,
            min_gap: 1e-4,
        }
    }
}

/// One exchange direction `e_a / m_a - e_b / m_b`.
#[derive(Clone, Debug, Serialize)]
pub struct ExchangeDerivative {
    pub a: usize,
    pub b: usize,
    /// Central-difference derivative of `lambda_1`.
    pub derivative: f64,
    /// `<Phi(e), Phi(s_a)> - <Phi(e), Phi(s_b)>`.
    pub inner_difference: f64,
    /// `|inner_difference - (k / n) derivative|`.
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalReport {
    pub point: SimplexPoint,
    pub lambda: f64,
    pub multiplicity: usize,
    pub gap: f64,
    pub gradient: Vec<f64>,
    pub gradient_norm: f64,
    pub exchanges: Vec<ExchangeDerivative>,
    pub class_lengths: Vec<f64>,
    pub length_ratio: f64,
    pub equilateral: bool,
    pub critical: bool,
    /// Largest residual of the derivative identity over all exchanges.
    pub identity_residual: f64,
}

impl CriticalReport {
    /// Whether "equilateral iff critical" holds at this point.
    pub fn consistent(&self) -> bool {
        self.equilateral == self.critical
    }
}

/// Measures both sides of the criticality criterion at an interior point.
pub fn critical_certificate(system: &CayleySystem, x: &SimplexPoint, opts: &CertificateOptions) -> Result<CriticalReport> {
    if !x.is_interior() {
        return Err(Error::Precondition("certificate needs an interior point".into()));
    }
    let (cluster, emb) = system.second_embedding(x)?;
    if cluster.gap <= opts.min_gap {
        return Err(Error::Precondition(format!(
            "lambda_1 cluster gap {:e} is below {:e}; multiplicity may not be locally constant",
            cluster.gap, opts.min_gap
        )));
    }
    let graph = system.graph();
    let lengths = edge_class_lengths(&emb, graph)?;
    let length_ratio = spectral::length_ratio(&lengths);
    let gradient = finite_difference_gradient(system, x, opts.h)?;

    let n = system.order() as f64;
    let k = cluster.multiplicity as f64;
    let m = x.multiplicities();
    let identity = 0;
    let mut exchanges = Vec::new();
    for a in 0..m.len() {
        for b in (a + 1)..m.len() {
            let derivative = directional_derivative(system, x, &exchange_direction(m, a, b), opts.h)?;
            let inner_difference =
                emb.inner(identity, graph.neighbor(identity, a)) - emb.inner(identity, graph.neighbor(identity, b));
            exchanges.push(ExchangeDerivative {
                a,
                b,
                derivative,
                inner_difference,
                residual: (inner_difference - k / n * derivative).abs(),
            });
        }
    }
    let identity_residual = exchanges.iter().map(|e| e.residual).fold(0.0, f64::max);
    Ok(CriticalReport {
        point: x.clone(),
        lambda: cluster.eigenvalue,
        multiplicity: cluster.multiplicity,
        gap: cluster.gap,
        gradient_norm: gradient.norm,
        gradient: gradient.gradient,
        exchanges,
        class_lengths: lengths.iter().map(|l| l.length).collect(),
        length_ratio,
        equilateral: length_ratio <= 1.0 + opts.equilateral_tol,
        critical: gradient.norm <= opts.gradient_tol,
        identity_residual,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimumReport {
    pub closed_form_point: Vec<f64>,
    pub closed_form_lambda: f64,
    pub numeric: OptimizerResult,
    /// `max_j |x_j - x0_j|` between the two minimisers.
    pub point_deviation: f64,
    pub lambda_deviation: f64,
    pub certificate: CriticalReport,
}

/// Minimises `lambda_1` numerically from `X_hat` and compares with the
/// closed form. Requires the rank-3 Gram pattern of the built-in groups.
pub fn minimize_lambda1(system: &CayleySystem) -> Result<MinimumReport> {
    minimize_lambda1_with(system, &OptimizerOptions::default())
}

pub fn minimize_lambda1_with(system: &CayleySystem, opts: &OptimizerOptions) -> Result<MinimumReport> {
    let eta = system.group().datum().rank3_eta().ok_or_else(|| {
        Error::Precondition(format!("{} does not have the rank-3 pattern m12 = 2, m13 = 3", system.name()))
    })?;
    let (x0, lambda0) = closed_form_minimum(eta);
    let numeric = projected_gradient_descent(system, &system.barycenter(), opts)?;
    let point_deviation = numeric
        .point
        .weights()
        .iter()
        .zip(x0)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let lambda_deviation = (numeric.value - lambda0).abs();
    let certificate = critical_certificate(system, &numeric.point, &CertificateOptions::default())?;
    Ok(MinimumReport {
        closed_form_point: x0.to_vec(),
        closed_form_lambda: lambda0,
        numeric,
        point_deviation,
        lambda_deviation,
        certificate,
    })
}

/// The three deformation curves through the minimum. On `C_i` the chamber
/// coefficient `alpha_i` is 1 and the other two are equal to `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Curve {
    C1,
    C2,
    C3,
}

impl Curve {
    pub const ALL: [Curve; 3] = [Curve::C1, Curve::C2, Curve::C3];

    /// The distinguished class.
    pub fn index(self) -> usize {
        match self {
            Curve::C1 => 0,
            Curve::C2 => 1,
            Curve::C3 => 2,
        }
    }

    pub fn alpha(self, t: f64) -> [f64; 3] {
        let mut a = [t; 3];
        a[self.index()] = 1.0;
        a
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.index() + 1)
    }
}

impl FromStr for Curve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "C1" => Ok(Curve::C1),
            "C2" => Ok(Curve::C2),
            "C3" => Ok(Curve::C3),
            _ => Err(Error::Usage(format!("unknown curve `{s}` (expected C1, C2 or C3)"))),
        }
    }
}

/// The explicit H3 parametrisation of `C_2`:
/// `((5-phi) t + phi, 3 phi t^2 + 3 t, 6 t + 2 phi) / (3 phi t^2 + (14 - phi) t + 3 phi)`.
pub fn h3_c2_closed_form(t: f64) -> [f64; 3] {
    let phi = crate::GOLDEN_RATIO;
    let d = 3.0 * phi * t * t + (14.0 - phi) * t + 3.0 * phi;
    [
        ((5.0 - phi) * t + phi) / d,
        (3.0 * phi * t * t + 3.0 * t) / d,
        (6.0 * t + 2.0 * phi) / d,
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveSample {
    pub curve: Curve,
    pub t: f64,
    pub point: SimplexPoint,
    /// Eigenvalue from the chamber point.
    pub lambda: f64,
    pub alpha: Vec<f64>,
    /// Class lengths measured on the spectral representation.
    pub class_lengths: Vec<f64>,
    /// The same lengths from `2 alpha_j V sqrt(k / |G|)`.
    pub closed_form_lengths: Vec<f64>,
    /// Classes whose measured lengths coincide within `1e-8`.
    pub coinciding: Vec<(usize, usize)>,
    pub distinct_points: usize,
}

/// A point of curve `curve` at parameter `t > 0`, with its measured
/// `lambda_1` representation.
pub fn curve_point(system: &CayleySystem, curve: Curve, t: f64) -> Result<CurveSample> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("curve parameter must be positive, got {t}")));
    }
    if system.rank() != 3 {
        return Err(Error::Precondition("curves are defined for rank 3".into()));
    }
    let domain = system.domain();
    let p = domain.point(&curve.alpha(t))?;
    let image = domain.psi_maps(&p)?;
    let (_, emb) = system.second_embedding(&image.point)?;
    let lengths: Vec<f64> = edge_class_lengths(&emb, system.graph())?
        .iter()
        .map(|l| l.length)
        .collect();
    let mut coinciding = Vec::new();
    for a in 0..3 {
        for b in (a + 1)..3 {
            if (lengths[a] - lengths[b]).abs() <= 1e-8 {
                coinciding.push((a, b));
            }
        }
    }
    let distinct_points = dedup_points(emb.points(), spectral::FAITHFUL_REL_TOL * emb.radius()).len();
    Ok(CurveSample {
        curve,
        t,
        point: image.point,
        lambda: image.lambda,
        alpha: p.alpha().to_vec(),
        class_lengths: lengths,
        closed_form_lengths: system.closed_form_lengths(&p),
        coinciding,
        distinct_points,
    })
}

/// Below this fraction of the largest coefficient a limiting chamber
/// coefficient is taken to vanish.
pub const LIMIT_ZERO_TOL: f64 = 1e-3;

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryLimit {
    pub target: Vec<f64>,
    pub curve: Option<Curve>,
    /// `(epsilon_n, alpha_n / max alpha_n)` along the approach.
    pub sequence: Vec<(f64, Vec<f64>)>,
    /// Extrapolated limit coefficients (largest entry 1).
    pub alpha: Vec<f64>,
    pub vanishing: Vec<usize>,
    /// Unit limit point `p`.
    pub point: Vec<f64>,
    pub orbit_size: usize,
    /// Vertex configuration of the polyhedron spanned by the orbit.
    pub label: Option<String>,
}

const LIMIT_STEPS: i32 = 8;

/// End points of a curve: the edge-interior point reached as `t -> 0`
/// (`x_i = 0`, `x_j` proportional to `(M^{-1})_{ji}`) and the vertex `e_i`
/// reached as `t -> infinity`.
pub fn curve_endpoints(system: &CayleySystem, curve: Curve) -> Result<(SimplexPoint, SimplexPoint)> {
    if system.rank() != 3 {
        return Err(Error::Precondition("curves are defined for rank 3".into()));
    }
    let i = curve.index();
    let minv = system.domain().gram_inverse();
    let raw: Vec<f64> = (0..3).map(|j| if j == i { 0.0 } else { minv[(j, i)] }).collect();
    let mut vertex = vec![0.0; 3];
    vertex[i] = 1.0;
    Ok((system.point(&normalize(&raw))?, system.point(&vertex)?))
}

fn normalize(v: &[f64]) -> Vec<f64> {
    let s: f64 = v.iter().sum();
    v.iter().map(|x| x / s).collect()
}

/// Limit of the orbit `G p` as `X` approaches a boundary point.
///
/// Without a curve the target must be edge-interior (not a vertex) and is
/// approached on the segment from `X_hat`,
/// `X_n = (1 - e_n) target + e_n X_hat` with `e_n = 2^-n`. With a curve the
/// target must be one of its end points, approached with `t_n = e_n` or
/// `t_n = 1 / e_n`. The normalised chamber coefficients are extrapolated
/// linearly to `e = 0`.
pub fn boundary_limit(system: &CayleySystem, target: &SimplexPoint, curve: Option<Curve>) -> Result<BoundaryLimit> {
    let domain = system.domain();
    let support = target.weights().iter().filter(|&&w| w > 0.0).count();
    if support == target.len() {
        return Err(Error::Precondition("target is not on the boundary of the simplex".into()));
    }
    // Some(true): t -> 0 along the curve, Some(false): t -> infinity.
    let towards_zero = match curve {
        None if support == 1 => {
            return Err(Error::Precondition(
                "the limit at a simplex vertex depends on the approach; pass a curve".into(),
            ))
        }
        None => None,
        Some(c) => {
            let (start, end) = curve_endpoints(system, c)?;
            if target.max_abs_diff(&start) <= 1e-12 {
                Some(true)
            } else if target.max_abs_diff(&end) <= 1e-12 {
                Some(false)
            } else {
                return Err(Error::Precondition(format!(
                    "{:?} is not an end point of curve {c}",
                    target.weights()
                )));
            }
        }
    };
    let hat = system.barycenter();
    let mut sequence = Vec::new();
    for n in 1..=LIMIT_STEPS {
        let eps = 2f64.powi(-n);
        let x = match (curve, towards_zero) {
            (Some(c), Some(zero)) => {
                let t = if zero { eps } else { 1.0 / eps };
                domain.psi_maps(&domain.point(&c.alpha(t))?)?.point
            }
            _ => target.lerp(&hat, eps)?,
        };
        let alpha = domain.psi_delta_inverse(&x)?.alpha().to_vec();
        let max = alpha.iter().copied().fold(0.0, f64::max);
        sequence.push((eps, alpha.iter().map(|a| a / max).collect::<Vec<f64>>()));
    }
    let (e1, a1) = &sequence[sequence.len() - 2];
    let (e2, a2) = &sequence[sequence.len() - 1];
    let mut alpha: Vec<f64> = a1
        .iter()
        .zip(a2)
        .map(|(p, q)| q - e2 * (p - q) / (e1 - e2))
        .collect();
    let max = alpha.iter().copied().fold(0.0, f64::max);
    let mut vanishing = Vec::new();
    for (j, a) in alpha.iter_mut().enumerate() {
        *a /= max;
        if *a < LIMIT_ZERO_TOL {
            *a = 0.0;
            vanishing.push(j);
        }
    }
    let p = domain.point(&alpha)?;
    let orbit = system.group().orbit(p.point());
    let orbit_size = dedup_points(&orbit, ORBIT_TOL).len();
    let label = if system.rank() == 3 {
        MeshDocument::from_cayley_points(system.graph(), &orbit, ORBIT_TOL)?.solid_label()
    } else {
        None
    };
    Ok(BoundaryLimit {
        target: target.weights().to_vec(),
        curve,
        sequence,
        alpha,
        vanishing,
        point: p.point().to_vec(),
        orbit_size,
        label,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub point: Vec<f64>,
    pub lambda1: f64,
    pub multiplicity: usize,
    /// Class lengths of the `lambda_1` representation, from the chamber point.
    pub lengths: Vec<f64>,
}

/// Grid points `(i_1, ..., i_k) / (g + 1)` with all `i_j >= 1`, in
/// lexicographic order. Every coordinate is at least `1 / (g + 1)`.
pub fn sweep_grid(rank: usize, g: usize) -> Vec<Vec<f64>> {
    fn rec(left: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for i in 1..=(left - (slots - 1)) {
            prefix.push(i);
            rec(left - i, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let total = g + 1;
    if rank == 0 || total < rank {
        return Vec::new();
    }
    let mut idx = Vec::new();
    rec(total, rank, &mut Vec::new(), &mut idx);
    idx.into_iter()
        .map(|v| v.into_iter().map(|i| i as f64 / total as f64).collect())
        .collect()
}

/// `lambda_1`, its multiplicity and the class lengths on a barycentric grid
/// over the interior of the simplex. Rows are evaluated in parallel and
/// returned in grid order.
pub fn sweep_lambda1(system: &CayleySystem, g: usize) -> Result<Vec<SweepRow>> {
    if g < 2 {
        return Err(Error::Usage(format!("grid resolution must be at least 2, got {g}")));
    }
    let grid = sweep_grid(system.rank(), g);
    grid.into_par_iter()
        .map(|w| {
            let x = system.point(&w)?;
            let (lambda1, multiplicity) = system.lambda1_with_multiplicity(&x)?;
            let p = system.domain().psi_delta_inverse(&x)?;
            Ok(SweepRow {
                point: w,
                lambda1,
                multiplicity,
                lengths: system.closed_form_lengths(&p),
            })
        })
        .collect()
}
