//! Numerical verification suites with machine-readable reports.
//!
//! Each check records what was measured, the tolerance it was held to and
//! the verdict. Random samples come from a fixed-seed generator so reports
//! are reproducible.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coxeter::Builtin;
use crate::coxmaps::{moment_deviation, moment_matrix};
use crate::error::{Error, Result};
use crate::fourier::{characteristic_coefficients, crosscheck_mu1, h3_characteristic_closed_form, rep_fourier};
use crate::linalg::{self, Matrix, PF_DEFAULT_TOL};
use crate::mesh::MeshDocument;
use crate::randwalk::SimplexPoint;
use crate::solids::{
    boundary_limit, critical_certificate, curve_endpoints, curve_point, h3_c2_closed_form, minimize_lambda1,
    CayleySystem, CertificateOptions, Curve,
};
use crate::spectral::{gram_invariance_check, RESIDUAL_TOL};
use crate::GOLDEN_RATIO;

const SEED: u64 = 0x5eed_c0de;

/// Smallest weight of randomly sampled interior points.
const SAMPLE_MIN_WEIGHT: f64 = 0.02;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    ClosedForms,
    Invariants,
    Theorem2,
    Curves,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["closed_forms", "invariants", "theorem2", "curves", "all"];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::ClosedForms => "closed_forms",
            Suite::Invariants => "invariants",
            Suite::Theorem2 => "theorem2",
            Suite::Curves => "curves",
            Suite::All => "all",
        };
        f.write_str(name)
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed_forms" => Ok(Suite::ClosedForms),
            "invariants" => Ok(Suite::Invariants),
            "theorem2" => Ok(Suite::Theorem2),
            "curves" => Ok(Suite::Curves),
            "all" => Ok(Suite::All),
            _ => Err(Error::Usage(format!(
                "unknown suite `{s}` (expected one of {})",
                Suite::NAMES.join(", ")
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">")]
    Above,
    #[serde(rename = "==")]
    Equal,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub measured: f64,
    pub tolerance: f64,
    pub relation: Relation,
    pub verdict: Verdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Default)]
struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn push(&mut self, id: impl Into<String>, measured: f64, tolerance: f64, relation: Relation) {
        let ok = match relation {
            Relation::AtMost => measured <= tolerance,
            Relation::Above => measured > tolerance,
            Relation::Equal => measured == tolerance,
        };
        self.checks.push(Check {
            id: id.into(),
            measured,
            tolerance,
            relation,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        });
    }

    fn at_most(&mut self, id: impl Into<String>, measured: f64, tolerance: f64) {
        self.push(id, measured, tolerance, Relation::AtMost);
    }

    fn above(&mut self, id: impl Into<String>, measured: f64, threshold: f64) {
        self.push(id, measured, threshold, Relation::Above);
    }

    fn equal(&mut self, id: impl Into<String>, measured: usize, expected: usize) {
        self.push(id, measured as f64, expected as f64, Relation::Equal);
    }

    /// Records a failed check for an operation that returned an error.
    fn error(&mut self, id: impl Into<String>, err: &Error) {
        let id = id.into();
        log::error!("{id}: {err}");
        self.push(id, f64::NAN, 0.0, Relation::Equal);
    }
}

/// The built-in systems, built once per suite run.
struct Systems {
    all: Vec<(Builtin, CayleySystem)>,
}

impl Systems {
    fn build() -> Result<Self> {
        let all = Builtin::ALL
            .iter()
            .map(|&b| Ok((b, CayleySystem::builtin(b)?)))
            .collect::<Result<_>>()?;
        Ok(Self { all })
    }

    fn get(&self, b: Builtin) -> &CayleySystem {
        &self.all.iter().find(|(k, _)| *k == b).expect("all built-ins present").1
    }
}

/// Runs a suite by name; unknown names give a usage error.
pub fn run_suite_named(name: &str) -> Result<Report> {
    run_suite(name.parse()?)
}

pub fn run_suite(suite: Suite) -> Result<Report> {
    let systems = Systems::build()?;
    let mut rec = Recorder::default();
    let parts: &[Suite] = match suite {
        Suite::All => &[Suite::ClosedForms, Suite::Invariants, Suite::Theorem2, Suite::Curves],
        _ => std::slice::from_ref(&suite),
    };
    for part in parts {
        match part {
            Suite::ClosedForms => closed_forms(&systems, &mut rec),
            Suite::Invariants => invariants(&systems, &mut rec),
            Suite::Theorem2 => theorem2(&systems, &mut rec),
            Suite::Curves => curves(&systems, &mut rec),
            Suite::All => unreachable!(),
        }
    }
    let passed = rec.checks.iter().all(|c| c.verdict == Verdict::Pass);
    Ok(Report {
        suite,
        passed,
        checks: rec.checks,
    })
}

/// Expected minimiser and minimum, written out per group.
fn expected_minimum(b: Builtin) -> ([f64; 3], f64) {
    let phi = GOLDEN_RATIO;
    let r2 = 2f64.sqrt();
    match b {
        Builtin::H3 => {
            let d = 14.0 + 5.0 * phi;
            ([5.0 / d, (3.0 + 3.0 * phi) / d, (6.0 + 2.0 * phi) / d], (10.0 + 7.0 * phi) / d)
        }
        Builtin::B3 => {
            let d = 13.0 + 6.0 * r2;
            ([(4.0 + r2) / d, (3.0 + 3.0 * r2) / d, (6.0 + 2.0 * r2) / d], (11.0 + 6.0 * r2) / d)
        }
        Builtin::A3 => ([0.3, 0.3, 0.4], 0.8),
    }
}

/// `lambda_1` of the canonical Laplacian.
fn expected_barycenter_lambda(b: Builtin) -> f64 {
    match b {
        Builtin::A3 => (1.0 + 2f64.sqrt()) / 3.0,
        Builtin::B3 => (1.0 + 3f64.sqrt()) / 3.0,
        Builtin::H3 => (1.0 + (2.0 + GOLDEN_RATIO).sqrt()) / 3.0,
    }
}

/// Perron-Frobenius eigenvalue of `M^{-1}`.
fn expected_gram_inverse_pf(b: Builtin) -> f64 {
    match b {
        Builtin::A3 => 2.0 + 2f64.sqrt(),
        Builtin::B3 => 4.0 + 2.0 * 3f64.sqrt(),
        Builtin::H3 => 2.0 / (2.0 - (2.0 + GOLDEN_RATIO).sqrt()),
    }
}

fn closed_forms(systems: &Systems, rec: &mut Recorder) {
    for &(b, ref s) in &systems.all {
        let (x0, l0) = expected_minimum(b);
        match minimize_lambda1(s) {
            Ok(r) => {
                rec.at_most(format!("closed_forms/{b}/min_lambda"), (r.numeric.value - l0).abs(), 1e-9);
                let dev = r
                    .numeric
                    .point
                    .weights()
                    .iter()
                    .zip(x0)
                    .map(|(a, e)| (a - e).abs())
                    .fold(0.0, f64::max);
                rec.at_most(format!("closed_forms/{b}/min_point"), dev, 1e-6);
            }
            Err(e) => rec.error(format!("closed_forms/{b}/minimize"), &e),
        }

        let hat = s.barycenter();
        match s.clusters(&hat) {
            Ok(clusters) => {
                let c = &clusters[1];
                rec.at_most(
                    format!("closed_forms/{b}/barycenter_lambda1"),
                    (c.eigenvalue - expected_barycenter_lambda(b)).abs(),
                    1e-9,
                );
                rec.equal(format!("closed_forms/{b}/barycenter_multiplicity"), c.multiplicity, 3);
            }
            Err(e) => rec.error(format!("closed_forms/{b}/barycenter"), &e),
        }

        let domain = s.domain();
        let eta = b.eta();
        let rho = 3.0 - eta * eta;
        rec.at_most(
            format!("closed_forms/{b}/volume_squared"),
            (domain.volume().powi(2) - rho / 4.0).abs(),
            1e-12,
        );
        match linalg::perron_frobenius(domain.gram_inverse(), PF_DEFAULT_TOL) {
            Ok((lpf, _)) => {
                rec.at_most(
                    format!("closed_forms/{b}/gram_inverse_pf"),
                    (lpf - expected_gram_inverse_pf(b)).abs(),
                    1e-10,
                );
                // lambda = 1 - 2 / (3 Lambda) at X_hat
                if let Ok(l) = domain.lambda_closed_form(&hat) {
                    rec.at_most(
                        format!("closed_forms/{b}/barycenter_from_pf"),
                        (l - (1.0 - 2.0 / (3.0 * lpf))).abs(),
                        1e-12,
                    );
                }
            }
            Err(e) => rec.error(format!("closed_forms/{b}/gram_inverse_pf"), &e),
        }
        match domain.point(&[1.0, 1.0, 1.0]).and_then(|p| domain.psi_maps(&p)) {
            Ok(image) => {
                let dev = image.point.weights().iter().zip(x0).map(|(a, e)| (a - e).abs()).fold(0.0, f64::max);
                rec.at_most(format!("closed_forms/{b}/psi_equal_alpha_point"), dev, 1e-12);
                rec.at_most(format!("closed_forms/{b}/psi_equal_alpha_lambda"), (image.lambda - l0).abs(), 1e-12);
            }
            Err(e) => rec.error(format!("closed_forms/{b}/psi_equal_alpha"), &e),
        }
    }
    // f(t) = (t - 1/3)(t^2 - 2t/3 - (phi + 1)/9) at X_hat for H3
    let h3 = systems.get(Builtin::H3);
    if let Ok(rep) = rep_fourier(&h3.barycenter(), h3.group()) {
        let disc = (4.0 / 9.0 + 4.0 * (GOLDEN_RATIO + 1.0) / 9.0).sqrt();
        let mut expected = [1.0 / 3.0, (2.0 / 3.0 + disc) / 2.0, (2.0 / 3.0 - disc) / 2.0];
        expected.sort_by(|a, b| b.total_cmp(a));
        let dev = rep.roots.iter().zip(expected).map(|(a, e)| (a - e).abs()).fold(0.0, f64::max);
        rec.at_most("closed_forms/H3/barycenter_fourier_roots", dev, 1e-12);
    }
}

fn random_points(rng: &mut ChaCha8Rng, count: usize) -> Vec<SimplexPoint> {
    (0..count)
        .map(|_| SimplexPoint::random_interior(rng, 3, SAMPLE_MIN_WEIGHT))
        .collect()
}

fn invariants(systems: &Systems, rec: &mut Recorder) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let expected_orders = [(Builtin::A3, 24), (Builtin::B3, 48), (Builtin::H3, 120)];
    for (b, n) in expected_orders {
        rec.equal(format!("invariants/{b}/group_order"), systems.get(b).order(), n);
    }
    let h3 = systems.get(Builtin::H3);
    rec.equal("invariants/H3/vertices", h3.graph().vertex_count(), 120);
    rec.equal("invariants/H3/edges", h3.graph().edge_count(), 180);
    match h3
        .second_embedding(&h3.barycenter())
        .and_then(|(_, emb)| MeshDocument::from_cayley_points(h3.graph(), emb.points(), 1e-9))
    {
        Ok(mesh) => {
            let census = mesh.face_census();
            for (size, count) in [(4, 30), (6, 20), (10, 12)] {
                rec.equal(format!("invariants/H3/faces_{size}"), census.get(&size).copied().unwrap_or(0), count);
            }
            rec.equal("invariants/H3/face_count", mesh.faces.len(), 62);
            rec.push("invariants/H3/euler", mesh.euler_characteristic() as f64, 2.0, Relation::Equal);
        }
        Err(e) => rec.error("invariants/H3/mesh", &e),
    }

    for &(b, ref s) in &systems.all {
        // Fourier cross-check and chamber consistency at random points
        let mut fourier = 0.0f64;
        let mut psi = 0.0f64;
        let mut round_trip = 0.0f64;
        let mut bipartite = 0.0f64;
        let mut failure = None;
        for (i, x) in random_points(&mut rng, 100).iter().enumerate() {
            let res = (|| -> Result<()> {
                let values = s.spectrum(x)?;
                if i < 50 {
                    fourier = fourier.max(crosscheck_mu1(x, s.group(), s.graph())?);
                }
                psi = psi.max((s.domain().lambda_closed_form(x)? - values[1]).abs());
                let p = s.domain().psi_delta_inverse(x)?;
                let back = s.domain().psi_maps(&p)?;
                round_trip = round_trip.max(back.point.max_abs_diff(x));
                let n = values.len();
                for k in 0..n {
                    bipartite = bipartite.max((values[k] + values[n - 1 - k]).abs());
                }
                Ok(())
            })();
            if let Err(e) = res {
                failure = Some(e);
                break;
            }
        }
        if let Some(e) = failure {
            rec.error(format!("invariants/{b}/random_points"), &e);
            continue;
        }
        rec.at_most(format!("invariants/{b}/fourier_mu1"), fourier, 1e-9);
        rec.at_most(format!("invariants/{b}/psi_lambda"), psi, 1e-9);
        rec.at_most(format!("invariants/{b}/psi_round_trip"), round_trip, 1e-9);
        rec.at_most(format!("invariants/{b}/bipartite_symmetry"), bipartite, 1e-9);

        // orbit eigenfunctions, invariance and moment matrix at one point
        let x = SimplexPoint::random_interior(&mut rng, 3, SAMPLE_MIN_WEIGHT);
        if let Err(e) = orbit_checks(b, s, &x, rec) {
            rec.error(format!("invariants/{b}/orbit"), &e);
        }
    }

    // H3 characteristic polynomial on a grid
    let mut worst = 0.0f64;
    for i in 0..=10 {
        for j in 0..=(10 - i) {
            let (x, y) = (i as f64 / 10.0, j as f64 / 10.0);
            let z = 1.0 - x - y;
            let Ok(pt) = h3.point(&[x, y, z.max(0.0)]) else { continue };
            if let Ok(rep) = rep_fourier(&pt, h3.group()) {
                if let Ok(c) = characteristic_coefficients(&rep.matrix) {
                    let w = pt.weights();
                    let e = h3_characteristic_closed_form(w[0], w[1], w[2]);
                    worst = c.iter().zip(e).map(|(a, b)| (a - b).abs()).fold(worst, f64::max);
                }
            }
        }
    }
    rec.at_most("invariants/H3/characteristic_polynomial", worst, 1e-12);

    // convexity of lambda_1 along random segments
    let mut violation = f64::NEG_INFINITY;
    let mut margin = f64::INFINITY;
    for _ in 0..200 {
        let (x, y) = loop {
            let x = SimplexPoint::random_interior(&mut rng, 3, SAMPLE_MIN_WEIGHT);
            let y = SimplexPoint::random_interior(&mut rng, 3, SAMPLE_MIN_WEIGHT);
            if x.max_abs_diff(&y) >= 0.05 {
                break (x, y);
            }
        };
        let vals = x.lerp(&y, 0.5).and_then(|mid| Ok((h3.lambda1(&x)?, h3.lambda1(&y)?, h3.lambda1(&mid)?)));
        match vals {
            Ok((a, b, m)) => {
                let gap = 0.5 * (a + b) - m;
                violation = violation.max(-gap);
                margin = margin.min(gap);
            }
            Err(e) => {
                rec.error("invariants/H3/convexity", &e);
                return;
            }
        }
    }
    rec.at_most("invariants/H3/midpoint_convexity", violation, 1e-9);
    rec.above("invariants/H3/strict_convexity_margin", margin, 1e-10);
}

fn orbit_checks(b: Builtin, s: &CayleySystem, x: &SimplexPoint, rec: &mut Recorder) -> Result<()> {
    let (cluster, emb) = s.second_embedding(x)?;
    let n = s.order();
    let p = s.domain().psi_delta_inverse(x)?;
    let orbit = s.group().orbit(p.point());
    // phi_r(g) = <g p, e_r> is an eigenfunction with norm^2 = |G| / 3
    let op = s.operator(x)?;
    let mut norm_dev = 0.0f64;
    let mut residual = 0.0f64;
    for r in 0..3 {
        let phi: Vec<f64> = orbit.iter().map(|q| q[r]).collect();
        norm_dev = norm_dev.max((linalg::dot(&phi, &phi) - n as f64 / 3.0).abs());
        let image = op.matrix().mul_vec(&phi);
        let res = image
            .iter()
            .zip(&phi)
            .map(|(a, b)| (a - cluster.eigenvalue * b).powi(2))
            .sum::<f64>()
            .sqrt();
        residual = residual.max(res);
    }
    rec.at_most(format!("invariants/{b}/orbit_norms"), norm_dev, 1e-8);
    rec.at_most(format!("invariants/{b}/orbit_eigenfunction"), residual, RESIDUAL_TOL);

    // Gram matrix of Phi against the scaled orbit
    let scale = (3.0 / n as f64).sqrt();
    let scaled: Vec<Vec<f64>> = orbit.iter().map(|q| q.iter().map(|v| v * scale).collect()).collect();
    let orbit_gram = Matrix::from_vec(
        n,
        n,
        (0..n).flat_map(|i| (0..n).map(|j| linalg::dot(&scaled[i], &scaled[j])).collect::<Vec<_>>()).collect(),
    );
    rec.at_most(format!("invariants/{b}/orbit_gram"), emb.gram().max_abs_diff(&orbit_gram), 1e-8);

    rec.at_most(format!("invariants/{b}/gram_invariance"), gram_invariance_check(&emb, s.group())?, 1e-8);
    rec.at_most(format!("invariants/{b}/sphere"), emb.sphere_deviation(), 1e-8);
    let (_, dev) = moment_deviation(&moment_matrix(s.group(), p.point()));
    rec.at_most(format!("invariants/{b}/moment_matrix"), dev, 1e-8);
    Ok(())
}

fn theorem2(systems: &Systems, rec: &mut Recorder) {
    let opts = CertificateOptions::default();
    for &(b, ref s) in &systems.all {
        let (x0, _) = expected_minimum(b);
        let at_min = s.point(&x0).and_then(|x| critical_certificate(s, &x, &opts));
        match at_min {
            Ok(c) => {
                rec.at_most(format!("theorem2/{b}/minimum_length_ratio"), c.length_ratio - 1.0, 1e-7);
                rec.at_most(format!("theorem2/{b}/minimum_gradient"), c.gradient_norm, 1e-6);
            }
            Err(e) => rec.error(format!("theorem2/{b}/minimum"), &e),
        }
        match critical_certificate(s, &s.barycenter(), &opts) {
            Ok(c) => {
                rec.above(format!("theorem2/{b}/barycenter_length_ratio"), c.length_ratio - 1.0, 1e-7);
                rec.above(format!("theorem2/{b}/barycenter_gradient"), c.gradient_norm, 1e-3);
            }
            Err(e) => rec.error(format!("theorem2/{b}/barycenter"), &e),
        }
    }

    let h3 = systems.get(Builtin::H3);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let mut worst = 0.0f64;
    let mut used = 0;
    let mut attempts = 0;
    while used < 20 && attempts < 200 {
        attempts += 1;
        let x = SimplexPoint::random_interior(&mut rng, 3, SAMPLE_MIN_WEIGHT);
        match critical_certificate(h3, &x, &opts) {
            Ok(c) => {
                worst = worst.max(c.identity_residual);
                used += 1;
            }
            Err(Error::Precondition(_)) => continue,
            Err(e) => {
                rec.error("theorem2/H3/derivative_identity", &e);
                return;
            }
        }
    }
    rec.equal("theorem2/H3/derivative_identity_samples", used, 20);
    rec.at_most("theorem2/H3/derivative_identity", worst, 1e-5);
}

fn curves(systems: &Systems, rec: &mut Recorder) {
    let h3 = systems.get(Builtin::H3);
    // closed-form C2 against the chamber construction
    let mut worst = 0.0f64;
    for k in 0..=20 {
        let t = 10f64.powf(-1.0 + k as f64 / 10.0);
        match h3.domain().point(&Curve::C2.alpha(t)).and_then(|p| h3.domain().psi_maps(&p)) {
            Ok(image) => {
                let e = h3_c2_closed_form(t);
                worst = image.point.weights().iter().zip(e).map(|(a, b)| (a - b).abs()).fold(worst, f64::max);
            }
            Err(e) => {
                rec.error("curves/H3/C2_closed_form", &e);
                return;
            }
        }
    }
    rec.at_most("curves/H3/C2_closed_form", worst, 1e-10);

    for c in Curve::ALL {
        match curve_point(h3, c, 1e3) {
            Ok(sample) => {
                let i = c.index();
                let short = sample.class_lengths[i];
                let others = (0..3)
                    .filter(|&j| j != i)
                    .map(|j| sample.class_lengths[j])
                    .fold(f64::INFINITY, f64::min);
                rec.at_most(format!("curves/H3/{c}/short_class_ratio"), short / others, 1e-2);
                rec.equal(format!("curves/H3/{c}/coinciding_pairs"), sample.coinciding.len(), 1);
            }
            Err(e) => rec.error(format!("curves/H3/{c}/sample"), &e),
        }
    }
    match curve_point(h3, Curve::C2, 1.0) {
        Ok(sample) => {
            let (x0, _) = expected_minimum(Builtin::H3);
            let dev = sample.point.weights().iter().zip(x0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            rec.at_most("curves/H3/C2_meets_minimum", dev, 1e-12);
        }
        Err(e) => rec.error("curves/H3/C2_meets_minimum", &e),
    }

    // limits along the curves and towards edge interiors
    let expected_vertex = [
        (Curve::C1, 60, "(3,10,10)"),
        (Curve::C2, 60, "(5,6,6)"),
        (Curve::C3, 60, "(3,4,5,4)"),
    ];
    for (c, count, label) in expected_vertex {
        match curve_endpoints(h3, c).and_then(|(_, end)| boundary_limit(h3, &end, Some(c))) {
            Ok(l) => {
                rec.equal(format!("curves/H3/{c}/vertex_limit_orbit"), l.orbit_size, count);
                let matches = l.label.as_deref() == Some(label);
                rec.equal(format!("curves/H3/{c}/vertex_limit_is_{label}"), matches as usize, 1);
            }
            Err(e) => rec.error(format!("curves/H3/{c}/vertex_limit"), &e),
        }
    }
    match curve_endpoints(h3, Curve::C2).and_then(|(start, _)| boundary_limit(h3, &start, Some(Curve::C2))) {
        Ok(l) => rec.equal("curves/H3/C2/zero_limit_orbit", l.orbit_size, 20),
        Err(e) => rec.error("curves/H3/C2/zero_limit", &e),
    }
    for (j, count, label) in [(0, 12, "(3,3,3,3,3)"), (1, 20, "(5,5,5)"), (2, 30, "(3,5,3,5)")] {
        let mut w = [0.5; 3];
        w[j] = 0.0;
        match h3.point(&w).and_then(|t| boundary_limit(h3, &t, None)) {
            Ok(l) => {
                rec.equal(format!("curves/H3/edge{}_limit_orbit", j + 1), l.orbit_size, count);
                let matches = l.label.as_deref() == Some(label);
                rec.equal(format!("curves/H3/edge{}_limit_is_{label}", j + 1), matches as usize, 1);
            }
            Err(e) => rec.error(format!("curves/H3/edge{}_limit", j + 1), &e),
        }
    }

    // lambda_1 tends to 1 at the boundary
    let targets: [[f64; 3]; 6] = [
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.5, 0.5],
        [0.5, 0.0, 0.5],
        [0.5, 0.5, 0.0],
    ];
    let mut closest = f64::INFINITY;
    let mut non_monotone = 0;
    for t in targets {
        let mut previous = f64::NEG_INFINITY;
        for eps in [1e-1, 1e-2, 1e-3, 1e-4] {
            let w: Vec<f64> = t.iter().map(|v| v * (1.0 - 3.0 * eps) + eps).collect();
            match h3.point(&w).and_then(|x| h3.lambda1(&x)) {
                Ok(l) => {
                    if l <= previous {
                        non_monotone += 1;
                    }
                    previous = l;
                    if eps == 1e-4 {
                        closest = closest.min(l);
                    }
                }
                Err(e) => {
                    rec.error("curves/H3/boundary_lambda", &e);
                    return;
                }
            }
        }
    }
    rec.above("curves/H3/boundary_lambda", closest, 0.999);
    rec.equal("curves/H3/boundary_monotone_violations", non_monotone, 0);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!(matches!("everything".parse::<Suite>(), Err(Error::Usage(_))));
    }
}
