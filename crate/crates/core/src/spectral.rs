//! Eigenvalue clusters of `P_X` and the spectral representations they carry.

use serde::Serialize;

use crate::coxeter::{CayleyGraph, ReflectionGroup};
use crate::error::{Error, Result};
use crate::linalg::{self, dot, orient_by_largest_entry, EigenDecomposition};
use crate::randwalk::TransitionOperator;

/// Default absolute tolerance for grouping eigenvalues.
pub const CLUSTER_TOL: f64 = 1e-7;

/// Largest accepted `||P phi - lambda phi||` for a cluster basis vector.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Largest accepted spread of edge lengths inside one edge class.
pub const CLASS_SPREAD_TOL: f64 = 1e-8;

/// Faithfulness threshold relative to the sphere radius.
pub const FAITHFUL_REL_TOL: f64 = 1e-6;

/// An eigenvalue with its multiplicity and an orthonormal eigenbasis.
#[derive(Clone, Debug)]
pub struct SpectralCluster {
    /// Mean of the grouped eigenvalues.
    pub eigenvalue: f64,
    pub multiplicity: usize,
    /// `max - min` of the grouped eigenvalues.
    pub spread: f64,
    /// Distance to the nearest eigenvalue outside the cluster (infinite if
    /// the cluster is the whole spectrum).
    pub gap: f64,
    pub basis: Vec<Vec<f64>>,
}

/// Groups a descending list of eigenvalues into runs of consecutive values.
///
/// Neighbours closer than `tol` are chained together. A chain whose total
/// spread exceeds `tol` is ambiguous; it is logged and split greedily into
/// runs of spread at most `tol`.
pub fn group_eigenvalues(values: &[f64], tol: f64) -> Vec<std::ops::Range<usize>> {
    let mut chains = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i - 1] - values[i] > tol {
            chains.push(start..i);
            start = i;
        }
    }
    let mut out = Vec::with_capacity(chains.len());
    for chain in chains {
        if values[chain.start] - values[chain.end - 1] <= tol {
            out.push(chain);
            continue;
        }
        log::warn!(
            "ambiguous eigenvalue cluster: {} values spanning {:e} > {tol:e}; using the finer partition",
            chain.len(),
            values[chain.start] - values[chain.end - 1]
        );
        let mut s = chain.start;
        for i in chain.clone().skip(1) {
            if values[s] - values[i] > tol {
                out.push(s..i);
                s = i;
            }
        }
        out.push(s..chain.end);
    }
    out
}

/// Full spectrum of `P_X` split into clusters, sorted descending.
pub fn spectrum_clusters(op: &TransitionOperator<'_>, cluster_tol: f64) -> Result<Vec<SpectralCluster>> {
    let eig = linalg::eigh_symmetric(op.matrix())?;
    Ok(clusters_from_decomposition(&eig, cluster_tol))
}

pub fn clusters_from_decomposition(eig: &EigenDecomposition, cluster_tol: f64) -> Vec<SpectralCluster> {
    let values = &eig.eigenvalues;
    let ranges = group_eigenvalues(values, cluster_tol);
    ranges
        .iter()
        .map(|r| {
            let above = r.start.checked_sub(1).map(|i| values[i] - values[r.start]);
            let below = values.get(r.end).map(|v| values[r.end - 1] - v);
            let gap = match (above, below) {
                (Some(a), Some(b)) => a.min(b),
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => f64::INFINITY,
            };
            let vectors: Vec<&[f64]> = eig.eigenvectors[r.clone()].iter().map(|v| v.as_slice()).collect();
            SpectralCluster {
                eigenvalue: values[r.clone()].iter().sum::<f64>() / r.len() as f64,
                multiplicity: r.len(),
                spread: values[r.start] - values[r.end - 1],
                gap,
                basis: canonical_basis(&vectors),
            }
        })
        .collect()
}

/// Basis of `span(vectors)` that depends only on the subspace.
///
/// Repeatedly projects the coordinate vectors `e_i` onto the part of the
/// subspace not yet covered and keeps the first `i` whose projection is at
/// least half the largest one; each pick is normalised and oriented by the
/// largest-entry rule.
fn canonical_basis(vectors: &[&[f64]]) -> Vec<Vec<f64>> {
    let k = vectors.len();
    let Some(n) = vectors.first().map(|v| v.len()) else {
        return Vec::new();
    };
    // Orthonormal basis of the uncovered part, expressed in `vectors`' span.
    let mut remaining: Vec<Vec<f64>> = vectors.iter().map(|v| v.to_vec()).collect();
    let mut chosen = Vec::with_capacity(k);
    for _ in 0..k {
        // squared norm of the projection of e_i onto span(remaining)
        let norms: Vec<f64> = (0..n)
            .map(|i| remaining.iter().map(|v| v[i] * v[i]).sum::<f64>())
            .collect();
        let best = norms.iter().copied().fold(0.0, f64::max);
        let i = norms.iter().position(|&x| x >= 0.25 * best).unwrap_or(0);
        let mut w = vec![0.0; n];
        for v in &remaining {
            let c = v[i];
            w.iter_mut().zip(v.iter()).for_each(|(a, b)| *a += c * b);
        }
        let len = linalg::norm(&w);
        w.iter_mut().for_each(|x| *x /= len);
        orient_by_largest_entry(&mut w);
        // Remove w from the remaining span and re-orthonormalise it.
        let mut next: Vec<Vec<f64>> = Vec::with_capacity(remaining.len());
        for v in &remaining {
            let mut u = v.clone();
            let c = dot(&u, &w);
            u.iter_mut().zip(&w).for_each(|(a, b)| *a -= c * b);
            for q in &next {
                let c = dot(&u, q);
                u.iter_mut().zip(q).for_each(|(a, b)| *a -= c * b);
            }
            let len = linalg::norm(&u);
            if len > 1e-8 {
                u.iter_mut().for_each(|x| *x /= len);
                next.push(u);
            }
        }
        next.truncate(k - chosen.len() - 1);
        remaining = next;
        chosen.push(w);
    }
    chosen
}

/// The spectral representation `Phi(i) = (phi_1(i), ..., phi_k(i))`.
#[derive(Clone, Debug, Serialize)]
pub struct Embedding {
    pub eigenvalue: f64,
    /// `points[i]` is the image of vertex `i`.
    points: Vec<Vec<f64>>,
}

impl Embedding {
    /// Wraps precomputed coordinates (rows are vertices).
    pub fn from_points(eigenvalue: f64, points: Vec<Vec<f64>>) -> Self {
        Self { eigenvalue, points }
    }

    pub fn dimension(&self) -> usize {
        self.points.first().map_or(0, |p| p.len())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    /// `<Phi(i), Phi(j)>`.
    pub fn inner(&self, i: usize, j: usize) -> f64 {
        dot(&self.points[i], &self.points[j])
    }

    /// Mean norm of the image points.
    pub fn radius(&self) -> f64 {
        self.points.iter().map(|p| linalg::norm(p)).sum::<f64>() / self.points.len().max(1) as f64
    }

    /// Largest deviation of `||Phi(i)||` from the mean.
    pub fn sphere_deviation(&self) -> f64 {
        let r = self.radius();
        self.points
            .iter()
            .map(|p| (linalg::norm(p) - r).abs())
            .fold(0.0, f64::max)
    }

    /// Squared norms of the coordinate functions `phi_r`.
    pub fn column_norms_squared(&self) -> Vec<f64> {
        (0..self.dimension())
            .map(|r| self.points.iter().map(|p| p[r] * p[r]).sum())
            .collect()
    }

    /// Gram matrix `<Phi(i), Phi(j)>` of all image points.
    pub fn gram(&self) -> linalg::Matrix {
        let n = self.points.len();
        let mut g = linalg::Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = self.inner(i, j);
                g[(i, j)] = v;
                g[(j, i)] = v;
            }
        }
        g
    }
}

/// Evaluates the cluster basis at every vertex.
///
/// Each basis vector is checked against `P` (residual at most
/// [`RESIDUAL_TOL`]). One-dimensional clusters are allowed but logged.
pub fn spectral_representation(op: &TransitionOperator<'_>, cluster: &SpectralCluster) -> Result<Embedding> {
    let n = op.size();
    for phi in &cluster.basis {
        if phi.len() != n {
            return Err(Error::Dimension(format!(
                "cluster vectors have length {} but the operator has size {n}",
                phi.len()
            )));
        }
        let image = op.matrix().mul_vec(phi);
        let residual = image
            .iter()
            .zip(phi)
            .map(|(a, b)| (a - cluster.eigenvalue * b).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual > RESIDUAL_TOL {
            return Err(Error::InvarianceFailure(format!(
                "cluster vector is not an eigenvector of P (residual {residual:e})"
            )));
        }
    }
    if cluster.multiplicity == 1 {
        log::warn!("embedding a simple eigenvalue {}: the image lies on a line", cluster.eigenvalue);
    }
    let points = (0..n)
        .map(|i| cluster.basis.iter().map(|phi| phi[i]).collect())
        .collect();
    Ok(Embedding {
        eigenvalue: cluster.eigenvalue,
        points,
    })
}

/// Edge length of one edge class under an embedding.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClassLength {
    pub class: usize,
    pub length: f64,
    /// `max - min` over the edges of the class.
    pub spread: f64,
}

/// Per-class edge lengths; fails if any class is not of constant length.
pub fn edge_class_lengths(emb: &Embedding, graph: &CayleyGraph) -> Result<Vec<ClassLength>> {
    let classes = graph.class_count();
    let mut lo = vec![f64::INFINITY; classes];
    let mut hi = vec![f64::NEG_INFINITY; classes];
    let mut sum = vec![0.0; classes];
    let mut count = vec![0usize; classes];
    for e in graph.edges() {
        let d = linalg::distance(emb.point(e.a), emb.point(e.b));
        lo[e.label] = lo[e.label].min(d);
        hi[e.label] = hi[e.label].max(d);
        sum[e.label] += d;
        count[e.label] += 1;
    }
    let mut out = Vec::with_capacity(classes);
    for c in 0..classes {
        if count[c] == 0 {
            return Err(Error::Dimension(format!("edge class {c} is empty")));
        }
        let spread = hi[c] - lo[c];
        if spread > CLASS_SPREAD_TOL {
            return Err(Error::InvarianceFailure(format!(
                "edge class {c} has lengths in [{}, {}]",
                lo[c], hi[c]
            )));
        }
        out.push(ClassLength {
            class: c,
            length: sum[c] / count[c] as f64,
            spread,
        });
    }
    Ok(out)
}

/// `max / min` over the class lengths; infinite if some class collapses.
pub fn length_ratio(lengths: &[ClassLength]) -> f64 {
    let max = lengths.iter().map(|l| l.length).fold(0.0, f64::max);
    let min = lengths.iter().map(|l| l.length).fold(f64::INFINITY, f64::min);
    if min > 0.0 {
        max / min
    } else {
        f64::INFINITY
    }
}

/// Smallest distance between two distinct image points.
pub fn min_pairwise_distance(emb: &Embedding) -> f64 {
    let pts = emb.points();
    let mut best = f64::INFINITY;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            best = best.min(linalg::distance(&pts[i], &pts[j]));
        }
    }
    best
}

/// True iff all image points are pairwise further apart than `tol`.
pub fn check_faithful(emb: &Embedding, tol: f64) -> bool {
    min_pairwise_distance(emb) > tol
}

/// [`check_faithful`] with the default radius-relative tolerance.
pub fn is_faithful(emb: &Embedding) -> bool {
    check_faithful(emb, FAITHFUL_REL_TOL * emb.radius())
}

/// `max |<Phi(i), Phi(j)> - <Phi(g i), Phi(g j)>|` over all group elements
/// `g` and vertex pairs. Vertices are identified with group elements.
pub fn gram_invariance_check(emb: &Embedding, group: &ReflectionGroup) -> Result<f64> {
    let n = emb.len();
    if n != group.order() {
        return Err(Error::Dimension(format!(
            "embedding has {n} points but the group has {} elements",
            group.order()
        )));
    }
    let gram = emb.gram();
    let mut worst = 0.0f64;
    for g in 0..group.order() {
        let perm = group.left_action(g);
        for i in 0..n {
            for j in i..n {
                worst = worst.max((gram[(i, j)] - gram[(perm[i], perm[j])]).abs());
            }
        }
    }
    Ok(worst)
}
