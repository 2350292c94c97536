use coxspec::coxeter::Builtin;
use coxspec::linalg::{distance, dot};
use coxspec::spectral::{
    edge_class_lengths, gram_invariance_check, group_eigenvalues, is_faithful, length_ratio, min_pairwise_distance,
};
use coxspec::{CayleySystem, Embedding, Error, SimplexPoint, GOLDEN_RATIO};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn x0(b: Builtin) -> Vec<f64> {
    let e = b.eta();
    let rho = 3.0 - e * e;
    let d = 12.0 + rho + 6.0 * e;
    vec![(3.0 + rho + e) / d, (3.0 + 3.0 * e) / d, (6.0 + 2.0 * e) / d]
}

#[test]
fn grouping_of_sorted_values() {
    let v = [1.0, 0.5, 0.5 - 1e-9, 0.5 - 2e-9, 0.1, -0.1];
    let groups = group_eigenvalues(&v, 1e-7);
    assert_eq!(groups, vec![0..1, 1..4, 4..5, 5..6]);
}

#[test]
fn canonical_laplacian_clusters() {
    let expected = [
        (Builtin::A3, (1.0 + 2f64.sqrt()) / 3.0),
        (Builtin::B3, (1.0 + 3f64.sqrt()) / 3.0),
        (Builtin::H3, (1.0 + (2.0 + GOLDEN_RATIO).sqrt()) / 3.0),
    ];
    for (b, lambda) in expected {
        let s = CayleySystem::builtin(b).unwrap();
        let clusters = s.clusters(&s.barycenter()).unwrap();
        assert_eq!(clusters[0].multiplicity, 1);
        assert!((clusters[0].eigenvalue - 1.0).abs() < 1e-12);
        assert_eq!(clusters[1].multiplicity, 3);
        assert!((clusters[1].eigenvalue - lambda).abs() < 1e-9);
        assert!(clusters[1].gap > 1e-3);
        let total: usize = clusters.iter().map(|c| c.multiplicity).sum();
        assert_eq!(total, s.order());
    }
}

#[test]
fn lambda1_has_multiplicity_three_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for b in Builtin::ALL {
        let s = CayleySystem::builtin(b).unwrap();
        for _ in 0..100 {
            let x = SimplexPoint::random_interior(&mut rng, 3, 0.02);
            let (_, mult) = s.lambda1_with_multiplicity(&x).unwrap();
            assert_eq!(mult, 3, "{b} at {:?}", x.weights());
        }
    }
}

#[test]
fn embedding_geometry() {
    let s = CayleySystem::builtin(Builtin::H3).unwrap();
    let x = s.point(&[0.2, 0.3, 0.5]).unwrap();
    let (cluster, emb) = s.second_embedding(&x).unwrap();
    assert_eq!(emb.dimension(), 3);
    assert_eq!(emb.len(), 120);
    // orthonormal columns
    for r in 0..3 {
        for c in 0..3 {
            let v: f64 = emb.points().iter().map(|p| p[r] * p[c]).sum();
            let e = if r == c { 1.0 } else { 0.0 };
            assert!((v - e).abs() < 1e-10);
        }
    }
    // on the sphere of radius sqrt(k / n)
    assert!(emb.sphere_deviation() < 1e-8);
    assert!((emb.radius() - (3.0f64 / 120.0).sqrt()).abs() < 1e-10);
    // eigenfunction residual
    let op = s.operator(&x).unwrap();
    for r in 0..3 {
        let phi: Vec<f64> = emb.points().iter().map(|p| p[r]).collect();
        let image = op.matrix().mul_vec(&phi);
        let res: f64 = image.iter().zip(&phi).map(|(a, b)| (a - cluster.eigenvalue * b).powi(2)).sum();
        assert!(res.sqrt() < 1e-8);
    }
    assert!(is_faithful(&emb));
    assert!(gram_invariance_check(&emb, s.group()).unwrap() < 1e-8);
}

#[test]
fn equilateral_at_minimum_only() {
    for b in Builtin::ALL {
        let s = CayleySystem::builtin(b).unwrap();
        let (_, emb) = s.second_embedding(&s.point(&x0(b)).unwrap()).unwrap();
        let lengths = edge_class_lengths(&emb, s.graph()).unwrap();
        assert!(length_ratio(&lengths) - 1.0 < 1e-7, "{b}");
        let (_, emb) = s.second_embedding(&s.barycenter()).unwrap();
        let lengths = edge_class_lengths(&emb, s.graph()).unwrap();
        assert!(length_ratio(&lengths) - 1.0 > 0.1, "{b}");
    }
}

#[test]
fn class_lengths_match_direct_edge_lengths() {
    let s = CayleySystem::builtin(Builtin::B3).unwrap();
    let (_, emb) = s.second_embedding(&s.point(&[0.6, 0.3, 0.1]).unwrap()).unwrap();
    let lengths = edge_class_lengths(&emb, s.graph()).unwrap();
    for e in s.graph().edges() {
        let d = distance(emb.point(e.a), emb.point(e.b));
        assert!((d - lengths[e.label].length).abs() < 1e-9);
    }
}

#[test]
fn top_cluster_embedding_is_degenerate() {
    let s = CayleySystem::builtin(Builtin::A3).unwrap();
    let (cluster, emb) = s.embedding(&s.barycenter(), 0).unwrap();
    assert_eq!(cluster.multiplicity, 1);
    assert!(min_pairwise_distance(&emb) < 1e-12);
    assert!(!is_faithful(&emb));
}

#[test]
fn unequal_class_lengths_are_an_invariance_failure() {
    let s = CayleySystem::builtin(Builtin::A3).unwrap();
    let mut points: Vec<Vec<f64>> = (0..24).map(|i| vec![i as f64, 0.0, 0.0]).collect();
    points[0] = vec![0.0, 0.0, 0.0];
    let emb = Embedding::from_points(0.5, points);
    assert!(matches!(edge_class_lengths(&emb, s.graph()), Err(Error::InvarianceFailure(_))));
}

#[test]
fn embedding_is_deterministic() {
    let s = CayleySystem::builtin(Builtin::H3).unwrap();
    let x = s.point(&[0.25, 0.25, 0.5]).unwrap();
    let (_, a) = s.second_embedding(&x).unwrap();
    let (_, b) = s.second_embedding(&x).unwrap();
    assert_eq!(a.points(), b.points());
}

#[test]
fn index_out_of_range() {
    let s = CayleySystem::builtin(Builtin::A3).unwrap();
    assert!(s.embedding(&s.barycenter(), 24).is_err());
}

#[test]
fn identity_neighbours_determine_gradient_direction() {
    // at X_hat the inner products with the three neighbours of the identity
    // differ, so moving weight between classes changes lambda_1
    let s = CayleySystem::builtin(Builtin::H3).unwrap();
    let (_, emb) = s.second_embedding(&s.barycenter()).unwrap();
    let inner: Vec<f64> = (0..3).map(|j| dot(emb.point(0), emb.point(s.graph().neighbor(0, j)))).collect();
    assert!((inner[0] - inner[1]).abs() > 1e-4);
    assert!((inner[1] - inner[2]).abs() > 1e-4);
}
