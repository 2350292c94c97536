use coxspec::coxeter::Builtin;
use coxspec::randwalk::project_to_simplex;
use coxspec::{build_operator, CayleySystem, Error, SimplexPoint};
use proptest::prelude::*;

/// Projection by enumerating every support set: for each non-empty subset,
/// solve the equality-constrained problem and keep the feasible candidate
/// closest to `raw`.
fn brute_force_projection(raw: &[f64], m: &[f64]) -> Vec<f64> {
    let k = raw.len();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for mask in 1u32..(1 << k) {
        let support: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        let smr: f64 = support.iter().map(|&i| m[i] * raw[i]).sum();
        let smm: f64 = support.iter().map(|&i| m[i] * m[i]).sum();
        let tau = (smr - 1.0) / smm;
        let mut x = vec![0.0; k];
        let mut feasible = true;
        for &i in &support {
            x[i] = raw[i] - tau * m[i];
            feasible &= x[i] >= -1e-15;
        }
        if !feasible {
            continue;
        }
        let d: f64 = x.iter().zip(raw).map(|(a, b)| (a - b).powi(2)).sum();
        if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
            best = Some((d, x));
        }
    }
    best.unwrap().1
}

#[test]
fn canonical_laplacian_entries() {
    let s = CayleySystem::builtin(Builtin::H3).unwrap();
    let op = s.operator(&s.barycenter()).unwrap();
    let p = op.matrix();
    for i in 0..120 {
        assert_eq!(p[(i, i)], 0.0);
        let row: f64 = (0..120).map(|j| p[(i, j)]).sum();
        assert!((row - 1.0).abs() < 1e-15);
        let nonzero: Vec<f64> = (0..120).map(|j| p[(i, j)]).filter(|v| *v != 0.0).collect();
        assert_eq!(nonzero.len(), 3);
        assert!(nonzero.iter().all(|v| (v - 1.0 / 3.0).abs() < 1e-15));
    }
    assert_eq!(p.asymmetry(), Some(0.0));
}

#[test]
fn zero_weight_removes_a_class() {
    let s = CayleySystem::builtin(Builtin::H3).unwrap();
    let x = s.point(&[0.5, 0.5, 0.0]).unwrap();
    let op = s.operator(&x).unwrap();
    assert_eq!(op.support_edge_count(), 120);
    // the walk splits into the 30 squares
    let values = s.spectrum(&x).unwrap();
    assert_eq!(values.iter().filter(|v| (*v - 1.0).abs() < 1e-9).count(), 30);
}

#[test]
fn bipartite_spectrum_is_symmetric() {
    for b in Builtin::ALL {
        let s = CayleySystem::builtin(b).unwrap();
        let x = s.point(&[0.2, 0.3, 0.5]).unwrap();
        let v = s.spectrum(&x).unwrap();
        let n = v.len();
        for k in 0..n {
            assert!((v[k] + v[n - 1 - k]).abs() < 1e-9);
        }
    }
}

#[test]
fn top_eigenvalue_is_simple_with_constant_vector() {
    let s = CayleySystem::builtin(Builtin::B3).unwrap();
    let x = s.point(&[0.1, 0.6, 0.3]).unwrap();
    let e = s.decomposition(&x).unwrap();
    assert!((e.eigenvalues[0] - 1.0).abs() < 1e-12);
    assert!(e.eigenvalues[0] - e.eigenvalues[1] > 1e-3);
    let c = 1.0 / 48f64.sqrt();
    assert!(e.eigenvectors[0].iter().all(|v| (v - c).abs() < 1e-10));
}

#[test]
fn simplex_validation() {
    assert!(matches!(SimplexPoint::from_weights(vec![0.5, 0.6]), Err(Error::Simplex(_))));
    assert!(matches!(SimplexPoint::from_weights(vec![1.2, -0.2]), Err(Error::Simplex(_))));
    assert!(SimplexPoint::from_weights(vec![f64::NAN, 1.0]).is_err());
    let x = SimplexPoint::new(vec![0.25, 0.25], vec![1, 3]).unwrap();
    assert_eq!(x.multiplicities(), &[1, 3]);
    let s = CayleySystem::builtin(Builtin::A3).unwrap();
    let wrong = SimplexPoint::from_weights(vec![0.5, 0.5]).unwrap();
    assert!(matches!(build_operator(s.graph(), &wrong), Err(Error::Simplex(_))));
}

#[test]
fn projection_examples() {
    let p = project_to_simplex(&[0.9, 0.2, -0.1], &[1, 1, 1]).unwrap();
    let expected = brute_force_projection(&[0.9, 0.2, -0.1], &[1.0, 1.0, 1.0]);
    for (a, b) in p.weights().iter().zip(expected) {
        assert!((a - b).abs() < 1e-12);
    }
    assert_eq!(p.weights()[2], 0.0);
    let p = project_to_simplex(&[5.0, 5.0, 5.0], &[1, 1, 1]).unwrap();
    assert!(p.weights().iter().all(|v| (v - 1.0 / 3.0).abs() < 1e-15));
    assert!(project_to_simplex(&[1.0], &[0]).is_err());
    assert!(project_to_simplex(&[1.0, 2.0], &[1]).is_err());
}

#[test]
fn boundary_approach_raises_lambda1() {
    let s = CayleySystem::builtin(Builtin::A3).unwrap();
    let mut previous = 0.0;
    for eps in [0.2, 0.1, 0.05, 0.01, 0.001] {
        let x = s.point(&[eps, (1.0 - eps) / 2.0, (1.0 - eps) / 2.0]).unwrap();
        let l = s.lambda1(&x).unwrap();
        assert!(l > previous);
        previous = l;
    }
    assert!(previous > 0.99);
}

fn raw_vector() -> impl Strategy<Value = (Vec<f64>, Vec<usize>)> {
    (1usize..6).prop_flat_map(|k| (prop::collection::vec(-2.0f64..2.0, k), prop::collection::vec(1usize..5, k)))
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 256,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn projection_matches_brute_force((raw, m) in raw_vector()) {
        let p = project_to_simplex(&raw, &m).unwrap();
        let mf: Vec<f64> = m.iter().map(|&v| v as f64).collect();
        let expected = brute_force_projection(&raw, &mf);
        for (a, b) in p.weights().iter().zip(&expected) {
            prop_assert!((a - b).abs() < 1e-10, "{:?} vs {:?}", p.weights(), expected);
        }
        let total: f64 = p.weights().iter().zip(&mf).map(|(a, b)| a * b).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projection_is_idempotent((raw, m) in raw_vector()) {
        let p = project_to_simplex(&raw, &m).unwrap();
        let q = project_to_simplex(p.weights(), &m).unwrap();
        prop_assert!(p.max_abs_diff(&q) < 1e-12);
    }

    #[test]
    fn operators_are_symmetric_stochastic(a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let s = CayleySystem::builtin(Builtin::A3).unwrap();
        let (x, y) = (a.min(b), a.max(b));
        let x = s.point(&[x, y - x, 1.0 - y]).unwrap();
        let op = s.operator(&x).unwrap();
        let p = op.matrix();
        prop_assert_eq!(p.asymmetry(), Some(0.0));
        for i in 0..24 {
            let row: f64 = (0..24).map(|j| p[(i, j)]).sum();
            prop_assert!((row - 1.0).abs() < 1e-12);
            prop_assert_eq!(p[(i, i)], 0.0);
        }
    }
}
