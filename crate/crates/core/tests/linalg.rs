use coxspec::coxeter::Builtin;
use coxspec::linalg::{
    cross_product_k, det, eigh_symmetric, eigvalsh_jacobi, eigvalsh_symmetric, perron_frobenius, Matrix,
    PF_DEFAULT_TOL,
};
use coxspec::{generate_group, Error, GOLDEN_RATIO};
use proptest::prelude::*;

/// Real roots of a monic cubic with three real roots, descending, by the
/// trigonometric form of Cardano's formula.
fn cubic_roots(c2: f64, c1: f64, c0: f64) -> [f64; 3] {
    let shift = -c2 / 3.0;
    let p = c1 - c2 * c2 / 3.0;
    let q = 2.0 * c2.powi(3) / 27.0 - c2 * c1 / 3.0 + c0;
    let mut r = if p.abs() < 1e-300 {
        [shift - q.cbrt(); 3]
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        let tau = 2.0 * std::f64::consts::PI / 3.0;
        [
            shift + m * theta.cos(),
            shift + m * (theta - tau).cos(),
            shift + m * (theta - 2.0 * tau).cos(),
        ]
    };
    r.sort_by(|a, b| b.total_cmp(a));
    r
}

fn gram(eta: f64) -> Matrix {
    Matrix::from_rows(&[[1.0, 0.0, -0.5], [0.0, 1.0, -eta / 2.0], [-0.5, -eta / 2.0, 1.0]]).unwrap()
}

#[test]
fn identity_and_swap() {
    let e = eigh_symmetric(&Matrix::identity(3)).unwrap();
    assert_eq!(e.eigenvalues, vec![1.0; 3]);
    let s = Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
    let e = eigh_symmetric(&s).unwrap();
    assert!((e.eigenvalues[0] - 1.0).abs() < 1e-15);
    assert!((e.eigenvalues[1] + 1.0).abs() < 1e-15);
}

#[test]
fn gram_matrix_eigenvalues_match_cubic_formula() {
    for b in Builtin::ALL {
        let m = gram(b.eta());
        // det(tI - M) coefficients by hand
        let trace = 3.0;
        let minors = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)])
            + (m[(0, 0)] * m[(2, 2)] - m[(0, 2)] * m[(2, 0)])
            + (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)]);
        let d = m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
            - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
            + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)]);
        let expected = cubic_roots(-trace, minors, -d);
        let got = eigh_symmetric(&m).unwrap().eigenvalues;
        for (g, e) in got.iter().zip(expected) {
            assert!((g - e).abs() < 1e-10, "{b}: {g} vs {e}");
        }
    }
}

#[test]
fn sign_convention_is_deterministic() {
    let m = gram(GOLDEN_RATIO);
    let a = eigh_symmetric(&m).unwrap();
    let b = eigh_symmetric(&m).unwrap();
    assert_eq!(a.eigenvectors, b.eigenvectors);
    for v in &a.eigenvectors {
        let big = v.iter().copied().fold(0.0f64, |acc, x| if x.abs() > acc.abs() { x } else { acc });
        assert!(big > 0.0);
    }
}

#[test]
fn asymmetric_and_rectangular_inputs_are_rejected() {
    let a = Matrix::from_rows(&[[1.0, 2.0], [0.0, 1.0]]).unwrap();
    assert!(matches!(eigh_symmetric(&a), Err(Error::Asymmetric { .. })));
    let r = Matrix::zeros(2, 3);
    assert!(matches!(eigh_symmetric(&r), Err(Error::Dimension(_))));
    assert!(matches!(eigvalsh_symmetric(&r), Err(Error::Dimension(_))));
}

#[test]
fn perron_frobenius_constants() {
    let cases = [
        (Builtin::A3, 2.0 + 2f64.sqrt()),
        (Builtin::B3, 4.0 + 2.0 * 3f64.sqrt()),
        (Builtin::H3, 2.0 / (2.0 - (2.0 + GOLDEN_RATIO).sqrt())),
    ];
    for (b, expected) in cases {
        let minv = b.datum().gram_inverse().unwrap();
        let (lambda, v) = perron_frobenius(&minv, PF_DEFAULT_TOL).unwrap();
        assert!((lambda - expected).abs() < 1e-10, "{b}: {lambda}");
        assert!(v.iter().all(|&x| x > 0.0));
        assert!((v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
        // spectral radius: dominates the symmetric eigenvalues
        for mu in eigh_symmetric(&minv).unwrap().eigenvalues {
            assert!(lambda >= mu.abs() - 1e-12);
        }
    }
}

#[test]
fn perron_frobenius_rank_one() {
    let ones = Matrix::from_rows(&[[1.0; 3]; 3]).unwrap();
    let (lambda, v) = perron_frobenius(&ones, PF_DEFAULT_TOL).unwrap();
    assert!((lambda - 3.0).abs() < 1e-13);
    for x in v {
        assert!((x - 1.0 / 3f64.sqrt()).abs() < 1e-13);
    }
}

#[test]
fn perron_frobenius_needs_positive_entries() {
    let m = Matrix::from_rows(&[[1.0, 0.0], [1.0, 1.0]]).unwrap();
    assert!(matches!(perron_frobenius(&m, 1e-13), Err(Error::Domain(_))));
}

#[test]
fn determinants() {
    assert_eq!(det(&Matrix::identity(4)).unwrap(), 1.0);
    assert!((det(&Matrix::from_diag(&[2.0, 3.0, 4.0])).unwrap() - 24.0).abs() < 1e-14);
    let singular = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
    assert_eq!(det(&singular).unwrap(), 0.0);

    let g = generate_group(&Builtin::H3.datum()).unwrap();
    let v = det(&Matrix::from_columns(g.simple_roots()).unwrap()).unwrap();
    assert!(v > 0.0);
    assert!((v * v - (2.0 - GOLDEN_RATIO) / 4.0).abs() < 1e-14);
}

#[test]
fn cross_product_basics() {
    let e1 = vec![1.0, 0.0, 0.0];
    let e2 = vec![0.0, 1.0, 0.0];
    assert_eq!(cross_product_k(&[e1.clone(), e2.clone()]).unwrap(), vec![0.0, 0.0, 1.0]);
    let v = vec![0.3, -1.2, 2.0];
    let w = cross_product_k(&[v.clone(), v.iter().map(|x| 2.0 * x).collect()]).unwrap();
    assert!(w.iter().all(|x| x.abs() < 1e-15));
    // k = 2: the quarter turn
    assert_eq!(cross_product_k(&[vec![1.0, 0.0]]).unwrap(), vec![0.0, 1.0]);
    assert!(matches!(cross_product_k(&[vec![1.0, 0.0, 0.0]]), Err(Error::Dimension(_))));
}

#[test]
fn duality_of_simple_roots_and_cross_products() {
    let g = generate_group(&Builtin::H3.datum()).unwrap();
    let n = g.simple_roots();
    let v = g.root_volume();
    let p = [
        cross_product_k(&[n[1].clone(), n[2].clone()]).unwrap(),
        cross_product_k(&[n[0].clone(), n[2].clone()]).unwrap().iter().map(|x| -x).collect::<Vec<_>>(),
        cross_product_k(&[n[0].clone(), n[1].clone()]).unwrap(),
    ];
    for i in 0..3 {
        for j in 0..3 {
            let d: f64 = n[i].iter().zip(&p[j]).map(|(a, b)| a * b).sum();
            let e = if i == j { v } else { 0.0 };
            assert!((d - e).abs() < 1e-12);
        }
    }
}

fn symmetric_matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(-1.0f64..1.0, n * n).prop_map(move |raw| {
            let mut a = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..=i {
                    a[(i, j)] = raw[i * n + j];
                    a[(j, i)] = raw[i * n + j];
                }
            }
            a
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 12,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn eigh_reconstructs_random_symmetric(a in symmetric_matrix(150)) {
        let e = eigh_symmetric(&a).unwrap();
        let scale = a.norm_inf().max(f64::MIN_POSITIVE);
        let r = e.reconstruct().sub(&a).norm_inf();
        prop_assert!(r <= 1e-9 * scale, "reconstruction error {r}");
        for (i, v) in e.eigenvectors.iter().enumerate() {
            let nv: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            prop_assert!((nv - 1.0).abs() <= 1e-12);
            let av = a.mul_vec(v);
            let res: f64 = av.iter().zip(v).map(|(x, y)| (x - e.eigenvalues[i] * y).powi(2)).sum::<f64>().sqrt();
            prop_assert!(res <= 1e-9 * a.norm_fro().max(1.0));
        }
        for i in 0..e.eigenvectors.len().min(20) {
            for j in (i + 1)..e.eigenvectors.len().min(20) {
                let d: f64 = e.eigenvectors[i].iter().zip(&e.eigenvectors[j]).map(|(x, y)| x * y).sum();
                prop_assert!(d.abs() <= 1e-10);
            }
        }
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn values_only_routes_agree(a in symmetric_matrix(60)) {
        let ql = eigvalsh_symmetric(&a).unwrap();
        let jac = eigvalsh_jacobi(&a).unwrap();
        for (x, y) in ql.iter().zip(&jac) {
            prop_assert!((x - y).abs() <= 1e-11 * a.norm_fro().max(1.0));
        }
    }

    #[test]
    fn cross_product_is_antisymmetric(
        u in prop::collection::vec(-10.0f64..10.0, 3),
        v in prop::collection::vec(-10.0f64..10.0, 3),
        w in prop::collection::vec(-10.0f64..10.0, 3),
    ) {
        let a = cross_product_k(&[u.clone(), v.clone()]).unwrap();
        let b = cross_product_k(&[v.clone(), u.clone()]).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x + y).abs() <= 1e-14);
        }
        // <u x v, w> = det(u, v, w)
        let d = det(&Matrix::from_rows(&[u, v, w.clone()]).unwrap()).unwrap();
        let inner: f64 = a.iter().zip(&w).map(|(x, y)| x * y).sum();
        prop_assert!((inner - d).abs() <= 1e-10 * (1.0 + d.abs()));
    }
}
