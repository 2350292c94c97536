use coxspec::coxeter::{generate_group_with_cap, Builtin};
use coxspec::linalg::{det, dot, Matrix};
use coxspec::{cayley_graph, generate_group, reflection_matrix, simple_roots, CoxeterDatum, Error, GOLDEN_RATIO};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn power_is_identity(m: &Matrix, k: u32) -> bool {
    let mut p = Matrix::identity(m.rows());
    for _ in 0..k {
        p = &p * m;
    }
    p.max_abs_diff(&Matrix::identity(m.rows())) < 1e-12
}

#[test]
fn h3_gram_matrix_and_roots() {
    let d = Builtin::H3.datum();
    let m = d.gram_matrix();
    let expected = Matrix::from_rows(&[
        [1.0, 0.0, -0.5],
        [0.0, 1.0, -GOLDEN_RATIO / 2.0],
        [-0.5, -GOLDEN_RATIO / 2.0, 1.0],
    ])
    .unwrap();
    assert!(m.max_abs_diff(&expected) < 1e-15);

    let n = simple_roots(&d).unwrap();
    for i in 0..3 {
        assert!((dot(&n[i], &n[i]) - 1.0).abs() < 1e-14);
        for j in 0..3 {
            assert!((dot(&n[i], &n[j]) - m[(i, j)]).abs() < 1e-14);
        }
    }
    let v = det(&Matrix::from_rows(&n).unwrap()).unwrap();
    assert!((v - ((2.0 - GOLDEN_RATIO) / 4.0).sqrt()).abs() < 1e-14);
}

#[test]
fn reflections() {
    let r = reflection_matrix(&[1.0, 0.0, 0.0]).unwrap();
    assert_eq!(r, Matrix::from_diag(&[-1.0, 1.0, 1.0]));
    let n = [0.6, 0.0, 0.8];
    let r = reflection_matrix(&n).unwrap();
    let image = r.mul_vec(&n);
    for (a, b) in image.iter().zip(n) {
        assert!((a + b).abs() < 1e-15);
    }
    assert!(power_is_identity(&r, 2));
    assert!(matches!(reflection_matrix(&[1.0, 1.0, 0.0]), Err(Error::NotNormalized { .. })));
}

#[test]
fn braid_relations_have_exact_order() {
    for b in Builtin::ALL {
        let d = b.datum();
        let g = generate_group(&d).unwrap();
        let s = g.generators();
        for i in 0..3 {
            for j in (i + 1)..3 {
                let prod = &s[i] * &s[j];
                let m = d.order(i, j);
                assert!(power_is_identity(&prod, m), "{b}: (s{i} s{j})^{m}");
                for k in 1..m {
                    assert!(!power_is_identity(&prod, k), "{b}: (s{i} s{j}) has order below {m}");
                }
            }
        }
    }
}

#[test]
fn group_orders() {
    let factorial = |n: usize| (1..=n).product::<usize>();
    assert_eq!(generate_group(&Builtin::A3.datum()).unwrap().order(), factorial(4));
    // signed permutations of three letters
    assert_eq!(generate_group(&Builtin::B3.datum()).unwrap().order(), 8 * factorial(3));
    assert_eq!(generate_group(&Builtin::H3.datum()).unwrap().order(), 120);
    let a4 = CoxeterDatum::linear("A4", &[3, 3, 3]).unwrap();
    assert_eq!(generate_group(&a4).unwrap().order(), factorial(5));
    let i2 = CoxeterDatum::linear("I2(7)", &[7]).unwrap();
    assert_eq!(generate_group(&i2).unwrap().order(), 14);
}

#[test]
fn elements_are_orthogonal_and_distinct() {
    let g = generate_group(&Builtin::H3.datum()).unwrap();
    assert_eq!(g.find(&Matrix::identity(3)), Some(0));
    for e in g.elements() {
        let gram = &e.transpose() * e;
        assert!(gram.max_abs_diff(&Matrix::identity(3)) < 1e-12);
        let d = det(e).unwrap();
        assert!((d.abs() - 1.0).abs() < 1e-12);
    }
    for i in 0..g.order() {
        for j in (i + 1)..g.order() {
            assert!(g.element(i).max_abs_diff(g.element(j)) > 1e-6);
        }
    }
}

#[test]
fn product_is_associative() {
    let g = generate_group(&Builtin::H3.datum()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let (a, b, c) = (rng.gen_range(0..120), rng.gen_range(0..120), rng.gen_range(0..120));
        assert_eq!(g.product(g.product(a, b), c), g.product(a, g.product(b, c)));
        let direct = &(g.element(a) * g.element(b)) * g.element(c);
        assert_eq!(g.find(&direct), Some(g.product(g.product(a, b), c)));
    }
}

#[test]
fn word_lengths() {
    let g = generate_group(&Builtin::H3.datum()).unwrap();
    assert_eq!(g.word_length(0), 0);
    // the longest element of H3 has length 15 (the number of reflections)
    assert_eq!((0..120).map(|i| g.word_length(i)).max(), Some(15));
    for e in cayley_graph(&g).edges() {
        assert_eq!(g.word_length(e.a).abs_diff(g.word_length(e.b)), 1);
    }
}

#[test]
fn cayley_graph_shape() {
    for (b, v, e) in [(Builtin::A3, 24, 36), (Builtin::B3, 48, 72), (Builtin::H3, 120, 180)] {
        let g = generate_group(&b.datum()).unwrap();
        let c = cayley_graph(&g);
        assert_eq!(c.vertex_count(), v);
        assert_eq!(c.edge_count(), e);
        assert_eq!(c.class_multiplicities(), &[1, 1, 1]);
        assert!(c.is_bipartite());
        assert!(c.is_connected());
        for vert in 0..v {
            let labels: Vec<usize> = c.neighbors(vert).iter().map(|&(_, l)| l).collect();
            assert_eq!(labels, vec![0, 1, 2]);
        }
    }
}

#[test]
fn left_action_is_a_graph_automorphism() {
    let g = generate_group(&Builtin::H3.datum()).unwrap();
    let c = cayley_graph(&g);
    for h in 0..g.order() {
        let perm = g.left_action(h);
        let mut seen = vec![false; 120];
        for &p in &perm {
            assert!(!seen[p]);
            seen[p] = true;
        }
        for e in c.edges() {
            // labels are preserved: h (g s) = (h g) s
            assert_eq!(c.neighbor(perm[e.a], e.label), perm[e.b]);
        }
    }
}

#[test]
fn alternating_cycles_have_length_2m() {
    for b in Builtin::ALL {
        let d = b.datum();
        let g = generate_group(&d).unwrap();
        let c = cayley_graph(&g);
        for v in 0..g.order() {
            for i in 0..3 {
                for j in (i + 1)..3 {
                    assert_eq!(c.alternating_cycle_length(v, i, j), 2 * d.order(i, j) as usize);
                }
            }
        }
    }
}

#[test]
fn orbits_of_a_generic_point_are_free() {
    let g = generate_group(&Builtin::H3.datum()).unwrap();
    let orbit = g.orbit(&[0.3, 0.5, 0.8]);
    assert_eq!(orbit.len(), 120);
}

#[test]
fn invalid_data() {
    assert!(CoxeterDatum::new("bad", vec![vec![1, 2], vec![3, 1]]).is_err());
    assert!(CoxeterDatum::new("bad", vec![vec![3, 3], vec![3, 1]]).is_err());
    assert!(CoxeterDatum::linear("bad", &[1]).is_err());
    // affine A2: Gram matrix is singular
    let affine = CoxeterDatum::new("~A2", vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]]).unwrap();
    assert!(matches!(simple_roots(&affine), Err(Error::NotFinite(_))));
    assert!(matches!(
        generate_group_with_cap(&Builtin::H3.datum(), 50),
        Err(Error::GroupTooLarge { cap: 50 })
    ));
}

#[test]
fn builtin_names_parse() {
    for b in Builtin::ALL {
        assert_eq!(b.name().parse::<Builtin>().unwrap(), b);
        assert_eq!(b.datum().name(), b.name());
    }
    assert_eq!("h3".parse::<Builtin>().unwrap(), Builtin::H3);
    assert!("E8".parse::<Builtin>().is_err());
    assert_eq!(Builtin::H3.solid(), "(4,6,10)");
}
