use bwb_core::index::{bwb_index, IndexResult};
use bwb_core::mckean::supertrace;
use bwb_core::{Rational, RootSystem, Weight};
use bwb_dirac::{gamma_map, CliffordModel, DiracModel, LieModel};
use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn w(v: &[i64]) -> Weight {
    Weight::from_ints(v)
}

fn f(q: Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

fn grid(rank: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let side = (hi - lo + 1) as usize;
    (0..side.pow(rank as u32))
        .map(|code| (0..rank).map(|k| ((code / side.pow(k as u32)) % side) as i64 + lo).collect())
        .collect()
}

fn random_orthogonal(n: usize, rng: &mut StdRng) -> DMatrix<f64> {
    let m = DMatrix::<f64>::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    m.qr().q()
}

#[test]
fn square_is_the_casimir_shift() {
    for (label, lambdas) in [("A1", grid(1, 0, 6)), ("A2", grid(2, 0, 2))] {
        let rs = RootSystem::from_label(label).unwrap();
        let model = DiracModel::new(&rs).unwrap();
        for lambda in &lambdas {
            for mu in grid(rs.rank(), -3, 3) {
                let (lambda, mu) = (w(lambda), w(&mu));
                let dm = model.dirac(&lambda, &mu).unwrap();
                let report = model.verify_square(&lambda, &mu).unwrap();
                assert!(dm.hermitian_defect() < 1e-8, "{label} {lambda} {mu}");
                assert!(dm.grading_defect() < 1e-8, "{label} {lambda} {mu}");
                assert!(report.max_abs_dev < 1e-8, "{label} {lambda} {mu}: {}", report.max_abs_dev);
            }
        }
    }
}

#[test]
fn square_for_b2_and_g2() {
    for (label, lambdas) in [("B2", vec![[0, 0], [1, 0], [0, 1], [1, 1]]), ("G2", vec![[0, 0], [1, 0], [0, 1]])] {
        let rs = RootSystem::from_label(label).unwrap();
        let model = DiracModel::new(&rs).unwrap();
        for lambda in lambdas {
            for mu in [[0, 0], [-2, 1], [1, -3], [2, 0]] {
                let report = model.verify_square(&w(&lambda), &w(&mu)).unwrap();
                assert!(report.max_abs_dev < 1e-8, "{label} {lambda:?} {mu:?}: {}", report.max_abs_dev);
            }
        }
    }
}

#[test]
fn reference_examples() {
    let a1 = RootSystem::from_label("A1").unwrap();
    let r = bwb_dirac::verify_square(&a1, &w(&[3]), &w(&[3])).unwrap();
    assert_eq!(r.scalar, Rational::from_integer(0));
    assert!(r.max_abs_dev < 1e-8);
    assert_eq!(bwb_dirac::verify_square(&a1, &w(&[5]), &w(&[3])).unwrap().scalar, Rational::from_integer(10));
    let a2 = RootSystem::from_label("A2").unwrap();
    let dm = bwb_dirac::cubic_dirac_matrix(&a2, &w(&[0, 0]), &w(&[-2, 1])).unwrap();
    assert_eq!((dm.space_dim, dm.even_dim, dm.odd_dim), (1, 0, 1));
    assert_eq!(bwb_dirac::verify_square(&a2, &w(&[0, 0]), &w(&[-2, 1])).unwrap().scalar, Rational::from_integer(0));
}

#[test]
fn operator_does_not_depend_on_the_frame() {
    let mut rng = StdRng::seed_from_u64(7);
    for (label, cases) in [
        ("A1", vec![([5], [3]), ([2], [-2]), ([6], [0])].into_iter().map(|(a, b)| (a.to_vec(), b.to_vec())).collect::<Vec<_>>()),
        ("A2", vec![(vec![1, 1], vec![-2, 1]), (vec![2, 1], vec![0, 0]), (vec![2, 2], vec![1, -1])]),
        ("B2", vec![(vec![1, 1], vec![0, 0]), (vec![0, 1], vec![-2, 1])]),
        ("G2", vec![(vec![1, 0], vec![0, 0])]),
    ] {
        let rs = RootSystem::from_label(label).unwrap();
        let model = DiracModel::new(&rs).unwrap();
        let p = model.spin().p_dimension;
        let rotated = model.with_p_frame(random_orthogonal(p, &mut rng)).unwrap();
        for (lambda, mu) in cases {
            let a = model.dirac(&w(&lambda), &w(&mu)).unwrap();
            let b = rotated.dirac(&w(&lambda), &w(&mu)).unwrap();
            let dev = (&a.d - &b.d).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(dev < 1e-7, "{label} {lambda:?} {mu:?}: {dev}");
            let ra = model.verify_square(&w(&lambda), &w(&mu)).unwrap();
            let rb = rotated.verify_square(&w(&lambda), &w(&mu)).unwrap();
            assert_eq!(ra.scalar, rb.scalar);
            assert!(rb.max_abs_dev < 1e-8);
        }
    }
}

#[test]
fn rejects_non_orthogonal_frames() {
    let rs = RootSystem::from_label("A2").unwrap();
    let model = DiracModel::new(&rs).unwrap();
    assert!(model.with_p_frame(DMatrix::from_element(6, 6, 0.5)).is_err());
    assert!(model.with_p_frame(DMatrix::identity(4, 4)).is_err());
}

#[test]
fn kernel_is_the_index() {
    for (label, box_lo, box_hi) in [("A1", -4, 4), ("A2", -3, 3)] {
        let rs = RootSystem::from_label(label).unwrap();
        let model = DiracModel::new(&rs).unwrap();
        for labels in grid(rs.rank(), box_lo, box_hi) {
            let mu = w(&labels);
            let shell = rs.norm_sq(&(&mu + rs.rho())).unwrap();
            let report = model.kernel_report(&mu, shell).unwrap();
            match bwb_index(&rs, &mu).unwrap() {
                IndexResult::Zero => assert_eq!(report.total_kernel_dim, 0, "{label} {mu}"),
                IndexResult::Irreducible {
                    lambda,
                    length,
                    dimension,
                    ..
                } => {
                    assert_eq!(report.total_kernel_dim, dimension, "{label} {mu}");
                    for e in &report.entries {
                        assert!(e.kernel.borderline.is_empty());
                        if e.lambda == lambda {
                            assert_eq!(e.kernel.dim, 1);
                            let parity = if length % 2 == 0 { "even" } else { "odd" };
                            assert_eq!(e.kernel.parity(), parity, "{label} {mu}");
                            assert_eq!(e.kernel.degrees, vec![length], "{label} {mu}");
                        } else {
                            assert_eq!(e.kernel.dim, 0, "{label} {mu} {}", e.lambda);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn kernel_report_examples() {
    let a1 = RootSystem::from_label("A1").unwrap();
    let r = bwb_dirac::kernel_report(&a1, &w(&[3]), Rational::from_integer(8)).unwrap();
    let at3 = r.entries.iter().find(|e| e.lambda == w(&[3])).unwrap();
    assert_eq!((at3.kernel.dim, at3.kernel.parity(), at3.kernel.degrees.clone()), (1, "even", vec![0]));
    let a2 = RootSystem::from_label("A2").unwrap();
    let r = bwb_dirac::kernel_report(&a2, &w(&[-2, 1]), Rational::from_integer(2)).unwrap();
    assert_eq!(r.entries.len(), 1);
    assert_eq!((r.entries[0].kernel.dim, r.entries[0].kernel.parity()), (1, "odd"));
    assert_eq!(r.entries[0].kernel.degrees, vec![1]);
    let r = bwb_dirac::kernel_report(&a1, &w(&[-1]), Rational::from_integer(0)).unwrap();
    assert!(r.entries.is_empty());
    assert!(bwb_dirac::kernel_report(&a1, &w(&[3]), Rational::from_integer(7)).is_err());
}

#[test]
fn heat_supertrace_matches_character_sum() {
    let mut rng = StdRng::seed_from_u64(11);
    for label in ["A1", "A2"] {
        let rs = RootSystem::from_label(label).unwrap();
        let model = DiracModel::new(&rs).unwrap();
        for _ in 0..6 {
            let labels: Vec<i64> = (0..rs.rank()).map(|_| rng.gen_range(-3..=3)).collect();
            let mu = w(&labels);
            let theta: Vec<f64> = (0..rs.rank()).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let radius = rs.norm_sq(&(&mu + rs.rho())).unwrap() + Rational::from_integer(3);
            for t in [0.05, 0.5] {
                let matrix = model.matrix_supertrace(&mu, &theta, t, radius).unwrap();
                let exact = supertrace(&rs, &mu, &theta, t, radius).unwrap();
                assert!((matrix - exact).norm() < 1e-6, "{label} {mu} {t}: {matrix} vs {exact}");
            }
        }
    }
}

#[test]
fn clifford_model_relations() {
    for label in ["A2", "B2", "G2"] {
        let rs = RootSystem::from_label(label).unwrap();
        let cm = CliffordModel::new(&rs);
        assert!(cm.p_dimension <= 12);
        assert!(cm.clifford_defect() < 1e-10);
        assert!(cm.grading_defect() < 1e-10);
        let lie = LieModel::new(&rs).unwrap();
        let g = gamma_map(&lie, &cm, &[0.3, -1.1]);
        let t = lie.t_coefficients();
        let mut expected: Vec<f64> = cm
            .state_weights
            .iter()
            .map(|s| (0..2).map(|k| [0.3, -1.1][k] * (0..2).map(|j| t[(k, j)] * f(s.coords()[j])).sum::<f64>()).sum())
            .collect();
        let mut got: Vec<f64> = (0..cm.size()).map(|k| g[(k, k)].im).collect();
        expected.sort_by(f64::total_cmp);
        got.sort_by(f64::total_cmp);
        for (a, b) in expected.iter().zip(&got) {
            assert!((a - b).abs() < 1e-8);
        }
    }
}
