use approx::assert_relative_eq;
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use histopol::basis::{eval_t, segment_average_t};
use histopol::grid::{
    chebyshev_first_kind_roots, chebyshev_lobatto_nodes, chebyshev_lobatto_segments,
    concatenated_mock_segments, equispaced_nodes, equispaced_segments, extract_mock_chebyshev,
    grid_value, perturb_segments, quasi_nodal_indices, quasi_nodal_segments,
};
use histopol::histo::{
    build_gramian, constrained_least_squares, histopolate_values, lagrange_basis,
    lebesgue_constant, method_quasi_nodal, poly_averages, run_method, EvalGrid, MethodDegrees,
};
use histopol::linalg::{
    condition_number_2, lu_solve, singular_values, singular_values_jacobi, solve_kkt,
    vec_norm_inf, DenseMatrix, KktSystem,
};
use histopol::quadrature::GaussLegendre;
use histopol::{ChebPoly, HistoError, Method, Segment, SegmentKind, SegmentSet};

fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> DenseMatrix {
    DenseMatrix::new(r, c, (0..r * c).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap()
}

fn to_na(a: &DenseMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(a.rows(), a.cols(), a.data())
}

fn from_na(m: &DMatrix<f64>) -> DenseMatrix {
    let rows: Vec<Vec<f64>> = (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect();
    DenseMatrix::from_rows(&rows).unwrap()
}

fn random_segment(rng: &mut ChaCha8Rng) -> Segment {
    let a: f64 = rng.random_range(-1.0..1.0);
    let b: f64 = rng.random_range(-1.0..1.0);
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    Segment { a, b: b.max(a + 1e-6).min(1.0) }
}

// grid

#[test]
fn mock_nodes_are_grid_values_near_lobatto() {
    for n in (20..=400).step_by(7) {
        let Ok(m) = histopol::grid::max_mock_degree(n) else { continue };
        let eq = equispaced_nodes(n).unwrap();
        let Ok(mc) = extract_mock_chebyshev(&eq, m) else { continue };
        let cl = chebyshev_lobatto_nodes(m).unwrap();
        for (x, c) in mc.values().iter().zip(cl.values()) {
            assert!(eq.values().contains(x), "n={n}: {x} not on the grid");
            assert!((x - c).abs() <= 1.0 / n as f64 + 1e-15, "n={n}");
        }
    }
}

#[test]
fn concatenated_segments_tile() {
    for &(n, m) in &[(50, 15), (100, 22), (1000, 70), (37, 5)] {
        let s = concatenated_mock_segments(n, m).unwrap();
        assert_eq!(s.len(), m);
        assert_eq!(s.segments()[0].a, -1.0);
        assert_eq!(s.segments()[m - 1].b, 1.0);
        assert!(s.segments().windows(2).all(|w| w[0].b == w[1].a));
        let total: f64 = s.iter().map(|g| g.len()).sum();
        assert!((total - 2.0).abs() < 1e-13);
    }
}

#[test]
fn quasi_nodal_segments_contain_roots() {
    for &(n, m) in &[(50, 15), (50, 16), (200, 31), (1000, 70)] {
        let s = quasi_nodal_segments(n, m).unwrap();
        let idx = quasi_nodal_indices(n, m).unwrap();
        let roots = chebyshev_first_kind_roots(m).unwrap();
        for ((seg, &i), r) in s.iter().zip(&idx).zip(roots.values()) {
            assert!((seg.len() - 2.0 / n as f64).abs() < 1e-14);
            assert_eq!(seg.a, grid_value(n, i));
            assert!(seg.a <= *r && *r <= seg.b);
        }
    }
}

#[test]
fn perturbed_gramians_stay_nonsingular() {
    let alpha = 0.5;
    for m in 3..=12 {
        let s = chebyshev_lobatto_segments(m).unwrap();
        let lam = lebesgue_constant(&s, 1001).unwrap();
        let eps = alpha / (lam * ((m - 1) as f64).powi(2));
        for seed in 0..100 {
            let p = perturb_segments(&s, eps, seed).unwrap();
            assert_eq!(p.kind(), SegmentKind::Perturbed);
            let g = build_gramian(&p, m - 1).unwrap();
            assert!(histopol::linalg::LuFactors::factor(&g.matrix).is_ok(), "m={m} seed={seed}");
        }
    }
}

#[test]
fn perturbation_is_seeded() {
    let s = chebyshev_lobatto_segments(8).unwrap();
    assert_eq!(perturb_segments(&s, 1e-3, 9).unwrap(), perturb_segments(&s, 1e-3, 9).unwrap());
    assert_ne!(perturb_segments(&s, 1e-3, 9).unwrap(), perturb_segments(&s, 1e-3, 10).unwrap());
}

// basis

#[test]
fn recurrence_matches_trig_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let x: f64 = rng.random_range(-1.0..=1.0);
        for k in 0..=60 {
            assert!((eval_t(k, x) - (k as f64 * x.acos()).cos()).abs() <= 1e-11, "k={k} x={x}");
        }
    }
}

#[test]
fn averages_match_gauss_legendre_64() {
    let gl = GaussLegendre::new(64);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let s = random_segment(&mut rng);
        for k in 0..=60 {
            let want = gl.integrate(s.a, s.b, |x| eval_t(k, x)) / s.len();
            let got = segment_average_t(k, &s).unwrap();
            // relative to the scale of T_k, which is 1
            assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "k={k} {s:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn segment_average_is_linear(
        coeffs in prop::collection::vec(-1.0f64..1.0, 1..30),
        a in -1.0f64..0.9,
        len in 1e-6f64..1.0,
    ) {
        let s = Segment { a, b: (a + len).min(1.0) };
        let p = ChebPoly::new(coeffs.clone());
        let termwise: f64 = coeffs.iter().enumerate().map(|(k, c)| c * segment_average_t(k, &s).unwrap()).sum();
        let scale: f64 = coeffs.iter().map(|c| c.abs()).sum::<f64>().max(1.0);
        prop_assert!((p.segment_average(&s).unwrap() - termwise).abs() <= 1e-12 * scale);
    }

    #[test]
    fn partition_of_unity(m in 1usize..25) {
        let s = chebyshev_lobatto_segments(m).unwrap();
        let b = lagrange_basis(&s).unwrap();
        for &x in EvalGrid::full(1001).unwrap().points() {
            let sum: f64 = b.polys.iter().map(|p| p.eval(x)).sum();
            prop_assert!((sum - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn lu_solves_random_systems(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, 20, 20);
        let x: Vec<f64> = (0..20).map(|_| rng.random_range(-1.0..1.0)).collect();
        let b = a.matvec(&x).unwrap();
        let got = lu_solve(&a, &b).unwrap();
        let want = to_na(&a).lu().solve(&nalgebra::DVector::from_vec(b)).unwrap();
        for (g, w) in got.iter().zip(want.iter()) {
            prop_assert!((g - w).abs() <= 1e-9 * (1.0 + w.abs()));
        }
    }

    #[test]
    fn singular_values_match_nalgebra(seed in any::<u64>(), r in 1usize..25, c in 1usize..25) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, r, c);
        let mut want: Vec<f64> = to_na(&a).singular_values().iter().copied().collect();
        want.sort_by(|x, y| y.partial_cmp(x).unwrap());
        for (g, w) in singular_values(&a).iter().zip(&want) {
            prop_assert!((g - w).abs() <= 1e-12 * want[0]);
        }
    }

    #[test]
    fn cond_at_least_one(seed in any::<u64>(), n in 1usize..15) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert!(condition_number_2(&random_matrix(&mut rng, n, n)) >= 1.0 - 1e-12);
    }
}

#[test]
fn cond_of_scaled_orthogonal_is_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [2, 5, 17, 40] {
        let q = to_na(&random_matrix(&mut rng, n, n)).qr().q();
        let mut a = from_na(&q);
        a.scale(rng.random_range(0.1..10.0));
        let k = condition_number_2(&a);
        assert!((k - 1.0).abs() < 1e-6, "n={n}: {k}");
        // and not 1 once a column is stretched
        let mut b = a.clone();
        for i in 0..n {
            b[(i, 0)] *= 3.0;
        }
        assert!(condition_number_2(&b) > 2.9);
    }
}

#[test]
fn svd_methods_agree_on_full_gramian() {
    // 3 significant digits on sigma_max/sigma_min
    let g = build_gramian(&equispaced_segments(30).unwrap(), 29).unwrap();
    let a = singular_values(&g.matrix);
    let b = singular_values_jacobi(&g.matrix);
    let (ka, kb) = (a[0] / a[29], b[0] / b[29]);
    assert_relative_eq!(ka, kb, max_relative = 1e-3);
}

#[test]
fn hilbert_solve_reports_residual() {
    let n = 14;
    let rows: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| 1.0 / (i + j + 1) as f64).collect()).collect();
    let h = DenseMatrix::from_rows(&rows).unwrap();
    let b = vec![1.0; n];
    let x = lu_solve(&h, &b).unwrap();
    let r = histopol::linalg::relative_residual(&h, &x, &b).unwrap();
    assert!(r.is_finite() && r < 1e-6);
    assert!(condition_number_2(&h) > 1e16);
}

// null-space reference: a = x0 + Z y with C x0 = d and Z spanning ker C
fn kkt_null_space_oracle(g: &DMatrix<f64>, c: &DMatrix<f64>, rhs_c: &[f64], d: &[f64]) -> Vec<f64> {
    let r = g.ncols();
    let m = c.nrows();
    let x0 = c.clone().pseudo_inverse(1e-14).unwrap() * nalgebra::DVector::from_column_slice(d);
    if m == r {
        return x0.iter().copied().collect();
    }
    // ker C from the r - m smallest eigenpairs of C^T C
    let eig = (c.transpose() * c).symmetric_eigen();
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let cols: Vec<_> = order[..r - m].iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect();
    let z = DMatrix::from_columns(&cols);
    // minimize a^T G a / 2 - c^T a over the affine set
    let lhs = z.transpose() * g * &z;
    let rhs = z.transpose() * (nalgebra::DVector::from_column_slice(rhs_c) - g * &x0);
    let y = lhs.lu().solve(&rhs).unwrap();
    (x0 + z * y).iter().copied().collect()
}

#[test]
fn kkt_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..100 {
        let r = rng.random_range(1..=40);
        let m = rng.random_range(0..=r.min(20));
        let nmat = random_matrix(&mut rng, r + 5, r);
        let mut g = nmat.transpose().matmul(&nmat).unwrap();
        g.scale(2.0);
        let c = random_matrix(&mut rng, m, r);
        let rhs_c: Vec<f64> = (0..r).map(|_| rng.random_range(-1.0..1.0)).collect();
        let d: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
        let k = KktSystem::new(g.clone(), c.clone(), rhs_c.clone(), d.clone()).unwrap();
        let (a, z) = solve_kkt(&k).unwrap();
        assert_eq!((a.len(), z.len()), (r, m));
        let ca = c.matvec(&a).unwrap();
        let res = ca.iter().zip(&d).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        assert!(res <= 1e-9 * (1.0 + vec_norm_inf(&d)), "trial {trial}: {res}");
        if m > 0 {
            let want = kkt_null_space_oracle(&to_na(&g), &to_na(&c), &rhs_c, &d);
            let scale = 1.0 + vec_norm_inf(&want);
            for (p, q) in a.iter().zip(&want) {
                assert!((p - q).abs() <= 1e-6 * scale, "trial {trial}");
            }
        }
    }
}

#[test]
fn kkt_small_case_by_elimination() {
    // r = 3, m = 1: a = x0 + Z y by hand
    let g = DenseMatrix::from_rows(&[vec![4.0, 1.0, 0.0], vec![1.0, 3.0, 1.0], vec![0.0, 1.0, 2.0]]).unwrap();
    let c = DenseMatrix::from_rows(&[vec![1.0, 1.0, 1.0]]).unwrap();
    let k = KktSystem::new(g.clone(), c.clone(), vec![1.0, 0.0, -1.0], vec![1.0]).unwrap();
    let (a, _) = solve_kkt(&k).unwrap();
    let want = kkt_null_space_oracle(&to_na(&g), &to_na(&c), &[1.0, 0.0, -1.0], &[1.0]);
    for (p, q) in a.iter().zip(&want) {
        assert!((p - q).abs() < 1e-13);
    }
}

#[test]
fn kkt_rank_deficient_constraints_fail() {
    let g = DenseMatrix::identity(3);
    let c = DenseMatrix::from_rows(&[vec![1.0, 0.0, 0.0], vec![2.0, 0.0, 0.0]]).unwrap();
    let k = KktSystem::new(g, c, vec![0.0; 3], vec![1.0, 2.0]).unwrap();
    assert!(matches!(solve_kkt(&k), Err(HistoError::SingularKkt { .. })));
}

// histo

fn native_degree(method: Method, n: usize, degrees: MethodDegrees) -> usize {
    let m = degrees.quasi.resolve(n).unwrap();
    match method {
        Method::FullEquispaced => n - 1,
        Method::ConcatenatedMC => degrees.concatenated.unwrap_or_else(|| histopol::grid::max_mock_degree(n).unwrap()) - 1,
        Method::QuasiNodalMCF => m - 1,
        Method::ConstrainedMCF => histopol::histo::constrained_degree(n, m) - 1,
    }
}

#[test]
fn polynomial_reproduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let grid = EvalGrid::full(1001).unwrap();
    let degrees = MethodDegrees::default();
    for method in Method::ALL {
        // the full baseline only reproduces while its Gramian is tame
        let n = if method == Method::FullEquispaced { 12 } else { 50 };
        let s = equispaced_segments(n).unwrap();
        let d = native_degree(method, n, degrees);
        for _ in 0..20 {
            let coeffs: Vec<f64> = (0..=d).map(|_| rng.random_range(-1.0..1.0)).collect();
            let p = ChebPoly::new(coeffs.clone());
            let data = poly_averages(&p, &s).unwrap();
            let r = run_method(method, n, degrees, &data).unwrap();
            assert_eq!(r.poly.degree(), d);
            let err = grid.max_error(&r.poly, |x| p.eval(x));
            assert!(err <= 1e-7 * (1.0 + p.max_abs_coeff()), "{method}: {err}");
        }
    }
}

#[test]
fn lebesgue_grid_refinement() {
    for m in [1, 2, 5, 10, 20, 30] {
        let s = chebyshev_lobatto_segments(m).unwrap();
        let l1 = lebesgue_constant(&s, 1001).unwrap();
        let l2 = lebesgue_constant(&s, 10_001).unwrap();
        let l3 = lebesgue_constant(&s, 20_001).unwrap();
        assert!(l2 >= l1 * (1.0 - 1e-12), "m={m}");
        assert!((l3 - l2).abs() < 0.01 * l2, "m={m}");
    }
}

#[test]
fn constrained_reduces_to_quasi_nodal() {
    // r = m with only the constrained rows
    for &(n, m) in &[(50, 15), (100, 22), (200, 31)] {
        let s = equispaced_segments(n).unwrap();
        let f = histopol::oracle::builtin(histopol::FunctionId::F4);
        let data = histopol::oracle::segment_means(&f, &s).unwrap();
        let idx = quasi_nodal_indices(n, m).unwrap();
        let design = build_gramian(&s, m - 1).unwrap().matrix.select_rows(&idx);
        let b: Vec<f64> = idx.iter().map(|&i| data.values[i]).collect();
        let fit = constrained_least_squares(&design, &b, m).unwrap();
        let quasi = method_quasi_nodal(n, m, &data).unwrap();
        for (p, q) in fit.poly.coeffs.iter().zip(&quasi.poly.coeffs) {
            assert!((p - q).abs() <= 1e-8, "n={n}");
        }
    }
}

fn mean_abs(f: &histopol::TestFunction, seg: &Segment) -> f64 {
    GaussLegendre::new(64).integrate(seg.a, seg.b, |x| f.eval(x).abs()) / seg.len()
}

#[test]
fn concatenated_means_match_direct_means() {
    let n = 50;
    let m = 15;
    let eq = equispaced_segments(n).unwrap();
    let mc = concatenated_mock_segments(n, m).unwrap();
    for id in histopol::FunctionId::ALL {
        let f = histopol::oracle::builtin(id);
        let fine = histopol::oracle::segment_means(&f, &eq).unwrap();
        let agg = histopol::histo::aggregate_means(&fine.values, &mc).unwrap();
        let direct = histopol::oracle::segment_means(&f, &mc).unwrap();
        for ((x, y), seg) in agg.iter().zip(&direct.values).zip(mc.iter()) {
            // mean of |f| guards segments where f averages to ~0
            let scale = y.abs().max(mean_abs(&f, seg));
            assert!((x - y).abs() <= 1e-12 * scale, "{id}: {x} vs {y}");
        }
    }
}

#[test]
fn histopolant_matches_its_means() {
    let s = SegmentSet::from_pairs(&[(-1.0, -0.7), (-0.5, 0.1), (0.2, 0.3), (0.6, 1.0)], SegmentKind::Arbitrary).unwrap();
    let vals = [1.0, -2.0, 0.5, 3.0];
    let h = histopolate_values(&s, &vals).unwrap();
    for (seg, v) in s.iter().zip(vals) {
        assert!((h.poly.segment_average(seg).unwrap() - v).abs() < 1e-12);
    }
}
