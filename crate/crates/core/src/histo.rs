//! Histopolation: Gramians of segment-mean functionals, histopolants,
//! Lagrange segment bases, segmental Lebesgue constants and the
//! mock-Chebyshev approximation methods built on equispaced segment means.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::basis::{segment_averages_upto, ChebPoly};
use crate::error::{HistoError, Result};
use crate::grid::{
    concatenated_mock_segments, max_mock_degree, quasi_nodal_indices, SegmentSet,
};
use crate::linalg::{
    condition_number_2, relative_residual, solve_kkt, vec_norm_inf, DenseMatrix, KktSystem,
    LuFactors,
};

/// Default number of points for Lebesgue-constant and error grids.
pub const DEFAULT_EVAL_POINTS: usize = 10_001;

/// Smallest accepted evaluation grid.
pub const MIN_EVAL_POINTS: usize = 1001;

/// Matrix of segment means of `T_0..=T_degree`, one row per segment.
#[derive(Debug, Clone)]
pub struct Gramian {
    pub matrix: DenseMatrix,
    pub segset: SegmentSet,
    pub degree: usize,
}

/// `matrix[i][k]` is the mean of `T_k` over segment `i`.
pub fn build_gramian(s: &SegmentSet, degree: usize) -> Result<Gramian> {
    let cols = degree + 1;
    let mut data = Vec::with_capacity(s.len() * cols);
    for (index, seg) in s.iter().enumerate() {
        let row = segment_averages_upto(degree, seg).map_err(|_| HistoError::DegenerateSegment {
            index,
            a: seg.a,
            b: seg.b,
        })?;
        data.extend(row);
    }
    Ok(Gramian {
        matrix: DenseMatrix::new(s.len(), cols, data)?,
        segset: s.clone(),
        degree,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ExactAntiderivative,
    Quadrature,
    Ingested,
    /// Averaged from finer segment means.
    Aggregated,
}

/// One mean value per segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AveragesVector {
    pub values: Vec<f64>,
    pub segset: SegmentSet,
    pub provenance: Provenance,
}

impl AveragesVector {
    pub fn new(values: Vec<f64>, segset: SegmentSet, provenance: Provenance) -> Result<Self> {
        if values.len() != segset.len() {
            return Err(HistoError::DimensionMismatch(format!(
                "{} means for {} segments",
                values.len(),
                segset.len()
            )));
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(HistoError::DataGeneration {
                index,
                message: "non-finite mean".into(),
            });
        }
        Ok(Self {
            values,
            segset,
            provenance,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    FullEquispaced,
    ConcatenatedMC,
    QuasiNodalMCF,
    ConstrainedMCF,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::FullEquispaced,
        Method::ConcatenatedMC,
        Method::QuasiNodalMCF,
        Method::ConstrainedMCF,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::FullEquispaced => "full",
            Method::ConcatenatedMC => "concatenated",
            Method::QuasiNodalMCF => "quasi-nodal",
            Method::ConstrainedMCF => "constrained",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = HistoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" | "full-equispaced" => Ok(Method::FullEquispaced),
            "concatenated" | "mc" => Ok(Method::ConcatenatedMC),
            "quasi-nodal" | "mcf" => Ok(Method::QuasiNodalMCF),
            "constrained" | "cmcf" => Ok(Method::ConstrainedMCF),
            other => Err(HistoError::InvalidParameter(format!("unknown method `{other}`"))),
        }
    }
}

/// A fitted polynomial with diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodReport {
    pub poly: ChebPoly,
    pub method: Method,
    /// Spectral condition number of the solved matrix (the KKT matrix for
    /// the constrained method).
    pub cond: f64,
    pub max_err: Option<f64>,
    pub lebesgue: Option<f64>,
    /// Relative residual of the solved linear system.
    pub residual: f64,
    /// Segments whose means were matched exactly.
    pub segments: SegmentSet,
}

impl MethodReport {
    /// Fills in `max_err` against a reference function.
    pub fn with_max_error<F: Fn(f64) -> f64>(mut self, f: F, grid: &EvalGrid) -> Self {
        self.max_err = Some(grid.max_error(&self.poly, f));
        self
    }

    /// Fills in the Lebesgue constant of the interpolated segments. Only
    /// meaningful for the square methods.
    pub fn with_lebesgue(mut self, eval_points: usize) -> Result<Self> {
        if self.method != Method::ConstrainedMCF {
            self.lebesgue = Some(lebesgue_constant(&self.segments, eval_points)?);
        }
        Ok(self)
    }
}

/// Where max errors are measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorInterval {
    /// `[-1, 1]`
    #[default]
    Full,
    /// `[0, 1]`
    RightHalf,
}

impl ErrorInterval {
    pub fn bounds(self) -> (f64, f64) {
        match self {
            ErrorInterval::Full => (-1.0, 1.0),
            ErrorInterval::RightHalf => (0.0, 1.0),
        }
    }
}

/// Equispaced evaluation points including both endpoints.
#[derive(Debug, Clone)]
pub struct EvalGrid {
    points: Vec<f64>,
}

impl EvalGrid {
    pub fn new(points: usize, interval: ErrorInterval) -> Result<Self> {
        if points < MIN_EVAL_POINTS {
            return Err(HistoError::InvalidParameter(format!(
                "evaluation grid needs at least {MIN_EVAL_POINTS} points, got {points}"
            )));
        }
        let (lo, hi) = interval.bounds();
        let last = (points - 1) as f64;
        let pts = (0..points)
            .map(|i| {
                if i == points - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / last
                }
            })
            .collect();
        Ok(Self { points: pts })
    }

    pub fn full(points: usize) -> Result<Self> {
        Self::new(points, ErrorInterval::Full)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn max_error<F: Fn(f64) -> f64>(&self, poly: &ChebPoly, f: F) -> f64 {
        self.points
            .iter()
            .map(|&x| (f(x) - poly.eval(x)).abs())
            .fold(0.0, f64::max)
    }
}

/// `max |f(x) - p(x)|` over `grid_points` equispaced points of `[-1, 1]`.
pub fn max_error<F: Fn(f64) -> f64>(poly: &ChebPoly, f: F, grid_points: usize) -> Result<f64> {
    Ok(EvalGrid::full(grid_points)?.max_error(poly, f))
}

fn square_factor(g: &Gramian) -> Result<LuFactors> {
    if !g.matrix.is_square() {
        return Err(HistoError::DimensionMismatch(format!(
            "histopolation needs a square Gramian, got {}x{}",
            g.matrix.rows(),
            g.matrix.cols()
        )));
    }
    LuFactors::factor(&g.matrix).map_err(|e| match e {
        HistoError::SingularMatrix { .. } => HistoError::UnisolvenceViolation,
        other => other,
    })
}

/// Histopolant with its residual and Gramian.
#[derive(Debug, Clone)]
pub struct Histopolant {
    pub poly: ChebPoly,
    pub residual: f64,
    pub gramian: Gramian,
}

/// Solves the histopolation conditions on `s` with data `values`.
pub fn histopolate_values(s: &SegmentSet, values: &[f64]) -> Result<Histopolant> {
    if values.len() != s.len() {
        return Err(HistoError::DimensionMismatch(format!(
            "{} means for {} segments",
            values.len(),
            s.len()
        )));
    }
    let gramian = build_gramian(s, s.len() - 1)?;
    let lu = square_factor(&gramian)?;
    let coeffs = lu.solve(values)?;
    let residual = relative_residual(&gramian.matrix, &coeffs, values)?;
    Ok(Histopolant {
        poly: ChebPoly::new(coeffs),
        residual,
        gramian,
    })
}

/// The polynomial of degree `#segments - 1` whose segment means equal `data`.
pub fn histopolate(s: &SegmentSet, data: &AveragesVector) -> Result<ChebPoly> {
    if data.segset.segments() != s.segments() {
        return Err(HistoError::DimensionMismatch(
            "averages belong to a different segment set".into(),
        ));
    }
    Ok(histopolate_values(s, &data.values)?.poly)
}

/// Polynomials `l_i` with mean `delta_ij` over segment `j`.
#[derive(Debug, Clone)]
pub struct LagrangeBasis {
    pub polys: Vec<ChebPoly>,
    pub segset: SegmentSet,
}

impl LagrangeBasis {
    /// `sum_i |l_i(x)|`.
    pub fn lebesgue_function(&self, x: f64) -> f64 {
        let d = self.polys.len();
        let t: Vec<f64> = tk_values(d - 1, x);
        self.polys
            .iter()
            .map(|p| p.coeffs.iter().zip(&t).map(|(c, v)| c * v).sum::<f64>().abs())
            .sum()
    }
}

fn tk_values(d: usize, x: f64) -> Vec<f64> {
    let mut t = Vec::with_capacity(d + 1);
    t.push(1.0);
    if d >= 1 {
        t.push(x);
    }
    for k in 2..=d {
        t.push(2.0 * x * t[k - 1] - t[k - 2]);
    }
    t
}

/// Columns of the inverse Gramian, one polynomial per segment.
pub fn lagrange_basis(s: &SegmentSet) -> Result<LagrangeBasis> {
    let n = s.len();
    let g = build_gramian(s, n - 1)?;
    let lu = square_factor(&g)?;
    let mut polys = Vec::with_capacity(n);
    let mut e = vec![0.0; n];
    for i in 0..n {
        e[i] = 1.0;
        polys.push(ChebPoly::new(lu.solve(&e)?));
        e[i] = 0.0;
    }
    Ok(LagrangeBasis {
        polys,
        segset: s.clone(),
    })
}

/// Segmental Lebesgue constant `max_x sum_i |l_i(x)|`, estimated on
/// `eval_points` equispaced points of `[-1, 1]`.
pub fn lebesgue_constant(s: &SegmentSet, eval_points: usize) -> Result<f64> {
    let grid = EvalGrid::full(eval_points)?;
    let basis = lagrange_basis(s)?;
    Ok(grid
        .points()
        .iter()
        .map(|&x| basis.lebesgue_function(x))
        .fold(0.0, f64::max))
}

fn require_equispaced(n: usize, data: &AveragesVector) -> Result<()> {
    if data.len() != n || !data.segset.is_equispaced_chain(1e-14) {
        return Err(HistoError::InvalidConfiguration(format!(
            "expected means over the {n} equispaced segments"
        )));
    }
    Ok(())
}

fn square_report(method: Method, segments: SegmentSet, values: &[f64]) -> Result<MethodReport> {
    let h = histopolate_values(&segments, values)?;
    Ok(MethodReport {
        poly: h.poly,
        method,
        cond: condition_number_2(&h.gramian.matrix),
        max_err: None,
        lebesgue: None,
        residual: h.residual,
        segments,
    })
}

/// Mean over a mock segment from the uniform means it covers.
pub fn aggregate_means(data_eq: &[f64], segments: &SegmentSet) -> Result<Vec<f64>> {
    let src = segments.source_indices().ok_or_else(|| {
        HistoError::InvalidConfiguration("segments carry no source indices".into())
    })?;
    src.iter()
        .map(|r| {
            if r.is_empty() || r.end > data_eq.len() {
                return Err(HistoError::InvalidConfiguration(format!(
                    "source range {r:?} outside {} uniform segments",
                    data_eq.len()
                )));
            }
            Ok(data_eq[r.clone()].iter().sum::<f64>() / r.len() as f64)
        })
        .collect()
}

/// Histopolant of degree `n - 1` on the whole equispaced chain.
pub fn method_full_equispaced(n: usize, data_eq: &AveragesVector) -> Result<MethodReport> {
    require_equispaced(n, data_eq)?;
    square_report(Method::FullEquispaced, data_eq.segset.clone(), &data_eq.values)
}

/// Histopolant of degree `m - 1` on the concatenated mock-Chebyshev segments,
/// with means aggregated from the uniform ones.
pub fn method_concatenated(n: usize, m: usize, data_eq: &AveragesVector) -> Result<MethodReport> {
    require_equispaced(n, data_eq)?;
    let segs = concatenated_mock_segments(n, m)?;
    let means = aggregate_means(&data_eq.values, &segs)?;
    square_report(Method::ConcatenatedMC, segs, &means)
}

/// Histopolant of degree `m - 1` on the uniform segments containing the
/// roots of `T_m`.
pub fn method_quasi_nodal(n: usize, m: usize, data_eq: &AveragesVector) -> Result<MethodReport> {
    require_equispaced(n, data_eq)?;
    let idx = quasi_nodal_indices(n, m)?;
    let segs = crate::grid::quasi_nodal_segments(n, m)?;
    let means: Vec<f64> = idx.iter().map(|&i| data_eq.values[i]).collect();
    square_report(Method::QuasiNodalMCF, segs, &means)
}

/// Number of basis polynomials `r = m + floor(pi sqrt(n / 12)) + 1`.
pub fn constrained_degree(n: usize, m: usize) -> usize {
    m + (PI * (n as f64 / 12.0).sqrt()).floor() as usize + 1
}

/// Output of [`constrained_least_squares`].
#[derive(Debug, Clone)]
pub struct ConstrainedFit {
    pub poly: ChebPoly,
    pub multipliers: Vec<f64>,
    pub cond: f64,
    pub residual: f64,
    /// `||C a - d||_inf`
    pub constraint_residual: f64,
}

/// Least squares over all rows of `design` subject to matching the first
/// `m` rows exactly, via `[[2 N^T N, N_m^T], [N_m, 0]]`.
pub fn constrained_least_squares(design: &DenseMatrix, b: &[f64], m: usize) -> Result<ConstrainedFit> {
    if b.len() != design.rows() || m > design.rows() {
        return Err(HistoError::DimensionMismatch(format!(
            "{} data values, {} rows, {m} constraints",
            b.len(),
            design.rows()
        )));
    }
    let nt = design.transpose();
    let mut g = nt.matmul(design)?;
    g.scale(2.0);
    let c: Vec<f64> = nt.matvec(b)?.into_iter().map(|v| 2.0 * v).collect();
    let constrained: Vec<usize> = (0..m).collect();
    let cmat = design.select_rows(&constrained);
    let d = b[..m].to_vec();
    let kkt = KktSystem::new(g, cmat.clone(), c, d.clone())?;
    let matrix = kkt.matrix();
    let (a, z) = solve_kkt(&kkt)?;
    let sol: Vec<f64> = a.iter().chain(&z).copied().collect();
    let residual = relative_residual(&matrix, &sol, &kkt.rhs())?;
    let ca = cmat.matvec(&a)?;
    let constraint_residual = ca.iter().zip(&d).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
    Ok(ConstrainedFit {
        poly: ChebPoly::new(a),
        multipliers: z,
        cond: condition_number_2(&matrix),
        residual,
        constraint_residual,
    })
}

/// Constrained method with `m = floor(pi sqrt(n / 2))`.
pub fn method_constrained(n: usize, data_eq: &AveragesVector) -> Result<MethodReport> {
    method_constrained_with(n, max_mock_degree(n)?, data_eq)
}

/// Degree `r - 1` regression over all `n` uniform means, matching the `m`
/// quasi-nodal means exactly.
pub fn method_constrained_with(n: usize, m: usize, data_eq: &AveragesVector) -> Result<MethodReport> {
    require_equispaced(n, data_eq)?;
    let r = constrained_degree(n, m);
    if r > n {
        return Err(HistoError::InvalidConfiguration(format!(
            "constrained degree r = {r} exceeds n = {n}"
        )));
    }
    let idx = quasi_nodal_indices(n, m)?;
    let mut order = idx.clone();
    order.extend((0..n).filter(|i| !idx.contains(i)));
    let full = build_gramian(&data_eq.segset, r - 1)?;
    let design = full.matrix.select_rows(&order);
    let b: Vec<f64> = order.iter().map(|&i| data_eq.values[i]).collect();
    let fit = constrained_least_squares(&design, &b, m)?;
    let d_norm = vec_norm_inf(&b[..m]);
    if fit.constraint_residual > 1e-9 * (1.0 + d_norm) {
        return Err(HistoError::SingularKkt { column: r });
    }
    Ok(MethodReport {
        poly: fit.poly,
        method: Method::ConstrainedMCF,
        cond: fit.cond,
        max_err: None,
        lebesgue: None,
        residual: fit.residual,
        segments: crate::grid::quasi_nodal_segments(n, m)?,
    })
}

/// Degree used for the quasi-nodal and constrained methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum QuasiDegreeRule {
    /// `floor(pi sqrt(n / 2))`, as for mock-Chebyshev nodes.
    #[default]
    Mock,
    /// The largest collision-free quasi-nodal degree.
    MaxDistinct,
    Fixed(usize),
}

impl QuasiDegreeRule {
    pub fn resolve(self, n: usize) -> Result<usize> {
        match self {
            QuasiDegreeRule::Mock => max_mock_degree(n),
            QuasiDegreeRule::MaxDistinct => crate::grid::max_quasi_nodal_degree(n),
            QuasiDegreeRule::Fixed(m) => Ok(m),
        }
    }
}

/// Degrees used by [`run_method`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MethodDegrees {
    /// `None` means `floor(pi sqrt(n / 2))`.
    pub concatenated: Option<usize>,
    pub quasi: QuasiDegreeRule,
}

/// Dispatches to one of the four methods.
pub fn run_method(
    method: Method,
    n: usize,
    degrees: MethodDegrees,
    data_eq: &AveragesVector,
) -> Result<MethodReport> {
    match method {
        Method::FullEquispaced => method_full_equispaced(n, data_eq),
        Method::ConcatenatedMC => {
            let m = match degrees.concatenated {
                Some(m) => m,
                None => max_mock_degree(n)?,
            };
            method_concatenated(n, m, data_eq)
        }
        Method::QuasiNodalMCF => method_quasi_nodal(n, degrees.quasi.resolve(n)?, data_eq),
        Method::ConstrainedMCF => method_constrained_with(n, degrees.quasi.resolve(n)?, data_eq),
    }
}

/// Means of a Chebyshev series over every segment of `s`.
pub fn poly_means(p: &ChebPoly, s: &SegmentSet) -> Result<Vec<f64>> {
    s.iter().map(|seg| p.segment_average(seg)).collect()
}

/// Segment means of a Chebyshev series, as exact data.
pub fn poly_averages(p: &ChebPoly, s: &SegmentSet) -> Result<AveragesVector> {
    AveragesVector::new(poly_means(p, s)?, s.clone(), Provenance::ExactAntiderivative)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{chebyshev_lobatto_segments, equispaced_segments, SegmentKind};

    fn pairs(p: &[(f64, f64)]) -> SegmentSet {
        SegmentSet::from_pairs(p, SegmentKind::Arbitrary).unwrap()
    }

    #[test]
    fn gramian_examples() {
        let g = build_gramian(&pairs(&[(-1.0, 1.0)]), 0).unwrap();
        assert_eq!(g.matrix.data(), &[1.0]);
        let g = build_gramian(&pairs(&[(-1.0, 0.0), (0.0, 1.0)]), 1).unwrap();
        let want = [1.0, -0.5, 1.0, 0.5];
        for (x, w) in g.matrix.data().iter().zip(want) {
            assert!((x - w).abs() < 1e-15);
        }
        let g = build_gramian(&equispaced_segments(50).unwrap(), 49).unwrap();
        assert_eq!((g.matrix.rows(), g.matrix.cols()), (50, 50));
        assert!((0..50).all(|i| g.matrix[(i, 0)] == 1.0));
    }

    #[test]
    fn histopolate_examples() {
        let s = pairs(&[(-1.0, 0.0), (0.0, 1.0)]);
        let data = AveragesVector::new(vec![-0.5, 0.5], s.clone(), Provenance::Ingested).unwrap();
        let p = histopolate(&s, &data).unwrap();
        assert!(p.coeffs[0].abs() < 1e-15 && (p.coeffs[1] - 1.0).abs() < 1e-15);

        let s = equispaced_segments(7).unwrap();
        let data = AveragesVector::new(vec![2.5; 7], s.clone(), Provenance::Ingested).unwrap();
        let p = histopolate(&s, &data).unwrap();
        assert!((p.coeffs[0] - 2.5).abs() < 1e-13);
        assert!(p.coeffs[1..].iter().all(|c| c.abs() < 1e-12));

        let s = equispaced_segments(4).unwrap();
        let data = poly_averages(&ChebPoly::basis(3), &s).unwrap();
        let p = histopolate(&s, &data).unwrap();
        for (k, c) in p.coeffs.iter().enumerate() {
            let want = if k == 3 { 1.0 } else { 0.0 };
            assert!((c - want).abs() < 1e-10);
        }
    }

    #[test]
    fn histopolate_rejects_mismatch() {
        let s = equispaced_segments(3).unwrap();
        let other = equispaced_segments(2).unwrap();
        let data = AveragesVector::new(vec![1.0; 2], other, Provenance::Ingested).unwrap();
        assert!(histopolate(&s, &data).is_err());
        assert!(AveragesVector::new(vec![1.0; 2], s, Provenance::Ingested).is_err());
    }

    #[test]
    fn lagrange_examples() {
        let b = lagrange_basis(&pairs(&[(-1.0, 1.0)])).unwrap();
        assert_eq!(b.polys[0].coeffs, vec![1.0]);
        let b = lagrange_basis(&pairs(&[(-1.0, 0.0), (0.0, 1.0)])).unwrap();
        // l_1 = 1/2 - x, l_2 = 1/2 + x
        assert!((b.polys[0].coeffs[0] - 0.5).abs() < 1e-15 && (b.polys[0].coeffs[1] + 1.0).abs() < 1e-15);
        assert!((b.polys[1].coeffs[0] - 0.5).abs() < 1e-15 && (b.polys[1].coeffs[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lagrange_biorthogonal() {
        let s = chebyshev_lobatto_segments(12).unwrap();
        let b = lagrange_basis(&s).unwrap();
        for (i, p) in b.polys.iter().enumerate() {
            for (j, seg) in s.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((p.segment_average(seg).unwrap() - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn lebesgue_examples() {
        assert!((lebesgue_constant(&pairs(&[(-1.0, 1.0)]), 1001).unwrap() - 1.0).abs() < 1e-15);
        let two = lebesgue_constant(&pairs(&[(-1.0, 0.0), (0.0, 1.0)]), 1001).unwrap();
        assert!((two - 2.0).abs() < 1e-14);
        let m = 10.0f64;
        let cl = lebesgue_constant(&chebyshev_lobatto_segments(10).unwrap(), 10_001).unwrap();
        assert!(cl <= 2.0 * (m.ln() + PI / 2.0));
        assert!(lebesgue_constant(&pairs(&[(-1.0, 1.0)]), 100).is_err());
    }

    #[test]
    fn constrained_degree_n50() {
        assert_eq!(constrained_degree(50, 15), 22);
        assert_eq!(constrained_degree(50, 16), 23);
    }

    #[test]
    fn method_input_checks() {
        let s = equispaced_segments(10).unwrap();
        let data = AveragesVector::new(vec![1.0; 10], s, Provenance::Ingested).unwrap();
        assert!(matches!(
            method_full_equispaced(12, &data),
            Err(HistoError::InvalidConfiguration(_))
        ));
        // r = 4 + 0 + 1 = 5 <= 10 works; n = 2 has r > n
        assert!(method_constrained(10, &data).is_ok());
        let s2 = equispaced_segments(2).unwrap();
        let d2 = AveragesVector::new(vec![1.0; 2], s2, Provenance::Ingested).unwrap();
        assert!(method_constrained_with(2, 1, &d2).is_err());
    }

    #[test]
    fn method_parse_roundtrip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("nope".parse::<Method>().is_err());
    }

    #[test]
    fn eval_grid_endpoints() {
        let g = EvalGrid::new(1001, ErrorInterval::RightHalf).unwrap();
        assert_eq!(g.points()[0], 0.0);
        assert_eq!(*g.points().last().unwrap(), 1.0);
        assert!(EvalGrid::full(10).is_err());
        let zero = ChebPoly::constant(0.0);
        assert_eq!(max_error(&zero, |_| 1.0, 1001).unwrap(), 1.0);
    }
}
