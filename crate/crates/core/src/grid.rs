//! Node families on `[-1, 1]` and the segment sets built from them.
//!
//! All node sets are stored in ascending order. The classical formulas
//! `cos(pi i / m)` and `cos((2i - 1) pi / (2m))` enumerate nodes from right to
//! left; here they are reindexed so that index 0 is the leftmost node.

use std::f64::consts::PI;
use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{HistoError, Result};

/// Tolerance for deciding that a Chebyshev root sits exactly on a grid node.
pub const GRID_NODE_TOL: f64 = 1e-14;

const DOMAIN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeKind {
    Equispaced,
    ChebyshevLobatto,
    ChebyshevFirstKind,
    MockChebyshev,
}

/// Strictly increasing nodes in `[-1, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeSet {
    values: Vec<f64>,
    kind: NodeKind,
}

impl NodeSet {
    pub fn new(values: Vec<f64>, kind: NodeKind) -> Result<Self> {
        if values.is_empty() {
            return Err(HistoError::InvalidParameter("empty node set".into()));
        }
        for (i, &x) in values.iter().enumerate() {
            if !x.is_finite() || x.abs() > 1.0 {
                return Err(HistoError::InvalidParameter(format!(
                    "node {i} = {x} outside [-1, 1]"
                )));
            }
        }
        if let Some(i) = values.windows(2).position(|w| w[0] >= w[1]) {
            return Err(HistoError::InvalidParameter(format!(
                "nodes {i} and {} are not strictly increasing",
                i + 1
            )));
        }
        Ok(Self { values, kind })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> NodeKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A closed subinterval `[a, b]` of `[-1, 1]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: f64,
    pub b: f64,
}

impl Segment {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || b <= a {
            return Err(HistoError::DegenerateSegment { index: 0, a, b });
        }
        Ok(Self { a, b })
    }

    pub fn len(&self) -> f64 {
        self.b - self.a
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SegmentKind {
    /// The `n` uniform segments `[x_{i-1}, x_i]` of the equispaced grid.
    EquispacedChain,
    /// Segments joining consecutive mock-Chebyshev nodes.
    ConcatenatedMock,
    /// Uniform segments that each contain one Chebyshev root.
    QuasiNodal,
    /// Segments joining consecutive Chebyshev-Lobatto nodes.
    ChebyshevChain,
    /// Endpoints shifted independently; may overlap.
    Perturbed,
    Arbitrary,
}

/// Ordered segments of `[-1, 1]`.
///
/// `source_indices[j]` lists the equispaced segments (0-based) whose union
/// is segment `j`, when the set was derived from an equispaced chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentSet {
    segments: Vec<Segment>,
    kind: SegmentKind,
    source_indices: Option<Vec<Range<usize>>>,
}

impl SegmentSet {
    /// Validates ordering, containment in `[-1, 1]` and (except for
    /// [`SegmentKind::Perturbed`]) that segments meet at most in an endpoint.
    pub fn new(
        segments: Vec<Segment>,
        kind: SegmentKind,
        source_indices: Option<Vec<Range<usize>>>,
    ) -> Result<Self> {
        if segments.is_empty() {
            return Err(HistoError::InvalidParameter("empty segment set".into()));
        }
        for (index, s) in segments.iter().enumerate() {
            if !(s.a.is_finite() && s.b.is_finite()) || s.b <= s.a {
                return Err(HistoError::DegenerateSegment {
                    index,
                    a: s.a,
                    b: s.b,
                });
            }
            if s.a < -1.0 - DOMAIN_TOL || s.b > 1.0 + DOMAIN_TOL {
                return Err(HistoError::InvalidParameter(format!(
                    "segment {index} = [{}, {}] leaves [-1, 1]",
                    s.a, s.b
                )));
            }
        }
        if kind != SegmentKind::Perturbed {
            if let Some(i) = segments.windows(2).position(|w| w[1].a < w[0].b) {
                return Err(HistoError::OverlappingSegments {
                    first: i,
                    second: i + 1,
                });
            }
        }
        if let Some(src) = &source_indices {
            if src.len() != segments.len() {
                return Err(HistoError::DimensionMismatch(format!(
                    "{} source ranges for {} segments",
                    src.len(),
                    segments.len()
                )));
            }
        }
        Ok(Self {
            segments,
            kind,
            source_indices,
        })
    }

    /// Builds a set from `(a, b)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)], kind: SegmentKind) -> Result<Self> {
        let segments = pairs.iter().map(|&(a, b)| Segment { a, b }).collect();
        Self::new(segments, kind, None)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn kind(&self) -> SegmentKind {
        self.kind
    }

    pub fn source_indices(&self) -> Option<&[Range<usize>]> {
        self.source_indices.as_deref()
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Segment> {
        self.segments.iter()
    }

    /// Whether the segments form a chain covering `[-1, 1]`.
    pub fn is_chain(&self, tol: f64) -> bool {
        let first = self.segments[0].a;
        let last = self.segments[self.len() - 1].b;
        (first + 1.0).abs() <= tol
            && (last - 1.0).abs() <= tol
            && self.segments.windows(2).all(|w| (w[1].a - w[0].b).abs() <= tol)
    }

    /// Chain of equal-length segments covering `[-1, 1]`.
    pub fn is_equispaced_chain(&self, tol: f64) -> bool {
        let h = 2.0 / self.len() as f64;
        self.is_chain(tol) && self.segments.iter().all(|s| (s.len() - h).abs() <= tol)
    }
}

fn check_positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        Err(HistoError::InvalidParameter(format!("{name} must be >= 1")))
    } else {
        Ok(())
    }
}

/// Grid value `x_i = -1 + 2i/n`. Every routine that needs grid values goes
/// through here so selected nodes are bit-identical to the grid.
#[inline]
pub fn grid_value(n: usize, i: usize) -> f64 {
    (2 * i) as f64 / n as f64 - 1.0
}

/// The `n + 1` equispaced nodes `x_i = -1 + 2i/n`.
pub fn equispaced_nodes(n: usize) -> Result<NodeSet> {
    check_positive("n", n)?;
    let values = (0..=n).map(|i| grid_value(n, i)).collect();
    NodeSet::new(values, NodeKind::Equispaced)
}

/// The `m + 1` Chebyshev-Lobatto nodes `cos(pi i / m)`, ascending.
pub fn chebyshev_lobatto_nodes(m: usize) -> Result<NodeSet> {
    check_positive("m", m)?;
    let values = (0..=m).map(|i| lobatto_value(m, i)).collect();
    NodeSet::new(values, NodeKind::ChebyshevLobatto)
}

// -cos(pi i / m) written as a sine so that the endpoints and centre are exact.
fn lobatto_value(m: usize, i: usize) -> f64 {
    let num = 2.0 * i as f64 - m as f64;
    (PI * num / (2.0 * m as f64)).sin()
}

/// The `m` roots `cos((2i - 1) pi / (2m))` of `T_m`, ascending.
pub fn chebyshev_first_kind_roots(m: usize) -> Result<NodeSet> {
    check_positive("m", m)?;
    let values = (1..=m)
        .map(|j| {
            let num = 2.0 * j as f64 - 1.0 - m as f64;
            (PI * num / (2.0 * m as f64)).sin()
        })
        .collect();
    NodeSet::new(values, NodeKind::ChebyshevFirstKind)
}

/// `floor(pi * sqrt(n / 2))`, the largest mock-Chebyshev degree for `n` segments.
pub fn max_mock_degree(n: usize) -> Result<usize> {
    check_positive("n", n)?;
    Ok((PI * (n as f64 / 2.0).sqrt()).floor() as usize)
}

fn equispaced_n(equi: &NodeSet) -> Result<usize> {
    if equi.kind() != NodeKind::Equispaced || equi.len() < 2 {
        return Err(HistoError::InvalidParameter(
            "expected an equispaced node set".into(),
        ));
    }
    Ok(equi.len() - 1)
}

/// Index of the grid node nearest to `t`; ties go to the left node.
fn nearest_grid_index(n: usize, t: f64) -> usize {
    let u = (t + 1.0) * n as f64 / 2.0;
    let lo = u.floor().clamp(0.0, n as f64) as usize;
    if lo == n {
        return n;
    }
    let d_lo = t - grid_value(n, lo);
    let d_hi = grid_value(n, lo + 1) - t;
    if d_hi < d_lo {
        lo + 1
    } else {
        lo
    }
}

/// Grid indices of the mock-Chebyshev nodes of degree `m`.
pub fn mock_chebyshev_indices(n: usize, m: usize) -> Result<Vec<usize>> {
    check_positive("m", m)?;
    let max = max_mock_degree(n)?;
    if m > max {
        return Err(HistoError::DegreeTooLarge { n, m, max });
    }
    let idx: Vec<usize> = (0..=m)
        .map(|i| nearest_grid_index(n, lobatto_value(m, i)))
        .collect();
    if let Some(i) = idx.windows(2).position(|w| w[0] == w[1]) {
        return Err(HistoError::NonDistinctSelection {
            first: i,
            second: i + 1,
        });
    }
    Ok(idx)
}

/// Picks, for each Chebyshev-Lobatto node of degree `m`, the nearest node of
/// the equispaced grid.
pub fn extract_mock_chebyshev(equi: &NodeSet, m: usize) -> Result<NodeSet> {
    let n = equispaced_n(equi)?;
    let idx = mock_chebyshev_indices(n, m)?;
    let values = idx.iter().map(|&k| equi.values()[k]).collect();
    NodeSet::new(values, NodeKind::MockChebyshev)
}

/// The `n` uniform segments of `[-1, 1]`.
pub fn equispaced_segments(n: usize) -> Result<SegmentSet> {
    check_positive("n", n)?;
    let segments = (0..n)
        .map(|i| Segment {
            a: grid_value(n, i),
            b: grid_value(n, i + 1),
        })
        .collect();
    let src = (0..n).map(|i| i..i + 1).collect();
    SegmentSet::new(segments, SegmentKind::EquispacedChain, Some(src))
}

/// Segments joining consecutive Chebyshev-Lobatto nodes of degree `m`.
pub fn chebyshev_lobatto_segments(m: usize) -> Result<SegmentSet> {
    let nodes = chebyshev_lobatto_nodes(m)?;
    let segments = nodes
        .values()
        .windows(2)
        .map(|w| Segment { a: w[0], b: w[1] })
        .collect();
    SegmentSet::new(segments, SegmentKind::ChebyshevChain, None)
}

/// The `m` mock-Chebyshev segments `[x_{j-1}^MC, x_j^MC]`, each a union of
/// consecutive equispaced segments.
pub fn concatenated_mock_segments(n: usize, m: usize) -> Result<SegmentSet> {
    let idx = mock_chebyshev_indices(n, m)?;
    let segments = idx
        .windows(2)
        .map(|w| Segment {
            a: grid_value(n, w[0]),
            b: grid_value(n, w[1]),
        })
        .collect();
    let src = idx.windows(2).map(|w| w[0]..w[1]).collect();
    SegmentSet::new(segments, SegmentKind::ConcatenatedMock, Some(src))
}

/// 0-based index of the equispaced segment assigned to `root`.
///
/// A root on a grid node `x_k` gets the segment to its left, `[x_{k-1}, x_k]`.
fn containing_segment(n: usize, root: f64) -> usize {
    let u = (root + 1.0) * n as f64 / 2.0;
    let k = u.round().clamp(0.0, n as f64) as usize;
    if k > 0 && (root - grid_value(n, k)).abs() <= GRID_NODE_TOL {
        return k - 1;
    }
    // half-open [x_{i}, x_{i+1})
    let mut i = u.floor().clamp(0.0, (n - 1) as f64) as usize;
    // guard against u rounding across a grid node
    if root < grid_value(n, i) && i > 0 {
        i -= 1;
    } else if i + 1 < n && root >= grid_value(n, i + 1) {
        i += 1;
    }
    i
}

/// 0-based equispaced segment indices for the quasi-nodal method, one per
/// root of `T_m`, ascending.
pub fn quasi_nodal_indices(n: usize, m: usize) -> Result<Vec<usize>> {
    check_positive("n", n)?;
    let roots = chebyshev_first_kind_roots(m)?;
    let idx: Vec<usize> = roots
        .values()
        .iter()
        .map(|&r| containing_segment(n, r))
        .collect();
    if let Some(i) = idx.windows(2).position(|w| w[0] == w[1]) {
        return Err(HistoError::NonDistinctSegments {
            first: i,
            second: i + 1,
            segment: idx[i],
        });
    }
    Ok(idx)
}

/// The `m` uniform segments that each contain one root of `T_m`.
///
/// Distinctness is checked at runtime rather than assumed from the
/// sufficient bound `n >= 8 m^2 / pi^2`.
pub fn quasi_nodal_segments(n: usize, m: usize) -> Result<SegmentSet> {
    let idx = quasi_nodal_indices(n, m)?;
    let segments = idx
        .iter()
        .map(|&i| Segment {
            a: grid_value(n, i),
            b: grid_value(n, i + 1),
        })
        .collect();
    let src = idx.iter().map(|&i| i..i + 1).collect();
    SegmentSet::new(segments, SegmentKind::QuasiNodal, Some(src))
}

/// Largest `m` such that the quasi-nodal selection succeeds for every
/// degree `1..=m` on `n` uniform segments.
pub fn max_quasi_nodal_degree(n: usize) -> Result<usize> {
    check_positive("n", n)?;
    let mut m = 1;
    while m < n && quasi_nodal_indices(n, m + 1).is_ok() {
        m += 1;
    }
    Ok(m)
}

/// Shifts every endpoint by an independent uniform draw from `[-eps, eps]`,
/// clamped to `[-1, 1]`.
pub fn perturb_segments(s: &SegmentSet, eps: f64, rng_seed: u64) -> Result<SegmentSet> {
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(HistoError::InvalidParameter(format!(
            "perturbation size {eps} must be nonnegative"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut shift = |x: f64| -> f64 {
        if eps == 0.0 {
            x
        } else {
            (x + rng.random_range(-eps..=eps)).clamp(-1.0, 1.0)
        }
    };
    let mut segments = Vec::with_capacity(s.len());
    for (index, seg) in s.iter().enumerate() {
        let a = shift(seg.a);
        let b = shift(seg.b);
        if b - a <= 0.0 {
            return Err(HistoError::DegenerateSegment { index, a, b });
        }
        segments.push(Segment { a, b });
    }
    SegmentSet::new(segments, SegmentKind::Perturbed, None)
}
