//! Segment-mean data: built-in test functions, quadrature fallback and CSV
//! ingestion/export of averages.

use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{HistoError, Result};
use crate::grid::{grid_value, Segment, SegmentKind, SegmentSet};
use crate::histo::{AveragesVector, Provenance};
use crate::quadrature::CompositeRule;

/// Built-in test functions on `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FunctionId {
    /// `1 / (1 + 25 x^2)`
    F1,
    /// `1 / (1 + 8 x^2)`
    F2,
    /// `exp(x^2 + 1)`
    F3,
    /// `cos(5 x)`
    F4,
    /// `1 / (x - 1.5)`
    F5,
    /// `x |x|^3`
    F6,
}

impl FunctionId {
    pub const ALL: [FunctionId; 6] = [
        FunctionId::F1,
        FunctionId::F2,
        FunctionId::F3,
        FunctionId::F4,
        FunctionId::F5,
        FunctionId::F6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FunctionId::F1 => "f1",
            FunctionId::F2 => "f2",
            FunctionId::F3 => "f3",
            FunctionId::F4 => "f4",
            FunctionId::F5 => "f5",
            FunctionId::F6 => "f6",
        }
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionId {
    type Err = HistoError;

    fn from_str(s: &str) -> Result<Self> {
        FunctionId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| HistoError::InvalidParameter(format!("unknown function `{s}`")))
    }
}

const SQRT8: f64 = 2.0 * std::f64::consts::SQRT_2;

/// A built-in test function with its primitive where one is elementary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TestFunction {
    pub id: FunctionId,
}

pub fn builtin(id: FunctionId) -> TestFunction {
    TestFunction { id }
}

impl TestFunction {
    pub fn eval(&self, x: f64) -> f64 {
        match self.id {
            FunctionId::F1 => 1.0 / (1.0 + 25.0 * x * x),
            FunctionId::F2 => 1.0 / (1.0 + 8.0 * x * x),
            FunctionId::F3 => (x * x + 1.0).exp(),
            FunctionId::F4 => (5.0 * x).cos(),
            FunctionId::F5 => 1.0 / (x - 1.5),
            FunctionId::F6 => x * x.abs().powi(3),
        }
    }

    pub fn has_antiderivative(&self) -> bool {
        self.id != FunctionId::F3
    }

    /// A primitive, when elementary.
    pub fn antiderivative(&self, x: f64) -> Option<f64> {
        Some(match self.id {
            FunctionId::F1 => (5.0 * x).atan() / 5.0,
            FunctionId::F2 => (SQRT8 * x).atan() / SQRT8,
            FunctionId::F3 => return None,
            FunctionId::F4 => (5.0 * x).sin() / 5.0,
            FunctionId::F5 => (x - 1.5).abs().ln(),
            FunctionId::F6 => x.abs().powi(5) / 5.0,
        })
    }

    /// `(F(b) - F(a)) / (b - a)` rearranged to avoid cancellation on short
    /// segments. `None` for f3.
    pub fn exact_mean(&self, a: f64, b: f64) -> Option<f64> {
        let h = b - a;
        Some(match self.id {
            FunctionId::F1 => atan_difference(5.0, a, b) / (5.0 * h),
            FunctionId::F2 => atan_difference(SQRT8, a, b) / (SQRT8 * h),
            FunctionId::F3 => return None,
            // sin 5b - sin 5a = 2 cos(5(a+b)/2) sin(5(b-a)/2)
            FunctionId::F4 => 2.0 * (2.5 * (a + b)).cos() * (2.5 * h).sin() / (5.0 * h),
            // ln((1.5 - b)/(1.5 - a)) = ln(1 - h/(1.5 - a))
            FunctionId::F5 => (-h / (1.5 - a)).ln_1p() / h,
            FunctionId::F6 => quintic_mean(a, b),
        })
    }

    pub fn quadrature_mean(&self, a: f64, b: f64) -> f64 {
        let rule = CompositeRule::default();
        let breaks: &[f64] = if self.id == FunctionId::F6 { &[0.0] } else { &[] };
        rule.integrate_split(a, b, breaks, |x| self.eval(x)).value / (b - a)
    }

    /// Mean over `[a, b]`, exact when possible.
    pub fn mean(&self, a: f64, b: f64) -> (f64, Provenance) {
        match self.exact_mean(a, b) {
            Some(v) => (v, Provenance::ExactAntiderivative),
            None => (self.quadrature_mean(a, b), Provenance::Quadrature),
        }
    }
}

// atan(k b) - atan(k a) without subtracting two O(1) angles
fn atan_difference(k: f64, a: f64, b: f64) -> f64 {
    (k * (b - a)).atan2(1.0 + k * k * a * b)
}

// (|b|^5 - |a|^5) / (5 (b - a))
fn quintic_mean(a: f64, b: f64) -> f64 {
    let sum4 = |p: f64, q: f64| {
        let (p2, q2) = (p * p, q * q);
        p2 * p2 + p2 * p * q + p2 * q2 + p * q2 * q + q2 * q2
    };
    if a >= 0.0 {
        sum4(a, b) / 5.0
    } else if b <= 0.0 {
        -sum4(-a, -b) / 5.0
    } else {
        (b.powi(5) - (-a).powi(5)) / (5.0 * (b - a))
    }
}

/// Means of a built-in function over every segment.
pub fn segment_means(f: &TestFunction, s: &SegmentSet) -> Result<AveragesVector> {
    let provenance = if f.has_antiderivative() {
        Provenance::ExactAntiderivative
    } else {
        Provenance::Quadrature
    };
    let values = s
        .iter()
        .enumerate()
        .map(|(index, seg)| {
            let v = f.mean(seg.a, seg.b).0;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(HistoError::DataGeneration {
                    index,
                    message: format!("non-finite mean of {} on [{}, {}]", f.id, seg.a, seg.b),
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    AveragesVector::new(values, s.clone(), provenance)
}

/// Means of an arbitrary function by composite quadrature.
pub fn segment_means_by_quadrature<F: Fn(f64) -> f64>(f: F, s: &SegmentSet) -> Result<AveragesVector> {
    let rule = CompositeRule::default();
    let values = s
        .iter()
        .enumerate()
        .map(|(index, seg)| {
            let v = rule.integrate(seg.a, seg.b, &f).value / seg.len();
            if v.is_finite() {
                Ok(v)
            } else {
                Err(HistoError::DataGeneration {
                    index,
                    message: "non-finite integrand".into(),
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    AveragesVector::new(values, s.clone(), Provenance::Quadrature)
}

/// Snaps a detected equispaced chain onto exact grid values.
fn snap_equispaced(segs: &[Segment]) -> Option<Vec<Segment>> {
    let n = segs.len();
    let tol = 1e-12;
    let fits = segs.iter().enumerate().all(|(i, s)| {
        (s.a - grid_value(n, i)).abs() <= tol && (s.b - grid_value(n, i + 1)).abs() <= tol
    });
    fits.then(|| {
        (0..n)
            .map(|i| Segment {
                a: grid_value(n, i),
                b: grid_value(n, i + 1),
            })
            .collect()
    })
}

/// Parses averages in the `a,b,mean` CSV format. Row numbers in errors are
/// 1-based data rows (the header is row 0).
pub fn read_averages<R: Read>(reader: R) -> Result<(SegmentSet, AveragesVector)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| HistoError::Parse {
            row: 0,
            message: e.to_string(),
        })?
        .clone();
    let names: Vec<&str> = headers.iter().collect();
    if names != ["a", "b", "mean"] {
        return Err(HistoError::Parse {
            row: 0,
            message: format!("expected header `a,b,mean`, found `{}`", names.join(",")),
        });
    }
    let mut segs = Vec::new();
    let mut means = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 1;
        let rec = rec.map_err(|e| HistoError::Parse {
            row,
            message: e.to_string(),
        })?;
        if rec.len() != 3 {
            return Err(HistoError::Parse {
                row,
                message: format!("expected 3 fields, found {}", rec.len()),
            });
        }
        let mut vals = [0.0; 3];
        for (slot, field) in vals.iter_mut().zip(rec.iter()) {
            let v: f64 = field.parse().map_err(|_| HistoError::Parse {
                row,
                message: format!("`{field}` is not a number"),
            })?;
            if !v.is_finite() {
                return Err(HistoError::Parse {
                    row,
                    message: format!("non-finite value `{field}`"),
                });
            }
            *slot = v;
        }
        let [a, b, mean] = vals;
        if b <= a {
            return Err(HistoError::Parse {
                row,
                message: format!("segment [{a}, {b}] has non-positive length"),
            });
        }
        if a < -1.0 || b > 1.0 {
            return Err(HistoError::Parse {
                row,
                message: format!("segment [{a}, {b}] leaves [-1, 1]"),
            });
        }
        if let Some(prev) = segs.last() {
            let prev: &Segment = prev;
            if a < prev.a {
                return Err(HistoError::Parse {
                    row,
                    message: "rows are not sorted by a".into(),
                });
            }
            if a < prev.b {
                return Err(HistoError::Parse {
                    row,
                    message: format!("segment overlaps the previous one ending at {}", prev.b),
                });
            }
        }
        segs.push(Segment { a, b });
        means.push(mean);
    }
    if segs.is_empty() {
        return Err(HistoError::Parse {
            row: 0,
            message: "no data rows".into(),
        });
    }
    let (segments, kind) = match snap_equispaced(&segs) {
        Some(snapped) => (snapped, SegmentKind::EquispacedChain),
        None => (segs, SegmentKind::Arbitrary),
    };
    let src = (kind == SegmentKind::EquispacedChain).then(|| (0..segments.len()).map(|i| i..i + 1).collect());
    let set = SegmentSet::new(segments, kind, src)?;
    let data = AveragesVector::new(means, set.clone(), Provenance::Ingested)?;
    Ok((set, data))
}

pub fn ingest_averages<P: AsRef<Path>>(path: P) -> Result<(SegmentSet, AveragesVector)> {
    let file = std::fs::File::open(path.as_ref())?;
    read_averages(file)
}

/// Float format used in every artifact: 17 significant digits.
pub fn format_float(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".to_string()
    } else if v == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{v:.16e}")
    }
}

pub fn write_averages<W: Write>(mut w: W, data: &AveragesVector) -> Result<()> {
    writeln!(w, "a,b,mean")?;
    for (seg, v) in data.segset.iter().zip(&data.values) {
        writeln!(w, "{},{},{}", format_float(seg.a), format_float(seg.b), format_float(*v))?;
    }
    Ok(())
}

pub fn export_averages<P: AsRef<Path>>(path: P, data: &AveragesVector) -> Result<()> {
    let file = std::fs::File::create(path.as_ref())?;
    let mut w = std::io::BufWriter::new(file);
    write_averages(&mut w, data)?;
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::equispaced_segments;

    #[test]
    fn builtin_values() {
        assert_eq!(builtin(FunctionId::F1).eval(0.0), 1.0);
        assert_eq!(builtin(FunctionId::F4).eval(0.0), 1.0);
        assert_eq!(builtin(FunctionId::F6).eval(-0.5), -0.0625);
        assert!(builtin(FunctionId::F3).antiderivative(0.2).is_none());
    }

    #[test]
    fn f4_whole_interval() {
        let s = SegmentSet::from_pairs(&[(-1.0, 1.0)], SegmentKind::Arbitrary).unwrap();
        let m = segment_means(&builtin(FunctionId::F4), &s).unwrap();
        assert!((m.values[0] - 5f64.sin() / 5.0).abs() < 1e-16);
        assert!((m.values[0] + 0.19178).abs() < 1e-5);
        assert_eq!(m.provenance, Provenance::ExactAntiderivative);
    }

    #[test]
    fn f3_quadrature_self_check() {
        let f = builtin(FunctionId::F3);
        let coarse = f.quadrature_mean(0.0, 0.1);
        let fine = CompositeRule::new(32, 1e-15, 128).integrate(0.0, 0.1, |x| f.eval(x)).value / 0.1;
        assert!((coarse - fine).abs() <= 1e-13 * fine.abs());
    }

    #[test]
    fn constant_means() {
        let s = equispaced_segments(9).unwrap();
        let m = segment_means_by_quadrature(|_| 1.0, &s).unwrap();
        assert!(m.values.iter().all(|v| (v - 1.0).abs() < 1e-15));
    }

    #[test]
    fn quintic_mean_branches() {
        for &(a, b) in &[(0.1f64, 0.5f64), (-0.5, -0.1), (-0.3, 0.7), (0.0, 1.0), (-1.0, 0.0)] {
            let f = builtin(FunctionId::F6);
            let direct = (b.abs().powi(5) - a.abs().powi(5)) / (5.0 * (b - a));
            assert!((f.exact_mean(a, b).unwrap() - direct).abs() < 1e-15);
        }
    }

    #[test]
    fn ingest_two_rows() {
        let text = "a,b,mean\n-1,0,-0.5\n0,1,0.5\n";
        let (s, d) = read_averages(text.as_bytes()).unwrap();
        assert_eq!(s.kind(), SegmentKind::EquispacedChain);
        assert_eq!(d.values, vec![-0.5, 0.5]);
        assert_eq!(d.provenance, Provenance::Ingested);
    }

    #[test]
    fn ingest_errors_carry_rows() {
        assert!(matches!(read_averages("".as_bytes()), Err(HistoError::Parse { .. })));
        assert!(matches!(read_averages("a,b,mean\n".as_bytes()), Err(HistoError::Parse { row: 0, .. })));
        let bad = "a,b,mean\n-1,0,1\n0,0.5,x\n";
        assert!(matches!(read_averages(bad.as_bytes()), Err(HistoError::Parse { row: 2, .. })));
        let overlap = "a,b,mean\n-1,0.2,1\n0,0.5,1\n";
        assert!(matches!(read_averages(overlap.as_bytes()), Err(HistoError::Parse { row: 2, .. })));
        let nan = "a,b,mean\n-1,0,NaN\n";
        assert!(matches!(read_averages(nan.as_bytes()), Err(HistoError::Parse { row: 1, .. })));
        let header = "x,y,z\n-1,0,1\n";
        assert!(matches!(read_averages(header.as_bytes()), Err(HistoError::Parse { row: 0, .. })));
        let short = "a,b,mean\n-1,0\n";
        assert!(matches!(read_averages(short.as_bytes()), Err(HistoError::Parse { row: 1, .. })));
    }

    #[test]
    fn arbitrary_sets_stay_arbitrary() {
        let text = "a,b,mean\n-0.9,-0.5,1\n0.1,0.4,2\n";
        let (s, _) = read_averages(text.as_bytes()).unwrap();
        assert_eq!(s.kind(), SegmentKind::Arbitrary);
    }
}
