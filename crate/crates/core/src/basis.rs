//! Chebyshev polynomials of the first kind and their segment means.

use serde::{Deserialize, Serialize};

use crate::error::{HistoError, Result};
use crate::grid::Segment;

/// Inputs within this distance outside `[-1, 1]` are clamped.
pub const CLAMP_TOL: f64 = 1e-12;

/// `sum_k coeffs[k] * T_k(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChebPoly {
    pub coeffs: Vec<f64>,
}

impl ChebPoly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "ChebPoly needs at least one coefficient");
        Self { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self { coeffs: vec![c] }
    }

    /// The basis polynomial `T_k`.
    pub fn basis(k: usize) -> Self {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = 1.0;
        Self { coeffs }
    }

    /// Representational degree, `coeffs.len() - 1`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        eval_poly(self, x)
    }

    /// Mean value over `s`, computed termwise.
    pub fn segment_average(&self, s: &Segment) -> Result<f64> {
        let avg = segment_averages_upto(self.degree(), s)?;
        Ok(self.coeffs.iter().zip(&avg).map(|(c, a)| c * a).sum())
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

#[inline]
fn clamp_unit(x: f64) -> f64 {
    if x.abs() <= 1.0 + CLAMP_TOL {
        x.clamp(-1.0, 1.0)
    } else {
        x
    }
}

/// `T_k(x)` by the three-term recurrence.
pub fn eval_t(k: usize, x: f64) -> f64 {
    let x = clamp_unit(x);
    match k {
        0 => 1.0,
        1 => x,
        _ => {
            let (mut prev, mut cur) = (1.0, x);
            for _ in 1..k {
                let next = 2.0 * x * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Clenshaw evaluation of a Chebyshev series.
pub fn eval_poly(p: &ChebPoly, x: f64) -> f64 {
    let x = clamp_unit(x);
    let c = &p.coeffs;
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = 2.0 * x * b1 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    c[0] + x * b1 - b2
}

/// A primitive of `T_k` with zero `T_0` coefficient.
pub fn antiderivative_t(k: usize) -> ChebPoly {
    let mut coeffs = vec![0.0; k + 2];
    match k {
        0 => coeffs[1] = 1.0,
        1 => coeffs[2] = 0.25,
        _ => {
            coeffs[k + 1] = 0.5 / (k + 1) as f64;
            coeffs[k - 1] -= 0.5 / (k - 1) as f64;
        }
    }
    ChebPoly { coeffs }
}

/// Difference quotients `D_j = (T_j(b) - T_j(a)) / (b - a)` for `j = 0..=jmax`.
///
/// With `a = cos(alpha)`, `b = cos(beta)`, `sigma = (alpha + beta)/2` and
/// `h = (alpha - beta)/2`, `D_j = sin(j sigma) sin(j h) / (sin sigma sin h)`,
/// which avoids the cancellation in `T_j(b) - T_j(a)` on short segments.
fn difference_quotients(jmax: usize, s: &Segment) -> Vec<f64> {
    let a = clamp_unit(s.a);
    let b = clamp_unit(s.b);
    let alpha = a.acos();
    let beta = b.acos();
    let sigma = 0.5 * (alpha + beta);
    let sin_sigma = sigma.sin();
    let h = if b - a < 0.5 {
        // sin h = (b - a) / (2 sin sigma), exact up to rounding of b - a
        ((b - a) / (2.0 * sin_sigma)).min(1.0).asin()
    } else {
        0.5 * (alpha - beta)
    };
    let denom = sin_sigma * h.sin();
    let mut d = Vec::with_capacity(jmax + 1);
    d.push(0.0);
    for j in 1..=jmax {
        let jf = j as f64;
        d.push((jf * sigma).sin() * (jf * h).sin() / denom);
    }
    d
}

fn check_segment(s: &Segment) -> Result<()> {
    if !(s.a.is_finite() && s.b.is_finite()) || s.b <= s.a {
        return Err(HistoError::InvalidParameter(format!(
            "degenerate segment [{}, {}]",
            s.a, s.b
        )));
    }
    if s.a < -1.0 - CLAMP_TOL || s.b > 1.0 + CLAMP_TOL {
        return Err(HistoError::InvalidParameter(format!(
            "segment [{}, {}] leaves [-1, 1]",
            s.a, s.b
        )));
    }
    Ok(())
}

/// Means of `T_0, ..., T_d` over `s`.
pub fn segment_averages_upto(d: usize, s: &Segment) -> Result<Vec<f64>> {
    check_segment(s)?;
    let dq = difference_quotients(d + 1, s);
    let mut out = Vec::with_capacity(d + 1);
    for k in 0..=d {
        out.push(match k {
            0 => 1.0,
            1 => 0.25 * dq[2],
            _ => 0.5 * (dq[k + 1] / (k + 1) as f64 - dq[k - 1] / (k - 1) as f64),
        });
    }
    Ok(out)
}

/// Mean of `T_k` over `s`, i.e. `(P(b) - P(a)) / (b - a)` for the primitive
/// `P` of [`antiderivative_t`].
pub fn segment_average_t(k: usize, s: &Segment) -> Result<f64> {
    Ok(segment_averages_upto(k, s)?[k])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(a: f64, b: f64) -> Segment {
        Segment { a, b }
    }

    #[test]
    fn eval_t_examples() {
        assert_eq!(eval_t(0, 0.37), 1.0);
        assert_eq!(eval_t(5, 1.0), 1.0);
        assert!((eval_t(3, 0.5) + 1.0).abs() < 1e-15);
        assert_eq!(eval_t(4, 1.0 + 1e-13), 1.0);
    }

    #[test]
    fn eval_poly_examples() {
        assert_eq!(ChebPoly::constant(3.5).eval(0.2), 3.5);
        assert!((ChebPoly::new(vec![0.0, 1.0]).eval(0.3) - 0.3).abs() < 1e-16);
        assert!((ChebPoly::new(vec![1.0, 2.0, 3.0]).eval(0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn antiderivative_examples() {
        assert_eq!(antiderivative_t(0).coeffs, vec![0.0, 1.0]);
        assert_eq!(antiderivative_t(1).coeffs, vec![0.0, 0.0, 0.25]);
        let p2 = antiderivative_t(2);
        assert_eq!(p2.coeffs, vec![0.0, -0.5, 0.0, 0.5 / 3.0]);
    }

    #[test]
    fn antiderivative_differentiates_back() {
        // central differences of P against T_k
        let h = 1e-5;
        for k in 0..12 {
            let p = antiderivative_t(k);
            for i in 0..9 {
                let x = -0.8 + 0.2 * i as f64;
                let d = (p.eval(x + h) - p.eval(x - h)) / (2.0 * h);
                assert!((d - eval_t(k, x)).abs() < 1e-8, "k={k} x={x}");
            }
        }
    }

    #[test]
    fn average_examples() {
        assert_eq!(segment_average_t(0, &seg(0.1, 0.7)).unwrap(), 1.0);
        assert!((segment_average_t(1, &seg(0.0, 0.5)).unwrap() - 0.25).abs() < 1e-15);
        assert!((segment_average_t(2, &seg(-1.0, 1.0)).unwrap() + 1.0 / 3.0).abs() < 1e-15);
        assert!(segment_average_t(2, &seg(0.5, 0.5)).is_err());
    }

    #[test]
    fn average_matches_antiderivative_difference() {
        let segs = [(-1.0, 1.0), (-1.0, -0.96), (0.3, 0.9), (-0.5, 0.25), (0.96, 1.0)];
        for &(a, b) in &segs {
            for k in 0..30 {
                let p = antiderivative_t(k);
                let want = (p.eval(b) - p.eval(a)) / (b - a);
                let got = segment_average_t(k, &seg(a, b)).unwrap();
                assert!((got - want).abs() < 1e-12, "k={k} [{a},{b}]");
            }
        }
    }

    #[test]
    fn short_segment_mean_tends_to_point_value() {
        let x = 0.3;
        let s = seg(x - 1e-9, x + 1e-9);
        for k in 0..50 {
            let m = segment_average_t(k, &s).unwrap();
            assert!((m - eval_t(k, x)).abs() < 1e-12 * (k * k + 1) as f64);
        }
    }
}
