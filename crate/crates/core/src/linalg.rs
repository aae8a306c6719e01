//! Small dense linear algebra: LU with partial pivoting, spectral condition
//! numbers and equality-constrained least-squares (KKT) systems.

use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{HistoError, Result};

/// Pivots at or below this magnitude are treated as structurally zero.
pub const PIVOT_TOL: f64 = 1e-300;

/// Row-major real matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(HistoError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(i) = data.iter().position(|v| !v.is_finite()) {
            return Err(HistoError::InvalidParameter(format!(
                "non-finite entry at ({}, {})",
                i / cols.max(1),
                i % cols.max(1)
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diag(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(HistoError::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Rows picked in the given order.
    pub fn select_rows(&self, order: &[usize]) -> Self {
        let mut data = Vec::with_capacity(order.len() * self.cols);
        for &i in order {
            data.extend_from_slice(self.row(i));
        }
        Self {
            rows: order.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(HistoError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == 0.0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, o) in dst.iter_mut().zip(orow) {
                    *d += aik * o;
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(HistoError::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn scale(&mut self, s: f64) {
        self.data.iter_mut().for_each(|v| *v *= s);
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn vec_norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// `||Ax - b||_inf / (||A||_inf ||x||_inf + ||b||_inf)`.
pub fn relative_residual(a: &DenseMatrix, x: &[f64], b: &[f64]) -> Result<f64> {
    let ax = a.matvec(x)?;
    let r = ax.iter().zip(b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
    let scale = a.norm_inf() * vec_norm_inf(x) + vec_norm_inf(b);
    Ok(if scale == 0.0 { r } else { r / scale })
}

/// `PA = LU` with unit lower `L`, packed in one matrix.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: DenseMatrix,
    perm: Vec<usize>,
}

impl LuFactors {
    pub fn factor(a: &DenseMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(HistoError::DimensionMismatch(format!(
                "LU needs a square matrix, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[(i, k)].abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax <= PIVOT_TOL {
                return Err(HistoError::SingularMatrix { column: k });
            }
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let l = lu[(i, k)] / pivot;
                lu[(i, k)] = l;
                if l != 0.0 {
                    for j in k + 1..n {
                        lu.data[i * n + j] -= l * lu.data[k * n + j];
                    }
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim();
        if b.len() != n {
            return Err(HistoError::DimensionMismatch(format!(
                "right-hand side of length {} for dimension {n}",
                b.len()
            )));
        }
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[(i, j)] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[(i, j)] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[(i, i)];
        }
        Ok(x)
    }
}

/// Solves `Ax = b` by LU with row partial pivoting.
pub fn lu_solve(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    if b.len() != a.rows() {
        return Err(HistoError::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    LuFactors::factor(a)?.solve(b)
}

/// Singular values (descending): Householder bidiagonalization followed by
/// implicit-shift QR on the bidiagonal.
pub fn singular_values(a: &DenseMatrix) -> Vec<f64> {
    let w = if a.rows() >= a.cols() { a.clone() } else { a.transpose() };
    let (m, n) = (w.rows(), w.cols());
    let mut x = w.data;
    let mut d = vec![0.0; n];
    // e[k] couples d[k - 1] and d[k]; e[0] stays zero
    let mut e = vec![0.0; n];
    let mut v = vec![0.0; m.max(n)];
    let mut acc = vec![0.0; m.max(n)];
    for k in 0..n {
        // left reflector zeroes column k below the diagonal
        let norm = (k..m).map(|i| x[i * n + k].powi(2)).sum::<f64>().sqrt();
        if norm == 0.0 {
            d[k] = 0.0;
        } else {
            let alpha = if x[k * n + k] > 0.0 { -norm } else { norm };
            for i in k..m {
                v[i] = x[i * n + k];
            }
            v[k] -= alpha;
            let vnorm2 = (k..m).map(|i| v[i] * v[i]).sum::<f64>();
            d[k] = alpha;
            if vnorm2 > 0.0 {
                let beta = 2.0 / vnorm2;
                acc[k + 1..n].iter_mut().for_each(|t| *t = 0.0);
                for i in k..m {
                    let vi = v[i];
                    let row = &x[i * n..(i + 1) * n];
                    for j in k + 1..n {
                        acc[j] += vi * row[j];
                    }
                }
                for i in k..m {
                    let f = beta * v[i];
                    let row = &mut x[i * n..(i + 1) * n];
                    for j in k + 1..n {
                        row[j] -= f * acc[j];
                    }
                }
            }
        }
        if k + 1 >= n {
            continue;
        }
        // right reflector zeroes row k right of the superdiagonal
        let norm = (k + 1..n).map(|j| x[k * n + j].powi(2)).sum::<f64>().sqrt();
        if norm == 0.0 {
            e[k + 1] = 0.0;
            continue;
        }
        let alpha = if x[k * n + k + 1] > 0.0 { -norm } else { norm };
        for j in k + 1..n {
            v[j] = x[k * n + j];
        }
        v[k + 1] -= alpha;
        let vnorm2 = (k + 1..n).map(|j| v[j] * v[j]).sum::<f64>();
        e[k + 1] = alpha;
        if vnorm2 > 0.0 {
            let beta = 2.0 / vnorm2;
            for i in k + 1..m {
                let row = &mut x[i * n..(i + 1) * n];
                let s: f64 = (k + 1..n).map(|j| row[j] * v[j]).sum();
                let f = beta * s;
                for j in k + 1..n {
                    row[j] -= f * v[j];
                }
            }
        }
    }
    bidiagonal_singular_values(&mut d, &mut e);
    d.iter_mut().for_each(|s| *s = s.abs());
    d.sort_by(|p, q| q.partial_cmp(p).unwrap());
    d
}

// Golub-Kahan QR sweeps with a shift from the trailing 2x2 block, values only.
fn bidiagonal_singular_values(w: &mut [f64], rv1: &mut [f64]) {
    let n = w.len();
    let anorm = (0..n).map(|i| w[i].abs() + rv1[i].abs()).fold(0.0, f64::max);
    if anorm == 0.0 {
        return;
    }
    let negligible = |v: f64| v.abs() <= f64::EPSILON * anorm;
    for k in (0..n).rev() {
        for _ in 0..75 * n.max(1) {
            // find l with rv1[l] negligible, or w[l - 1] negligible
            let mut l = k;
            let mut cancel = true;
            loop {
                if l == 0 || negligible(rv1[l]) {
                    cancel = false;
                    break;
                }
                if negligible(w[l - 1]) {
                    break;
                }
                l -= 1;
            }
            if cancel {
                // chase rv1[l] away when w[l - 1] is zero
                let (mut c, mut s) = (0.0, 1.0);
                for i in l..=k {
                    let f = s * rv1[i];
                    rv1[i] *= c;
                    if negligible(f) {
                        break;
                    }
                    let g = w[i];
                    let h = f.hypot(g);
                    w[i] = h;
                    c = g / h;
                    s = -f / h;
                }
            }
            let z = w[k];
            if l == k {
                break;
            }
            let mut x = w[l];
            let nm = k - 1;
            let mut y = w[nm];
            let mut g = rv1[nm];
            let mut h = rv1[k];
            let mut f = ((y - z) * (y + z) + (g - h) * (g + h)) / (2.0 * h * y);
            g = f.hypot(1.0);
            f = ((x - z) * (x + z) + h * ((y / (f + g.copysign(f))) - h)) / x;
            let (mut c, mut s) = (1.0, 1.0);
            for j in l..=nm {
                let i = j + 1;
                g = rv1[i];
                y = w[i];
                h = s * g;
                g *= c;
                let mut zz = f.hypot(h);
                rv1[j] = zz;
                c = f / zz;
                s = h / zz;
                f = x * c + g * s;
                g = g * c - x * s;
                h = y * s;
                y *= c;
                zz = f.hypot(h);
                w[j] = zz;
                if zz != 0.0 {
                    c = f / zz;
                    s = h / zz;
                }
                f = c * g + s * y;
                x = c * y - s * g;
            }
            rv1[l] = 0.0;
            rv1[k] = f;
            w[k] = x;
        }
    }
}

/// Singular values (descending) by one-sided Jacobi rotations. Slower than
/// [`singular_values`]; kept as an independent cross-check.
pub fn singular_values_jacobi(a: &DenseMatrix) -> Vec<f64> {
    // work on columns of the taller orientation
    let w = if a.rows() >= a.cols() { a.clone() } else { a.transpose() };
    let (m, n) = (w.rows(), w.cols());
    let mut cols: Vec<Vec<f64>> = (0..n).map(|j| w.column(j)).collect();
    let tol = 1e-15;
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta, gamma) = {
                    let (cp, cq) = (&cols[p], &cols[q]);
                    let mut al = 0.0;
                    let mut be = 0.0;
                    let mut ga = 0.0;
                    for i in 0..m {
                        al += cp[i] * cp[i];
                        be += cq[i] * cq[i];
                        ga += cp[i] * cq[i];
                    }
                    (al, be, ga)
                };
                if gamma == 0.0 || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(q);
                let (cp, cq) = (&mut left[p], &mut right[0]);
                for i in 0..m {
                    let xp = cp[i];
                    let xq = cq[i];
                    cp[i] = c * xp - s * xq;
                    cq[i] = s * xp + c * xq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
    sv
}

/// `sigma_max / sigma_min`, or `+inf` when the smallest singular value
/// vanishes numerically.
pub fn condition_number_2(a: &DenseMatrix) -> f64 {
    let sv = singular_values(a);
    let (smax, smin) = (sv[0], sv[sv.len() - 1]);
    if smax == 0.0 {
        return f64::INFINITY;
    }
    let k = smax / smin;
    if k.is_finite() {
        k
    } else {
        f64::INFINITY
    }
}

/// Equality-constrained least squares in optimality form:
/// `[[G, C^T], [C, 0]] [a; z] = [c; d]`.
#[derive(Debug, Clone)]
pub struct KktSystem {
    pub g: DenseMatrix,
    pub c: DenseMatrix,
    pub rhs_c: Vec<f64>,
    pub rhs_d: Vec<f64>,
}

impl KktSystem {
    pub fn new(g: DenseMatrix, c: DenseMatrix, rhs_c: Vec<f64>, rhs_d: Vec<f64>) -> Result<Self> {
        let r = g.rows();
        if !g.is_square() || rhs_c.len() != r {
            return Err(HistoError::DimensionMismatch(format!(
                "G is {}x{}, c has length {}",
                g.rows(),
                g.cols(),
                rhs_c.len()
            )));
        }
        let m = rhs_d.len();
        if c.rows() != m || (m > 0 && c.cols() != r) {
            return Err(HistoError::DimensionMismatch(format!(
                "C is {}x{}, expected {m}x{r}",
                c.rows(),
                c.cols()
            )));
        }
        if m > r {
            return Err(HistoError::InvalidConfiguration(format!(
                "{m} constraints exceed {r} unknowns"
            )));
        }
        Ok(Self { g, c, rhs_c, rhs_d })
    }

    pub fn unknowns(&self) -> usize {
        self.g.rows()
    }

    pub fn constraints(&self) -> usize {
        self.rhs_d.len()
    }

    /// The `(r + m)`-square KKT matrix.
    pub fn matrix(&self) -> DenseMatrix {
        let (r, m) = (self.unknowns(), self.constraints());
        let mut k = DenseMatrix::zeros(r + m, r + m);
        for i in 0..r {
            for j in 0..r {
                k[(i, j)] = self.g[(i, j)];
            }
        }
        for i in 0..m {
            for j in 0..r {
                k[(r + i, j)] = self.c[(i, j)];
                k[(j, r + i)] = self.c[(i, j)];
            }
        }
        k
    }

    pub fn rhs(&self) -> Vec<f64> {
        self.rhs_c.iter().chain(&self.rhs_d).copied().collect()
    }
}

/// Solution `a` and Lagrange multipliers `z` of a KKT system.
pub fn solve_kkt(k: &KktSystem) -> Result<(Vec<f64>, Vec<f64>)> {
    let r = k.unknowns();
    let sol = lu_solve(&k.matrix(), &k.rhs()).map_err(|e| match e {
        HistoError::SingularMatrix { column } => HistoError::SingularKkt { column },
        other => other,
    })?;
    let (a, z) = sol.split_at(r);
    Ok((a.to_vec(), z.to_vec()))
}
