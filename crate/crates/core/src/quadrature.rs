//! Gauss-Legendre rules and a composite panel-doubling integrator.

use std::f64::consts::PI;

/// Nodes and weights of an `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on `P_n` from the Chebyshev-like initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `int_a^b f`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        half * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
    }

    fn integrate_with_abs<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: &F) -> (f64, f64) {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let (mut s, mut sa) = (0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let v = w * f(mid + half * x);
            s += v;
            sa += v.abs();
        }
        (half * s, half.abs() * sa)
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Result of a composite integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub panels: usize,
    /// Relative change between the last two refinements.
    pub change: f64,
}

/// Composite Gauss-Legendre integration with panel doubling.
#[derive(Debug, Clone)]
pub struct CompositeRule {
    rule: GaussLegendre,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for CompositeRule {
    fn default() -> Self {
        Self {
            rule: GaussLegendre::new(16),
            rel_tol: 1e-14,
            max_panels: 64,
        }
    }
}

impl CompositeRule {
    pub fn new(points_per_panel: usize, rel_tol: f64, max_panels: usize) -> Self {
        Self {
            rule: GaussLegendre::new(points_per_panel),
            rel_tol,
            max_panels,
        }
    }

    fn fixed<F: Fn(f64) -> f64>(&self, a: f64, b: f64, panels: usize, f: &F) -> (f64, f64) {
        let h = (b - a) / panels as f64;
        let (mut s, mut sa) = (0.0, 0.0);
        for p in 0..panels {
            let lo = a + h * p as f64;
            let hi = if p + 1 == panels { b } else { lo + h };
            let (v, va) = self.rule.integrate_with_abs(lo, hi, f);
            s += v;
            sa += va;
        }
        (s, sa)
    }

    /// `int_a^b f`, doubling panels until two successive estimates agree to
    /// `rel_tol` relative to `int |f|`, or `max_panels` is reached.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> QuadResult {
        let mut panels = 1;
        let (mut prev, _) = self.fixed(a, b, panels, &f);
        loop {
            let next_panels = panels * 2;
            let (cur, scale) = self.fixed(a, b, next_panels, &f);
            let change = if scale > 0.0 { (cur - prev).abs() / scale } else { 0.0 };
            if change < self.rel_tol || next_panels >= self.max_panels {
                return QuadResult {
                    value: cur,
                    panels: next_panels,
                    change,
                };
            }
            prev = cur;
            panels = next_panels;
        }
    }

    /// Like [`Self::integrate`] but splits `[a, b]` at each interior breakpoint.
    pub fn integrate_split<F: Fn(f64) -> f64>(
        &self,
        a: f64,
        b: f64,
        breakpoints: &[f64],
        f: F,
    ) -> QuadResult {
        let mut cuts = vec![a];
        cuts.extend(breakpoints.iter().copied().filter(|&x| a < x && x < b));
        cuts.push(b);
        let mut total = QuadResult {
            value: 0.0,
            panels: 0,
            change: 0.0,
        };
        for w in cuts.windows(2) {
            let r = self.integrate(w[0], w[1], &f);
            total.value += r.value;
            total.panels += r.panels;
            total.change = total.change.max(r.change);
        }
        total
    }
}
