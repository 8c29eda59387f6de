//! Gauss-Legendre rules, plain and composite.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on the three-term recurrence, started from the
    /// Chebyshev-like guess `cos(pi (i + 3/4) / (n + 1/2))`.
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    let (_, d) = legendre(n, x);
                    dp = d;
                    break;
                }
            }
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

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `int_lo^hi f`.
    pub fn integrate<T>(&self, lo: f64, hi: f64, f: impl Fn(f64) -> T) -> T
    where
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
    {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut acc = T::default();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * x) * (w * half);
        }
        acc
    }
}

/// `P_n(x)` and `P_n'(x)`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite rule: `panels` equal panels of a fixed Gauss-Legendre rule.
#[derive(Debug, Clone)]
pub struct Composite {
    rule: GaussLegendre,
    panels: usize,
}

/// Nodes per panel used by [`Composite::for_oscillation`].
pub const PANEL_NODES: usize = 16;

impl Composite {
    pub fn new(nodes_per_panel: usize, panels: usize) -> Self {
        Self { rule: GaussLegendre::new(nodes_per_panel), panels: panels.max(1) }
    }

    /// At least 64 nodes per oscillation period `pi / k` over a length `length`,
    /// and at least 128 nodes overall.
    pub fn for_oscillation(k: f64, length: f64) -> Self {
        let periods = (k.abs() * length / PI).ceil().max(1.0);
        let nodes = (64.0 * periods).max(128.0);
        let panels = (nodes / PANEL_NODES as f64).ceil() as usize;
        Self::new(PANEL_NODES, panels)
    }

    pub fn total_nodes(&self) -> usize {
        self.panels * self.rule.len()
    }

    pub fn integrate<T>(&self, lo: f64, hi: f64, f: impl Fn(f64) -> T) -> T
    where
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
    {
        let h = (hi - lo) / self.panels as f64;
        let mut acc = T::default();
        for p in 0..self.panels {
            let a = lo + h * p as f64;
            acc = acc + self.rule.integrate(a, a + h, &f);
        }
        acc
    }

    pub fn integrate_complex(&self, lo: f64, hi: f64, f: impl Fn(f64) -> Complex64) -> Complex64 {
        self.integrate(lo, hi, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for n in [1, 2, 5, 16, 64] {
            let g = GaussLegendre::new(n);
            assert!((g.weights.iter().sum::<f64>() - 2.0).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        let g = GaussLegendre::new(5);
        for p in 0..10 {
            let got = g.integrate(0.0, 1.0, |x| x.powi(p));
            assert!((got - 1.0 / (p as f64 + 1.0)).abs() < 1e-14, "degree {p}");
        }
    }

    #[test]
    fn three_point_nodes() {
        let g = GaussLegendre::new(3);
        let x = (0.6f64).sqrt();
        assert!((g.nodes[0] + x).abs() < 1e-15 && g.nodes[1] == 0.0 && (g.nodes[2] - x).abs() < 1e-15);
        assert!((g.weights[1] - 8.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn composite_oscillatory_integral() {
        let k = 200.0;
        let c = Composite::for_oscillation(k, 1.0);
        assert!(c.total_nodes() >= 128);
        let got = c.integrate(-0.5, 0.5, |x| (k * x).cos());
        let want = 2.0 * (k * 0.5).sin() / k;
        assert!((got - want).abs() < 1e-13);
    }
}
