//! Composite Gauss–Legendre rules and the grids built from them.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Points per Gauss–Legendre panel.
pub const PANEL_ORDER: usize = 16;

/// Nodes and weights of a quadrature rule, with the radius at which the
/// integration domain was truncated.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    domain_cut: f64,
}

impl QuadratureGrid {
    pub fn new(nodes: Vec<f64>, weights: Vec<f64>, domain_cut: f64) -> Result<Self> {
        if nodes.len() != weights.len() || nodes.is_empty() {
            return Err(Error::DomainViolation(
                "quadrature nodes and weights must be non-empty and of equal length".into(),
            ));
        }
        if !(domain_cut > 0.0) {
            return Err(Error::DomainViolation(format!("domain cut must be positive, got {domain_cut}")));
        }
        if weights.iter().any(|w| !(*w > 0.0)) {
            return Err(Error::DomainViolation("quadrature weights must be positive".into()));
        }
        if nodes.windows(2).any(|p| !(p[0] < p[1])) {
            return Err(Error::DomainViolation("quadrature nodes must be strictly increasing".into()));
        }
        Ok(Self {
            nodes,
            weights,
            domain_cut,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn domain_cut(&self) -> f64 {
        self.domain_cut
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_k f(x_k)`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let values: Vec<f64> = self.nodes.iter().map(|&x| f(x)).collect();
        self.reduce(&values)
    }

    /// Weighted sum of precomputed node values. The order is fixed: terms are
    /// paired from the outside in (`k` with `N−1−k`), so odd integrands on a
    /// mirror-symmetric grid cancel exactly.
    pub fn reduce(&self, values: &[f64]) -> f64 {
        let n = self.nodes.len();
        debug_assert_eq!(values.len(), n);
        let mut sum = 0.0;
        for k in 0..n / 2 {
            let j = n - 1 - k;
            sum += self.weights[k] * values[k] + self.weights[j] * values[j];
        }
        if n % 2 == 1 {
            sum += self.weights[n / 2] * values[n / 2];
        }
        sum
    }

    fn concat(parts: Vec<QuadratureGrid>, domain_cut: f64) -> Result<Self> {
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for p in parts {
            nodes.extend(p.nodes);
            weights.extend(p.weights);
        }
        QuadratureGrid::new(nodes, weights, domain_cut)
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, ascending. Newton
/// iteration on `P_n` from the Chebyshev-like initial guesses; the rule is
/// mirrored so nodes are exactly symmetric.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // x decreases with i; fill from both ends
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Legendre panels over the consecutive intervals given by `breaks`.
pub fn composite_gauss_legendre(breaks: &[f64], order: usize, domain_cut: f64) -> Result<QuadratureGrid> {
    if breaks.len() < 2 {
        return Err(Error::DomainViolation("need at least one panel".into()));
    }
    let (t, w) = gauss_legendre(order);
    let mut nodes = Vec::with_capacity((breaks.len() - 1) * order);
    let mut weights = Vec::with_capacity(nodes.capacity());
    for pair in breaks.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        for (ti, wi) in t.iter().zip(&w) {
            nodes.push(mid + half * ti);
            weights.push(half * wi);
        }
    }
    QuadratureGrid::new(nodes, weights, domain_cut)
}

/// Composite Gauss–Legendre rule on `[−cut, cut]` with `n_nodes` rounded up
/// to a whole number of 16-point panels. The panel layout is mirror
/// symmetric, so the grid is exactly symmetric about 0.
pub fn build_hermite_style_grid(n_nodes: usize, cut: f64) -> Result<QuadratureGrid> {
    if n_nodes < PANEL_ORDER {
        return Err(Error::DomainViolation(format!(
            "real-line grid needs at least {PANEL_ORDER} nodes, got {n_nodes}"
        )));
    }
    if !(cut > 0.0) || !cut.is_finite() {
        return Err(Error::DomainViolation(format!("cut must be positive, got {cut}")));
    }
    let panels = n_nodes.div_ceil(PANEL_ORDER);
    let (t, w) = gauss_legendre(PANEL_ORDER);
    let width = 2.0 * cut / panels as f64;
    let mut nodes = vec![0.0; panels * PANEL_ORDER];
    let mut weights = vec![0.0; panels * PANEL_ORDER];
    // Build the right half (including a centred panel when `panels` is odd)
    // and mirror it.
    for p in 0..panels {
        let q = panels - 1 - p;
        if q < p {
            break;
        }
        // panel q spans [−cut + q·width, −cut + (q+1)·width]; mid ≥ 0
        let mid = if q == p { 0.0 } else { (q as f64 + 0.5) * width - cut };
        let half = 0.5 * width;
        for (i, (ti, wi)) in t.iter().zip(&w).enumerate() {
            let x = mid + half * ti;
            let k = q * PANEL_ORDER + i;
            let mirror = panels * PANEL_ORDER - 1 - k;
            nodes[k] = x;
            weights[k] = half * wi;
            nodes[mirror] = -x;
            weights[mirror] = half * wi;
        }
    }
    QuadratureGrid::new(nodes, weights, cut)
}

/// Radial grid on `(0, cut]` for integrands carrying a `K0(2ρ)` factor:
/// geometrically graded panels on `(0, 1]` toward the logarithmic endpoint
/// and uniform unit-ish panels on `[1, cut]`.
pub fn build_radial_grid(cut: f64, inner_panels: usize, outer_panels: usize) -> Result<QuadratureGrid> {
    if !(cut > 1.0) || inner_panels == 0 || outer_panels == 0 {
        return Err(Error::DomainViolation(format!(
            "radial grid needs cut > 1 and non-zero panel counts (cut = {cut})"
        )));
    }
    let mut inner: Vec<f64> = (0..=inner_panels)
        .rev()
        .map(|k| 0.25_f64.powi(k as i32))
        .collect();
    inner[0] = 0.0;
    let inner_grid = composite_gauss_legendre(&inner, PANEL_ORDER, 1.0)?;
    let outer: Vec<f64> = (0..=outer_panels)
        .map(|k| 1.0 + (cut - 1.0) * k as f64 / outer_panels as f64)
        .collect();
    let outer_grid = composite_gauss_legendre(&outer, PANEL_ORDER, cut)?;
    QuadratureGrid::concat(vec![inner_grid, outer_grid], cut)
}
