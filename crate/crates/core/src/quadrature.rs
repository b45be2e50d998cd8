//! Gauss-type quadrature rules on the reference interval [0,1].
//!
//! Four families are supported: Gauss-Legendre (no boundary nodes), left and
//! right Gauss-Radau (one boundary node), and Gauss-Lobatto (both boundary
//! nodes). The rules are exact for polynomials up to degree `2J + K - 1`,
//! where `J` counts interior nodes and `K` boundary nodes.
//!
//! The sign of the quadrature remainder for exponential integrands is what
//! separates the families: Gauss-Legendre and left Radau underestimate
//! integrals of `e^{kappa s}`, right Radau and Lobatto overestimate them.
//! [`exp_residue_sign`] exposes this classification directly.

use thiserror::Error;

/// Which member of the Gauss quadrature family a rule belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadratureFamily {
    GaussLegendre,
    LeftRadau,
    RightRadau,
    Lobatto,
}

impl QuadratureFamily {
    pub fn parse(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "gausslegendre" | "gauss" | "legendre" => Some(Self::GaussLegendre),
            "leftradau" | "leftgaussradau" | "radauleft" => Some(Self::LeftRadau),
            "rightradau" | "rightgaussradau" | "radauright" => Some(Self::RightRadau),
            "lobatto" | "gausslobatto" => Some(Self::Lobatto),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::GaussLegendre => "gauss_legendre",
            Self::LeftRadau => "left_radau",
            Self::RightRadau => "right_radau",
            Self::Lobatto => "lobatto",
        }
    }

    /// Families whose exponential remainder is non-negative; only these may
    /// be used in maximum-bound-certified schemes.
    pub fn underestimates(&self) -> bool {
        matches!(self, Self::GaussLegendre | Self::LeftRadau)
    }

    /// Minimal node count for which a rule of this family exists.
    pub fn min_nodes(&self) -> usize {
        match self {
            Self::Lobatto => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Error)]
pub enum QuadratureError {
    #[error("node count {got} is below the minimum {min} for the {family} family")]
    TooFewNodes { family: &'static str, got: usize, min: usize },
    #[error("interval length must be positive, got {0}")]
    NonPositiveLength(f64),
    #[error("constructed {family} rule with {nodes} nodes disagrees with the closed form by {max_err:e}")]
    CrossCheckFailed { family: &'static str, nodes: usize, max_err: f64 },
}

/// A quadrature rule on [0,1]: strictly increasing nodes, positive weights
/// summing to one, and a guaranteed minimum algebraic degree of exactness.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub family: QuadratureFamily,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub degree: usize,
}

impl QuadratureRule {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Affine map of the reference rule to the interval [0, length].
    pub fn scale_to_interval(&self, length: f64) -> Result<(Vec<f64>, Vec<f64>), QuadratureError> {
        if !(length > 0.0) {
            return Err(QuadratureError::NonPositiveLength(length));
        }
        let nodes = self.nodes.iter().map(|s| length * s).collect();
        let weights = self.weights.iter().map(|w| length * w).collect();
        Ok((nodes, weights))
    }
}

/// Legendre polynomial P_n and its derivative at x, by three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 1..n {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = p_next;
    }
    // (1-x^2) P_n' = n (P_{n-1} - x P_n)
    let dp = if (1.0 - x * x).abs() < 1e-300 {
        // endpoint derivative, only needed for diagnostics
        0.5 * (n * (n + 1)) as f64 * if x > 0.0 { 1.0 } else { (-1.0f64).powi(n as i32 + 1) }
    } else {
        (n as f64) * (p_prev - x * p) / (1.0 - x * x)
    };
    (p, dp)
}

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_ITER: usize = 100;

/// Polish a bracketed root of `f` with Newton steps, falling back to
/// bisection whenever an iterate leaves the bracket.
fn refine_root(f: &dyn Fn(f64) -> (f64, f64), mut lo: f64, mut hi: f64) -> f64 {
    let (flo, _) = f(lo);
    let mut x = 0.5 * (lo + hi);
    for _ in 0..NEWTON_MAX_ITER {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return x;
        }
        if (fx > 0.0) == (flo > 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        let step = fx / dfx;
        let mut next = x - step;
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= NEWTON_TOL * x.abs().max(1.0) {
            return next;
        }
        x = next;
    }
    x
}

/// All `count` roots of `f` inside the open interval (lo, hi), found by a
/// dense sign scan followed by safeguarded Newton.
fn roots_in_interval(
    f: &dyn Fn(f64) -> (f64, f64),
    count: usize,
    lo: f64,
    hi: f64,
) -> Vec<f64> {
    if count == 0 {
        return Vec::new();
    }
    let samples = 200 * count.max(4);
    let mut roots = Vec::with_capacity(count);
    let mut x_prev = lo;
    let mut f_prev = f(lo).0;
    for i in 1..=samples {
        let x = lo + (hi - lo) * (i as f64) / (samples as f64);
        let fx = f(x).0;
        if f_prev == 0.0 {
            roots.push(x_prev);
        } else if f_prev.signum() != fx.signum() && fx != 0.0 {
            roots.push(refine_root(f, x_prev, x));
        }
        x_prev = x;
        f_prev = fx;
    }
    assert_eq!(
        roots.len(),
        count,
        "expected {count} roots in ({lo}, {hi}), found {}",
        roots.len()
    );
    roots
}

/// Nodes and weights on the paper interval [-1,1].
fn build_reference(family: QuadratureFamily, m: usize) -> (Vec<f64>, Vec<f64>) {
    match family {
        QuadratureFamily::GaussLegendre => {
            let f = |x: f64| legendre(m, x);
            let nodes = roots_in_interval(&f, m, -1.0, 1.0);
            let weights = nodes
                .iter()
                .map(|&x| {
                    let (_, dp) = legendre(m, x);
                    2.0 / ((1.0 - x * x) * dp * dp)
                })
                .collect();
            (nodes, weights)
        }
        QuadratureFamily::LeftRadau => {
            // Interior nodes are the roots of P_{m-1} + P_m in (-1, 1).
            let f = |x: f64| {
                let (p0, dp0) = legendre(m - 1, x);
                let (p1, dp1) = legendre(m, x);
                (p0 + p1, dp0 + dp1)
            };
            let interior = roots_in_interval(&f, m - 1, -1.0 + 1e-12, 1.0);
            let mf = m as f64;
            let mut nodes = vec![-1.0];
            let mut weights = vec![2.0 / (mf * mf)];
            for &x in &interior {
                let (p, _) = legendre(m - 1, x);
                nodes.push(x);
                weights.push((1.0 - x) / (mf * mf * p * p));
            }
            (nodes, weights)
        }
        QuadratureFamily::RightRadau => {
            // Mirror image of the left Radau rule.
            let (nodes_l, weights_l) = build_reference(QuadratureFamily::LeftRadau, m);
            let nodes = nodes_l.iter().rev().map(|x| -x).collect();
            let weights = weights_l.iter().rev().copied().collect();
            (nodes, weights)
        }
        QuadratureFamily::Lobatto => {
            // Interior nodes are the extrema of P_{m-1}.
            let f = |x: f64| {
                let n = m - 1;
                let (p, dp) = legendre(n, x);
                // derivative of P_n' from the Legendre ODE
                let ddp = (2.0 * x * dp - (n * (n + 1)) as f64 * p) / (1.0 - x * x);
                (dp, ddp)
            };
            let interior = roots_in_interval(&f, m - 2, -1.0 + 1e-12, 1.0 - 1e-12);
            let c = 2.0 / ((m * (m - 1)) as f64);
            let mut nodes = vec![-1.0];
            let mut weights = vec![c];
            for &x in &interior {
                let (p, _) = legendre(m - 1, x);
                nodes.push(x);
                weights.push(c / (p * p));
            }
            nodes.push(1.0);
            weights.push(c);
            (nodes, weights)
        }
    }
}

/// Closed-form rules on [0,1] used to anchor the generator for small m.
fn closed_form(family: QuadratureFamily, m: usize) -> Option<(Vec<f64>, Vec<f64>)> {
    use QuadratureFamily::*;
    let s3 = 3.0f64.sqrt();
    let s6 = 6.0f64.sqrt();
    let s15 = 15.0f64.sqrt();
    match (family, m) {
        (GaussLegendre, 1) => Some((vec![0.5], vec![1.0])),
        (GaussLegendre, 2) => Some((
            vec![(3.0 - s3) / 6.0, (3.0 + s3) / 6.0],
            vec![0.5, 0.5],
        )),
        (GaussLegendre, 3) => Some((
            vec![0.5 - s15 / 10.0, 0.5, 0.5 + s15 / 10.0],
            vec![5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0],
        )),
        (LeftRadau, 1) => Some((vec![0.0], vec![1.0])),
        (LeftRadau, 2) => Some((vec![0.0, 2.0 / 3.0], vec![0.25, 0.75])),
        (LeftRadau, 3) => Some((
            vec![0.0, (6.0 - s6) / 10.0, (6.0 + s6) / 10.0],
            vec![1.0 / 9.0, (16.0 + s6) / 36.0, (16.0 - s6) / 36.0],
        )),
        (RightRadau, 1) => Some((vec![1.0], vec![1.0])),
        (RightRadau, 2) => Some((vec![1.0 / 3.0, 1.0], vec![0.75, 0.25])),
        (RightRadau, 3) => Some((
            vec![(4.0 - s6) / 10.0, (4.0 + s6) / 10.0, 1.0],
            vec![(16.0 - s6) / 36.0, (16.0 + s6) / 36.0, 1.0 / 9.0],
        )),
        (Lobatto, 2) => Some((vec![0.0, 1.0], vec![0.5, 0.5])),
        (Lobatto, 3) => Some((vec![0.0, 0.5, 1.0], vec![1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0])),
        _ => None,
    }
}

/// Construct a quadrature rule on [0,1] with `node_count` nodes.
pub fn build_rule(
    family: QuadratureFamily,
    node_count: usize,
) -> Result<QuadratureRule, QuadratureError> {
    let min = family.min_nodes();
    if node_count < min {
        return Err(QuadratureError::TooFewNodes {
            family: family.name(),
            got: node_count,
            min,
        });
    }
    let (nodes_ref, weights_ref) = build_reference(family, node_count);
    let nodes: Vec<f64> = nodes_ref.iter().map(|x| 0.5 * (x + 1.0)).collect();
    let weights: Vec<f64> = weights_ref.iter().map(|w| 0.5 * w).collect();

    if let Some((cf_nodes, cf_weights)) = closed_form(family, node_count) {
        let max_err = nodes
            .iter()
            .zip(&cf_nodes)
            .chain(weights.iter().zip(&cf_weights))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        if max_err > 1e-13 {
            return Err(QuadratureError::CrossCheckFailed {
                family: family.name(),
                nodes: node_count,
                max_err,
            });
        }
    }

    let boundary = nodes
        .iter()
        .filter(|&&x| x == 0.0 || x == 1.0)
        .count();
    let interior = node_count - boundary;
    let degree = 2 * interior + boundary - 1;

    debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
    debug_assert!(weights.iter().all(|&w| w > 0.0));

    Ok(QuadratureRule {
        family,
        nodes,
        weights,
        degree,
    })
}

/// Signed remainder of the rule for the integrand `e^{kappa s}` on [0, tau]:
/// `expm1(kappa tau)/kappa - sum_i tau w_i e^{kappa tau s_i}`.
///
/// Positive means the rule underestimates the exact integral, which is the
/// property the maximum-bound proof relies on.
pub fn exp_residue_sign(rule: &QuadratureRule, growth_rate: f64, length: f64) -> f64 {
    assert!(growth_rate > 0.0, "growth rate must be positive");
    assert!(length > 0.0, "interval length must be positive");
    let exact = (growth_rate * length).exp_m1() / growth_rate;
    // Kahan summation; the residue can sit many orders below the terms.
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
        let term = length * w * (growth_rate * length * s).exp();
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    exact - sum
}
