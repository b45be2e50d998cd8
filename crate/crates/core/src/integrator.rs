//! The EI*k* time stepper.
//!
//! One step from `u^n` to `u^{n+1}` evaluates the recursion
//!
//! ```text
//! w[1](h)  = e^{hL} u + phi_1(hL) N(u)
//! w[j](h)  = e^{hL} u + sum_i w_i e^{(h - s_i)L} N(w[j-1](s_i)),   j = 2..k
//! u^{n+1}  = w[k](tau)
//! ```
//!
//! where the level-j quadrature rule is scaled to [0, h] and must have
//! algebraic degree at least `j - 1`. With Gauss-Legendre or left Radau
//! rules at every level, the scheme preserves the maximum bound `beta`
//! unconditionally in the time step.

use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use crate::grid::{axpy, Field};
use crate::model::{ModelError, Nonlinearity};
use crate::operator::{OperatorError, StabilizedOperator};
use crate::quadrature::{build_rule, QuadratureError, QuadratureFamily, QuadratureRule};

#[derive(Debug, Error)]
pub enum IntegratorError {
    #[error("scheme order must be at least 1")]
    ZeroOrder,
    #[error("step size must be positive, got {0}")]
    NonPositiveTau(f64),
    #[error("level {level} rule has degree {degree}, needs at least {need}")]
    RuleDegreeTooLow { level: usize, degree: usize, need: usize },
    #[error("{family} quadrature does not preserve the maximum bound; pass allow_non_mbp to use it anyway")]
    NonMbpFamily { family: &'static str },
    #[error("expected {expected} level rules for order {order}, got {got}")]
    RuleCountMismatch { order: usize, expected: usize, got: usize },
    #[error("operator kappa {op} differs from model kappa {model}")]
    KappaMismatch { op: f64, model: f64 },
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("blow-up at step {step} (t = {time}): {source}")]
    BlowUp {
        step: usize,
        time: f64,
        source: ModelError,
    },
}

/// Smallest node count of `family` whose rule has degree >= `level - 1`.
pub fn default_node_count(family: QuadratureFamily, level: usize) -> usize {
    let m = match family {
        QuadratureFamily::GaussLegendre => level.div_ceil(2),
        QuadratureFamily::LeftRadau | QuadratureFamily::RightRadau => (level + 1).div_ceil(2),
        QuadratureFamily::Lobatto => (level + 2).div_ceil(2),
    };
    m.max(family.min_nodes())
}

/// Order, per-level quadrature rules (levels 2..=order) and step size.
#[derive(Debug, Clone)]
pub struct SchemeSpec {
    pub order: usize,
    pub level_rules: Vec<QuadratureRule>,
    pub tau: f64,
}

impl SchemeSpec {
    /// Scheme with the default node-count policy: level j gets the smallest
    /// rule of `family` with degree >= j - 1. For left Radau this yields the
    /// 2-node rule for orders 2-3 and the 3-node rule for orders 4-5.
    pub fn new(
        order: usize,
        family: QuadratureFamily,
        tau: f64,
        allow_non_mbp: bool,
    ) -> Result<Self, IntegratorError> {
        let rules = (2..=order)
            .map(|j| build_rule(family, default_node_count(family, j)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::with_rules(order, rules, tau, allow_non_mbp)
    }

    /// Scheme with explicit per-level rules (index 0 is level 2).
    pub fn with_rules(
        order: usize,
        level_rules: Vec<QuadratureRule>,
        tau: f64,
        allow_non_mbp: bool,
    ) -> Result<Self, IntegratorError> {
        if order == 0 {
            return Err(IntegratorError::ZeroOrder);
        }
        if !(tau > 0.0) {
            return Err(IntegratorError::NonPositiveTau(tau));
        }
        if level_rules.len() != order.saturating_sub(1) {
            return Err(IntegratorError::RuleCountMismatch {
                order,
                expected: order - 1,
                got: level_rules.len(),
            });
        }
        for (idx, rule) in level_rules.iter().enumerate() {
            let level = idx + 2;
            if rule.degree < level - 1 {
                return Err(IntegratorError::RuleDegreeTooLow {
                    level,
                    degree: rule.degree,
                    need: level - 1,
                });
            }
            if !allow_non_mbp && !rule.family.underestimates() {
                return Err(IntegratorError::NonMbpFamily {
                    family: rule.family.name(),
                });
            }
        }
        Ok(Self { order, level_rules, tau })
    }

    /// Number of first-order evaluations a single step performs: the product
    /// over levels of each rule's nonzero-node count.
    pub fn expected_ei1_calls(&self) -> u64 {
        self.level_rules
            .iter()
            .map(|r| r.nodes.iter().filter(|&&s| s != 0.0).count() as u64)
            .product()
    }
}

/// Everything one step needs; also counts first-order evaluations.
pub struct StepContext<'a> {
    pub operator: &'a StabilizedOperator,
    pub model: &'a Nonlinearity,
    pub spec: &'a SchemeSpec,
    ei1_calls: AtomicU64,
}

impl<'a> StepContext<'a> {
    pub fn new(
        operator: &'a StabilizedOperator,
        model: &'a Nonlinearity,
        spec: &'a SchemeSpec,
    ) -> Result<Self, IntegratorError> {
        let (a, b) = (operator.kappa, model.kappa);
        if (a - b).abs() > 1e-12 * a.abs().max(b.abs()) {
            return Err(IntegratorError::KappaMismatch { op: a, model: b });
        }
        Ok(Self {
            operator,
            model,
            spec,
            ei1_calls: AtomicU64::new(0),
        })
    }

    pub fn ei1_call_count(&self) -> u64 {
        self.ei1_calls.load(Ordering::Relaxed)
    }

    pub fn reset_ei1_call_count(&self) {
        self.ei1_calls.store(0, Ordering::Relaxed);
    }

    /// First-order solution `w[1](h)`.
    pub fn ei1(&self, u: &Field, h: f64) -> Result<Field, IntegratorError> {
        self.ei1_calls.fetch_add(1, Ordering::Relaxed);
        let mut out = self.operator.apply_exp(h, u)?;
        let n = self.model.apply_n(u)?;
        let phi = self.operator.apply_phi1(h, &n)?;
        axpy(&mut out, 1.0, &phi);
        Ok(out)
    }

    /// Level-j solution `w[j](h)` for `2 <= j <= order`.
    pub fn ei_level(&self, level: usize, u: &Field, h: f64) -> Result<Field, IntegratorError> {
        assert!(
            (2..=self.spec.order).contains(&level),
            "level {level} outside 2..={}",
            self.spec.order
        );
        let rule = &self.spec.level_rules[level - 2];
        let (nodes, weights) = rule.scale_to_interval(h)?;
        let mut acc = self.operator.apply_exp(h, u)?;
        for (&s, &w) in nodes.iter().zip(&weights) {
            // w[j-1](0) is u itself; no lower-level evaluation needed
            let n = if s == 0.0 {
                self.model.apply_n(u)?
            } else {
                let inner = if level == 2 {
                    self.ei1(u, s)?
                } else {
                    self.ei_level(level - 1, u, s)?
                };
                self.model.apply_n(&inner)?
            };
            let term = self.operator.apply_exp(h - s, &n)?;
            axpy(&mut acc, w, &term);
        }
        Ok(acc)
    }

    /// One full time step `u^{n+1} = w[k](tau)`.
    pub fn step(&self, u: &Field) -> Result<Field, IntegratorError> {
        if self.spec.order == 1 {
            self.ei1(u, self.spec.tau)
        } else {
            self.ei_level(self.spec.order, u, self.spec.tau)
        }
    }

    /// Apply `n_steps` steps, invoking `observer(step, time, field)` after
    /// each one. A model-domain violation is reported with the step and time
    /// at which it occurred.
    pub fn evolve(
        &self,
        u0: &Field,
        n_steps: usize,
        mut observer: impl FnMut(usize, f64, &Field),
    ) -> Result<Field, IntegratorError> {
        let mut u = u0.clone();
        for n in 1..=n_steps {
            let time = n as f64 * self.spec.tau;
            u = self.step(&u).map_err(|e| match e {
                IntegratorError::Model(source) | IntegratorError::BlowUp { source, .. } => {
                    IntegratorError::BlowUp { step: n, time, source }
                }
                other => other,
            })?;
            observer(n, time, &u);
        }
        Ok(u)
    }
}

/// Closed-form solution of the uniform-field reduction `u' = u - u^3`.
/// Used as an independent oracle in tests and the convergence harness.
pub fn logistic_exact(u0: f64, t: f64) -> f64 {
    let e = (2.0 * t).exp();
    u0 * t.exp() / (1.0 - u0 * u0 + u0 * u0 * e).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid2;
    use approx::assert_abs_diff_eq;

    fn poly_setup(
        grid: Grid2,
        order: usize,
        family: QuadratureFamily,
        tau: f64,
    ) -> (StabilizedOperator, Nonlinearity, SchemeSpec) {
        let op = StabilizedOperator::new(grid, 0.1, 2.0).unwrap();
        let model = Nonlinearity::polynomial(None).unwrap();
        let spec = SchemeSpec::new(order, family, tau, false).unwrap();
        (op, model, spec)
    }

    #[test]
    fn default_node_counts_match_printed_schemes() {
        use QuadratureFamily::*;
        assert_eq!(default_node_count(LeftRadau, 2), 2);
        assert_eq!(default_node_count(LeftRadau, 3), 2);
        assert_eq!(default_node_count(LeftRadau, 4), 3);
        assert_eq!(default_node_count(LeftRadau, 5), 3);
        assert_eq!(default_node_count(GaussLegendre, 2), 1);
        assert_eq!(default_node_count(GaussLegendre, 5), 3);
        assert_eq!(default_node_count(Lobatto, 2), 2);
    }

    #[test]
    fn non_mbp_families_need_explicit_opt_in() {
        assert!(matches!(
            SchemeSpec::new(2, QuadratureFamily::RightRadau, 0.1, false),
            Err(IntegratorError::NonMbpFamily { .. })
        ));
        assert!(SchemeSpec::new(2, QuadratureFamily::RightRadau, 0.1, true).is_ok());
        assert!(SchemeSpec::new(3, QuadratureFamily::Lobatto, 0.1, true).is_ok());
    }

    #[test]
    fn rejects_underpowered_rules() {
        let weak = build_rule(QuadratureFamily::GaussLegendre, 1).unwrap(); // degree 1
        assert!(matches!(
            SchemeSpec::with_rules(4, vec![weak.clone(), weak.clone(), weak], 0.1, false),
            Err(IntegratorError::RuleDegreeTooLow { level: 3, .. })
        ));
    }

    #[test]
    fn zero_is_a_fixed_point() {
        let grid = Grid2::two_pi_square(16).unwrap();
        for order in 1..=5 {
            let (op, model, spec) = poly_setup(grid, order, QuadratureFamily::LeftRadau, 0.5);
            let ctx = StepContext::new(&op, &model, &spec).unwrap();
            let out = ctx.step(&Field::zeros(grid)).unwrap();
            assert!(out.sup_norm() <= 1e-13, "order {order}");
        }
    }

    #[test]
    fn plus_minus_one_are_steady_states() {
        // u = +-1 is a fixed point of the continuous flow; the level
        // quadrature leaves an O(tau^{degree+2}) residue on e^{kappa s}, so
        // exactness to 1e-12 needs a small step (EI1 alone is exact for any
        // tau). u = 0 is exact for any tau, covered separately.
        let grid = Grid2::two_pi_square(16).unwrap();
        for order in 1..=5 {
            for c in [1.0, -1.0] {
                let (op, model, spec) = poly_setup(grid, order, QuadratureFamily::LeftRadau, 1e-4);
                let ctx = StepContext::new(&op, &model, &spec).unwrap();
                let mut u = Field::constant(grid, c);
                for _ in 0..100 {
                    u = ctx.step(&u).unwrap();
                }
                let drift = u.values.iter().map(|v| (v - c).abs()).fold(0.0f64, f64::max);
                assert!(drift <= 1e-12, "order {order}, c {c}: drift {drift:e}");
            }
        }
    }

    #[test]
    fn ei2_matches_the_explicit_formula() {
        // w[2](tau) = e^{tau L} u + (tau/4) e^{tau L} N(u)
        //           + (3 tau/4) e^{tau L / 3} N(w[1](2 tau / 3))
        let grid = Grid2::two_pi_square(24).unwrap();
        let tau = 0.2;
        let (op, model, spec) = poly_setup(grid, 2, QuadratureFamily::LeftRadau, tau);
        let ctx = StepContext::new(&op, &model, &spec).unwrap();
        let u = Field::from_fn(grid, |x, y| 0.3 * x.sin() * (2.0 * y).cos());

        let stepped = ctx.step(&u).unwrap();

        let mut manual = op.apply_exp(tau, &u).unwrap();
        let n_u = model.apply_n(&u).unwrap();
        axpy(&mut manual, tau / 4.0, &op.apply_exp(tau, &n_u).unwrap());
        let w1 = ctx.ei1(&u, 2.0 * tau / 3.0).unwrap();
        let n_w1 = model.apply_n(&w1).unwrap();
        axpy(&mut manual, 3.0 * tau / 4.0, &op.apply_exp(tau / 3.0, &n_w1).unwrap());

        for (a, b) in stepped.values.iter().zip(&manual.values) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-13);
        }
    }

    #[test]
    fn uniform_field_observed_order() {
        let grid = Grid2::new(4, 4, 0.0, 1.0, 0.0, 1.0).unwrap();
        let u0 = 0.1;
        let t_final = 1.0;
        let exact = logistic_exact(u0, t_final);
        for order in 1..=5usize {
            let mut errors = Vec::new();
            for halvings in 0..4 {
                let n_steps = 8usize << halvings;
                let tau = t_final / n_steps as f64;
                let (op, model, spec) = poly_setup(grid, order, QuadratureFamily::LeftRadau, tau);
                let ctx = StepContext::new(&op, &model, &spec).unwrap();
                let u = ctx.evolve(&Field::constant(grid, u0), n_steps, |_, _, _| {}).unwrap();
                errors.push((u.values[0] - exact).abs());
            }
            let p = (errors[2] / errors[3]).log2();
            assert!(
                (p - order as f64).abs() <= 0.15,
                "order {order}: observed {p}, errors {errors:?}"
            );
        }
    }

    #[test]
    fn ei3_uniform_step_accuracy() {
        // ten EI3 steps of a spatially uniform field track the logistic
        // solution to a few tau^3 per step
        let grid = Grid2::new(4, 4, 0.0, 1.0, 0.0, 1.0).unwrap();
        let (op, model, spec) = poly_setup(grid, 3, QuadratureFamily::LeftRadau, 0.1);
        let ctx = StepContext::new(&op, &model, &spec).unwrap();
        let u = ctx.evolve(&Field::constant(grid, 0.1), 10, |_, _, _| {}).unwrap();
        let exact = logistic_exact(0.1, 1.0);
        assert_abs_diff_eq!(exact, 0.26354, epsilon = 1e-5);
        assert!((u.values[0] - exact).abs() <= 1e-3);
    }

    #[test]
    fn recursion_cost_matches_the_rule_structure() {
        let grid = Grid2::two_pi_square(8).unwrap();
        let cases = [
            (QuadratureFamily::LeftRadau, 5, 4u64), // nonzero nodes 1*1*2*2
            (QuadratureFamily::LeftRadau, 3, 1),
            (QuadratureFamily::GaussLegendre, 3, 2), // 1 * 2
        ];
        for (family, order, expected) in cases {
            let (op, model, spec) = poly_setup(grid, order, family, 0.1);
            assert_eq!(spec.expected_ei1_calls(), expected);
            let ctx = StepContext::new(&op, &model, &spec).unwrap();
            ctx.step(&Field::constant(grid, 0.1)).unwrap();
            assert_eq!(ctx.ei1_call_count(), expected, "{} EI{}", family.name(), order);
        }
    }

    #[test]
    fn mbp_holds_for_large_steps() {
        use rand_core::{RngCore, SeedableRng};
        let grid = Grid2::two_pi_square(32).unwrap();
        let model = Nonlinearity::flory_huggins(0.8, 1.6, None, None).unwrap();
        let op = StabilizedOperator::new(grid, 0.1, model.kappa).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let u0 = Field {
            grid,
            values: (0..grid.len())
                .map(|_| 0.8 * (2.0 * (rng.next_u64() as f64 / u64::MAX as f64) - 1.0))
                .collect(),
        };
        for order in [2, 5] {
            for tau in [1.0, 100.0] {
                let spec = SchemeSpec::new(order, QuadratureFamily::LeftRadau, tau, false).unwrap();
                let ctx = StepContext::new(&op, &model, &spec).unwrap();
                let u = ctx.evolve(&u0, 10, |_, _, _| {}).unwrap();
                assert!(
                    u.sup_norm() <= model.beta + 1e-11,
                    "EI{order} tau={tau}: sup {}",
                    u.sup_norm()
                );
            }
        }
    }

    #[test]
    fn blow_up_reports_step_and_time() {
        // force a domain violation by starting outside the bound
        let grid = Grid2::two_pi_square(8).unwrap();
        let model = Nonlinearity::flory_huggins(0.8, 1.6, None, None).unwrap();
        let op = StabilizedOperator::new(grid, 0.1, model.kappa).unwrap();
        let spec = SchemeSpec::new(2, QuadratureFamily::LeftRadau, 0.1, false).unwrap();
        let ctx = StepContext::new(&op, &model, &spec).unwrap();
        let bad = Field::constant(grid, 1.5);
        match ctx.evolve(&bad, 5, |_, _, _| {}) {
            Err(IntegratorError::BlowUp { step: 1, time, .. }) => {
                assert_abs_diff_eq!(time, 0.1, epsilon = 1e-15)
            }
            other => panic!("expected blow-up, got {other:?}"),
        }
    }

    #[test]
    fn kappa_mismatch_is_rejected() {
        let grid = Grid2::two_pi_square(8).unwrap();
        let op = StabilizedOperator::new(grid, 0.1, 3.0).unwrap();
        let model = Nonlinearity::polynomial(None).unwrap(); // kappa = 2
        let spec = SchemeSpec::new(1, QuadratureFamily::LeftRadau, 0.1, false).unwrap();
        assert!(matches!(
            StepContext::new(&op, &model, &spec),
            Err(IntegratorError::KappaMismatch { .. })
        ));
    }
}
