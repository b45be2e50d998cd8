//! Nonlinearities, their stabilized forms, maximum bounds, and potentials.
//!
//! Two models are supported: the polynomial double well `f(u) = u - u^3`
//! (bound `beta = 1`, `kappa >= 2`) and the Flory-Huggins logarithmic
//! potential `f(u) = (theta/2) ln((1-u)/(1+u)) + theta_c u`, whose bound is
//! the positive root of `f = 0` and whose stabilization constant is
//! `theta/(1-beta^2) - theta_c`. The Flory-Huggins model can carry an extra
//! `1/eps` scale for the alternative scaling law `u_t = eps Lap u + f/eps`.

use thiserror::Error;

use crate::grid::Field;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("kappa = {got} is below the admissible minimum {min}")]
    KappaTooSmall { got: f64, min: f64 },
    #[error("flory-huggins requires 0 < theta < theta_c, got theta = {theta}, theta_c = {theta_c}")]
    BadFloryHugginsParameters { theta: f64, theta_c: f64 },
    #[error("no sign change of the nonlinearity on (0, 1); the model has no bound")]
    NoRoot,
    #[error("field leaves the model domain: max |u| = {max_abs} >= 1")]
    DomainViolation { max_abs: f64 },
    #[error("field contains non-finite values")]
    NonFinite,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NonlinearityKind {
    /// `f(u) = u - u^3`
    Polynomial,
    /// `f(u) = scale * [(theta/2) ln((1-u)/(1+u)) + theta_c u]`
    FloryHuggins { theta: f64, theta_c: f64, scale: f64 },
}

/// A nonlinearity together with its maximum bound and stabilization constant.
#[derive(Debug, Clone, PartialEq)]
pub struct Nonlinearity {
    pub kind: NonlinearityKind,
    pub beta: f64,
    pub kappa: f64,
}

/// Positive root of the Flory-Huggins nonlinearity on (0, 1), by bisection.
pub fn find_beta(theta: f64, theta_c: f64) -> Result<f64, ModelError> {
    if !(theta > 0.0 && theta_c > theta) {
        return Err(ModelError::BadFloryHugginsParameters { theta, theta_c });
    }
    let f = |u: f64| 0.5 * theta * ((-u).ln_1p() - u.ln_1p()) + theta_c * u;
    let (mut lo, mut hi) = (1e-12, 1.0 - 1e-12);
    if !(f(lo) > 0.0 && f(hi) < 0.0) {
        return Err(ModelError::NoRoot);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let beta = if f(lo).abs() < f(hi).abs() { lo } else { hi };
    debug_assert!(f(beta).abs() <= 1e-13);
    Ok(beta)
}

impl Nonlinearity {
    /// Polynomial double well; `kappa` defaults to 2 and may only be raised.
    pub fn polynomial(kappa_override: Option<f64>) -> Result<Self, ModelError> {
        let kappa = kappa_override.unwrap_or(2.0);
        if kappa < 2.0 {
            return Err(ModelError::KappaTooSmall { got: kappa, min: 2.0 });
        }
        Ok(Self { kind: NonlinearityKind::Polynomial, beta: 1.0, kappa })
    }

    /// Flory-Huggins model. `eps_scale = Some(eps)` selects the
    /// `u_t = eps Lap u + f/eps` scaling, multiplying both `f` and `kappa`
    /// by `1/eps`. `kappa_override` may only raise the default.
    pub fn flory_huggins(
        theta: f64,
        theta_c: f64,
        eps_scale: Option<f64>,
        kappa_override: Option<f64>,
    ) -> Result<Self, ModelError> {
        let beta = find_beta(theta, theta_c)?;
        let scale = match eps_scale {
            Some(eps) if eps > 0.0 => 1.0 / eps,
            Some(_) => return Err(ModelError::BadFloryHugginsParameters { theta, theta_c }),
            None => 1.0,
        };
        let kappa_min = scale * (theta / (1.0 - beta * beta) - theta_c);
        let kappa = match kappa_override {
            Some(k) if k < kappa_min => {
                return Err(ModelError::KappaTooSmall { got: k, min: kappa_min })
            }
            Some(k) => k,
            None => kappa_min,
        };
        let model = Self {
            kind: NonlinearityKind::FloryHuggins { theta, theta_c, scale },
            beta,
            kappa,
        };
        model.verify_kappa_condition()?;
        Ok(model)
    }

    /// Sampled check of `kappa >= max |f'|` over [-beta, beta].
    fn verify_kappa_condition(&self) -> Result<(), ModelError> {
        let n = 10_000;
        let mut max_df = 0.0f64;
        for i in 0..=n {
            let xi = -self.beta + 2.0 * self.beta * i as f64 / n as f64;
            max_df = max_df.max(self.f_prime(xi).abs());
        }
        if max_df > self.kappa * (1.0 + 1e-12) {
            return Err(ModelError::KappaTooSmall { got: self.kappa, min: max_df });
        }
        Ok(())
    }

    pub fn f(&self, u: f64) -> f64 {
        match self.kind {
            NonlinearityKind::Polynomial => u - u * u * u,
            NonlinearityKind::FloryHuggins { theta, theta_c, scale } => {
                scale * (0.5 * theta * ((-u).ln_1p() - u.ln_1p()) + theta_c * u)
            }
        }
    }

    pub fn f_prime(&self, u: f64) -> f64 {
        match self.kind {
            NonlinearityKind::Polynomial => 1.0 - 3.0 * u * u,
            NonlinearityKind::FloryHuggins { theta, theta_c, scale } => {
                scale * (-theta / (1.0 - u * u) + theta_c)
            }
        }
    }

    /// Stabilized nonlinearity `N(u) = f(u) + kappa u`.
    pub fn n_of(&self, u: f64) -> f64 {
        self.f(u) + self.kappa * u
    }

    /// Double-well potential with `f = -F'`.
    pub fn potential(&self, u: f64) -> f64 {
        match self.kind {
            NonlinearityKind::Polynomial => {
                let w = u * u - 1.0;
                0.25 * w * w
            }
            NonlinearityKind::FloryHuggins { theta, theta_c, scale } => {
                scale
                    * (0.5 * theta * ((1.0 + u) * u.ln_1p() + (1.0 - u) * (-u).ln_1p())
                        - 0.5 * theta_c * u * u)
            }
        }
    }

    fn check_domain(&self, v: &Field) -> Result<(), ModelError> {
        v.check_finite().map_err(|_| ModelError::NonFinite)?;
        if let NonlinearityKind::FloryHuggins { .. } = self.kind {
            let max_abs = v.sup_norm();
            if max_abs >= 1.0 {
                return Err(ModelError::DomainViolation { max_abs });
            }
        }
        Ok(())
    }

    /// Pointwise `N(v)`.
    pub fn apply_n(&self, v: &Field) -> Result<Field, ModelError> {
        self.check_domain(v)?;
        let values = v.values.iter().map(|&u| self.n_of(u)).collect();
        Ok(Field { grid: v.grid, values })
    }

    /// Pointwise `F(v)`.
    pub fn potential_field(&self, v: &Field) -> Result<Field, ModelError> {
        self.check_domain(v)?;
        let values = v.values.iter().map(|&u| self.potential(u)).collect();
        Ok(Field { grid: v.grid, values })
    }

    /// Gradient prefactor of the energy functional: `eps^2 / 2` for the
    /// standard scaling, `eps / 2` for the `1/eps`-scaled Flory-Huggins law.
    pub fn energy_gradient_prefactor(&self, epsilon: f64) -> f64 {
        match self.kind {
            NonlinearityKind::FloryHuggins { scale, .. } if scale != 1.0 => 0.5 * epsilon,
            _ => 0.5 * epsilon * epsilon,
        }
    }
}
