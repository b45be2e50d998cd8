//! Energy, error norms, convergence rates, and time-series recording.

use rustfft::num_complex::Complex;
use thiserror::Error;

use crate::grid::Field;
use crate::integrator::{IntegratorError, SchemeSpec, StepContext};
use crate::model::{ModelError, Nonlinearity};
use crate::operator::{Fft2, StabilizedOperator};
use crate::quadrature::QuadratureFamily;

#[derive(Debug, Error)]
pub enum DiagnosticsError {
    #[error("reference field has zero norm")]
    ZeroReference,
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("step sizes must decrease by exact factors of 2, got {prev} then {next}")]
    NotHalving { prev: f64, next: f64 },
    #[error("final time {t} is not an integer multiple of tau {tau}")]
    NonIntegerSteps { t: f64, tau: f64 },
    #[error("reference tau {reference} must be smaller than the finest tau {finest}")]
    ReferenceTooCoarse { reference: f64, finest: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Integrator(#[from] IntegratorError),
}

/// Discrete energy `hx hy sum [ pref |grad_h v|^2 + F(v) ]` with the
/// gradient computed by Fourier differentiation. The prefactor is
/// `eps^2/2` (or `eps/2` under the `1/eps`-scaled Flory-Huggins law) and
/// the potential carries its own scale.
pub fn energy(model: &Nonlinearity, epsilon: f64, v: &Field) -> Result<f64, DiagnosticsError> {
    let potential = model.potential_field(v)?;
    let (gx, gy) = spectral_gradient(v);
    let pref = model.energy_gradient_prefactor(epsilon);
    let sum: f64 = v
        .values
        .iter()
        .enumerate()
        .map(|(i, _)| pref * (gx.values[i] * gx.values[i] + gy.values[i] * gy.values[i]) + potential.values[i])
        .sum();
    Ok(v.grid.hx() * v.grid.hy() * sum)
}

/// Fourier-space partial derivatives of a periodic field.
fn spectral_gradient(v: &Field) -> (Field, Field) {
    let (nx, ny) = (v.grid.nx, v.grid.ny);
    let fft = Fft2::new(nx, ny);
    let mut hat: Vec<Complex<f64>> = v.values.iter().map(|&x| Complex::new(x, 0.0)).collect();
    fft.forward(&mut hat);

    let lx = v.grid.x1 - v.grid.x0;
    let ly = v.grid.y1 - v.grid.y0;
    let two_pi = 2.0 * std::f64::consts::PI;
    let wavenumber = |idx: usize, n: usize, l: f64| -> f64 {
        // Nyquist mode carries no odd derivative
        if 2 * idx == n {
            0.0
        } else if idx <= n / 2 {
            two_pi * idx as f64 / l
        } else {
            two_pi * (idx as f64 - n as f64) / l
        }
    };

    let mut hat_x = vec![Complex::default(); nx * ny];
    let mut hat_y = vec![Complex::default(); nx * ny];
    for q in 0..ny {
        let ky = wavenumber(q, ny, ly);
        for p in 0..nx {
            let kx = wavenumber(p, nx, lx);
            let z = hat[q * nx + p];
            hat_x[q * nx + p] = Complex::new(0.0, kx) * z;
            hat_y[q * nx + p] = Complex::new(0.0, ky) * z;
        }
    }
    fft.inverse(&mut hat_x);
    fft.inverse(&mut hat_y);
    let scale = 1.0 / (nx * ny) as f64;
    let gx = Field {
        grid: v.grid,
        values: hat_x.iter().map(|z| z.re * scale).collect(),
    };
    let gy = Field {
        grid: v.grid,
        values: hat_y.iter().map(|z| z.re * scale).collect(),
    };
    (gx, gy)
}

/// Relative errors `(||u - ref||_2 / ||ref||_2, ||u - ref||_inf / ||ref||_inf)`.
pub fn relative_errors(u: &Field, u_ref: &Field) -> Result<(f64, f64), DiagnosticsError> {
    if u.grid != u_ref.grid {
        return Err(DiagnosticsError::GridMismatch);
    }
    let ref_l2 = u_ref.l2_norm();
    let ref_sup = u_ref.sup_norm();
    if ref_l2 == 0.0 || ref_sup == 0.0 {
        return Err(DiagnosticsError::ZeroReference);
    }
    let mut diff = u.clone();
    crate::grid::axpy(&mut diff, -1.0, u_ref);
    Ok((diff.l2_norm() / ref_l2, diff.sup_norm() / ref_sup))
}

/// One row of a convergence table.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub order: usize,
    pub tau: f64,
    pub l2_rel_err: f64,
    pub linf_rel_err: f64,
    pub l2_rate: Option<f64>,
    pub linf_rate: Option<f64>,
}

/// Observed orders `log2(err_prev / err_curr)` for a tau-halving sequence.
/// The first entry has no predecessor and stays `None`.
pub fn rates_from_errors(errors: &[f64]) -> Vec<Option<f64>> {
    errors
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            if i == 0 {
                None
            } else {
                Some((errors[i - 1] / e).log2())
            }
        })
        .collect()
}

/// Shared fixtures of a convergence study: one problem, many (order, tau) runs.
pub struct ConvergenceSetup<'a> {
    pub operator: &'a StabilizedOperator,
    pub model: &'a Nonlinearity,
    pub u0: &'a Field,
    pub t_final: f64,
    pub family: QuadratureFamily,
}

fn steps_for(t: f64, tau: f64) -> Result<usize, DiagnosticsError> {
    let n = t / tau;
    let rounded = n.round();
    if (n - rounded).abs() > 1e-9 * n.abs().max(1.0) || rounded < 1.0 {
        return Err(DiagnosticsError::NonIntegerSteps { t, tau });
    }
    Ok(rounded as usize)
}

fn run_to_final(
    setup: &ConvergenceSetup,
    order: usize,
    family: QuadratureFamily,
    tau: f64,
) -> Result<Field, DiagnosticsError> {
    let n_steps = steps_for(setup.t_final, tau)?;
    let spec = SchemeSpec::new(order, family, tau, false)?;
    let ctx = StepContext::new(setup.operator, setup.model, &spec)?;
    Ok(ctx.evolve(setup.u0, n_steps, |_, _, _| {})?)
}

/// Run each requested order over the tau-halving sequence, compare against a
/// fine reference run, and tabulate errors and observed rates.
pub fn convergence_table(
    setup: &ConvergenceSetup,
    orders: &[usize],
    taus: &[f64],
    reference_order: usize,
    reference_tau: f64,
) -> Result<Vec<ConvergenceRow>, DiagnosticsError> {
    for pair in taus.windows(2) {
        let ratio = pair[0] / pair[1];
        if (ratio - 2.0).abs() > 1e-12 {
            return Err(DiagnosticsError::NotHalving { prev: pair[0], next: pair[1] });
        }
    }
    if let Some(&finest) = taus.last() {
        if reference_tau >= finest {
            return Err(DiagnosticsError::ReferenceTooCoarse { reference: reference_tau, finest });
        }
    }

    let reference = run_to_final(setup, reference_order, QuadratureFamily::LeftRadau, reference_tau)?;

    let mut rows = Vec::new();
    for &order in orders {
        let mut l2 = Vec::new();
        let mut linf = Vec::new();
        for &tau in taus {
            let u = run_to_final(setup, order, setup.family, tau)?;
            let (e2, einf) = relative_errors(&u, &reference)?;
            l2.push(e2);
            linf.push(einf);
        }
        let r2 = rates_from_errors(&l2);
        let rinf = rates_from_errors(&linf);
        for (i, &tau) in taus.iter().enumerate() {
            rows.push(ConvergenceRow {
                order,
                tau,
                l2_rel_err: l2[i],
                linf_rel_err: linf[i],
                l2_rate: r2[i],
                linf_rate: rinf[i],
            });
        }
    }
    Ok(rows)
}

/// Per-step scalar diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct TimeSeriesRecord {
    pub step: usize,
    pub time: f64,
    pub energy: f64,
    pub sup_norm: f64,
    pub mbp_violation: f64,
}

/// Accumulates a [`TimeSeriesRecord`] every `record_every` steps.
/// Failed energy evaluations record NaN rather than aborting the run.
pub struct SeriesRecorder {
    model: Nonlinearity,
    epsilon: f64,
    record_every: usize,
    pub records: Vec<TimeSeriesRecord>,
}

impl SeriesRecorder {
    pub fn new(model: Nonlinearity, epsilon: f64, record_every: usize) -> Self {
        Self {
            model,
            epsilon,
            record_every: record_every.max(1),
            records: Vec::new(),
        }
    }

    fn push(&mut self, step: usize, time: f64, field: &Field) {
        let e = energy(&self.model, self.epsilon, field).unwrap_or(f64::NAN);
        let sup = field.sup_norm();
        self.records.push(TimeSeriesRecord {
            step,
            time,
            energy: e,
            sup_norm: sup,
            mbp_violation: (sup - self.model.beta).max(0.0),
        });
    }

    /// Record the initial state as step 0.
    pub fn record_initial(&mut self, field: &Field) {
        self.push(0, 0.0, field);
    }

    /// Observer callback for [`StepContext::evolve`].
    pub fn observe(&mut self, step: usize, time: f64, field: &Field) {
        if step.is_multiple_of(self.record_every) {
            self.push(step, time, field);
        }
    }

    /// Largest maximum-bound violation seen so far.
    pub fn max_violation(&self) -> f64 {
        self.records.iter().map(|r| r.mbp_violation).fold(0.0, f64::max)
    }

    /// Steps at which the energy increased by more than `tol * |E_n|`.
    pub fn energy_increases(&self, tol: f64) -> Vec<usize> {
        self.records
            .windows(2)
            .filter(|w| w[1].energy > w[0].energy + tol * w[0].energy.abs())
            .map(|w| w[1].step)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid2;
    use approx::assert_abs_diff_eq;

    #[test]
    fn energy_of_constants() {
        let grid = Grid2::two_pi_square(32).unwrap();
        let poly = Nonlinearity::polynomial(None).unwrap();
        let area = 4.0 * std::f64::consts::PI * std::f64::consts::PI;

        let e1 = energy(&poly, 1.0, &Field::constant(grid, 1.0)).unwrap();
        assert_abs_diff_eq!(e1, 0.0, epsilon = 1e-12);

        let e0 = energy(&poly, 1.0, &Field::zeros(grid)).unwrap();
        assert_abs_diff_eq!(e0, area / 4.0, epsilon = 1e-10);
    }

    #[test]
    fn energy_of_a_sine_mode() {
        // closed form: int (1/2) cos^2 x + (sin^2 x - 1)^2 / 4 over (0, 2pi)^2
        //            = pi^2 + 3 pi^2 / 8
        let grid = Grid2::two_pi_square(64).unwrap();
        let poly = Nonlinearity::polynomial(None).unwrap();
        let v = Field::from_fn(grid, |x, _| x.sin());
        let expected = std::f64::consts::PI.powi(2) * (1.0 + 3.0 / 8.0);
        assert_abs_diff_eq!(energy(&poly, 1.0, &v).unwrap(), expected, epsilon = 1e-9);
    }

    #[test]
    fn relative_error_basics() {
        let grid = Grid2::two_pi_square(16).unwrap();
        let v = Field::from_fn(grid, |x, y| x.sin() + (2.0 * y).cos());
        let (l2, linf) = relative_errors(&v, &v).unwrap();
        assert_eq!((l2, linf), (0.0, 0.0));

        let mut scaled = v.clone();
        for x in &mut scaled.values {
            *x *= 1.01;
        }
        let (l2, linf) = relative_errors(&scaled, &v).unwrap();
        assert_abs_diff_eq!(l2, 0.01, epsilon = 1e-12);
        assert_abs_diff_eq!(linf, 0.01, epsilon = 1e-12);

        assert!(relative_errors(&v, &Field::zeros(grid)).is_err());
    }

    #[test]
    fn synthetic_rates_are_exact() {
        let p = 3.0;
        let errors: Vec<f64> = (0..5).map(|i| 7.0 * (0.1f64 / (1 << i) as f64).powf(p)).collect();
        let rates = rates_from_errors(&errors);
        assert!(rates[0].is_none());
        for r in rates.iter().skip(1) {
            assert_abs_diff_eq!(r.unwrap(), p, epsilon = 1e-12);
        }
    }

    #[test]
    fn recorder_stride_and_violation() {
        let grid = Grid2::two_pi_square(8).unwrap();
        let model = Nonlinearity::polynomial(None).unwrap();
        let mut rec = SeriesRecorder::new(model, 0.1, 2);
        let f = Field::constant(grid, 0.5);
        rec.record_initial(&f);
        for n in 1..=6 {
            rec.observe(n, n as f64 * 0.1, &f);
        }
        let steps: Vec<usize> = rec.records.iter().map(|r| r.step).collect();
        assert_eq!(steps, vec![0, 2, 4, 6]);
        assert_eq!(rec.max_violation(), 0.0);

        let mut rec = SeriesRecorder::new(Nonlinearity::polynomial(None).unwrap(), 0.1, 1);
        rec.record_initial(&Field::constant(grid, 1.25));
        assert_abs_diff_eq!(rec.max_violation(), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn scalar_reduction_converges_at_first_order() {
        let grid = Grid2::new(4, 4, 0.0, 1.0, 0.0, 1.0).unwrap();
        let model = Nonlinearity::polynomial(None).unwrap();
        let op = StabilizedOperator::new(grid, 0.1, 2.0).unwrap();
        let u0 = Field::constant(grid, 0.1);
        let setup = ConvergenceSetup {
            operator: &op,
            model: &model,
            u0: &u0,
            t_final: 1.0,
            family: QuadratureFamily::LeftRadau,
        };
        let taus = [0.1, 0.05, 0.025, 0.0125];
        let rows = convergence_table(&setup, &[1], &taus, 5, 0.0125 / 16.0).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows[0].l2_rate.is_none());
        let last = rows.last().unwrap();
        assert!((last.l2_rate.unwrap() - 1.0).abs() <= 0.1, "{:?}", last);
    }

    #[test]
    fn tau_sequence_is_validated() {
        let grid = Grid2::new(4, 4, 0.0, 1.0, 0.0, 1.0).unwrap();
        let model = Nonlinearity::polynomial(None).unwrap();
        let op = StabilizedOperator::new(grid, 0.1, 2.0).unwrap();
        let u0 = Field::constant(grid, 0.1);
        let setup = ConvergenceSetup {
            operator: &op,
            model: &model,
            u0: &u0,
            t_final: 1.0,
            family: QuadratureFamily::LeftRadau,
        };
        assert!(matches!(
            convergence_table(&setup, &[2], &[0.1, 0.03], 5, 1e-3),
            Err(DiagnosticsError::NotHalving { .. })
        ));
        assert!(matches!(
            convergence_table(&setup, &[2], &[0.1, 0.05], 5, 0.05),
            Err(DiagnosticsError::ReferenceTooCoarse { .. })
        ));
    }
}
