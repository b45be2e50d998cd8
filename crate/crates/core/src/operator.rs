//! FFT-diagonalized stabilized operator `L = eps^2 Lap_h - kappa I`.
//!
//! The Laplacian is the five-point central difference on the periodic grid,
//! whose eigenvectors are the discrete Fourier modes. Applying `e^{tL}` or
//! `phi_1(tau L) = (e^{tau L} - I) L^{-1}` therefore reduces to an
//! elementwise multiply in Fourier space.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use thiserror::Error;

use crate::grid::{Field, Grid2, GridError};

#[derive(Debug, Error)]
pub enum OperatorError {
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),
    #[error("kappa must be positive, got {0}")]
    NonPositiveKappa(f64),
    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// Planned complex 2D FFT for one grid shape.
pub(crate) struct Fft2 {
    nx: usize,
    ny: usize,
    fwd_x: Arc<dyn Fft<f64>>,
    inv_x: Arc<dyn Fft<f64>>,
    fwd_y: Arc<dyn Fft<f64>>,
    inv_y: Arc<dyn Fft<f64>>,
}

impl Fft2 {
    pub(crate) fn new(nx: usize, ny: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            nx,
            ny,
            fwd_x: planner.plan_fft_forward(nx),
            inv_x: planner.plan_fft_inverse(nx),
            fwd_y: planner.plan_fft_forward(ny),
            inv_y: planner.plan_fft_inverse(ny),
        }
    }

    fn pass(&self, buf: &mut [Complex<f64>], forward: bool) {
        let (fx, fy) = if forward {
            (&self.fwd_x, &self.fwd_y)
        } else {
            (&self.inv_x, &self.inv_y)
        };
        let mut scratch = vec![Complex::default(); fx.get_inplace_scratch_len()];
        for row in buf.chunks_exact_mut(self.nx) {
            fx.process_with_scratch(row, &mut scratch);
        }
        // columns via transpose
        let mut col = vec![Complex::default(); self.ny];
        let mut scratch_y = vec![Complex::default(); fy.get_inplace_scratch_len()];
        for i in 0..self.nx {
            for j in 0..self.ny {
                col[j] = buf[j * self.nx + i];
            }
            fy.process_with_scratch(&mut col, &mut scratch_y);
            for j in 0..self.ny {
                buf[j * self.nx + i] = col[j];
            }
        }
    }

    pub(crate) fn forward(&self, buf: &mut [Complex<f64>]) {
        self.pass(buf, true);
    }

    /// Unnormalized inverse; callers divide by `nx * ny`.
    pub(crate) fn inverse(&self, buf: &mut [Complex<f64>]) {
        self.pass(buf, false);
    }

    /// Multiply the Fourier modes of `v` by the real factor array and
    /// transform back. Returns the real part together with the largest
    /// imaginary residue, which should be at roundoff level for real input.
    pub(crate) fn apply_symbol(&self, v: &Field, factor: &[f64]) -> (Field, f64) {
        let mut buf: Vec<Complex<f64>> =
            v.values.iter().map(|&x| Complex::new(x, 0.0)).collect();
        self.forward(&mut buf);
        for (z, &f) in buf.iter_mut().zip(factor) {
            *z *= f;
        }
        self.inverse(&mut buf);
        let scale = 1.0 / (self.nx * self.ny) as f64;
        let mut imag_max = 0.0f64;
        let values = buf
            .iter()
            .map(|z| {
                imag_max = imag_max.max((z.im * scale).abs());
                z.re * scale
            })
            .collect();
        (Field { grid: v.grid, values }, imag_max)
    }
}

/// Spectral representation of `L = eps^2 Lap_h - kappa I` on a periodic grid.
///
/// Every eigenvalue is at most `-kappa < 0`, so `L` is invertible and
/// `phi_1(tau L)` is well defined. Exponential factor arrays are cached per
/// distinct time; concurrent lookups may duplicate work but never corrupt
/// the cache.
pub struct StabilizedOperator {
    pub grid: Grid2,
    pub epsilon: f64,
    pub kappa: f64,
    symbol: Vec<f64>,
    fft: Fft2,
    exp_cache: RwLock<HashMap<u64, Arc<Vec<f64>>>>,
    phi1_cache: RwLock<HashMap<u64, Arc<Vec<f64>>>>,
}

impl StabilizedOperator {
    pub fn new(grid: Grid2, epsilon: f64, kappa: f64) -> Result<Self, OperatorError> {
        if !(epsilon > 0.0) {
            return Err(OperatorError::NonPositiveEpsilon(epsilon));
        }
        if !(kappa > 0.0) {
            return Err(OperatorError::NonPositiveKappa(kappa));
        }
        let (nx, ny) = (grid.nx, grid.ny);
        let (hx, hy) = (grid.hx(), grid.hy());
        let cx = 4.0 / (hx * hx);
        let cy = 4.0 / (hy * hy);
        let mut symbol = Vec::with_capacity(nx * ny);
        for q in 0..ny {
            let sy = (std::f64::consts::PI * q as f64 / ny as f64).sin();
            for p in 0..nx {
                let sx = (std::f64::consts::PI * p as f64 / nx as f64).sin();
                let lambda = -cx * sx * sx - cy * sy * sy;
                symbol.push(epsilon * epsilon * lambda - kappa);
            }
        }
        Ok(Self {
            grid,
            epsilon,
            kappa,
            symbol,
            fft: Fft2::new(nx, ny),
            exp_cache: RwLock::new(HashMap::new()),
            phi1_cache: RwLock::new(HashMap::new()),
        })
    }

    /// Eigenvalue of `L` for the Fourier mode (p, q).
    pub fn symbol_at(&self, p: usize, q: usize) -> f64 {
        self.symbol[q * self.grid.nx + p]
    }

    fn check_grid(&self, v: &Field) -> Result<(), OperatorError> {
        if v.grid != self.grid {
            return Err(GridError::GridMismatch.into());
        }
        Ok(())
    }

    fn cached_factor(
        cache: &RwLock<HashMap<u64, Arc<Vec<f64>>>>,
        t: f64,
        build: impl FnOnce() -> Vec<f64>,
    ) -> Arc<Vec<f64>> {
        let key = t.to_bits();
        if let Some(f) = cache.read().unwrap().get(&key) {
            return Arc::clone(f);
        }
        let factor = Arc::new(build());
        let mut map = cache.write().unwrap();
        Arc::clone(map.entry(key).or_insert(factor))
    }

    /// `e^{tL} v` for `t >= 0`. At `t = 0` the input is returned unchanged.
    pub fn apply_exp(&self, t: f64, v: &Field) -> Result<Field, OperatorError> {
        self.check_grid(v)?;
        if t < 0.0 {
            return Err(OperatorError::NegativeTime(t));
        }
        if t == 0.0 {
            return Ok(v.clone());
        }
        let factor = Self::cached_factor(&self.exp_cache, t, || {
            self.symbol.iter().map(|&s| (t * s).exp()).collect()
        });
        Ok(self.fft.apply_symbol(v, &factor).0)
    }

    /// `phi_1(tau L) v = (e^{tau L} - I) L^{-1} v` for `tau > 0`.
    pub fn apply_phi1(&self, tau: f64, v: &Field) -> Result<Field, OperatorError> {
        self.check_grid(v)?;
        if !(tau > 0.0) {
            return Err(OperatorError::NegativeTime(tau));
        }
        let factor = Self::cached_factor(&self.phi1_cache, tau, || {
            // expm1 avoids cancellation for modes with tiny tau * s
            self.symbol.iter().map(|&s| (tau * s).exp_m1() / s).collect()
        });
        Ok(self.fft.apply_symbol(v, &factor).0)
    }

    /// `L v`, the stabilized operator itself (spectral application).
    pub fn apply_linear(&self, v: &Field) -> Result<Field, OperatorError> {
        self.check_grid(v)?;
        Ok(self.fft.apply_symbol(v, &self.symbol).0)
    }

    /// Like [`apply_exp`](Self::apply_exp) but also reporting the imaginary
    /// residue of the inverse transform.
    pub fn apply_exp_with_residue(&self, t: f64, v: &Field) -> Result<(Field, f64), OperatorError> {
        self.check_grid(v)?;
        let factor: Vec<f64> = self.symbol.iter().map(|&s| (t * s).exp()).collect();
        Ok(self.fft.apply_symbol(v, &factor))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand_core::{RngCore, SeedableRng};

    fn random_field(grid: Grid2, seed: u64, amp: f64) -> Field {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let values = (0..grid.len())
            .map(|_| amp * (2.0 * (rng.next_u64() as f64 / u64::MAX as f64) - 1.0))
            .collect();
        Field { grid, values }
    }

    #[test]
    fn symbol_values() {
        let grid = Grid2::two_pi_square(4).unwrap();
        let op = StabilizedOperator::new(grid, 1.0, 2.0).unwrap();
        assert_eq!(op.symbol_at(0, 0), -2.0);
        // p = nx/2: lambda = -4/h^2 with h = pi/2
        let expected = -16.0 / (std::f64::consts::PI * std::f64::consts::PI) - 2.0;
        assert_abs_diff_eq!(op.symbol_at(2, 0), expected, epsilon = 1e-12);
    }

    #[test]
    fn symbol_range() {
        let grid = Grid2::two_pi_square(256).unwrap();
        let op = StabilizedOperator::new(grid, 0.1, 2.0).unwrap();
        let h = grid.hx();
        let lo = -2.0 - 2.0 * 0.01 * 4.0 / (h * h);
        for q in 0..grid.ny {
            for p in 0..grid.nx {
                let s = op.symbol_at(p, q);
                assert!(s <= -2.0 && s >= lo - 1e-9, "symbol ({p},{q}) = {s}");
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let grid = Grid2::two_pi_square(8).unwrap();
        assert!(StabilizedOperator::new(grid, 0.0, 2.0).is_err());
        assert!(StabilizedOperator::new(grid, 1.0, -1.0).is_err());
    }

    #[test]
    fn exp_at_zero_is_identity() {
        let grid = Grid2::two_pi_square(32).unwrap();
        let op = StabilizedOperator::new(grid, 0.3, 2.0).unwrap();
        let v = random_field(grid, 1, 1.0);
        let out = op.apply_exp(0.0, &v).unwrap();
        assert_eq!(out.values, v.values);
    }

    #[test]
    fn constants_follow_the_zero_mode() {
        let grid = Grid2::two_pi_square(32).unwrap();
        let op = StabilizedOperator::new(grid, 1.0, 2.0).unwrap();
        let c = 0.83;
        let out = op.apply_exp(1.0, &Field::constant(grid, c)).unwrap();
        for &v in &out.values {
            assert_abs_diff_eq!(v, c * (-2.0f64).exp(), epsilon = 1e-14);
        }

        let out = op.apply_phi1(0.7, &Field::constant(grid, c)).unwrap();
        for &v in &out.values {
            assert_abs_diff_eq!(v, c * (-1.4f64).exp_m1() / -2.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn single_mode_matches_scalar_formula() {
        let grid = Grid2::two_pi_square(64).unwrap();
        let eps = 0.4;
        let op = StabilizedOperator::new(grid, eps, 2.0).unwrap();
        let v = Field::from_fn(grid, |x, _| x.sin());
        let t = 0.5;
        let h = grid.hx();
        let lambda = -(4.0 / (h * h)) * (std::f64::consts::PI / grid.nx as f64).sin().powi(2);
        let factor = (t * (eps * eps * lambda - 2.0)).exp();
        let out = op.apply_exp(t, &v).unwrap();
        for (o, i) in out.values.iter().zip(&v.values) {
            assert_abs_diff_eq!(*o, factor * i, epsilon = 1e-13);
        }

        let phi = op.apply_phi1(t, &v).unwrap();
        let s = eps * eps * lambda - 2.0;
        let pf = (t * s).exp_m1() / s;
        for (o, i) in phi.values.iter().zip(&v.values) {
            assert_abs_diff_eq!(*o, pf * i, epsilon = 1e-13);
        }
    }

    #[test]
    fn phi1_taylor_limit() {
        let grid = Grid2::two_pi_square(32).unwrap();
        let op = StabilizedOperator::new(grid, 0.1, 2.0).unwrap();
        let v = random_field(grid, 7, 1.0);
        let tau = 1e-8;
        let out = op.apply_phi1(tau, &v).unwrap();
        for (o, i) in out.values.iter().zip(&v.values) {
            assert!((o - tau * i).abs() <= 1e-6 * tau * i.abs().max(1e-3));
        }
    }

    #[test]
    fn sup_norm_contraction() {
        let grid = Grid2::two_pi_square(48).unwrap();
        let op = StabilizedOperator::new(grid, 0.1, 2.0).unwrap();
        for seed in 0..3u64 {
            let v = random_field(grid, seed, 1.0);
            let bound = v.sup_norm() + 1e-12;
            for t in [0.01, 0.1, 1.0, 10.0] {
                // contraction of e^{t Lap}; undo the e^{-kappa t} damping
                let out = op.apply_exp(t, &v).unwrap();
                assert!(out.sup_norm() * (op.kappa * t).exp() <= bound);
            }
        }
    }

    #[test]
    fn semigroup_property() {
        let grid = Grid2::two_pi_square(32).unwrap();
        let op = StabilizedOperator::new(grid, 0.2, 2.0).unwrap();
        let v = random_field(grid, 3, 1.0);
        for (s, t) in [(0.1, 0.2), (1.0, 1.0)] {
            let two_step = op.apply_exp(s, &op.apply_exp(t, &v).unwrap()).unwrap();
            let one_step = op.apply_exp(s + t, &v).unwrap();
            let norm = one_step.l2_norm().max(1e-300);
            let mut diff = two_step.clone();
            crate::grid::axpy(&mut diff, -1.0, &one_step);
            assert!(diff.l2_norm() / norm <= 1e-12);
        }
    }

    #[test]
    fn inverse_transform_is_real() {
        let grid = Grid2::two_pi_square(48).unwrap();
        let op = StabilizedOperator::new(grid, 0.1, 2.0).unwrap();
        let v = random_field(grid, 11, 1.0);
        let (out, imag) = op.apply_exp_with_residue(0.3, &v).unwrap();
        assert!(imag <= 1e-12 * out.sup_norm().max(1.0));
    }

    #[test]
    fn phi1_identity() {
        // e^{tau L} v - v = L phi_1(tau L) v
        let grid = Grid2::two_pi_square(32).unwrap();
        let op = StabilizedOperator::new(grid, 0.3, 2.0).unwrap();
        let v = random_field(grid, 5, 1.0);
        let tau = 0.4;
        let mut lhs = op.apply_exp(tau, &v).unwrap();
        crate::grid::axpy(&mut lhs, -1.0, &v);
        let rhs = op.apply_linear(&op.apply_phi1(tau, &v).unwrap()).unwrap();
        let scale = lhs.l2_norm().max(1e-300);
        let mut diff = lhs;
        crate::grid::axpy(&mut diff, -1.0, &rhs);
        assert!(diff.l2_norm() / scale <= 1e-11);
    }

    #[test]
    fn grid_mismatch_is_an_error() {
        let op = StabilizedOperator::new(Grid2::two_pi_square(16).unwrap(), 0.1, 2.0).unwrap();
        let other = Field::zeros(Grid2::two_pi_square(32).unwrap());
        assert!(op.apply_exp(1.0, &other).is_err());
    }
}
