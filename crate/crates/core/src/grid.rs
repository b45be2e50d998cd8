//! Uniform periodic rectangular grids and scalar fields on them.

use std::io::Write;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("grid resolution must be at least 2 per axis, got {nx}x{ny}")]
    ResolutionTooSmall { nx: usize, ny: usize },
    #[error("domain extents are degenerate: [{x0}, {x1}] x [{y0}, {y1}]")]
    DegenerateExtents { x0: f64, x1: f64, y0: f64, y1: f64 },
    #[error("field does not live on the expected grid")]
    GridMismatch,
    #[error("field contains a non-finite value at index {index}")]
    NonFinite { index: usize },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Uniform periodic rectangular grid. Index `nx` is identified with index 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2 {
    pub nx: usize,
    pub ny: usize,
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Grid2 {
    pub fn new(nx: usize, ny: usize, x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self, GridError> {
        if nx < 2 || ny < 2 {
            return Err(GridError::ResolutionTooSmall { nx, ny });
        }
        if !(x1 > x0) || !(y1 > y0) {
            return Err(GridError::DegenerateExtents { x0, x1, y0, y1 });
        }
        Ok(Self { nx, ny, x0, x1, y0, y1 })
    }

    /// Square grid on (0, 2pi)^2, the domain of most experiments.
    pub fn two_pi_square(n: usize) -> Result<Self, GridError> {
        let l = 2.0 * std::f64::consts::PI;
        Self::new(n, n, 0.0, l, 0.0, l)
    }

    pub fn hx(&self) -> f64 {
        (self.x1 - self.x0) / self.nx as f64
    }

    pub fn hy(&self) -> f64 {
        (self.y1 - self.y0) / self.ny as f64
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + self.hx() * i as f64
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y0 + self.hy() * j as f64
    }
}

/// Real scalar values on a [`Grid2`], stored row-major: `values[j * nx + i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    pub grid: Grid2,
    pub values: Vec<f64>,
}

impl Field {
    pub fn zeros(grid: Grid2) -> Self {
        Self { grid, values: vec![0.0; grid.len()] }
    }

    pub fn constant(grid: Grid2, c: f64) -> Self {
        Self { grid, values: vec![c; grid.len()] }
    }

    /// Fill from a function of the physical coordinates.
    pub fn from_fn(grid: Grid2, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        for j in 0..grid.ny {
            let y = grid.y(j);
            for i in 0..grid.nx {
                values.push(f(grid.x(i), y));
            }
        }
        Self { grid, values }
    }

    pub fn check_finite(&self) -> Result<(), GridError> {
        match self.values.iter().position(|v| !v.is_finite()) {
            Some(index) => Err(GridError::NonFinite { index }),
            None => Ok(()),
        }
    }

    /// Discrete maximum norm, `max |v|`.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, &v| m.max(v.abs()))
    }

    /// Measure-weighted discrete L2 norm, `sqrt(hx hy sum v^2)`.
    pub fn l2_norm(&self) -> f64 {
        let sum: f64 = self.values.iter().map(|&v| v * v).sum();
        (self.grid.hx() * self.grid.hy() * sum).sqrt()
    }

    /// Headerless CSV matrix, ny rows of nx values, 17 significant digits.
    pub fn write_csv(&self, w: &mut impl Write) -> Result<(), GridError> {
        for j in 0..self.grid.ny {
            let row = &self.values[j * self.grid.nx..(j + 1) * self.grid.nx];
            let mut first = true;
            for v in row {
                if !first {
                    write!(w, ",")?;
                }
                write!(w, "{:.16e}", v)?;
                first = false;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    /// 8-bit PGM with values affinely mapped from [-beta, beta] to [0, 255].
    pub fn write_pgm(&self, w: &mut impl Write, beta: f64) -> Result<(), GridError> {
        writeln!(w, "P5")?;
        writeln!(w, "{} {}", self.grid.nx, self.grid.ny)?;
        writeln!(w, "255")?;
        let bytes: Vec<u8> = self
            .values
            .iter()
            .map(|&v| {
                let t = (v + beta) / (2.0 * beta) * 255.0;
                t.clamp(0.0, 255.0).round() as u8
            })
            .collect();
        w.write_all(&bytes)?;
        Ok(())
    }
}

/// Elementwise a + s * b, used by the integrator's weighted combinations.
pub fn axpy(a: &mut Field, s: f64, b: &Field) {
    debug_assert_eq!(a.grid, b.grid);
    for (x, y) in a.values.iter_mut().zip(&b.values) {
        *x += s * y;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rejects_degenerate_grids() {
        assert!(Grid2::new(1, 4, 0.0, 1.0, 0.0, 1.0).is_err());
        assert!(Grid2::new(4, 4, 1.0, 1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn norms_of_constants() {
        let grid = Grid2::two_pi_square(16).unwrap();
        let zero = Field::zeros(grid);
        assert_eq!(zero.sup_norm(), 0.0);
        assert_eq!(zero.l2_norm(), 0.0);

        let c = Field::constant(grid, -0.7);
        let area = 4.0 * std::f64::consts::PI * std::f64::consts::PI;
        assert_abs_diff_eq!(c.sup_norm(), 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(c.l2_norm(), 0.7 * area.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn l2_norm_of_sine_mode() {
        let grid = Grid2::two_pi_square(256).unwrap();
        let v = Field::from_fn(grid, |x, _| x.sin());
        // integral of sin^2 over (0,2pi)^2 is 2 pi^2, exact for this mode
        let expected = std::f64::consts::PI * 2.0f64.sqrt();
        assert_abs_diff_eq!(v.l2_norm(), expected, epsilon = 1e-12);
    }

    #[test]
    fn detects_non_finite() {
        let grid = Grid2::two_pi_square(4).unwrap();
        let mut v = Field::zeros(grid);
        v.values[5] = f64::NAN;
        assert!(matches!(v.check_finite(), Err(GridError::NonFinite { index: 5 })));
    }

    #[test]
    fn csv_shape() {
        let grid = Grid2::new(3, 2, 0.0, 1.0, 0.0, 1.0).unwrap();
        let v = Field::from_fn(grid, |x, y| x + 10.0 * y);
        let mut buf = Vec::new();
        v.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].split(',').count(), 3);
    }
}
