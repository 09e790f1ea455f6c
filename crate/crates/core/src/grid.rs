//! Uniform collocation grids, scalar fields on them, and the norms and
//! diagnostic functionals used by every experiment.
//!
//! Grids are uniform in each axis and carry one boundary kind for the whole
//! domain. On a `DirichletZero` axis of extent `L` with `n` points the spacing
//! is `L/(n-1)` and both endpoints are grid points; on a `Periodic` axis it is
//! `L/n` and the right endpoint is the wrap-around image of the left.
//!
//! Two-dimensional fields are stored row-major with axis 0 = x: the value at
//! `(x_i, y_j)` lives at index `i*ny + j`, so each contiguous run of `ny`
//! values is one grid line of constant `x`. This fixes a deterministic file
//! output ordering.

use std::io::{self, Write};

use crate::error::CoreError;

/// Boundary treatment shared by all axes of a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    /// The domain wraps: `f(x + L) = f(x)`.
    Periodic,
    /// Homogeneous Dirichlet walls: `f = 0` at both endpoints.
    DirichletZero,
}

/// Coordinate axis of a (up to) two-dimensional grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    /// 0 for x, 1 for y.
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
        }
    }
}

/// Uniform 1D or 2D collocation grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    dim: usize,
    n: [usize; 2],
    origin: [f64; 2],
    extent: [f64; 2],
    spacing: [f64; 2],
    boundary: BoundaryKind,
}

impl Grid {
    /// 1D grid of `n` points covering `[origin, origin + extent]`.
    pub fn line(n: usize, origin: f64, extent: f64, boundary: BoundaryKind) -> Result<Self, CoreError> {
        Self::build(1, [n, 1], [origin, 0.0], [extent, 0.0], boundary)
    }

    /// 2D grid of `nx × ny` points covering the rectangle `origin + [0,extent]²`.
    pub fn rect(
        nx: usize,
        ny: usize,
        origin: [f64; 2],
        extent: [f64; 2],
        boundary: BoundaryKind,
    ) -> Result<Self, CoreError> {
        Self::build(2, [nx, ny], origin, extent, boundary)
    }

    /// Square 2D grid: `n × n` points on `[origin, origin+extent]²`.
    pub fn square(n: usize, origin: f64, extent: f64, boundary: BoundaryKind) -> Result<Self, CoreError> {
        Self::rect(n, n, [origin, origin], [extent, extent], boundary)
    }

    fn build(
        dim: usize,
        n: [usize; 2],
        origin: [f64; 2],
        extent: [f64; 2],
        boundary: BoundaryKind,
    ) -> Result<Self, CoreError> {
        let mut spacing = [0.0; 2];
        for axis in 0..dim {
            if n[axis] < 2 {
                return Err(CoreError::InvalidGrid(format!(
                    "axis {axis} needs at least 2 points, got {}",
                    n[axis]
                )));
            }
            if !(extent[axis] > 0.0 && extent[axis].is_finite() && origin[axis].is_finite()) {
                return Err(CoreError::InvalidGrid(format!(
                    "axis {axis} extent must be positive and finite, got {}",
                    extent[axis]
                )));
            }
            spacing[axis] = match boundary {
                BoundaryKind::DirichletZero => extent[axis] / (n[axis] - 1) as f64,
                BoundaryKind::Periodic => extent[axis] / n[axis] as f64,
            };
        }
        Ok(Grid {
            dim,
            n,
            origin,
            extent,
            spacing,
            boundary,
        })
    }

    /// 1 or 2.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Total number of grid points.
    pub fn len(&self) -> usize {
        self.n[0] * self.n[1]
    }

    /// True only for degenerate grids (never constructible).
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points along x.
    pub fn nx(&self) -> usize {
        self.n[0]
    }

    /// Points along y (1 for 1D grids).
    pub fn ny(&self) -> usize {
        self.n[1]
    }

    /// Points along the given axis.
    pub fn n(&self, axis: Axis) -> usize {
        self.n[axis.index()]
    }

    /// Grid spacing along the given axis.
    pub fn spacing(&self, axis: Axis) -> f64 {
        self.spacing[axis.index()]
    }

    /// Domain length along the given axis.
    pub fn extent(&self, axis: Axis) -> f64 {
        self.extent[axis.index()]
    }

    /// Lower domain corner coordinate along the given axis.
    pub fn origin(&self, axis: Axis) -> f64 {
        self.origin[axis.index()]
    }

    /// Boundary kind shared by all axes.
    pub fn boundary(&self) -> BoundaryKind {
        self.boundary
    }

    /// x-coordinate of column `i`.
    pub fn x(&self, i: usize) -> f64 {
        self.origin[0] + i as f64 * self.spacing[0]
    }

    /// y-coordinate of row `j` (0 for 1D grids).
    pub fn y(&self, j: usize) -> f64 {
        self.origin[1] + j as f64 * self.spacing[1]
    }

    /// Flat index of the point `(x_i, y_j)`.
    pub fn idx(&self, i: usize, j: usize) -> usize {
        i * self.n[1] + j
    }
}

/// Real-valued samples on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: Grid,
    values: Vec<f64>,
}

impl Field {
    /// Wraps `values` on `grid`, rejecting length mismatches and non-finite
    /// entries (NaN/Inf in a field is a hard error everywhere in this crate).
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self, CoreError> {
        if values.len() != grid.len() {
            return Err(CoreError::ShapeMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        let field = Field { grid, values };
        field.ensure_finite("Field::new")?;
        Ok(field)
    }

    /// All-zero field.
    pub fn zeros(grid: Grid) -> Self {
        Field {
            values: vec![0.0; grid.len()],
            grid,
        }
    }

    /// Constant field.
    pub fn constant(grid: Grid, c: f64) -> Self {
        Field {
            values: vec![c; grid.len()],
            grid,
        }
    }

    /// Samples `f(x, y)` at every grid point (`y = 0` on 1D grids).
    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        for i in 0..grid.nx() {
            let x = grid.x(i);
            for j in 0..grid.ny() {
                values.push(f(x, grid.y(j)));
            }
        }
        Field { grid, values }
    }

    /// The grid this field lives on.
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// True when the field has no samples (never for constructible grids).
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Read-only sample access.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Mutable sample access.
    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Consumes the field, returning its raw samples.
    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Largest magnitude among the samples (0 for NaN-free empty input).
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Arithmetic mean of the samples.
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// True when every sample is finite.
    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Errors with `context` if any sample is NaN or infinite.
    pub fn ensure_finite(&self, context: &str) -> Result<(), CoreError> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(CoreError::NonFinite(context.to_string()))
        }
    }

    /// Writes the field as plain-text CSV: a comment header
    /// `# t=<time> nx=<nx> ny=<ny>` followed by one row per grid line
    /// (the single x-line for 1D fields; the `ny` values at constant `x_i`
    /// per row for 2D fields), 17 significant digits each.
    pub fn write_csv<W: Write>(&self, w: &mut W, time: f64) -> io::Result<()> {
        writeln!(w, "# t={} nx={} ny={}", time, self.grid.nx(), self.grid.ny())?;
        let row_len = if self.grid.dim() == 1 { self.grid.nx() } else { self.grid.ny() };
        for row in self.values.chunks(row_len) {
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
}

/// Discrete norm selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    /// Averaged 1-norm `(1/N)·Σ|eᵢ|`.
    L1,
    /// Averaged 2-norm `sqrt((1/N)·Σeᵢ²)`.
    L2,
    /// Max norm `maxᵢ|eᵢ|`.
    Linf,
}

/// Discrete norm of a field (L1 and L2 are averaged over the point count, so
/// they differ from the integral norms by a constant factor on uniform grids).
pub fn norm(field: &Field, kind: NormKind) -> Result<f64, CoreError> {
    field.ensure_finite("norm input")?;
    let n = field.len() as f64;
    let v = field.values();
    Ok(match kind {
        NormKind::L1 => v.iter().map(|e| e.abs()).sum::<f64>() / n,
        NormKind::L2 => (v.iter().map(|e| e * e).sum::<f64>() / n).sqrt(),
        NormKind::Linf => field.max_abs(),
    })
}

/// Errors of a numerical solution against an exact one at a single time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub time: f64,
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
}

/// All three norms of `numeric - exact` at `time`.
pub fn error_report(numeric: &Field, exact: &Field, time: f64) -> Result<ErrorReport, CoreError> {
    if numeric.len() != exact.len() {
        return Err(CoreError::ShapeMismatch {
            expected: exact.len(),
            got: numeric.len(),
        });
    }
    let diff = Field {
        grid: *numeric.grid(),
        values: numeric
            .values()
            .iter()
            .zip(exact.values())
            .map(|(a, b)| a - b)
            .collect(),
    };
    Ok(ErrorReport {
        time,
        l1: norm(&diff, NormKind::L1)?,
        l2: norm(&diff, NormKind::L2)?,
        linf: norm(&diff, NormKind::Linf)?,
    })
}

/// Number of interior sign changes of the first difference: indices `i` with
/// `(uᵢ - uᵢ₋₁)(uᵢ₊₁ - uᵢ) < 0`. Exact zeros do not count as sign changes, so
/// plateaus are not extrema. An oscillation detector for 1D shock profiles.
pub fn count_interior_extrema(field: &Field) -> Result<usize, CoreError> {
    if field.grid().dim() != 1 {
        return Err(CoreError::InvalidInput(
            "count_interior_extrema needs a 1D field".into(),
        ));
    }
    if field.len() < 3 {
        return Err(CoreError::InvalidInput(
            "count_interior_extrema needs at least 3 points".into(),
        ));
    }
    field.ensure_finite("count_interior_extrema input")?;
    let u = field.values();
    let mut count = 0;
    for i in 1..u.len() - 1 {
        if (u[i] - u[i - 1]) * (u[i + 1] - u[i]) < 0.0 {
            count += 1;
        }
    }
    Ok(count)
}

/// Total variation `Σᵢ |uᵢ₊₁ - uᵢ|` of a 1D field, the standard oscillation
/// measure for shock solutions. Invariant under adding a constant.
pub fn total_variation(field: &Field) -> Result<f64, CoreError> {
    if field.grid().dim() != 1 {
        return Err(CoreError::InvalidInput("total_variation needs a 1D field".into()));
    }
    field.ensure_finite("total_variation input")?;
    let u = field.values();
    Ok(u.windows(2).map(|w| (w[1] - w[0]).abs()).sum())
}
