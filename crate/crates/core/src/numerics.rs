//! Grids, sampled fields and deterministic trapezoid quadrature.
//!
//! Every reduction here runs in one fixed order: each z-row is summed with
//! ascending t index, then the weighted row sums are accumulated with
//! ascending z index, and the product of the two spacings is applied last.
//! Identical inputs therefore give bitwise identical results.

use std::ops::Range;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::kinematics::Rapidity;
use crate::scalar::Real;

/// Largest excitation number accepted by grid-backed operations.
pub const N_MAX: u32 = 24;

/// Finest spacing of [`default_grid`] at η = 0; scales as e^(−|η|).
pub const DEFAULT_SPACING: f64 = 0.05;

/// Upper bound on the number of nodes a single quadrature pass may visit.
pub const MAX_QUADRATURE_NODES: f64 = 2.5e8;

/// Uniform 1D grid of `count` nodes spanning `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid1D<T> {
    min: T,
    max: T,
    count: usize,
}

impl<T: Real> Grid1D<T> {
    pub fn new(min: T, max: T, count: usize) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() {
            return Err(invalid("grid", "bounds must be finite"));
        }
        if max <= min {
            return Err(invalid("grid", format!("max {max} must exceed min {min}")));
        }
        if count < 3 || count.is_multiple_of(2) {
            return Err(invalid("grid", format!("count must be odd and at least 3, got {count}")));
        }
        Ok(Self { min, max, count })
    }

    /// Grid on `[-half_width, half_width]`; the origin is the middle node.
    pub fn symmetric(half_width: T, count: usize) -> Result<Self> {
        Self::new(-half_width, half_width, count)
    }

    pub fn min(&self) -> T {
        self.min
    }

    pub fn max(&self) -> T {
        self.max
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> T {
        (self.max - self.min) / T::from_count(self.count - 1)
    }

    /// Node position; `node(count - 1 - i) == -node(i)` exactly on symmetric grids.
    #[inline]
    pub fn node(&self, i: usize) -> T {
        let last = self.count - 1;
        (self.min * T::from_count(last - i) + self.max * T::from_count(i)) / T::from_count(last)
    }

    pub fn nodes(&self) -> Vec<T> {
        (0..self.count).map(|i| self.node(i)).collect()
    }

    /// Trapezoid weight (without the spacing factor).
    #[inline]
    pub fn weight(&self, i: usize) -> T {
        if i == 0 || i + 1 == self.count {
            T::lit(0.5)
        } else {
            T::one()
        }
    }

    /// Indices of the nodes lying in `[lo, hi]`.
    pub fn index_span(&self, lo: T, hi: T) -> Range<usize> {
        if !(hi >= lo) || hi < self.min || lo > self.max {
            return 0..0;
        }
        let h = self.spacing();
        let last = T::from_count(self.count - 1);
        let first = ((lo - self.min) / h).ceil().max(T::zero()).min(last);
        let end = ((hi - self.min) / h).floor().max(T::zero()).min(last);
        let (first, end) = (first.to_usize().unwrap_or(0), end.to_usize().unwrap_or(0));
        if end < first {
            0..0
        } else {
            first..end + 1
        }
    }
}

/// Rectangular grid over the (z, t) plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid2D<T> {
    pub axis_z: Grid1D<T>,
    pub axis_t: Grid1D<T>,
}

impl<T: Real> Grid2D<T> {
    pub fn new(axis_z: Grid1D<T>, axis_t: Grid1D<T>) -> Self {
        Self { axis_z, axis_t }
    }

    /// Square grid with the same axis in both directions.
    pub fn square(axis: Grid1D<T>) -> Self {
        Self::new(axis, axis)
    }

    pub fn len(&self) -> usize {
        self.axis_z.count * self.axis_t.count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Area element h_z · h_t.
    pub fn cell_area(&self) -> T {
        self.axis_z.spacing() * self.axis_t.spacing()
    }

    /// Multiplies a weighted node sum by the area element, as
    /// sum · (L_z · L_t) / ((N_z − 1)(N_t − 1)).
    #[inline]
    pub fn scale_sum(&self, sum: T) -> T {
        let (az, at) = (self.axis_z, self.axis_t);
        let intervals = T::from_count((az.count - 1) * (at.count - 1));
        sum * ((az.max - az.min) * (at.max - at.min)) / intervals
    }

    /// Coarsest spacing of the two axes.
    pub fn max_spacing(&self) -> T {
        self.axis_z.spacing().max(self.axis_t.spacing())
    }

    /// Every row spans the full t axis.
    pub fn full_band(&self) -> impl Fn(usize) -> Range<usize> + Copy {
        let n = self.axis_t.count;
        move |_| 0..n
    }
}

/// Real function sampled on a [`Grid2D`], row-major with z as the slow index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledField<T> {
    grid: Grid2D<T>,
    values: Vec<T>,
}

impl<T: Real> SampledField<T> {
    pub fn new(grid: Grid2D<T>, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(invalid("values", format!("expected {} samples, got {}", grid.len(), values.len())));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(invalid("values", format!("sample {k} is not finite")));
        }
        Ok(Self { grid, values })
    }

    /// Samples `f(z, t)` at every node.
    pub fn sample(grid: Grid2D<T>, mut f: impl FnMut(T, T) -> T) -> Result<Self> {
        let zs = grid.axis_z.nodes();
        let ts = grid.axis_t.nodes();
        let mut values = Vec::with_capacity(grid.len());
        for &z in &zs {
            values.extend(ts.iter().map(|&t| f(z, t)));
        }
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &Grid2D<T> {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.grid.axis_t.count + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        let n = self.grid.axis_t.count;
        &self.values[i * n..(i + 1) * n]
    }

    /// Applies `f` to every sample.
    pub fn map(&self, f: impl Fn(T) -> T) -> Result<Self> {
        Self::new(self.grid, self.values.iter().map(|&v| f(v)).collect())
    }
}

/// Unit direction in the (z, t) plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction<T> {
    pub dz: T,
    pub dt: T,
}

impl<T: Real> Direction<T> {
    /// Normalizes `(dz, dt)`; the zero vector is rejected.
    pub fn new(dz: T, dt: T) -> Result<Self> {
        let norm = dz.hypot(dt);
        if !norm.is_finite() || norm == T::zero() {
            return Err(invalid("direction", "direction must be finite and non-zero"));
        }
        Ok(Self { dz: dz / norm, dt: dt / norm })
    }

    pub fn z_axis() -> Self {
        Self { dz: T::one(), dt: T::zero() }
    }

    pub fn t_axis() -> Self {
        Self { dz: T::zero(), dt: T::one() }
    }

    /// The light-cone u axis, (1, 1)/√2.
    pub fn u_axis() -> Self {
        let r = T::FRAC_1_SQRT_2();
        Self { dz: r, dt: r }
    }

    /// The light-cone v axis, (1, −1)/√2.
    pub fn v_axis() -> Self {
        let r = T::FRAC_1_SQRT_2();
        Self { dz: r, dt: -r }
    }

    #[inline]
    pub fn project(&self, z: T, t: T) -> T {
        self.dz * z + self.dt * t
    }
}

/// Half-width and spacing sized to the support of the excitation-`n` state at rapidity η:
/// covers ±(6 + 2√n)·e^|η| with spacing at most 0.05·e^(−|η|).
pub fn default_axis<T: Real>(eta: Rapidity<T>, n: u32) -> Result<Grid1D<T>> {
    let eta = eta.for_quadrature()?;
    check_excitation(n)?;
    let stretch = eta.value().abs().exp();
    let half = (T::lit(6.0) + T::lit(2.0) * T::from_u32(n).unwrap().sqrt()) * stretch;
    let target = T::lit(DEFAULT_SPACING) / stretch;
    let steps = (half / target).ceil();
    let steps = steps.to_usize().ok_or_else(|| invalid("eta", "grid size overflows"))?;
    Grid1D::symmetric(half, 2 * steps + 1)
}

/// Symmetric square grid resolving the state (n, η); see [`default_axis`].
pub fn default_grid<T: Real>(eta: Rapidity<T>, n: u32) -> Result<Grid2D<T>> {
    default_axis(eta, n).map(Grid2D::square)
}

pub(crate) fn check_excitation(n: u32) -> Result<()> {
    if n > N_MAX {
        return Err(invalid("n", format!("excitation {n} exceeds the limit {N_MAX}")));
    }
    Ok(())
}

/// Trapezoid integral of 1D samples on `axis`.
pub fn integrate_1d<T: Real>(axis: &Grid1D<T>, values: &[T]) -> T {
    debug_assert_eq!(values.len(), axis.count());
    let sum = values.iter().enumerate().fold(T::zero(), |acc, (i, &v)| acc + axis.weight(i) * v);
    sum * (axis.max - axis.min) / T::from_count(axis.count - 1)
}

/// Composite trapezoid rule over both axes.
pub fn integrate_2d<T: Real>(field: &SampledField<T>) -> T {
    let grid = field.grid;
    let at = grid.axis_t;
    let total = (0..grid.axis_z.count).fold(T::zero(), |acc, i| {
        let row = field.row(i).iter().enumerate().fold(T::zero(), |s, (j, &v)| s + at.weight(j) * v);
        acc + grid.axis_z.weight(i) * row
    });
    grid.scale_sum(total)
}

/// Trapezoid integral of `f(z, t)` visiting only the nodes `band(i)` of each
/// z-row `i`; nodes outside the band contribute zero. Nothing is stored.
pub fn integrate_banded<T: Real>(
    grid: &Grid2D<T>,
    band: impl Fn(usize) -> Range<usize>,
    mut f: impl FnMut(T, T) -> T,
) -> T {
    let (az, at) = (grid.axis_z, grid.axis_t);
    let ts = at.nodes();
    let total = (0..az.count).fold(T::zero(), |acc, i| {
        let z = az.node(i);
        let row = band(i).fold(T::zero(), |s, j| s + at.weight(j) * f(z, ts[j]));
        acc + az.weight(i) * row
    });
    grid.scale_sum(total)
}

/// Number of nodes a banded pass would visit.
pub fn band_size<T: Real>(grid: &Grid2D<T>, band: impl Fn(usize) -> Range<usize>) -> usize {
    (0..grid.axis_z.count).map(|i| band(i).len()).sum()
}

fn check_density<T: Real>(norm: T, min_value: T) -> Result<()> {
    let tol = T::lit(1e-6);
    if !((norm - T::one()).abs() <= tol) {
        return Err(Error::Precondition(format!("density must integrate to 1 within 1e-6, actual norm is {norm}")));
    }
    if min_value < T::lit(-1e-12) {
        return Err(Error::Precondition(format!("density must be nonnegative, found sample {min_value}")));
    }
    Ok(())
}

/// ⟨w²⟩ = ∫ (d·(z, t))² ρ(z, t) dz dt for a normalized density `field`.
pub fn second_moment<T: Real>(field: &SampledField<T>, direction: Direction<T>) -> Result<T> {
    let min = field.values.iter().copied().fold(T::infinity(), T::min);
    check_density(integrate_2d(field), min)?;
    let grid = field.grid;
    let ts = grid.axis_t.nodes();
    let total = (0..grid.axis_z.count).fold(T::zero(), |acc, i| {
        let z = grid.axis_z.node(i);
        let row = field.row(i).iter().enumerate().fold(T::zero(), |s, (j, &rho)| {
            let w = direction.project(z, ts[j]);
            s + grid.axis_t.weight(j) * w * w * rho
        });
        acc + grid.axis_z.weight(i) * row
    });
    Ok(grid.scale_sum(total))
}

/// Streaming counterpart of [`second_moment`] for a density given as a closure
/// and supported on `band`. Runs one pass for the norm and one for the moment.
pub fn second_moment_banded<T: Real>(
    grid: &Grid2D<T>,
    band: impl Fn(usize) -> Range<usize> + Copy,
    density: impl Fn(T, T) -> T,
    direction: Direction<T>,
) -> Result<T> {
    let mut min = T::infinity();
    let norm = integrate_banded(grid, band, |z, t| {
        let rho = density(z, t);
        min = min.min(rho);
        rho
    });
    check_density(norm, min)?;
    Ok(integrate_banded(grid, band, |z, t| {
        let w = direction.project(z, t);
        w * w * density(z, t)
    }))
}

/// Centred second differences (∂²/∂z², ∂²/∂t²) at interior node `(i, j)`.
pub fn laplacian_stencil<T: Real>(field: &SampledField<T>, at: (usize, usize)) -> Result<(T, T)> {
    let (i, j) = at;
    let (nz, nt) = (field.grid.axis_z.count, field.grid.axis_t.count);
    if i == 0 || j == 0 || i + 1 >= nz || j + 1 >= nt {
        return Err(Error::OutOfRange {
            i,
            j,
            reason: format!("stencil needs an interior node of the {nz}x{nt} grid"),
        });
    }
    Ok(second_differences(field, i, j))
}

#[inline]
pub(crate) fn second_differences<T: Real>(field: &SampledField<T>, i: usize, j: usize) -> (T, T) {
    let hz = field.grid.axis_z.spacing();
    let ht = field.grid.axis_t.spacing();
    let two = T::lit(2.0);
    let c = field.get(i, j);
    let d2z = (field.get(i + 1, j) - two * c + field.get(i - 1, j)) / (hz * hz);
    let d2t = (field.get(i, j + 1) - two * c + field.get(i, j - 1)) / (ht * ht);
    (d2z, d2t)
}
