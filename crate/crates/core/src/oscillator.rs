//! Hermite functions and the rest/boosted oscillator wave functions in the
//! longitudinal (z, t) plane.
//!
//! The state with n longitudinal quanta at rest is
//! ψⁿ₀(z, t) = (π n! 2ⁿ)^(−1/2) Hₙ(z) exp(−(z² + t²)/2), unit-normalized over
//! the plane. Time-like excitations are never populated, so the t factor is
//! always the ground Gaussian. Boosting by η replaces (u, v) with
//! (e^(−η) u, e^(η) v), which is the rest function evaluated at the
//! inverse-boosted point.

use std::ops::Range;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::kinematics::{Rapidity, SpacetimePoint};
use crate::numerics::{
    self, band_size, check_excitation, default_grid, integrate_banded, Grid2D, SampledField, DEFAULT_SPACING,
    MAX_QUADRATURE_NODES,
};
use crate::scalar::Real;

/// Beyond this |argument| the Hermite factor is evaluated jointly with its Gaussian.
const SCALED_HERMITE_THRESHOLD: f64 = 15.0;

/// Squared radius, in inverse-boosted coordinates, outside which a state's
/// density is treated as zero: e^(−120) ≈ 8e−53 before polynomial factors.
const SUPPORT_RADIUS_SQ: f64 = 120.0;

/// Largest grid [`oscillator_residual`] will materialize.
const MAX_FIELD_NODES: usize = 40_000_000;

/// Longitudinal excitation `n` of a hadron moving with rapidity `eta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscillatorState<T> {
    n: u32,
    eta: Rapidity<T>,
}

impl<T: Real> OscillatorState<T> {
    pub fn new(n: u32, eta: Rapidity<T>) -> Result<Self> {
        check_excitation(n)?;
        Ok(Self { n, eta })
    }

    pub fn at_rest(n: u32) -> Result<Self> {
        Self::new(n, Rapidity::zero())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn eta(&self) -> Rapidity<T> {
        self.eta
    }
}

/// Real wave-function amplitude.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Amplitude<T>(pub T);

impl<T: Real> Amplitude<T> {
    pub fn value(self) -> T {
        self.0
    }
}

/// Physicists' Hermite polynomial Hₙ(x).
pub fn hermite<T: Real>(n: u32, x: T) -> Result<T> {
    check_excitation(n)?;
    Ok(hermite_unchecked(n, x))
}

fn hermite_unchecked<T: Real>(n: u32, x: T) -> T {
    let two = T::lit(2.0);
    let (mut prev, mut cur) = (T::one(), two * x);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let next = two * x * cur - two * T::from_u32(k).unwrap() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// (π n! 2ⁿ)^(−1/2).
fn normalization<T: Real>(n: u32) -> T {
    let mut denom = T::PI();
    for k in 1..=n {
        denom = denom * T::lit(2.0) * T::from_u32(k).unwrap();
    }
    denom.sqrt().recip()
}

/// Precomputed evaluator for ψⁿ_η.
#[derive(Debug, Clone, Copy)]
pub struct WaveFunction<T> {
    n: u32,
    norm: T,
    cosh: T,
    sinh: T,
}

impl<T: Real> WaveFunction<T> {
    pub fn new(state: OscillatorState<T>) -> Self {
        Self { n: state.n, norm: normalization(state.n), cosh: state.eta.cosh(), sinh: state.eta.sinh() }
    }

    /// ψⁿ_η(z, t).
    #[inline]
    pub fn eval(&self, z: T, t: T) -> T {
        // (x, y) is the point boosted by −η; ψⁿ_η(z, t) = ψⁿ₀(x, y).
        let x = self.cosh * z - self.sinh * t;
        let y = self.cosh * t - self.sinh * z;
        rest_profile(self.n, self.norm, x, y)
    }

    /// Nodes of each z-row of `grid` inside the support ellipse of this state.
    pub fn support_band(&self, grid: &Grid2D<T>) -> impl Fn(usize) -> Range<usize> + Copy {
        let radius_sq = T::lit(SUPPORT_RADIUS_SQ) + T::lit(4.0) * T::from_u32(self.n).unwrap();
        support_band(self.cosh, self.sinh, radius_sq, *grid)
    }
}

/// Row bands of `grid` covering x² + y² ≤ r², where (x, y) is (z, t) boosted by −η.
///
/// With C = cosh 2η and S = sinh 2η the condition on row z reads
/// C t² − 2S z t + C z² ≤ r², i.e. t ∈ [(S z − √(C r² − z²))/C, (S z + √(C r² − z²))/C].
pub(crate) fn support_band<T: Real>(
    cosh: T,
    sinh: T,
    radius_sq: T,
    grid: Grid2D<T>,
) -> impl Fn(usize) -> Range<usize> + Copy {
    let c2 = cosh * cosh + sinh * sinh;
    let s2 = T::lit(2.0) * cosh * sinh;
    move |i| {
        let z = grid.axis_z.node(i);
        let disc = c2 * radius_sq - z * z;
        if disc < T::zero() {
            return 0..0;
        }
        let root = disc.sqrt();
        grid.axis_t.index_span((s2 * z - root) / c2, (s2 * z + root) / c2)
    }
}

#[inline]
fn rest_profile<T: Real>(n: u32, norm: T, x: T, y: T) -> T {
    let half = T::lit(0.5);
    if x.abs() <= T::lit(SCALED_HERMITE_THRESHOLD) {
        return norm * hermite_unchecked(n, x) * (-(x * x + y * y) * half).exp();
    }
    // Normalized Hermite-function recurrence carrying the Gaussian along, so
    // neither factor overflows or underflows on its own.
    let two = T::lit(2.0);
    let mut prev = (-(x * x + y * y) * half).exp();
    if n == 0 {
        return prev * T::inv_sqrt_pi();
    }
    let mut cur = two.sqrt() * x * prev;
    for k in 1..n {
        let kf = T::from_u32(k).unwrap();
        let next = (two / (kf + T::one())).sqrt() * x * cur - (kf / (kf + T::one())).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur * T::inv_sqrt_pi()
}

/// ψⁿ₀(z, t) for the hadron at rest.
pub fn rest_wavefunction<T: Real>(n: u32, p: SpacetimePoint<T>) -> Result<Amplitude<T>> {
    check_excitation(n)?;
    Ok(Amplitude(rest_profile(n, normalization(n), p.z, p.t)))
}

/// ψⁿ_η(z, t) = (π n! 2ⁿ)^(−1/2) Hₙ((e^(−η)u + e^(η)v)/√2) exp(−(e^(−2η)u² + e^(2η)v²)/2).
///
/// Evaluated as the rest function at the point boosted by −η, which is the
/// same expression written in (z, t) and reduces to it exactly at η = 0.
pub fn boosted_wavefunction<T: Real>(state: OscillatorState<T>, p: SpacetimePoint<T>) -> Amplitude<T> {
    Amplitude(WaveFunction::new(state).eval(p.z, p.t))
}

/// Samples ψⁿ_η on every node of `grid`.
pub fn sample_wavefunction<T: Real>(state: OscillatorState<T>, grid: Grid2D<T>) -> Result<SampledField<T>> {
    let wf = WaveFunction::new(state);
    SampledField::sample(grid, |z, t| wf.eval(z, t))
}

pub(crate) fn check_band_budget<T: Real>(grid: &Grid2D<T>, band: impl Fn(usize) -> Range<usize>) -> Result<()> {
    let nodes = band_size(grid, band);
    if nodes as f64 > MAX_QUADRATURE_NODES {
        return Err(invalid(
            "eta",
            format!("quadrature would visit {nodes} nodes (limit {MAX_QUADRATURE_NODES:e}); reduce |eta|"),
        ));
    }
    Ok(())
}

/// ∫∫ ψⁿ_η ψᵐ_η dz dt on the default grid of the larger excitation.
pub fn overlap<T: Real>(a: OscillatorState<T>, b: OscillatorState<T>) -> Result<T> {
    if a.eta != b.eta {
        return Err(invalid("eta", "overlap requires both states at the same rapidity"));
    }
    let wide = if a.n >= b.n { a } else { b };
    let grid = default_grid(wide.eta, wide.n)?;
    let (wa, wb) = (WaveFunction::new(a), WaveFunction::new(b));
    let band = WaveFunction::new(wide).support_band(&grid);
    check_band_budget(&grid, band)?;
    Ok(integrate_banded(&grid, band, |z, t| wa.eval(z, t) * wb.eval(z, t)))
}

/// ∫∫ |ψⁿ_η|² dz dt on the default grid.
pub fn norm_squared<T: Real>(state: OscillatorState<T>) -> Result<T> {
    overlap(state, state)
}

/// Outcome of [`oscillator_residual`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residual<T> {
    /// Least-squares eigenvalue estimate.
    pub lambda: T,
    /// ‖Ĥψ − λψ‖₂ / ‖ψ‖₂ over the fitted nodes.
    pub residual_norm: T,
    /// Number of interior nodes entering the fit.
    pub nodes: usize,
}

/// Applies Ĥ = ½(z² − t² − ∂²/∂z² + ∂²/∂t²) to ψⁿ_η sampled on `grid` using
/// centred differences, and fits Ĥψ ≈ λψ over interior nodes where
/// |ψ| > 10⁻⁶ max|ψ|.
pub fn oscillator_residual<T: Real>(state: OscillatorState<T>, grid: Grid2D<T>) -> Result<Residual<T>> {
    let limit = T::lit(DEFAULT_SPACING) * (-state.eta.value().abs()).exp() * T::lit(1.0 + 1e-9);
    if grid.max_spacing() > limit {
        return Err(invalid(
            "grid",
            format!("spacing {} does not resolve the state; need at most {limit}", grid.max_spacing()),
        ));
    }
    if grid.len() > MAX_FIELD_NODES {
        return Err(invalid("grid", format!("{} nodes exceeds the limit {MAX_FIELD_NODES}", grid.len())));
    }
    let psi = sample_wavefunction(state, grid)?;
    let peak = psi.values().iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let cutoff = T::lit(1e-6) * peak;
    let (nz, nt) = (grid.axis_z.count(), grid.axis_t.count());
    let ts = grid.axis_t.nodes();
    let half = T::lit(0.5);

    // Collect (ψ, Ĥψ) pairs in row-major order.
    let mut pairs = Vec::new();
    for i in 1..nz - 1 {
        let z = grid.axis_z.node(i);
        for (j, &t) in ts.iter().enumerate().take(nt - 1).skip(1) {
            let value = psi.get(i, j);
            if value.abs() <= cutoff {
                continue;
            }
            let (d2z, d2t) = numerics::second_differences(&psi, i, j);
            let h_psi = half * ((z * z - t * t) * value - d2z + d2t);
            pairs.push((value, h_psi));
        }
    }
    if pairs.is_empty() {
        return Err(invalid("grid", "no interior node carries appreciable amplitude"));
    }
    let norm_sq = pairs.iter().fold(T::zero(), |s, &(p, _)| s + p * p);
    let lambda = pairs.iter().fold(T::zero(), |s, &(p, h)| s + p * h) / norm_sq;
    let misfit = pairs.iter().fold(T::zero(), |s, &(p, h)| {
        let r = h - lambda * p;
        s + r * r
    });
    Ok(Residual { lambda, residual_norm: (misfit / norm_sq).sqrt(), nodes: pairs.len() })
}
