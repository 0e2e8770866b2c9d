//! Momentum-energy wave functions.
//!
//! The transform pairs (z, t) with (q_z, q_0) through
//!
//! ```text
//! φ(q_z, q_0) = (1/2π) ∫∫ ψ(z, t) exp(−i(q_z z − q_0 t)) dz dt
//! ```
//!
//! which is unitary on the plane. With light-cone momenta
//! q_u = (q_0 − q_z)/√2 and q_v = (q_0 + q_z)/√2 the boosted ground state
//! transforms into π^(−1/2) exp(−(e^(2η) q_u² + e^(−2η) q_v²)/2).
//!
//! [`fourier_numeric`] evaluates the integral by direct trapezoid quadrature.
//! The kernel factorizes into a t-phase and a z-phase, so each z-row is first
//! contracted against every q_0, and the row results are then contracted
//! against every q_z.

use std::ops::Range;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::kinematics::Rapidity;
use crate::numerics::{check_excitation, default_grid, Grid1D, Grid2D, SampledField};
use crate::oscillator::{check_band_budget, Amplitude, OscillatorState, WaveFunction};
use crate::scalar::Real;

/// Spacing of [`default_momentum_grid`] at η = 0; scales as e^(−|η|).
pub const DEFAULT_MOMENTUM_SPACING: f64 = 0.25;

/// Upper bound on complex multiply-adds spent by one transform.
const MAX_TRANSFORM_WORK: f64 = 4e9;

/// Tolerance on the imaginary remainder of iⁿφ.
pub const REALITY_TOLERANCE: f64 = 1e-8;

/// Conjugate momenta (q_z, q_0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentumPoint<T> {
    pub q_z: T,
    pub q_0: T,
}

impl<T: Real> MomentumPoint<T> {
    pub const fn new(q_z: T, q_0: T) -> Self {
        Self { q_z, q_0 }
    }
}

/// Light-cone momenta (q_u, q_v).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LightConeMomentum<T> {
    pub q_u: T,
    pub q_v: T,
}

pub fn to_light_cone_momentum<T: Real>(q: MomentumPoint<T>) -> LightConeMomentum<T> {
    let r = T::FRAC_1_SQRT_2();
    LightConeMomentum { q_u: (q.q_0 - q.q_z) * r, q_v: (q.q_0 + q.q_z) * r }
}

/// Closed-form transform of the boosted ground state.
pub fn momentum_wavefunction_ground<T: Real>(eta: Rapidity<T>, q: MomentumPoint<T>) -> Amplitude<T> {
    let lc = to_light_cone_momentum(q);
    let e2 = (T::lit(2.0) * eta.value()).exp();
    let exponent = (e2 * lc.q_u * lc.q_u + lc.q_v * lc.q_v / e2) * T::lit(0.5);
    Amplitude(T::inv_sqrt_pi() * (-exponent).exp())
}

/// Gaussian weights multiplying q_u² and q_v² in the ground-state exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentConvention<T> {
    pub q_u: T,
    pub q_v: T,
}

/// The exponent weights implied by the transform, (e^(2η), e^(−2η)), and the
/// swapped assignment (e^(−2η), e^(2η)) that mirrors the position-space form.
pub fn exponent_conventions<T: Real>(eta: Rapidity<T>) -> (ExponentConvention<T>, ExponentConvention<T>) {
    let e2 = (T::lit(2.0) * eta.value()).exp();
    (ExponentConvention { q_u: e2, q_v: e2.recip() }, ExponentConvention { q_u: e2.recip(), q_v: e2 })
}

/// Which way the kernel's phase turns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelSign {
    /// exp(−i(q_z z − q_0 t)): position → momentum.
    Forward,
    /// exp(+i(q_z z − q_0 t)): momentum → position.
    Inverse,
}

/// Complex field stored as real and imaginary parts on a common grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexField<T> {
    pub re: SampledField<T>,
    pub im: SampledField<T>,
}

impl<T: Real> ComplexField<T> {
    pub fn new(re: SampledField<T>, im: SampledField<T>) -> Result<Self> {
        if re.grid() != im.grid() {
            return Err(invalid("field", "real and imaginary parts must share a grid"));
        }
        Ok(Self { re, im })
    }

    pub fn from_real(re: SampledField<T>) -> Self {
        let im = SampledField::new(*re.grid(), vec![T::zero(); re.values().len()]).expect("zero field is valid");
        Self { re, im }
    }

    pub fn grid(&self) -> &Grid2D<T> {
        self.re.grid()
    }

    /// |φ|² at every node.
    pub fn modulus_squared(&self) -> SampledField<T> {
        let values = self.re.values().iter().zip(self.im.values()).map(|(&a, &b)| a * a + b * b).collect();
        SampledField::new(*self.grid(), values).expect("finite parts give finite modulus")
    }

    /// Multiplies by iᵏ.
    pub fn rotate_quarter_turns(&self, k: u32) -> Self {
        let neg = |f: &SampledField<T>| f.map(|v| -v).expect("negation keeps samples finite");
        match k % 4 {
            0 => self.clone(),
            1 => Self { re: neg(&self.im), im: self.re.clone() },
            2 => Self { re: neg(&self.re), im: neg(&self.im) },
            _ => Self { re: self.im.clone(), im: neg(&self.re) },
        }
    }
}

/// Grid resolving |φ|² of the state (n, η): covers ±(6 + 2√n)·e^|η| with
/// spacing at most 0.25·e^(−|η|).
pub fn default_momentum_grid<T: Real>(eta: Rapidity<T>, n: u32) -> Result<Grid2D<T>> {
    let eta = eta.for_quadrature()?;
    check_excitation(n)?;
    let stretch = eta.value().abs().exp();
    let half = (T::lit(6.0) + T::lit(2.0) * T::from_u32(n).unwrap().sqrt()) * stretch;
    let steps = (half * stretch / T::lit(DEFAULT_MOMENTUM_SPACING))
        .ceil()
        .to_usize()
        .ok_or_else(|| invalid("eta", "grid size overflows"))?;
    Ok(Grid2D::square(Grid1D::symmetric(half, 2 * steps + 1)?))
}

fn phase_table<T: Real>(freqs: &Grid1D<T>, coords: &Grid1D<T>, sign: T) -> Vec<Complex<T>> {
    let xs = coords.nodes();
    let mut table = Vec::with_capacity(freqs.count() * xs.len());
    for k in 0..freqs.count() {
        let q = freqs.node(k);
        table.extend(xs.iter().map(|&x| {
            let (s, c) = (q * x).sin_cos();
            Complex::new(c, sign * s)
        }));
    }
    table
}

/// Two-stage direct quadrature of the kernel against a field whose row `i`
/// is supplied by `row(i)` as the occupied t-index range plus its samples.
fn transform_rows<T: Real>(
    grid: &Grid2D<T>,
    row: impl Fn(usize) -> (Range<usize>, Vec<Complex<T>>),
    q_grid: &Grid2D<T>,
    sign: KernelSign,
) -> Result<ComplexField<T>> {
    let (az, at) = (grid.axis_z, grid.axis_t);
    let (aqz, aq0) = (q_grid.axis_z, q_grid.axis_t);
    // Kernel exp(σ i q_z z) · exp(−σ i q_0 t), σ = −1 forward.
    let sigma = match sign {
        KernelSign::Forward => -T::one(),
        KernelSign::Inverse => T::one(),
    };
    let t_phase = phase_table(&aq0, &at, -sigma);
    let z_phase = phase_table(&aqz, &az, sigma);
    let (nt, nz, nq0, nqz) = (at.count(), az.count(), aq0.count(), aqz.count());

    // Stage 1: contract each z-row against every q_0.
    let mut rows: Vec<(usize, Vec<Complex<T>>)> = Vec::new();
    let mut work = 0.0;
    for i in 0..nz {
        let (span, samples) = row(i);
        if span.is_empty() {
            continue;
        }
        work += (span.len() * nq0) as f64 + (nq0 * nqz) as f64;
        if work > MAX_TRANSFORM_WORK {
            return Err(invalid(
                "grid",
                format!(
                    "transform exceeds {MAX_TRANSFORM_WORK:e} operations; use a coarser momentum grid or smaller |eta|"
                ),
            ));
        }
        let weighted: Vec<Complex<T>> = span.clone().zip(&samples).map(|(j, &s)| s * at.weight(j)).collect();
        let contracted = (0..nq0)
            .map(|k| {
                let phases = &t_phase[k * nt + span.start..k * nt + span.end];
                weighted.iter().zip(phases).fold(Complex::new(T::zero(), T::zero()), |acc, (&s, &p)| acc + s * p)
            })
            .collect();
        rows.push((i, contracted));
    }

    // Stage 2: contract the row results against every q_z.
    let scale = grid.cell_area() / (T::lit(2.0) * T::PI());
    let mut re = Vec::with_capacity(nqz * nq0);
    let mut im = Vec::with_capacity(nqz * nq0);
    let mut out = vec![Complex::new(T::zero(), T::zero()); nq0];
    for m in 0..nqz {
        out.iter_mut().for_each(|c| *c = Complex::new(T::zero(), T::zero()));
        for (i, contracted) in &rows {
            let p = z_phase[m * nz + i] * az.weight(*i);
            for (acc, &a) in out.iter_mut().zip(contracted) {
                *acc = *acc + p * a;
            }
        }
        for c in &out {
            re.push(c.re * scale);
            im.push(c.im * scale);
        }
    }
    ComplexField::new(SampledField::new(*q_grid, re)?, SampledField::new(*q_grid, im)?)
}

/// Direct-quadrature transform of a sampled complex field onto `out_grid`.
pub fn fourier_transform<T: Real>(
    input: &ComplexField<T>,
    out_grid: Grid2D<T>,
    sign: KernelSign,
) -> Result<ComplexField<T>> {
    let grid = *input.grid();
    let nt = grid.axis_t.count();
    transform_rows(
        &grid,
        |i| {
            let samples = input.re.row(i).iter().zip(input.im.row(i)).map(|(&a, &b)| Complex::new(a, b)).collect();
            (0..nt, samples)
        },
        &out_grid,
        sign,
    )
}

/// φⁿ_η on `q_grid`, integrating ψⁿ_η over its default position grid.
pub fn fourier_numeric_complex<T: Real>(state: OscillatorState<T>, q_grid: Grid2D<T>) -> Result<ComplexField<T>> {
    let grid = default_grid(state.eta(), state.n())?;
    let wf = WaveFunction::new(state);
    let band = wf.support_band(&grid);
    check_band_budget(&grid, band)?;
    let ts = grid.axis_t.nodes();
    transform_rows(
        &grid,
        |i| {
            let span = band(i);
            let z = grid.axis_z.node(i);
            let samples = ts[span.clone()].iter().map(|&t| Complex::new(wf.eval(z, t), T::zero())).collect();
            (span, samples)
        },
        &q_grid,
        KernelSign::Forward,
    )
}

/// Real momentum-energy wave function iⁿ φⁿ_η on `q_grid`.
///
/// ψⁿ_η has parity (−1)ⁿ, so φⁿ_η is (−i)ⁿ times a real function; the fixed
/// phase iⁿ makes the result real and reduces to ψⁿ₀(q_z, q_0) at η = 0.
pub fn fourier_numeric<T: Real>(state: OscillatorState<T>, q_grid: Grid2D<T>) -> Result<SampledField<T>> {
    Ok(fourier_numeric_complex(state, q_grid)?.rotate_quarter_turns(state.n()).re)
}
