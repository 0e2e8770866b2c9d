//! Uncertainty products, longitudinal marginal densities and the
//! interaction-time to oscillation-period ratio.
//!
//! For the boosted ground state the position density is a Gaussian with
//! ⟨u²⟩ = e^(2η)/2 and ⟨v²⟩ = e^(−2η)/2, so ⟨z²⟩ = cosh(2η)/2. The momentum
//! density has the mirrored widths ⟨q_u²⟩ = e^(−2η)/2, ⟨q_v²⟩ = e^(2η)/2. The
//! longitudinal product ⟨z²⟩⟨q_z²⟩ = cosh²(2η)/4 grows with η while the
//! light-cone products ⟨u²⟩⟨q_u²⟩ and ⟨v²⟩⟨q_v²⟩ stay at ¼.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::kinematics::{rapidity_from_energy, Rapidity};
use crate::momentum::{default_momentum_grid, fourier_numeric_complex, momentum_wavefunction_ground, MomentumPoint};
use crate::numerics::{
    check_excitation, default_grid, integrate_1d, second_moment, second_moment_banded, Direction, Grid1D, Grid2D,
};
use crate::oscillator::{check_band_budget, OscillatorState, WaveFunction};
use crate::scalar::Real;

/// How [`uncertainty_products`] obtains the moments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentMode {
    /// Closed-form Gaussian moments; ground state only.
    Analytic,
    /// Trapezoid moments of the sampled densities.
    Quadrature,
}

impl FromStr for MomentMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(Self::Analytic),
            "quadrature" => Ok(Self::Quadrature),
            other => Err(invalid("mode", format!("expected `analytic` or `quadrature`, got `{other}`"))),
        }
    }
}

impl fmt::Display for MomentMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Analytic => "analytic",
            Self::Quadrature => "quadrature",
        })
    }
}

/// Second moments in position and momentum space and their conjugate products.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentReport<T> {
    pub eta: Rapidity<T>,
    pub n: u32,
    pub z2: T,
    pub qz2: T,
    pub u2: T,
    pub v2: T,
    pub qu2: T,
    pub qv2: T,
    pub product_zq: T,
    pub product_uqu: T,
    pub product_vqv: T,
}

impl<T: Real> MomentReport<T> {
    #[allow(clippy::too_many_arguments)]
    fn from_moments(eta: Rapidity<T>, n: u32, z2: T, qz2: T, u2: T, v2: T, qu2: T, qv2: T) -> Self {
        Self { eta, n, z2, qz2, u2, v2, qu2, qv2, product_zq: z2 * qz2, product_uqu: u2 * qu2, product_vqv: v2 * qv2 }
    }
}

/// Moments of |ψⁿ_η|² along z, u, v and of |φⁿ_η|² along q_z, q_u, q_v.
pub fn uncertainty_products<T: Real>(n: u32, eta: Rapidity<T>, mode: MomentMode) -> Result<MomentReport<T>> {
    check_excitation(n)?;
    match mode {
        MomentMode::Analytic => {
            if n > 0 {
                return Err(Error::UnsupportedMode(format!(
                    "analytic moments exist for the ground state only (n = 0), got n = {n}; use quadrature"
                )));
            }
            let half = T::lit(0.5);
            let e2 = (T::lit(2.0) * eta.value()).exp();
            let wide = e2 * half;
            let narrow = half / e2;
            let z2 = (T::lit(2.0) * eta.value()).cosh() * half;
            Ok(MomentReport::from_moments(eta, n, z2, z2, wide, narrow, narrow, wide))
        }
        MomentMode::Quadrature => quadrature_moments(n, eta.for_quadrature()?),
    }
}

fn momentum_u_axis<T: Real>() -> Direction<T> {
    // q_u = (q_0 − q_z)/√2 on a (q_z, q_0) grid.
    let r = T::FRAC_1_SQRT_2();
    Direction { dz: -r, dt: r }
}

fn quadrature_moments<T: Real>(n: u32, eta: Rapidity<T>) -> Result<MomentReport<T>> {
    let state = OscillatorState::new(n, eta)?;
    let grid = default_grid(eta, n)?;
    let wf = WaveFunction::new(state);
    let band = wf.support_band(&grid);
    check_band_budget(&grid, band)?;
    let density = |z: T, t: T| {
        let psi = wf.eval(z, t);
        psi * psi
    };
    let z2 = second_moment_banded(&grid, band, density, Direction::z_axis())?;
    let u2 = second_moment_banded(&grid, band, density, Direction::u_axis())?;
    let v2 = second_moment_banded(&grid, band, density, Direction::v_axis())?;

    let (qz2, qu2, qv2) = if n == 0 {
        // |φ_η(q_z, q_0)|² has the same support ellipse as |ψ_η(z, t)|².
        let rho = |a: T, b: T| {
            let phi = momentum_wavefunction_ground(eta, MomentumPoint::new(a, b)).value();
            phi * phi
        };
        (
            second_moment_banded(&grid, band, rho, Direction::z_axis())?,
            second_moment_banded(&grid, band, rho, momentum_u_axis())?,
            second_moment_banded(&grid, band, rho, Direction::u_axis())?,
        )
    } else {
        let q_grid = default_momentum_grid(eta, n)?;
        let rho = fourier_numeric_complex(state, q_grid)?.modulus_squared();
        (
            second_moment(&rho, Direction::z_axis())?,
            second_moment(&rho, momentum_u_axis())?,
            second_moment(&rho, Direction::u_axis())?,
        )
    };
    Ok(MomentReport::from_moments(eta, n, z2, qz2, u2, v2, qu2, qv2))
}

/// Marginal probability density along one axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityProfile<T> {
    pub axis: Grid1D<T>,
    pub values: Vec<T>,
}

impl<T: Real> DensityProfile<T> {
    /// Clamps quadrature noise below zero and rescales to unit integral.
    fn normalized(axis: Grid1D<T>, mut values: Vec<T>) -> Result<Self> {
        values.iter_mut().for_each(|v| *v = v.max(T::zero()));
        let total = integrate_1d(&axis, &values);
        if !(total > T::zero()) || !total.is_finite() {
            return Err(Error::Precondition(format!("marginal integrates to {total}")));
        }
        values.iter_mut().for_each(|v| *v = *v / total);
        Ok(Self { axis, values })
    }

    pub fn integral(&self) -> T {
        integrate_1d(&self.axis, &self.values)
    }

    fn moment(&self, f: impl Fn(T) -> T) -> T {
        let weighted: Vec<T> = self.values.iter().enumerate().map(|(i, &v)| f(self.axis.node(i)) * v).collect();
        integrate_1d(&self.axis, &weighted)
    }

    pub fn mean(&self) -> T {
        self.moment(|x| x)
    }

    pub fn variance(&self) -> T {
        let mean = self.mean();
        self.moment(|x| (x - mean) * (x - mean))
    }
}

/// Integrates `rho` over t on each z-row of `grid` inside `band`.
fn marginal<T: Real>(
    grid: &Grid2D<T>,
    band: impl Fn(usize) -> std::ops::Range<usize>,
    rho: impl Fn(T, T) -> T,
) -> Result<DensityProfile<T>> {
    let (az, at) = (grid.axis_z, grid.axis_t);
    let ts = at.nodes();
    let values = (0..az.count())
        .map(|i| {
            let z = az.node(i);
            band(i).fold(T::zero(), |s, j| s + at.weight(j) * rho(z, ts[j])) * at.spacing()
        })
        .collect();
    DensityProfile::normalized(az, values)
}

/// ρ_η(z) = ∫ |ψⁿ_η(z, t)|² dt on the z axis of the default grid.
pub fn longitudinal_position_density<T: Real>(n: u32, eta: Rapidity<T>) -> Result<DensityProfile<T>> {
    let state = OscillatorState::new(n, eta.for_quadrature()?)?;
    let grid = default_grid(eta, n)?;
    let wf = WaveFunction::new(state);
    let band = wf.support_band(&grid);
    check_band_budget(&grid, band)?;
    marginal(&grid, band, |z, t| {
        let psi = wf.eval(z, t);
        psi * psi
    })
}

/// σ_η(q_z) = ∫ |φⁿ_η(q_z, q_0)|² dq_0 for n ≤ 2.
pub fn longitudinal_momentum_density<T: Real>(n: u32, eta: Rapidity<T>) -> Result<DensityProfile<T>> {
    if n > 2 {
        return Err(invalid("n", format!("momentum densities are available for n <= 2, got {n}")));
    }
    let eta = eta.for_quadrature()?;
    let state = OscillatorState::new(n, eta)?;
    if n == 0 {
        let grid = default_grid(eta, 0)?;
        let band = WaveFunction::new(state).support_band(&grid);
        check_band_budget(&grid, band)?;
        return marginal(&grid, band, |a, b| {
            let phi = momentum_wavefunction_ground(eta, MomentumPoint::new(a, b)).value();
            phi * phi
        });
    }
    let q_grid = default_momentum_grid(eta, n)?;
    let rho = fourier_numeric_complex(state, q_grid)?.modulus_squared();
    let at = q_grid.axis_t;
    let values = (0..q_grid.axis_z.count())
        .map(|i| rho.row(i).iter().enumerate().fold(T::zero(), |s, (j, &v)| s + at.weight(j) * v) * at.spacing())
        .collect();
    DensityProfile::normalized(q_grid.axis_z, values)
}

/// Time scales of a hadron of mass `mass_gev` at energy `energy_gev`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoherenceReport<T> {
    pub energy_gev: T,
    pub mass_gev: T,
    pub eta: Rapidity<T>,
    /// Dilation of the internal oscillation period, e^η.
    pub period_dilation: T,
    /// Contraction of the external interaction time, e^(−η).
    pub interaction_contraction: T,
    /// Interaction time over oscillation period, e^(−2η).
    pub ratio: T,
}

pub fn coherence_ratio<T: Real>(energy_gev: T, mass_gev: T) -> Result<CoherenceReport<T>> {
    let eta = rapidity_from_energy(energy_gev, mass_gev)?;
    Ok(CoherenceReport {
        energy_gev,
        mass_gev,
        eta,
        period_dilation: eta.value().exp(),
        interaction_contraction: (-eta.value()).exp(),
        ratio: (T::lit(-2.0) * eta.value()).exp(),
    })
}
