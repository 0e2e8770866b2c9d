//! Light-cone coordinates and boost algebra in the longitudinal (z, t) plane.
//!
//! All coordinates are dimensionless oscillator units with ħ = c = 1. A boost
//! along z with rapidity η acts on (z, t) through the hyperbolic rotation
//!
//! ```text
//! | z' |   | cosh η  sinh η | | z |
//! | t' | = | sinh η  cosh η | | t |
//! ```
//!
//! which in light-cone variables u = (z + t)/√2, v = (z − t)/√2 becomes the
//! squeeze u' = e^η u, v' = e^(−η) v.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::scalar::Real;

/// Largest |η| accepted by operations that sample a grid.
pub const ETA_MAX: f64 = 10.0;

/// Boost parameter η, with tanh η = v/c. Always finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Rapidity<T>(T);

impl<T: Real> Rapidity<T> {
    pub fn new(eta: T) -> Result<Self> {
        if !eta.is_finite() {
            return Err(invalid("eta", format!("rapidity must be finite, got {eta}")));
        }
        Ok(Self(eta))
    }

    pub fn zero() -> Self {
        Self(T::zero())
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }

    /// Checks the bound |η| ≤ [`ETA_MAX`] required by quadrature-backed operations.
    pub fn for_quadrature(self) -> Result<Self> {
        if self.0.abs() > T::lit(ETA_MAX) {
            return Err(invalid("eta", format!("|eta| = {} exceeds the quadrature limit {ETA_MAX}", self.0.abs())));
        }
        Ok(self)
    }

    pub fn cosh(self) -> T {
        self.0.cosh()
    }

    pub fn sinh(self) -> T {
        self.0.sinh()
    }
}

impl<T: Real> std::ops::Add for Rapidity<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl<T: Real> std::ops::Neg for Rapidity<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

/// Separation (z, t) in the longitudinal plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpacetimePoint<T> {
    pub z: T,
    pub t: T,
}

impl<T: Real> SpacetimePoint<T> {
    pub const fn new(z: T, t: T) -> Self {
        Self { z, t }
    }

    pub fn is_finite(&self) -> bool {
        self.z.is_finite() && self.t.is_finite()
    }

    /// The Lorentz interval z² − t².
    pub fn interval(&self) -> T {
        self.z * self.z - self.t * self.t
    }
}

/// Light-cone coordinates (u, v).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LightConePoint<T> {
    pub u: T,
    pub v: T,
}

impl<T: Real> LightConePoint<T> {
    pub const fn new(u: T, v: T) -> Self {
        Self { u, v }
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.v.is_finite()
    }
}

/// Four-vector in (t, x, y, z) order, metric (+, −, −, −).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourVector<T> {
    pub t: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> FourVector<T> {
    pub const fn new(t: T, x: T, y: T, z: T) -> Self {
        Self { t, x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Minkowski square t² − x² − y² − z².
    pub fn minkowski_square(&self) -> T {
        self.t * self.t - self.x * self.x - self.y * self.y - self.z * self.z
    }

    fn zip_with(self, other: Self, f: impl Fn(T, T) -> T) -> Self {
        Self::new(f(self.t, other.t), f(self.x, other.x), f(self.y, other.y), f(self.z, other.z))
    }

    fn scaled(self, s: T) -> Self {
        Self::new(self.t * s, self.x * s, self.y * s, self.z * s)
    }
}

/// Boost matrix acting on the column (z, t).
pub fn boost_matrix<T: Real>(eta: Rapidity<T>) -> [[T; 2]; 2] {
    let (c, s) = (eta.cosh(), eta.sinh());
    [[c, s], [s, c]]
}

pub fn to_light_cone<T: Real>(p: SpacetimePoint<T>) -> LightConePoint<T> {
    let r = T::FRAC_1_SQRT_2();
    LightConePoint::new((p.z + p.t) * r, (p.z - p.t) * r)
}

pub fn from_light_cone<T: Real>(p: LightConePoint<T>) -> SpacetimePoint<T> {
    let r = T::FRAC_1_SQRT_2();
    SpacetimePoint::new((p.u + p.v) * r, (p.u - p.v) * r)
}

/// Squeeze: (u, v) ↦ (e^η u, e^(−η) v).
pub fn boost_light_cone<T: Real>(p: LightConePoint<T>, eta: Rapidity<T>) -> LightConePoint<T> {
    let e = eta.value().exp();
    LightConePoint::new(p.u * e, p.v / e)
}

pub fn boost_spacetime<T: Real>(p: SpacetimePoint<T>, eta: Rapidity<T>) -> SpacetimePoint<T> {
    let [[a, b], [c, d]] = boost_matrix(eta);
    SpacetimePoint::new(a * p.z + b * p.t, c * p.z + d * p.t)
}

/// Rapidity of a particle of mass `mass_gev` carrying total energy `energy_gev`,
/// η = arccosh(E/m).
///
/// The logarithm is evaluated as ln(1 + ε + √(ε(2 + ε))) with ε = (E − m)/m so
/// that rapidities near zero keep full relative precision.
pub fn rapidity_from_energy<T: Real>(energy_gev: T, mass_gev: T) -> Result<Rapidity<T>> {
    if !mass_gev.is_finite() || mass_gev <= T::zero() {
        return Err(invalid("mass", format!("mass must be positive and finite, got {mass_gev}")));
    }
    if !energy_gev.is_finite() {
        return Err(invalid("energy", format!("energy must be finite, got {energy_gev}")));
    }
    if energy_gev < mass_gev {
        return Err(invalid("energy", format!("energy {energy_gev} GeV is below the mass {mass_gev} GeV")));
    }
    let eps = (energy_gev - mass_gev) / mass_gev;
    let two = T::lit(2.0);
    Rapidity::new((eps + (eps * (two + eps)).sqrt()).ln_1p())
}

/// Centre-of-mass and separation coordinates of a two-quark system:
/// X = (xa + xb)/2, x = (xa − xb)/(2√2).
pub fn relative_coordinates<T: Real>(xa: FourVector<T>, xb: FourVector<T>) -> (FourVector<T>, FourVector<T>) {
    let half = T::lit(0.5);
    let sep = T::one() / (T::lit(2.0) * T::SQRT_2());
    (xa.zip_with(xb, |a, b| (a + b) * half), xa.zip_with(xb, |a, b| a - b).scaled(sep))
}

/// Total and relative momenta: P = pa + pb, q = √2 (pa − pb).
pub fn relative_momenta<T: Real>(pa: FourVector<T>, pb: FourVector<T>) -> (FourVector<T>, FourVector<T>) {
    (pa.zip_with(pb, |a, b| a + b), pa.zip_with(pb, |a, b| a - b).scaled(T::SQRT_2()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn eta(x: f64) -> Rapidity<f64> {
        Rapidity::new(x).unwrap()
    }

    #[test]
    fn boost_matrix_values() {
        assert_eq!(boost_matrix(eta(0.0)), [[1.0, 0.0], [0.0, 1.0]]);
        let m = boost_matrix(eta(2f64.ln()));
        assert_relative_eq!(m[0][0], 1.25, epsilon = 1e-15);
        assert_relative_eq!(m[0][1], 0.75, epsilon = 1e-15);
        assert_relative_eq!(m[1][0], 0.75, epsilon = 1e-15);
        assert_relative_eq!(m[1][1], 1.25, epsilon = 1e-15);
        for x in [-3.0, -0.2, 0.7, 4.0] {
            let m = boost_matrix(eta(x));
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            assert!((det - 1.0).abs() < 1e-12 * m[0][0] * m[0][0], "det {det}");
        }
    }

    #[test]
    fn non_finite_rapidity_rejected() {
        assert!(Rapidity::new(f64::NAN).is_err());
        assert!(Rapidity::new(f64::INFINITY).is_err());
        assert!(Rapidity::new(10.5).unwrap().for_quadrature().is_err());
        assert!(Rapidity::new(-10.0).unwrap().for_quadrature().is_ok());
    }

    #[test]
    fn light_cone_examples() {
        let s = 2f64.sqrt();
        assert_eq!(to_light_cone(SpacetimePoint::new(0.0, 0.0)), LightConePoint::new(0.0, 0.0));
        let p = to_light_cone(SpacetimePoint::new(1.0, 1.0));
        assert_relative_eq!(p.u, s, epsilon = 1e-15);
        assert_eq!(p.v, 0.0);
        let p = to_light_cone(SpacetimePoint::new(1.0, 0.0));
        assert_relative_eq!(p.u, 1.0 / s, epsilon = 1e-15);
        assert_relative_eq!(p.v, 1.0 / s, epsilon = 1e-15);

        let x = from_light_cone(LightConePoint::new(s, 0.0));
        assert_relative_eq!(x.z, 1.0, epsilon = 1e-15);
        assert_relative_eq!(x.t, 1.0, epsilon = 1e-15);
        let x = from_light_cone(LightConePoint::new(1.0, 1.0));
        assert_relative_eq!(x.z, s, epsilon = 1e-15);
        assert_eq!(x.t, 0.0);
    }

    #[test]
    fn squeeze_examples() {
        let p = boost_light_cone(LightConePoint::new(1.0, 1.0), eta(2f64.ln()));
        assert_relative_eq!(p.u, 2.0, epsilon = 1e-15);
        assert_relative_eq!(p.v, 0.5, epsilon = 1e-15);
        let q = LightConePoint::new(0.3, -1.7);
        assert_eq!(boost_light_cone(q, eta(0.0)), q);
    }

    #[test]
    fn spacetime_boost_examples() {
        assert_eq!(boost_spacetime(SpacetimePoint::new(1.0, 0.0), eta(0.0)), SpacetimePoint::new(1.0, 0.0));
        let p = boost_spacetime(SpacetimePoint::new(0.0, 1.0), eta(2f64.ln()));
        assert_relative_eq!(p.z, 0.75, epsilon = 1e-15);
        assert_relative_eq!(p.t, 1.25, epsilon = 1e-15);
    }

    #[test]
    fn rapidity_from_energy_examples() {
        assert_eq!(rapidity_from_energy(0.938272, 0.938272).unwrap().value(), 0.0);
        // arccosh(900 / 0.938272) from a 30-digit mpmath evaluation.
        let r = rapidity_from_energy(900.0, 0.938272).unwrap().value();
        assert_relative_eq!(r, 7.559257065503406, epsilon = 1e-12);
        let m = 1.7;
        let r = rapidity_from_energy(m * 1f64.cosh(), m).unwrap().value();
        assert_relative_eq!(r, 1.0, epsilon = 1e-14);
        // Small rapidity keeps relative precision: cosh(1e-6) − 1 = 5e-13.
        let r = rapidity_from_energy(1e-6f64.cosh(), 1.0).unwrap().value();
        assert_relative_eq!(r, 1e-6, max_relative = 1e-3);
    }

    #[test]
    fn rapidity_from_energy_errors() {
        assert!(rapidity_from_energy(0.5, 1.0).is_err());
        assert!(rapidity_from_energy(1.0, 0.0).is_err());
        assert!(rapidity_from_energy(1.0, -1.0).is_err());
        assert!(rapidity_from_energy(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn relative_coordinate_examples() {
        let xa = FourVector::new(0.3, 1.0, -2.0, 0.5);
        let (big, small) = relative_coordinates(xa, xa);
        assert_eq!(big, xa);
        assert_eq!(small, FourVector::zero());

        let (big, small) =
            relative_coordinates(FourVector::new(0.0, 0.0, 0.0, 1.0), FourVector::new(0.0, 0.0, 0.0, -1.0));
        assert_eq!(big, FourVector::zero());
        assert_relative_eq!(small.z, 1.0 / 2f64.sqrt(), epsilon = 1e-15);
        assert_eq!((small.t, small.x, small.y), (0.0, 0.0, 0.0));
    }

    #[test]
    fn relative_momentum_examples() {
        let pa = FourVector::new(1.0, 2.0, 3.0, 4.0);
        let (total, rel) = relative_momenta(pa, pa);
        assert_eq!(total, FourVector::new(2.0, 4.0, 6.0, 8.0));
        assert_eq!(rel, FourVector::zero());

        let (total, rel) = relative_momenta(FourVector::new(1.0, 0.0, 0.0, 0.0), FourVector::zero());
        assert_eq!(total, FourVector::new(1.0, 0.0, 0.0, 0.0));
        assert_relative_eq!(rel.t, 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn single_precision_squeeze() {
        let p = boost_light_cone(LightConePoint::new(1.0f32, 1.0), Rapidity::new(2f32.ln()).unwrap());
        assert!((p.u - 2.0).abs() < 1e-6 && (p.v - 0.5).abs() < 1e-6);
    }

    fn four_vector() -> impl Strategy<Value = FourVector<f64>> {
        (-10.0..10.0, -10.0..10.0, -10.0..10.0, -10.0..10.0).prop_map(|(t, x, y, z)| FourVector::new(t, x, y, z))
    }

    proptest! {
        #[test]
        fn light_cone_product_is_boost_invariant(u in -10.0..10.0f64, v in -10.0..10.0f64, e in -5.0..5.0f64) {
            let q = boost_light_cone(LightConePoint::new(u, v), eta(e));
            let (before, after) = (u * v, q.u * q.v);
            prop_assert!((after - before).abs() <= 1e-12 * before.abs().max(1e-300));
        }

        #[test]
        fn interval_is_boost_invariant(z in -10.0..10.0f64, t in -10.0..10.0f64, e in -3.0..3.0f64) {
            let p = SpacetimePoint::new(z, t);
            let q = boost_spacetime(p, eta(e));
            let scale = (q.z * q.z + q.t * q.t).max(1.0);
            prop_assert!((q.interval() - p.interval()).abs() <= 1e-14 * scale);
        }

        #[test]
        fn boosts_compose_additively(z in -10.0..10.0f64, t in -10.0..10.0f64, a in -3.0..3.0f64, b in -3.0..3.0f64) {
            let p = SpacetimePoint::new(z, t);
            let twice = boost_spacetime(boost_spacetime(p, eta(a)), eta(b));
            let once = boost_spacetime(p, eta(a + b));
            let scale = once.z.abs().max(once.t.abs()).max(1.0);
            prop_assert!((twice.z - once.z).abs() <= 1e-12 * scale);
            prop_assert!((twice.t - once.t).abs() <= 1e-12 * scale);

            let lc = to_light_cone(p);
            let twice = boost_light_cone(boost_light_cone(lc, eta(a)), eta(b));
            let once = boost_light_cone(lc, eta(a + b));
            prop_assert!((twice.u - once.u).abs() <= 1e-12 * once.u.abs().max(1.0));
            prop_assert!((twice.v - once.v).abs() <= 1e-12 * once.v.abs().max(1.0));
        }

        #[test]
        fn matrix_and_light_cone_paths_agree(z in -10.0..10.0f64, t in -10.0..10.0f64, e in -3.0..3.0f64) {
            let p = SpacetimePoint::new(z, t);
            let direct = boost_spacetime(p, eta(e));
            let via = from_light_cone(boost_light_cone(to_light_cone(p), eta(e)));
            let scale = direct.z.abs().max(direct.t.abs()).max(1.0);
            prop_assert!((direct.z - via.z).abs() <= 1e-12 * scale);
            prop_assert!((direct.t - via.t).abs() <= 1e-12 * scale);
        }

        #[test]
        fn light_cone_round_trip(z in -1e3..1e3f64, t in -1e3..1e3f64) {
            let p = SpacetimePoint::new(z, t);
            let back = from_light_cone(to_light_cone(p));
            let scale = z.abs().max(t.abs()).max(1.0);
            prop_assert!((back.z - z).abs() <= 1e-12 * scale && (back.t - t).abs() <= 1e-12 * scale);
        }

        #[test]
        fn rapidity_monotone_in_energy(m in 0.1..10.0f64, a in 0.0..100.0f64, d in 1e-6..100.0f64) {
            let lo = rapidity_from_energy(m * (1.0 + a), m).unwrap().value();
            let hi = rapidity_from_energy(m * (1.0 + a + d), m).unwrap().value();
            prop_assert!(hi > lo);
        }

        #[test]
        fn relative_coordinates_are_linear(xa in four_vector(), xb in four_vector(), s in -4.0..4.0f64) {
            let (big, small) = relative_coordinates(xa, xb);
            let (big_s, small_s) = relative_coordinates(xa.scaled(s), xb.scaled(s));
            for (l, r) in [(big_s, big.scaled(s)), (small_s, small.scaled(s))] {
                prop_assert!((l.t - r.t).abs() < 1e-12 && (l.x - r.x).abs() < 1e-12);
                prop_assert!((l.y - r.y).abs() < 1e-12 && (l.z - r.z).abs() < 1e-12);
            }
        }

        #[test]
        fn relative_momenta_antisymmetric(pa in four_vector(), pb in four_vector()) {
            let (p1, q1) = relative_momenta(pa, pb);
            let (p2, q2) = relative_momenta(pb, pa);
            prop_assert_eq!(p1, p2);
            prop_assert_eq!(q1, q2.scaled(-1.0));
        }
    }
}
