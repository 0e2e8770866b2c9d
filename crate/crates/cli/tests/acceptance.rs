//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Expected values are frozen from 30-digit mpmath evaluations.

#![allow(clippy::excessive_precision)]

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fs;
use std::process::{Command, ExitCode};

use covosc::EXAMPLE_COMMANDS;
use covosc_core::analysis::{
    coherence_ratio, longitudinal_momentum_density, longitudinal_position_density, uncertainty_products, MomentMode,
};
use covosc_core::kinematics::{boost_light_cone, boost_matrix, boost_spacetime, from_light_cone, to_light_cone};
use covosc_core::momentum::{default_momentum_grid, fourier_numeric, fourier_numeric_complex};
use covosc_core::numerics::{default_grid, integrate_2d};
use covosc_core::oscillator::{norm_squared, oscillator_residual};
use covosc_core::{Grid1D, Grid2D, LightConePoint, OscillatorState, Rapidity, SpacetimePoint, PROTON_MASS_GEV};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ETAS: [f64; 4] = [0.0, 0.5, 1.0, 2.0];
/// cosh²(2η)/4 at each entry of `ETAS`.
const PRODUCT_ZQ: [f64; 4] = [0.25, 0.595274461385453932, 3.53852910450206083, 186.434895156522261];
/// cosh(2η)/2 at each entry of `ETAS`.
const HALF_COSH: [f64; 4] = [0.5, 0.771540317407621889, 1.88109784554181573, 13.6541164180082433];
const ETA_900_GEV: f64 = 7.55925706550340575;
const RATIO_900_GEV: f64 = 2.71714451973476024e-7;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn eta(x: f64) -> Rapidity {
    Rapidity::new(x).unwrap()
}

fn verdict(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fail(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn longitudinal_product() -> Check {
    let mut worst: f64 = 0.0;
    for (e, want) in ETAS.iter().zip(PRODUCT_ZQ) {
        let r = uncertainty_products(0, eta(*e), MomentMode::Quadrature).map_err(fail)?;
        worst = worst.max((r.product_zq - want).abs());
    }
    verdict(worst < 1e-4, format!("max error {worst:.2e}"))
}

fn light_cone_products() -> Check {
    let mut worst: f64 = 0.0;
    for e in ETAS {
        let r = uncertainty_products(0, eta(e), MomentMode::Quadrature).map_err(fail)?;
        worst = worst.max((r.product_uqu - 0.25).abs()).max((r.product_vqv - 0.25).abs());
    }
    verdict(worst < 1e-4, format!("max error {worst:.2e}"))
}

fn normalization() -> Check {
    let mut worst: f64 = 0.0;
    for e in ETAS {
        for n in 0..=5 {
            let norm = norm_squared(OscillatorState::new(n, eta(e)).map_err(fail)?).map_err(fail)?;
            worst = worst.max((norm - 1.0).abs());
        }
    }
    verdict(worst < 1e-6, format!("max |norm - 1| {worst:.2e}"))
}

/// Ground-state momentum wave function written out directly in light-cone momenta.
fn ground_momentum(e: f64, q_z: f64, q_0: f64) -> f64 {
    let q_u = (q_0 - q_z) * FRAC_1_SQRT_2;
    let q_v = (q_0 + q_z) * FRAC_1_SQRT_2;
    (-((2.0 * e).exp() * q_u * q_u + (-2.0 * e).exp() * q_v * q_v) / 2.0).exp() / PI.sqrt()
}

fn fourier_consistency() -> Check {
    let (mut pointwise, mut parseval): (f64, f64) = (0.0, 0.0);
    for e in [0.0, 0.5, 1.0] {
        let state = OscillatorState::new(0, eta(e)).map_err(fail)?;
        let axis = Grid1D::symmetric(6.0 * e.exp(), 49).map_err(fail)?;
        let field = fourier_numeric(state, Grid2D::square(axis)).map_err(fail)?;
        for (i, q_z) in axis.nodes().into_iter().enumerate() {
            for (j, q_0) in axis.nodes().into_iter().enumerate() {
                pointwise = pointwise.max((field.get(i, j) - ground_momentum(e, q_z, q_0)).abs());
            }
        }
        let full = fourier_numeric_complex(state, default_momentum_grid(eta(e), 0).map_err(fail)?).map_err(fail)?;
        parseval = parseval.max((integrate_2d(&full.modulus_squared()) - 1.0).abs());
    }
    verdict(pointwise < 1e-6 && parseval < 1e-5, format!("pointwise {pointwise:.2e}, Parseval {parseval:.2e}"))
}

fn oscillator_equation() -> Check {
    let (mut lambda, mut residual): (f64, f64) = (0.0, 0.0);
    for e in [0.0, 1.0] {
        for n in 0..=2u32 {
            let state = OscillatorState::new(n, eta(e)).map_err(fail)?;
            let r = oscillator_residual(state, default_grid(eta(e), n).map_err(fail)?).map_err(fail)?;
            lambda = lambda.max((r.lambda - f64::from(n)).abs());
            residual = residual.max(r.residual_norm);
        }
    }
    verdict(lambda < 1e-2 && residual < 5e-3, format!("max |lambda - n| {lambda:.2e}, max residual {residual:.2e}"))
}

fn coherence() -> Check {
    let r = coherence_ratio(900.0, PROTON_MASS_GEV).map_err(fail)?;
    let e = r.eta.value();
    let ok = (7.5..=7.62).contains(&e)
        && r.ratio > 1e-8
        && r.ratio < 1e-5
        && (e - ETA_900_GEV).abs() < 1e-12
        && (r.ratio / RATIO_900_GEV - 1.0).abs() < 1e-10;
    verdict(ok, format!("eta {e:.10}, ratio {:.6e}", r.ratio))
}

fn marginal_widths() -> Check {
    let mut worst: f64 = 0.0;
    let (mut pos, mut mom) = (Vec::new(), Vec::new());
    for (e, want) in ETAS.iter().zip(HALF_COSH) {
        let p = longitudinal_position_density(0, eta(*e)).map_err(fail)?.variance();
        let q = longitudinal_momentum_density(0, eta(*e)).map_err(fail)?.variance();
        worst = worst.max((p - want).abs()).max((q - want).abs());
        pos.push(p);
        mom.push(q);
    }
    let rising = |v: &[f64]| v.windows(2).all(|w| w[1] > w[0]);
    let monotone = rising(&pos) && rising(&mom);
    verdict(worst < 1e-4 && monotone, format!("max error {worst:.2e}, strictly increasing {monotone}"))
}

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-10 * scale.max(1.0)
}

fn kinematics() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20_260_916);
    let mut bad = [0usize; 4];
    for _ in 0..1000 {
        let p = SpacetimePoint::new(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));
        let (a, b) = (rng.gen_range(-2.5..2.5), rng.gen_range(-2.5..2.5));

        // Composition, compared against the product of the two boost matrices.
        let (ma, mb) = (boost_matrix(eta(a)), boost_matrix(eta(b)));
        let m = [
            [mb[0][0] * ma[0][0] + mb[0][1] * ma[1][0], mb[0][0] * ma[0][1] + mb[0][1] * ma[1][1]],
            [mb[1][0] * ma[0][0] + mb[1][1] * ma[1][0], mb[1][0] * ma[0][1] + mb[1][1] * ma[1][1]],
        ];
        let composed = boost_spacetime(p, eta(a + b));
        let stepwise = boost_spacetime(boost_spacetime(p, eta(a)), eta(b));
        let scale = composed.z.abs() + composed.t.abs();
        let by_matrix = (m[0][0] * p.z + m[0][1] * p.t, m[1][0] * p.z + m[1][1] * p.t);
        if !(close(composed.z, stepwise.z, scale)
            && close(composed.t, stepwise.t, scale)
            && close(composed.z, by_matrix.0, scale)
            && close(composed.t, by_matrix.1, scale))
        {
            bad[0] += 1;
        }

        let lc = to_light_cone(p);
        let back = from_light_cone(lc);
        if !(close(back.z, p.z, 1.0) && close(back.t, p.t, 1.0) && close(lc.u, (p.z + p.t) * FRAC_1_SQRT_2, 1.0)) {
            bad[1] += 1;
        }

        let q = boost_spacetime(p, eta(a));
        if !close(q.z * q.z - q.t * q.t, p.z * p.z - p.t * p.t, q.z * q.z + q.t * q.t) {
            bad[2] += 1;
        }

        let w = LightConePoint::new(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));
        let s = boost_light_cone(w, eta(a));
        if !close(s.u * s.v, w.u * w.v, (w.u * w.v).abs()) {
            bad[3] += 1;
        }
    }
    verdict(bad == [0; 4], format!("1000 cases each, failures {bad:?} (composition, round trip, z2-t2, u*v)"))
}

fn cli_determinism() -> Check {
    let dir = tempfile::tempdir().map_err(fail)?;
    let bin = env!("CARGO_BIN_EXE_covosc");
    for (k, args) in EXAMPLE_COMMANDS.iter().enumerate() {
        let mut outputs = Vec::new();
        for pass in 0..2 {
            let path = dir.path().join(format!("example{k}_{pass}.out"));
            let status = Command::new(bin).args(*args).arg("--out").arg(&path).status().map_err(fail)?;
            if !status.success() {
                return Err(format!("`covosc {}` exited with {status}", args.join(" ")));
            }
            outputs.push(fs::read(&path).map_err(fail)?);
        }
        if outputs[0] != outputs[1] || outputs[0].is_empty() {
            return Err(format!("`covosc {}` produced differing output", args.join(" ")));
        }
    }
    let verify = Command::new(bin).arg("verify").output().map_err(fail)?;
    let stdout = String::from_utf8_lossy(&verify.stdout);
    let lines = stdout.lines().filter(|l| l.starts_with("[PASS]")).count();
    verdict(
        verify.status.code() == Some(0) && lines == 9,
        format!(
            "{} example commands byte-identical across two runs; `covosc verify` exit {:?} with {lines} PASS lines",
            EXAMPLE_COMMANDS.len(),
            verify.status.code()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("longitudinal product <z2><qz2> = cosh^2(2eta)/4", longitudinal_product),
        ("light-cone products equal 1/4", light_cone_products),
        ("normalization under boost", normalization),
        ("momentum transform matches closed form, Parseval", fourier_consistency),
        ("oscillator-equation eigenvalue and residual", oscillator_equation),
        ("coherence ratio at 900 GeV", coherence),
        ("longitudinal density widths", marginal_widths),
        ("kinematics properties", kinematics),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (id, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", id + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({detail})", id + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
