use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{entropy_of, rho_aa, ControlledUnitary, ProductInput};
use crate::error::{Error, Result};
use crate::numerics::{cis, eig_hermitian, Tolerances};
use crate::optim::NelderMead;

#[derive(Debug, Clone, Serialize)]
pub struct EpOptimum {
    /// Entropy in ebits at `input`, a lower bound on the entangling power.
    pub value: f64,
    pub input: ProductInput,
    /// Index of the start that produced the optimum.
    pub restart: usize,
}

/// Spherical coordinates `(t1, t2, phi, t3, t4)` to a normalized input.
/// Taking absolute values of the trig factors keeps every box point feasible.
fn to_input(p: &[f64]) -> ProductInput {
    let (s1, c1) = p[0].sin_cos();
    let (s2, c2) = p[1].sin_cos();
    let (s3, c3) = p[3].sin_cos();
    let (s4, c4) = p[4].sin_cos();
    ProductInput {
        c1: c1.abs(),
        c2: (s1 * c2).abs(),
        c3: cis(p[2]) * (s1 * s2).abs(),
        d: [c3.abs(), (s3 * c4).abs(), (s3 * s4).abs()],
    }
}

fn objective(u: &ControlledUnitary, inp: &ProductInput, tol: &Tolerances) -> f64 {
    match eig_hermitian(&rho_aa(u, inp), 1e-9) {
        Ok((vals, _)) => entropy_of(&vals, tol.eig_clamp),
        Err(_) => f64::NAN,
    }
}

/// `c = (1/sqrt 2, 0, 1/sqrt 2)` with uniform `d`.
fn canonical_start() -> Vec<f64> {
    vec![
        FRAC_PI_4,
        FRAC_PI_2,
        0.0,
        (3f64.sqrt().recip()).acos(),
        FRAC_PI_4,
    ]
}

fn random_start(seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        rng.random_range(0.0..FRAC_PI_2),
        rng.random_range(0.0..FRAC_PI_2),
        rng.random_range(0.0..TAU),
        rng.random_range(0.0..FRAC_PI_2),
        rng.random_range(0.0..FRAC_PI_2),
    ]
}

/// Multistart simplex maximization of the `rho_Aa` entropy over product inputs.
///
/// Start 0 is `c = (1/sqrt 2, 0, 1/sqrt 2)` with uniform `d`; start `r > 0` is
/// drawn with seed `seed + r`. Starts run in parallel; the largest value wins
/// and ties go to the lower index.
pub fn ep_optimize(
    u: &ControlledUnitary,
    restarts: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<EpOptimum> {
    if restarts == 0 {
        return Err(Error::Invalid("restarts must be at least 1".into()));
    }
    let nm = NelderMead {
        initial_step: 0.3,
        max_iters: 2_000,
        f_tol: 1e-14,
        ..NelderMead::default()
    };
    let runs: Vec<(f64, ProductInput)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let x0 = if r == 0 {
                canonical_start()
            } else {
                random_start(seed.wrapping_add(r as u64))
            };
            let m = nm.minimize(|p| -objective(u, &to_input(p), tol), &x0);
            let inp = to_input(&m.x);
            (objective(u, &inp, tol), inp)
        })
        .collect();
    let (restart, (value, input)) = runs
        .into_iter()
        .enumerate()
        .reduce(|best, cur| if cur.1 .0 > best.1 .0 { cur } else { best })
        .expect("at least one start");
    Ok(EpOptimum {
        value,
        input,
        restart,
    })
}

/// Exhaustive search over a `points^5` grid of the spherical coordinates
/// (endpoints included; the phase axis omits `2 pi`).
pub fn grid_search(u: &ControlledUnitary, points: usize, tol: &Tolerances) -> Result<EpOptimum> {
    if points < 2 {
        return Err(Error::Invalid(
            "grid needs at least 2 points per axis".into(),
        ));
    }
    let ang = |i: usize| FRAC_PI_2 * i as f64 / (points - 1) as f64;
    let ph = |i: usize| TAU * i as f64 / points as f64;
    let best = (0..points.pow(5))
        .into_par_iter()
        .map(|mut idx| {
            let mut ix = [0usize; 5];
            for v in ix.iter_mut() {
                *v = idx % points;
                idx /= points;
            }
            let p = [ang(ix[0]), ang(ix[1]), ph(ix[2]), ang(ix[3]), ang(ix[4])];
            let inp = to_input(&p);
            (objective(u, &inp, tol), inp)
        })
        .reduce_with(|a, b| if b.0 > a.0 { b } else { a })
        .expect("nonempty grid");
    Ok(EpOptimum {
        value: best.0,
        input: best.1,
        restart: 0,
    })
}
