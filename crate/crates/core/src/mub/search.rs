use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chm::{chm_modulus, is_chm};
use crate::error::{Error, Result};
use crate::numerics::{cis, CMatrix, Tolerances};
use crate::optim::NelderMead;

const N: usize = 6;

/// 15 complex Givens rotations (two angles each) plus 6 diagonal phases.
pub const ANGLES_PER_UNITARY: usize = N * N;

/// `diag(e^{i phi}) * prod_{p<q} G_pq(theta, psi)`, unitary for every angle vector.
///
/// `G_pq` acts on coordinates `p, q` as
/// `[[cos theta, -e^{i psi} sin theta], [e^{-i psi} sin theta, cos theta]]`.
pub fn givens_unitary(angles: &[f64]) -> CMatrix {
    assert_eq!(angles.len(), ANGLES_PER_UNITARY, "expected 36 angles");
    let mut u = CMatrix::identity(N);
    let mut k = 0;
    for p in 0..N {
        for q in p + 1..N {
            let (s, c) = angles[k].sin_cos();
            let e = cis(angles[k + 1]);
            k += 2;
            // right-multiply by G_pq: only columns p and q change
            for r in 0..N {
                let up = u[(r, p)];
                let uq = u[(r, q)];
                u[(r, p)] = up * c + uq * e.conj() * s;
                u[(r, q)] = -up * e * s + uq * c;
            }
        }
    }
    for r in 0..N {
        let ph = cis(angles[k + r]);
        for c in 0..N {
            u[(r, c)] *= ph;
        }
    }
    u
}

fn modulus_term(m: &CMatrix, target: f64) -> f64 {
    m.data().iter().map(|z| (z.norm() - target).powi(2)).sum()
}

fn unitarity_term(m: &CMatrix) -> f64 {
    (&(m * &m.adjoint()) - &CMatrix::identity(m.rows()))
        .data()
        .iter()
        .map(|z| z.norm_sqr())
        .sum()
}

/// Sum of squared deviations from a trio `(m, b2, b3)`: entry moduli of
/// `b2, b3`, moduli of the three overlap matrices `a^dagger b`, and
/// `||b b^dagger - I||_F^2` for `b2, b3`. Every weight is one.
pub fn trio_penalty(m: &CMatrix, b2: &CMatrix, b3: &CMatrix) -> f64 {
    let s = chm_modulus();
    let moduli = modulus_term(b2, s) + modulus_term(b3, s);
    let overlaps: f64 = [(m, b2), (m, b3), (b2, b3)]
        .iter()
        .map(|(a, b)| modulus_term(&(&a.adjoint() * b), s))
        .sum();
    moduli + overlaps + unitarity_term(b2) + unitarity_term(b3)
}

#[derive(Debug, Clone, Copy)]
pub struct TrioSearchConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub seed: u64,
}

impl Default for TrioSearchConfig {
    fn default() -> Self {
        TrioSearchConfig {
            restarts: 20,
            max_iters: 20_000,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrioSearchResult {
    pub best_penalty: f64,
    /// Simplex iterations spent by the winning restart.
    pub iterations: usize,
    pub restarts_used: usize,
    /// Index of the winning restart (its seed is `seed + index`).
    pub best_restart: usize,
    #[serde(rename = "candidates")]
    pub best_candidates: [CMatrix; 2],
}

fn start_point(seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..2 * ANGLES_PER_UNITARY)
        .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
        .collect()
}

fn candidates(x: &[f64]) -> [CMatrix; 2] {
    [
        givens_unitary(&x[..ANGLES_PER_UNITARY]),
        givens_unitary(&x[ANGLES_PER_UNITARY..]),
    ]
}

/// Multistart simplex search for two CHMs completing `m` to a trio.
///
/// Restart `r` starts from angles drawn with seed `seed + r`; restarts run in
/// parallel and the lowest penalty wins, ties going to the lower index, so the
/// result does not depend on the thread count. With zero restarts the
/// penalty at the seed's start point is returned without optimizing.
pub fn trio_extension_search(
    m: &CMatrix,
    cfg: &TrioSearchConfig,
    tol: &Tolerances,
) -> Result<TrioSearchResult> {
    m.expect_shape(6, 6)?;
    let chk = is_chm(m, tol);
    if !chk.is_chm {
        return Err(Error::NotChm {
            unitarity: chk.unitarity_residual,
            modulus: chk.modulus_deviation,
        });
    }
    if cfg.restarts > 0 && cfg.max_iters == 0 {
        return Err(Error::Invalid(
            "max_iters must be positive when restarts > 0".into(),
        ));
    }
    let penalty = |x: &[f64]| {
        let [b2, b3] = candidates(x);
        trio_penalty(m, &b2, &b3)
    };

    if cfg.restarts == 0 {
        let x = start_point(cfg.seed);
        return Ok(TrioSearchResult {
            best_penalty: penalty(&x),
            iterations: 0,
            restarts_used: 0,
            best_restart: 0,
            best_candidates: candidates(&x),
        });
    }

    let nm = NelderMead {
        max_iters: cfg.max_iters,
        initial_step: 0.5,
        f_tol: 1e-16,
        ..NelderMead::default()
    };
    let runs: Vec<_> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let x0 = start_point(cfg.seed.wrapping_add(r as u64));
            nm.minimize(penalty, &x0)
        })
        .collect();
    let (best_restart, best) = runs
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.value.total_cmp(&b.1.value).then(a.0.cmp(&b.0)))
        .expect("at least one restart");
    Ok(TrioSearchResult {
        best_penalty: best.value,
        iterations: best.iterations,
        restarts_used: cfg.restarts,
        best_restart,
        best_candidates: candidates(&best.x),
    })
}
