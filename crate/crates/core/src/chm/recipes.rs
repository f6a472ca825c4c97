//! Random CHM instances of the `H3` family with prescribed zero patterns of `V`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rand::seq::SliceRandom;
use rand::Rng;

use super::{build_h4, fourier3, Angles, H3Params};
use crate::numerics::{cis, numerical_rank, CMatrix, Tolerances, ONE, ZERO};

fn random_phase<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(0.0..2.0 * PI)
}

/// `F_3/sqrt(3)` or its conjugate, times `diag(1, e^{i d2}, e^{i d3})`.
fn random_fourier_w<R: Rng + ?Sized>(rng: &mut R) -> CMatrix {
    let f = if rng.random_bool(0.5) {
        fourier3()
    } else {
        fourier3().conj()
    };
    let d = CMatrix::diag(&[ONE, cis(random_phase(rng)), cis(random_phase(rng))]);
    &f * &d
}

/// Draw `beta, gamma` until the 3x4 matrix has rank three.
fn full_rank_angles<R: Rng + ?Sized>(alpha: [f64; 3], rng: &mut R) -> Angles {
    let tol = Tolerances::default();
    loop {
        let beta = [(); 3].map(|_| random_phase(rng));
        let gamma = [(); 3].map(|_| random_phase(rng));
        let a = Angles::new(alpha, beta, gamma);
        if numerical_rank(&build_h4(&a), &tol) == 3 {
            return a;
        }
    }
}

fn random_permutation<R: Rng + ?Sized>(rng: &mut R) -> CMatrix {
    let mut perm = [0usize, 1, 2];
    perm.shuffle(rng);
    CMatrix::permutation(&perm)
}

/// Monomial `V` (random permutation and phases), `alpha_i = pi/4` and a
/// phased Fourier `W`. Every such choice builds a CHM.
pub fn monomial_v_instance<R: Rng + ?Sized>(rng: &mut R) -> H3Params {
    let phases = CMatrix::diag(&[(); 3].map(|_| cis(random_phase(rng))));
    let v = &random_permutation(rng) * &phases;
    let w = random_fourier_w(rng);
    let angles = full_rank_angles([FRAC_PI_4; 3], rng);
    H3Params::new(angles, v, w, &Tolerances::default()).expect("recipe factors are unitary")
}

/// `1 ⊕ (1/sqrt 2)[[1, e^{i theta}], [e^{i phi}, -e^{i(theta+phi)}]]`.
pub fn four_zero_v(theta: f64, phi: f64) -> CMatrix {
    let s = FRAC_PI_4.cos();
    CMatrix::from_rows(&[
        [ONE, ZERO, ZERO],
        [ZERO, ONE * s, cis(theta) * s],
        [ZERO, cis(phi) * s, -cis(theta + phi) * s],
    ])
}

/// Four-zero `V` (row-permuted `1 ⊕ G`) with `alpha_1 = pi/4` and
/// `{alpha_2, alpha_3} = {0, pi/2}`, `W` a phased Fourier matrix.
///
/// With a Fourier `W` these endpoint values are the only ones that give a
/// CHM; interior `alpha_2` leaves some entry moduli off `1/sqrt 6`.
pub fn four_zero_v_instance<R: Rng + ?Sized>(rng: &mut R) -> H3Params {
    let g = four_zero_v(random_phase(rng), random_phase(rng));
    let v = &random_permutation(rng) * &g;
    let w = random_fourier_w(rng);
    let alpha = if rng.random_bool(0.5) {
        [FRAC_PI_4, 0.0, FRAC_PI_2]
    } else {
        [FRAC_PI_4, FRAC_PI_2, 0.0]
    };
    let angles = full_rank_angles(alpha, rng);
    H3Params::new(angles, v, w, &Tolerances::default()).expect("recipe factors are unitary")
}

/// The four-zero template at an arbitrary `alpha_2`:
/// `alpha = (pi/4, alpha_2, pi/2 - alpha_2)`, `V = 1 ⊕ G` with
/// `theta = pi/2, phi = 0`, `W = F_3/sqrt(3)`.
///
/// Builds a unitary for every `alpha_2`, but a CHM only at `alpha_2 = 0` or `pi/2`.
pub fn four_zero_template(alpha2: f64, beta: [f64; 3], gamma: [f64; 3]) -> H3Params {
    let angles = Angles::new([FRAC_PI_4, alpha2, FRAC_PI_2 - alpha2], beta, gamma);
    H3Params::new(
        angles,
        four_zero_v(FRAC_PI_2, 0.0),
        fourier3(),
        &Tolerances::default(),
    )
    .expect("template factors are unitary")
}
