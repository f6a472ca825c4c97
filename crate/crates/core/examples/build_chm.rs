//! Build a CHM from controlled-gate parameters and from the three-parameter family.

use std::f64::consts::{FRAC_PI_4, PI};

use chm_mub::chm::{build_eq5, build_h3, fourier3, is_chm, Angles, Eq5Params, H3Params};
use chm_mub::{CMatrix, Tolerances, C64};

fn main() -> chm_mub::Result<()> {
    let tol = Tolerances::default();
    let p = H3Params::new(
        Angles::new(
            [FRAC_PI_4; 3],
            [0.0, PI / 6.0, PI / 3.0],
            [0.0, PI / 3.0, 2.0 * PI / 3.0],
        ),
        fourier3(),
        CMatrix::identity(3),
        &tol,
    )?;
    let h = build_h3(&p, &tol)?;
    let chk = is_chm(&h, &tol);
    println!(
        "controlled-gate matrix: is_chm={} unitarity={:.2e}",
        chk.is_chm, chk.unitarity_residual
    );

    let q = Eq5Params::new(
        C64::from_polar(1.0, 0.3),
        C64::from_polar(1.0, 1.1),
        C64::from_polar(1.0, -0.7),
        &tol,
    )?;
    let m = build_eq5(&q);
    let chk = is_chm(&m, &tol);
    println!(
        "three-parameter matrix: is_chm={} modulus deviation={:.2e}",
        chk.is_chm, chk.modulus_deviation
    );
    println!("{}", chm_mub::io::to_json(&m)?);
    Ok(())
}
