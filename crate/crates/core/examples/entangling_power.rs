//! Entangling power of the maximally entangling controlled gate.

use chm_mub::entangle::{
    build_uab, ep_lower_bound, ep_optimize, log2_3, max_condition_residuals, ProductInput,
};
use chm_mub::presets::example1_angles;
use chm_mub::Tolerances;

fn main() -> chm_mub::Result<()> {
    let tol = Tolerances::default();
    let u = build_uab(&example1_angles());
    let inp = ProductInput::canonical(ProductInput::uniform_d())?;
    println!(
        "orthogonality residuals {:?}",
        max_condition_residuals(&u, &inp)
    );
    println!(
        "entropy at canonical input {:.12}",
        ep_lower_bound(&u, &inp, &tol)?
    );
    let best = ep_optimize(&u, 4, 42, &tol)?;
    println!("optimized {:.12} (log2 3 = {:.12})", best.value, log2_3());
    Ok(())
}
