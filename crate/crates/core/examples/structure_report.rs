//! Zero pattern of V, the form of W and the angle constraints for random recipe instances.

use chm_mub::chm::recipes::{four_zero_v_instance, monomial_v_instance};
use chm_mub::chm::{build_h3, schmidt_rank, structure_report};
use chm_mub::Tolerances;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> chm_mub::Result<()> {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for p in [
        monomial_v_instance(&mut rng),
        four_zero_v_instance(&mut rng),
    ] {
        let r = structure_report(&p, &tol)?;
        println!(
            "rank={} v={:?} zeros={} w={:?} max residual={:.2e}",
            schmidt_rank(&build_h3(&p, &tol)?, &tol)?,
            r.v_zero_pattern,
            r.zero_count,
            r.w_form,
            r.max_residual()
        );
        for (name, value) in &r.alpha_constraints {
            println!("  {name}: {value:.2e}");
        }
    }
    Ok(())
}
