//! Schmidt rank of a few 6x6 unitaries across the 2x3 split.

use chm_mub::chm::{
    block_triple_ranks, build_eq5, realignment_singular_values, schmidt_rank, Eq5Params,
};
use chm_mub::numerics::{kron, random_unitary};
use chm_mub::Tolerances;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> chm_mub::Result<()> {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let product = kron(&random_unitary(2, &mut rng), &random_unitary(3, &mut rng));
    let generic = random_unitary(6, &mut rng);
    let eq5 = build_eq5(&Eq5Params::ones());
    for (name, m) in [("product", &product), ("generic", &generic), ("eq5", &eq5)] {
        let sigma = realignment_singular_values(m)?;
        println!(
            "{name:8} rank={} sigma={:.3?} block-triple ranks={:?}",
            schmidt_rank(m, &tol)?,
            sigma,
            block_triple_ranks(m, &tol)?
        );
    }
    Ok(())
}
